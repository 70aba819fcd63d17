use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cphi6_core::etaq::{eta_product, EtaQuotient};
use cphi6_core::verify::{run_suite, Config, Suite};
use cphi6_core::ZSeries;

#[derive(Parser)]
#[command(name = "cphi6", version, about = "q-series engine and 3-adic checks for cphi6")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand an eta quotient given as `n:e` pairs, e.g. `12:4,2:2,6:-2,4:-4`.
    Expand {
        quotient: String,
        /// Number of coefficients to print.
        #[arg(long = "n", default_value_t = 10)]
        n: i64,
        /// Print the product part only, dropping the q^(sum n e / 24) prefactor.
        #[arg(long)]
        product: bool,
    },
    /// Run a verification suite.
    #[command(alias = "report")]
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// group1, appendix, modeq, tower, arrays, lemma, theorem, known or all.
    suite: String,
    #[arg(long, default_value_t = 200)]
    precision: i64,
    /// Work modulo 3^K; K above 38 uses exact integers.
    #[arg(long = "mod-exp", default_value_t = 12)]
    mod_exp: u32,
    #[arg(long = "alpha-max", default_value_t = 4)]
    alpha_max: u32,
    #[arg(long = "n-max", default_value_t = 50)]
    n_max: u64,
    #[arg(long = "m-max", default_value_t = 30)]
    m_max: i64,
    /// Directory for cached array rows.
    #[arg(long = "cache-dir", env = "CPHI6_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn expand(text: &str, n: i64, product: bool) -> ExitCode {
    let q: EtaQuotient = match text.parse() {
        Ok(q) => q,
        Err(e) => return usage(e),
    };
    if n < 0 {
        return usage("--n must be nonnegative");
    }
    let (series, start): (ZSeries, i64) = if product {
        (eta_product(&q.factors, n), 0)
    } else {
        let ord = match q.integral_q_order() {
            Ok(o) => o,
            Err(e) => return usage(format!("{e}; pass --product to expand the product part")),
        };
        match q.expand(ord + n) {
            Ok(s) => (s, ord),
            Err(e) => return usage(e),
        }
    };
    let mut out = String::new();
    for e in start..start + n {
        let c = series.coeff(e).expect("expanded to the requested length");
        out.push_str(&format!("{e}: {c}\n"));
    }
    print!("{out}");
    ExitCode::SUCCESS
}

fn verify(args: VerifyArgs) -> ExitCode {
    let suite: Suite = match args.suite.parse() {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let cfg = Config {
        precision: args.precision,
        mod_exp: args.mod_exp,
        alpha_max: args.alpha_max,
        n_max: args.n_max,
        m_max: args.m_max,
        cache_dir: args.cache_dir,
    };
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    let report = run_suite(suite, &cfg);
    if args.json {
        match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => return usage(e),
        }
    } else {
        print!("{report}");
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Expand { quotient, n, product } => expand(&quotient, n, product),
        Cmd::Verify(args) => verify(args),
    }
}
