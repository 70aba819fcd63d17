//! Verification suites, each producing a [`Report`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::appendix::{terms_to_poly, ArrayKind, L1_TERMS, UA_P1_T2, UB_P0Y3_TM1};
use crate::error::{Error, Result};
use crate::frob6::{self, cphi6_series, lambda};
use crate::reduce::{self, diff_polys, fundamental_row, Weight};
use crate::report::{Check, Report};
use crate::scalar::{Coefficient, Mod3k};
use crate::tower::modeq::{self, three_term_recurrence_check, USpec, Var};
use crate::tower::{self, dcoeff, l_series, l_series_to_cphi, FundArrays, ModEqCoeffs, Op};

/// Table length for the literature families: covers `59049n+44287` at
/// `n = 0` and `19683n+11482` at `n = 0, 1`.
pub const KNOWN_TABLE_LEN: usize = 44_288;

#[derive(Debug, Clone)]
pub struct Config {
    pub precision: i64,
    pub mod_exp: u32,
    pub alpha_max: u32,
    pub n_max: u64,
    pub m_max: i64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: 200,
            mod_exp: 12,
            alpha_max: 4,
            n_max: 50,
            m_max: 30,
            cache_dir: None,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.precision < 32 {
            return Err(Error::InvalidArgument(format!("precision {} < 32", self.precision)));
        }
        if self.mod_exp < 4 {
            return Err(Error::InvalidArgument(format!("mod exponent {} < 4", self.mod_exp)));
        }
        if self.alpha_max < 1 {
            return Err(Error::InvalidArgument("alpha_max must be >= 1".into()));
        }
        if self.m_max < 0 {
            return Err(Error::InvalidArgument("m_max must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Group1,
    Appendix,
    Modeq,
    Tower,
    Arrays,
    Lemma,
    Theorem,
    Known,
    All,
}

impl Suite {
    /// Cheap structural suites first.
    pub const ORDERED: [Suite; 8] = [
        Suite::Group1,
        Suite::Modeq,
        Suite::Appendix,
        Suite::Arrays,
        Suite::Tower,
        Suite::Lemma,
        Suite::Known,
        Suite::Theorem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Group1 => "group1",
            Suite::Appendix => "appendix",
            Suite::Modeq => "modeq",
            Suite::Tower => "tower",
            Suite::Arrays => "arrays",
            Suite::Lemma => "lemma",
            Suite::Theorem => "theorem",
            Suite::Known => "known",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ORDERED
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Call `f::<Mod3k<K>>(arg)` for a runtime `K`, falling back to exact
/// integers beyond word size.
macro_rules! with_mod_ring {
    ($k:expr, $f:ident, $arg:expr, [$($n:literal)*]) => {
        match $k {
            $($n => $f::<Mod3k<$n>>($arg),)*
            _ => $f::<BigInt>($arg),
        }
    };
}

macro_rules! dispatch_k {
    ($k:expr, $f:ident, $arg:expr) => {
        with_mod_ring!($k, $f, $arg, [
            1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19
            20 21 22 23 24 25 26 27 28 29 30 31 32 33 34 35 36 37 38
        ])
    };
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Report {
    if suite == Suite::All {
        let start = std::time::Instant::now();
        let parts: Vec<Report> = Suite::ORDERED.iter().map(|&s| run_suite(s, cfg)).collect();
        let mut r = Report::merge("all", parts);
        r.ms = start.elapsed().as_millis() as u64;
        return r;
    }
    Report::timed(suite.name(), || match suite {
        Suite::Group1 => reduce::group1_checks(cfg.precision),
        Suite::Appendix => appendix(cfg),
        Suite::Modeq => modeq_suite(cfg),
        Suite::Tower => tower_suite(cfg),
        Suite::Arrays => arrays_suite(cfg),
        Suite::Lemma => lemma_suite(cfg),
        Suite::Theorem => dispatch_k!(cfg.mod_exp, theorem_suite, cfg),
        Suite::Known => dispatch_k!(cfg.mod_exp, known_suite, cfg),
        Suite::All => unreachable!(),
    })
}

fn flatten(id: &str, what: &str, anchor: &str, r: Result<std::result::Result<(), String>>) -> Check {
    Check::new(id, what, anchor, r.unwrap_or_else(|e| Err(e.to_string())))
}

fn appendix(cfg: &Config) -> Vec<Check> {
    let mut checks = reduce::appendix_series_checks(cfg.precision);
    checks.extend(reduce::rediscover_appendix(cfg.precision));
    checks
}

fn modeq_suite(cfg: &Config) -> Vec<Check> {
    let p = cfg.precision;
    let big = p + p / 2;
    let eq = ModEqCoeffs::new();
    let mut checks = vec![
        flatten("modeq/t", &format!("cubic equation for t to q^{big}"), "modular equation for t", modeq::verify_modeq_t(big)),
        flatten("modeq/y", &format!("cubic equation for y to q^{big}"), "modular equation for y", modeq::verify_modeq_y(big)),
    ];
    let mut mutated = eq.a.clone();
    mutated[1] = crate::TPoly::from_i64_terms(&[(2, 3), (1, 1)]);
    let control = match modeq::verify_modeq_t_with(&mutated, 60) {
        Ok(Err(_)) => Ok(()),
        Ok(Ok(())) => Err("mutated a_1 was not detected".into()),
        Err(e) => Err(e.to_string()),
    };
    checks.push(Check::new("modeq/t/mutation", "a_1 -> 3t^2+t leaves a nonzero residual", "control", control));
    checks.push(flatten("u3/t", &format!("U_3(t) = 3t^3 - 2t to q^{p}"), "-3U_3(t) = -9t^3+6t", modeq::check_u3_t(p)));
    checks.push(flatten("u3/t^-1", &format!("U_3(t^-1) = t to q^{p}"), "3tU_3(t^-1) = 3t^2", modeq::check_u3_tinv(p)));
    checks.push(Check::new("modeq/a-from-s", "a_j rebuilt from s(j,l)", "s(j,l) table", eq.check_a_reconstruction()));
    for j in 0..3 {
        checks.push(Check::new(
            format!("modeq/b{j}/algebra"),
            format!("b_{j}(y) = y^{} g_{j}(t) with denominators cleared", 9 - 3 * j),
            "b_j rewrites in t",
            eq.check_rewrite_algebra(j),
        ));
        checks.push(flatten(
            &format!("modeq/b{j}/series"),
            &format!("b_{j}(y) = y^{} g_{j}(t) as q-series", 9 - 3 * j),
            "b_j rewrites in t",
            eq.check_rewrite_series(j, 100),
        ));
        checks.push(Check::new(
            format!("modeq/b{j}/printed"),
            format!("printed rewrite of b_{j} equals the derived one"),
            "b_j rewrites in t",
            if eq.printed_rewrite_matches(j) {
                Ok(())
            } else {
                Err(format!("derived g_{j} = {}", eq.b_rewrite[j].1))
            },
        ));
    }
    checks.push(Check::new(
        "modeq/b1/variant",
        "the t^4 variant of the b_1 rewrite differs from the derived one",
        "derivation of the b(-1,m,0) recurrence",
        if eq.variant_rewrite_matches() {
            Err("variant unexpectedly equal".into())
        } else {
            Ok(())
        },
    ));
    let rec_prec = 48;
    let cases = [
        ("recurrence/t/p1", USpec { op: Op::A, weight: Weight::P1, y_exp: 0, t_exp: 0 }, Var::T, -1),
        ("recurrence/t/p0y", USpec { op: Op::B, weight: Weight::P0, y_exp: 1, t_exp: 0 }, Var::T, 0),
        ("recurrence/y/p0t^-1", USpec { op: Op::B, weight: Weight::P0, y_exp: 0, t_exp: -1 }, Var::Y, 0),
        ("recurrence/y/p1", USpec { op: Op::A, weight: Weight::P1, y_exp: 0, t_exp: 1 }, Var::Y, 1),
    ];
    checks.extend(cases.par_iter().map(|&(id, u, var, j)| {
        flatten(
            id,
            &format!("three-term U_3 recurrence in {var:?} from exponent {j}, to q^{rec_prec}"),
            "three-term U_3 recurrences",
            three_term_recurrence_check(u, var, j, rec_prec),
        )
    }).collect::<Vec<_>>());
    checks
}

/// Recurrence row against the q-series row and against the printed text.
fn worked_example(kind: ArrayKind, k: i64, m: i64, printed: &'static [(i64, u32, i64)], label: &str) -> Vec<Check> {
    let cap = 40;
    let arrays = FundArrays::new(cap);
    let rec = arrays.row(kind, k, m);
    let peeled = fundamental_row(kind, k, m, cap);
    let series = match (&rec, &peeled) {
        (Ok(r), Ok(p)) => diff_polys(r, &p.poly.truncated(cap)),
        (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
    };
    let text = match &rec {
        Ok(r) => diff_polys(r, &terms_to_poly(printed)),
        Err(e) => Err(e.to_string()),
    };
    vec![
        Check::new(
            format!("worked/{}({k},{m})/series", kind.tag()),
            format!("recurrence value of {label} equals its q-series"),
            "worked examples of the U_3 recurrences",
            series,
        ),
        Check::new(
            format!("worked/{}({k},{m})/printed", kind.tag()),
            format!("recurrence value of {label} equals the printed polynomial"),
            "worked examples of the U_3 recurrences",
            text,
        ),
    ]
}

pub fn worked_examples() -> Vec<Check> {
    let mut checks = worked_example(ArrayKind::A, 2, 0, UA_P1_T2, "U_A(p1 t^2)");
    checks.extend(worked_example(ArrayKind::B, -1, 3, UB_P0Y3_TM1, "U_B(p0 y^3 t^-1)"));
    checks
}

/// `L_1` peeled to the printed polynomial.
pub fn l1_check() -> Check {
    let outcome = dcoeff::d_coeffs_qseries(1, 12).map_err(|e| e.to_string()).and_then(|d| {
        diff_polys(&d, &terms_to_poly(L1_TERMS))
    });
    Check::new("tower/L1", "L_1 = y^8 p0 (36/t + 5751 + ... - 6561 t^7)", "L_1 expansion", outcome)
}

/// `Σ cφ₆(3^i n + λ_i) q^n` recovered from `L_i` for `n < terms`.
pub fn l_alpha_check(i: u32, terms: i64) -> Check {
    let outcome = (|| -> Result<std::result::Result<(), String>> {
        let l = l_series::<BigInt>(i, terms)?;
        let got = l_series_to_cphi(i, &l)?;
        let step = 3u64.pow(i);
        let lam = lambda(i)?;
        let table = cphi6_series::<BigInt>((step * (terms as u64 - 1) + lam + 1) as usize)?;
        got.require_prec(terms)?;
        for n in 0..terms {
            let want = &table[(step * n as u64 + lam) as usize];
            let have = got.coeff(n).expect("below precision");
            if &have != want {
                return Ok(Err(format!("n={n}: {have} vs cphi6 = {want}")));
            }
        }
        Ok(Ok(()))
    })();
    Check::new(
        format!("tower/L{i}/cphi6"),
        format!("weighted L_{i} equals sum cphi6({}n+{})q^n for n < {terms}", 3u64.pow(i), lambda(i).unwrap_or(0)),
        "L_alpha and cphi6 progressions",
        outcome.unwrap_or_else(|e| Err(e.to_string())),
    )
}

fn tower_suite(cfg: &Config) -> Vec<Check> {
    let mut checks = vec![l1_check(), l_alpha_check(1, 120), l_alpha_check(2, 120)];
    let f = (1..=30).try_for_each(|s| tower::y_exponent(s).map(drop).map_err(|e| e.to_string()));
    checks.push(Check::new("tower/y-exponent", "f(s) recursion equals closed form, s <= 30", "y-exponent lemma", f));
    checks.extend(worked_examples());
    let cache = cfg.cache_dir.as_deref();
    checks.extend(dcoeff::check_cross_route(cfg.alpha_max.min(3), 20, cache));
    checks
}

/// Every entry with `k ∈ [−1, k_max]`, `m ∈ [0, m_max]`, `n ≤ n_max`
/// satisfies the order and valuation bounds.
pub fn array_bound_checks(k_max: i64, m_max: i64, n_max: i64) -> Vec<Check> {
    let arrays = FundArrays::new(n_max);
    let mut checks = Vec::new();
    for kind in [ArrayKind::A, ArrayKind::B] {
        let outcome = (|| -> Result<std::result::Result<(), String>> {
            let mut count = 0usize;
            for m in 0..=m_max {
                for k in -1..=k_max {
                    let row = arrays.row(kind, k, m)?;
                    count += row.terms().count();
                    let lo = kind.min_n(k);
                    if let Some((n, _)) = row.terms().find(|&(n, _)| n < lo) {
                        return Ok(Err(format!("{}({k},{m},{n}) nonzero below {lo}", kind.tag())));
                    }
                    if let Some((n, v)) = row.first_val_violation(|n| kind.val_bound(k, n)) {
                        return Ok(Err(format!("{}({k},{m},{n}) has val3 {v}", kind.tag())));
                    }
                }
            }
            Ok(if count == 0 { Err("no entries".into()) } else { Ok(()) })
        })();
        let (ord, val) = match kind {
            ArrayKind::A => ("(k-3)/3", "(2n-k+3)/3"),
            ArrayKind::B => ("(k-1)/3", "(2n-k+2)/3"),
        };
        checks.push(Check::new(
            format!("arrays/{}/bounds", kind.tag()),
            format!(
                "{}(k,m,n): zero below ceil({ord}), val3 >= floor({val}); k <= {k_max}, m <= {m_max}, n <= {n_max}",
                kind.tag()
            ),
            "fundamental-relation lemma",
            outcome.unwrap_or_else(|e| Err(e.to_string())),
        ));
    }
    let v = arrays.violations();
    checks.push(Check::new(
        "arrays/insertion",
        "no bound violation recorded while building rows",
        "fundamental-relation lemma",
        v.first().map_or(Ok(()), |w| Err(w.clone())),
    ));
    checks
}

/// Peeled q-series rows agree with the recurrence rows.
pub fn duality_checks(k_max: i64, m_max: i64) -> Vec<Check> {
    let max_deg = 60;
    let arrays = FundArrays::new(max_deg);
    let mut cases = Vec::new();
    for kind in [ArrayKind::A, ArrayKind::B] {
        for m in 0..=m_max {
            for k in -1..=k_max {
                cases.push((kind, k, m));
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(kind, k, m)| {
            let outcome = arrays.row(kind, k, m).map_err(|e| e.to_string()).and_then(|row| {
                let peel = fundamental_row(kind, k, m, max_deg).map_err(|e| e.to_string())?;
                diff_polys(&row, &peel.poly.truncated(max_deg))
            });
            outcome.err().map(|w| format!("{}({k},{m}): {w}", kind.tag()))
        })
        .collect();
    vec![Check::new(
        "arrays/duality",
        format!("peeled U_A/U_B rows equal recurrence rows for k <= {k_max}, m <= {m_max}"),
        "fundamental-relation lemma",
        bad.first().map_or(Ok(()), |w| Err(w.clone())),
    )]
}

fn arrays_suite(cfg: &Config) -> Vec<Check> {
    let mut checks = array_bound_checks(10, cfg.m_max, 15);
    checks.extend(duality_checks(4, cfg.m_max.min(6)));
    checks
}

fn lemma_suite(cfg: &Config) -> Vec<Check> {
    let mut checks = dcoeff::check_main_lemma(cfg.alpha_max, cfg.n_max as i64, cfg.cache_dir.as_deref());
    checks.extend(dcoeff::check_divisibility_recurrences(cfg.m_max.max(3)));
    checks
}

fn theorem_suite<C: Coefficient>(cfg: &Config) -> Vec<Check> {
    frob6::check_theorem::<C>(cfg.alpha_max, cfg.n_max)
        .unwrap_or_else(|e| vec![Check::new("theorem", "cphi6 progressions", "main theorem", Err(e.to_string()))])
}

fn known_suite<C: Coefficient>(cfg: &Config) -> Vec<Check> {
    let mut checks = frob6::check_known_congruences::<C>(cfg.n_max, KNOWN_TABLE_LEN)
        .unwrap_or_else(|e| vec![Check::new("known", "literature congruences", "known congruences", Err(e.to_string()))]);
    checks.extend(frob6::check_oracles(41, 6));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ORDERED {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(Config::default().validate().is_ok());
        let bad = Config {
            precision: 10,
            ..Config::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn group1_suite_passes() {
        let cfg = Config {
            precision: 64,
            ..Config::default()
        };
        assert!(run_suite(Suite::Group1, &cfg).passed());
    }
}
