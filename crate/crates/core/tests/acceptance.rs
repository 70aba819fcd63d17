//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cphi6_core::frob6::{check_known_congruences, check_oracles, check_theorem};
use cphi6_core::reduce::{appendix_series_checks, group1_checks, rediscover_appendix};
use cphi6_core::tower::dcoeff::{check_cross_route, check_divisibility_recurrences, check_main_lemma};
use cphi6_core::tower::modeq::{check_u3_t, check_u3_tinv, verify_modeq_t, verify_modeq_y};
use cphi6_core::verify::{array_bound_checks, l1_check, l_alpha_check, worked_examples, KNOWN_TABLE_LEN};
use cphi6_core::{Check, Mod3k};
use support::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_pass(checks: Vec<Check>) -> Outcome {
    let n = checks.len();
    if n == 0 {
        return Err("no checks ran".into());
    }
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.id, c.witness.as_deref().unwrap_or("")))
        .collect();
    if bad.is_empty() {
        Ok(format!("{n} checks"))
    } else {
        Err(bad.join("; "))
    }
}

fn flat(id: &str, r: cphi6_core::Result<Result<(), String>>) -> Check {
    Check::new(id, id, "", r.unwrap_or_else(|e| Err(e.to_string())))
}

fn within(limit: Duration, start: Instant, out: Outcome) -> Outcome {
    let took = start.elapsed();
    out.and_then(|s| {
        if took <= limit {
            Ok(format!("{s}, {took:.1?}"))
        } else {
            Err(format!("{s} but took {took:.1?} > {limit:?}"))
        }
    })
}

fn c1() -> Outcome {
    let t = Instant::now();
    within(Duration::from_secs(1), t, all_pass(group1_checks(200)))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let mut checks = appendix_series_checks(200);
    checks.extend(rediscover_appendix(200));
    if checks.len() != 36 {
        return Err(format!("expected 36 checks, got {}", checks.len()));
    }
    within(Duration::from_secs(30), t, all_pass(checks))
}

fn c3() -> Outcome {
    all_pass(vec![
        flat("modeq/t@300", verify_modeq_t(300)),
        flat("modeq/y@300", verify_modeq_y(300)),
        flat("u3/t@200", check_u3_t(200)),
        flat("u3/t^-1@200", check_u3_tinv(200)),
    ])
}

fn c4() -> Outcome {
    all_pass(vec![l1_check(), l_alpha_check(1, 120), l_alpha_check(2, 120)])
}

fn c5() -> Outcome {
    all_pass(worked_examples())
}

fn c6() -> Outcome {
    let t = Instant::now();
    let checks = check_theorem::<Mod3k<12>>(5, 100).map_err(|e| e.to_string())?;
    within(Duration::from_secs(300), t, all_pass(checks))
}

fn c7() -> Outcome {
    let t = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut checks = check_main_lemma(5, 30, Some(dir.path()));
    checks.extend(check_cross_route(3, 20, None));
    within(Duration::from_secs(600), t, all_pass(checks))
}

fn c8() -> Outcome {
    all_pass(array_bound_checks(10, 30, 15))
}

fn c9() -> Outcome {
    all_pass(check_divisibility_recurrences(100))
}

fn c10() -> Outcome {
    let t = Instant::now();
    let checks = check_known_congruences::<Mod3k<9>>(500, KNOWN_TABLE_LEN).map_err(|e| e.to_string())?;
    within(Duration::from_secs(600), t, all_pass(checks))
}

fn c11() -> Outcome {
    all_pass(check_oracles(41, 6))
}

fn c12() -> Outcome {
    let runs: [(&str, Result<(), String>); 5] = [
        ("ring axioms", check((series(), series(), series()), |(a, b, c)| ring_axioms(&a, &b, &c))),
        (
            "U_m linearity",
            check((series(), series(), -9i64..9, -9i64..9, 1i64..6), |(f, g, a, b, m)| {
                u_linearity(&f, &g, a, b, m)
            }),
        ),
        ("pull-out", check((series(), series(), 1i64..6), |(f, g, m)| u_pull_out(&f, &g, m))),
        ("peel roundtrip", check(laurent(), |p| peel_roundtrip(&p))),
        ("val3 additivity", check((nonzero(), nonzero()), |(a, b)| val3_additive(a, b))),
    ];
    let bad: Vec<String> = runs.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    if bad.is_empty() {
        Ok(format!("5 properties x {CASES} cases"))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("group I identities at precision 200", c1),
        ("18 appendix relations, series and rediscovery", c2),
        ("modular equations at 300, U_3 identities at 200", c3),
        ("L_1 peel and L_1, L_2 against cphi6", c4),
        ("worked recurrence examples match printed forms", c5),
        ("theorem for alpha 1..5, n <= 100, mod 3^12", c6),
        ("main lemma bounds and cross-route agreement", c7),
        ("fundamental array bounds", c8),
        ("divisibility recurrences for m <= 100", c9),
        ("known congruences mod 3^9", c10),
        ("cphi6 against both oracles", c11),
        ("property suites", c12),
    ];
    let mut failed = 0;
    for (i, (what, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {what} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {what}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
