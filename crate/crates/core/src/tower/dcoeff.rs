//! The coefficients `d_n^{(i)}` of `L_i = weight·y^{f(i)}·Σ d_n t^n`, by the
//! array recurrences and by peeling `L_i` itself.

use std::path::Path;

use num_bigint::BigInt;

use crate::appendix::{relation, terms_to_poly, ArrayKind, L0_TERMS, L1_TERMS};
use crate::error::Result;
use crate::poly::TPoly;
use crate::reduce::{diff_polys, to_yt_form, PEEL_SLACK};
use crate::report::Check;
use crate::scalar::val3;
use crate::tower::{l_series, tower_shape, y_exponent, FundArrays};

/// Degree caps per level so that level `alpha` is exact up to `n_max`:
/// level `i` needs `d^{(i−1)}_k` only for `k ≤ 3n+1` (even `i`) or
/// `k ≤ 3n+3` (odd `i`).
pub fn level_caps(alpha: u32, n_max: i64) -> Vec<i64> {
    let mut caps = vec![0; alpha as usize + 1];
    caps[alpha as usize] = n_max;
    for i in (1..=alpha as usize).rev() {
        caps[i - 1] = 3 * caps[i] + if i % 2 == 0 { 1 } else { 3 };
    }
    caps
}

/// `L_1` from the printed polynomial; every higher level by
/// `d^{(i)}_n = Σ_k d^{(i−1)}_k x(k, f(i−1), n)` with `x = b` for even `i`
/// and `x = a` for odd `i`. Returns levels `0..=alpha`, level `i` exact up
/// to its cap.
pub fn d_tower(alpha: u32, n_max: i64, cache_dir: Option<&Path>) -> Result<Vec<TPoly>> {
    let caps = level_caps(alpha, n_max);
    let mut levels = vec![terms_to_poly(L0_TERMS)];
    if alpha >= 1 {
        levels.push(terms_to_poly(L1_TERMS).truncated(caps[1]));
    }
    for i in 2..=alpha {
        let kind = if i % 2 == 0 { ArrayKind::B } else { ArrayKind::A };
        let m = y_exponent(i - 1)?;
        let mut arrays = FundArrays::new(caps[i as usize]);
        if let Some(dir) = cache_dir {
            arrays = arrays.with_cache_dir(dir);
        }
        let prev = &levels[i as usize - 1];
        let mut next = TPoly::zero().truncated(caps[i as usize]);
        for (k, dk) in prev.terms() {
            next = next.add(&arrays.row(kind, k, m)?.scale(dk));
        }
        arrays.persist()?;
        let bad = arrays.violations();
        if let Some(first) = bad.first() {
            return Err(crate::Error::IdentityFailure(format!("array bound violated: {first}")));
        }
        levels.push(next);
    }
    Ok(levels)
}

/// `d^{(alpha)}_n` for `n ≤ n_max` by the array recurrences.
pub fn d_coeffs_symbolic(alpha: u32, n_max: i64, cache_dir: Option<&Path>) -> Result<TPoly> {
    let levels = d_tower(alpha, n_max, cache_dir)?;
    Ok(levels[alpha as usize].truncated(n_max))
}

/// `d^{(alpha)}_n` for `n ≤ n_max` by expanding `L_alpha`, dividing out
/// `weight·y^{f(alpha)}` and peeling.
pub fn d_coeffs_qseries(alpha: u32, n_max: i64) -> Result<TPoly> {
    let prec = n_max + 1 + PEEL_SLACK;
    let l = l_series::<BigInt>(alpha, prec)?;
    let (w, y_exp) = tower_shape(alpha)?;
    Ok(to_yt_form(&l, y_exp, w, -1, n_max)?.poly.truncated(n_max))
}

/// `⌈i/2⌉`, the `α` of the lemma for tower index `i`.
fn lemma_alpha(i: u32) -> i64 {
    i64::from(i.div_ceil(2))
}

/// Valuation bound on `d^{(i)}_n`, `None` where the lemma says nothing.
pub fn lemma_bound(i: u32, n: i64) -> Option<i64> {
    let a = lemma_alpha(i);
    if n == 0 {
        return Some(a + 2);
    }
    let general = (2 * n + 5).div_euclid(3) + a;
    match (i % 2, n) {
        (1, n) if n >= -1 => Some(general),
        (0, n) if n >= 1 => Some(general),
        _ => None,
    }
}

/// Bounds of the main lemma on the symbolic `d` coefficients for tower
/// indices `1..=index_max`, plus the link to the theorem's modulus.
pub fn check_main_lemma(index_max: u32, n_max: i64, cache_dir: Option<&Path>) -> Vec<Check> {
    let levels = match d_tower(index_max, n_max, cache_dir) {
        Ok(l) => l,
        Err(e) => {
            return vec![Check::new("lemma/tower", "symbolic d coefficients", "main lemma", Err(e.to_string()))];
        }
    };
    let mut checks = Vec::new();
    for i in 1..=index_max {
        let d = &levels[i as usize];
        let a = lemma_alpha(i);
        let upto = d.cap().unwrap_or(n_max);
        let general = d
            .terms()
            .filter(|&(n, _)| n != 0)
            .find_map(|(n, c)| match lemma_bound(i, n) {
                Some(b) if !val3(c).at_least(b) => Some(format!("n={n}: val3({c}) = {} < {b}", val3(c))),
                None => Some(format!("n={n}: unexpected nonzero d = {c}")),
                _ => None,
            });
        let (anchor, from) = if i % 2 == 1 { ("odd index", -1) } else { ("even index", 1) };
        checks.push(Check::new(
            format!("lemma/L{i}/general"),
            format!("val3(d_n) >= floor((2n+5)/3)+{a} for {from} <= n <= {upto}"),
            format!("main lemma ({anchor})"),
            general.map_or(Ok(()), Err),
        ));
        let d0 = d.coeff(0);
        checks.push(Check::new(
            format!("lemma/L{i}/d0"),
            format!("val3(d_0) >= {}", a + 2),
            if i % 2 == 1 { "main lemma, d_0 at odd index" } else { "main lemma, d_0 at even index" },
            if val3(&d0).at_least(a + 2) {
                Ok(())
            } else {
                Err(format!("d_0 = {d0}, val3 {}", val3(&d0)))
            },
        ));
        // every coefficient carries the theorem's modulus
        let modulus = i64::from(i / 2) + 2;
        let weakest = (from.min(0)..=upto).filter_map(|n| lemma_bound(i, n)).min();
        let linkage = if weakest != Some(modulus) {
            Err(format!("weakest bound {weakest:?} differs from {modulus}"))
        } else if let Some((n, c)) = d.terms().find(|(_, c)| !val3(c).at_least(modulus)) {
            Err(format!("d_{n} = {c} not divisible by 3^{modulus}"))
        } else {
            Ok(())
        };
        checks.push(Check::new(
            format!("lemma/L{i}/modulus"),
            format!("all d_n divisible by 3^{modulus}"),
            "main theorem via main lemma",
            linkage,
        ));
    }
    checks
}

/// Symbolic and q-series routes give the same `d` coefficients.
pub fn check_cross_route(index_max: u32, n_max: i64, cache_dir: Option<&Path>) -> Vec<Check> {
    let levels = d_tower(index_max, n_max, cache_dir);
    (0..=index_max)
        .map(|i| {
            let outcome = levels.as_ref().map_err(|e| e.to_string()).and_then(|lv| {
                let sym = lv[i as usize].truncated(n_max);
                let qs = d_coeffs_qseries(i, n_max).map_err(|e| e.to_string())?;
                diff_polys(&sym, &qs)
            });
            Check::new(
                format!("lemma/L{i}/cross-route"),
                format!("symbolic d coefficients equal peeled L_{i} for n <= {n_max}"),
                "main lemma coefficient recurrences",
                outcome,
            )
        })
        .collect()
}

/// The scalar recurrences for `b(−1,m,0)`, `a(0,m,0)`, `a(1,m,0)`, their
/// base values and divisibility by 3.
pub fn check_divisibility_recurrences(m_max: i64) -> Vec<Check> {
    let fa = FundArrays::new(0);
    let mut checks = Vec::new();
    let bases: [(ArrayKind, i64, [i64; 3], &str); 3] = [
        (ArrayKind::B, -1, [12, 36, 69], "b(-1,m,0)"),
        (ArrayKind::A, 0, [285, 600, 1068], "a(0,m,0)"),
        (ArrayKind::A, 1, [66, 108, 159], "a(1,m,0)"),
    ];
    for (kind, k, vals, name) in bases {
        let outcome = (0..3).try_for_each(|m| {
            let printed = relation(kind, k, m).expect("base row").poly().coeff(0);
            if printed != BigInt::from(vals[m as usize]) {
                return Err(format!("m={m}: appendix row gives {printed}, expected {}", vals[m as usize]));
            }
            Ok(())
        });
        checks.push(Check::new(
            format!("divisibility/{name}/base"),
            format!("{name} for m = 0,1,2 is {vals:?}"),
            "appendix base values",
            outcome,
        ));
    }
    let x = |kind, k, m, n| fa.get(kind, k, m, n).map_err(|e| e.to_string());
    let b_rec = (3..=m_max).try_for_each(|m| {
        let lhs = x(ArrayKind::B, -1, m, 0)?;
        let rhs = x(ArrayKind::B, -1, m - 3, 0)? - 3 * x(ArrayKind::B, -1, m - 2, 0)? + 3 * x(ArrayKind::B, -1, m - 1, 0)?;
        (lhs == rhs).then_some(()).ok_or(format!("m={m}: {lhs} vs {rhs}"))
    });
    checks.push(Check::new(
        "divisibility/b(-1,m,0)/recurrence",
        format!("b(-1,m,0) = b(-1,m-3,0) - 3b(-1,m-2,0) + 3b(-1,m-1,0), 3 <= m <= {m_max}"),
        "b(-1,m,0) recurrence",
        b_rec,
    ));
    let a0_rec = (3..=m_max).try_for_each(|m| {
        let a = |mm, n| x(ArrayKind::A, 0, mm, n);
        let lhs = a(m, 0)?;
        let rhs = a(m - 3, 0)? - 18 * a(m - 3, -1)? - 3 * a(m - 2, 0)? + 9 * a(m - 2, -1)? + 3 * a(m - 1, 0)?
            + 36 * a(m - 1, -1)?;
        (lhs == rhs).then_some(()).ok_or(format!("m={m}: {lhs} vs {rhs}"))
    });
    checks.push(Check::new(
        "divisibility/a(0,m,0)/recurrence",
        format!("six-term recurrence for a(0,m,0), 3 <= m <= {m_max}"),
        "a(0,m,0) recurrence",
        a0_rec,
    ));
    let a1_rec = (3..=m_max).try_for_each(|m| {
        let a = |mm| x(ArrayKind::A, 1, mm, 0);
        let lhs = a(m)?;
        let rhs = a(m - 3)? - 3 * a(m - 2)? + 3 * a(m - 1)?;
        (lhs == rhs).then_some(()).ok_or(format!("m={m}: {lhs} vs {rhs}"))
    });
    checks.push(Check::new(
        "divisibility/a(1,m,0)/recurrence",
        format!("a(1,m,0) = a(1,m-3,0) - 3a(1,m-2,0) + 3a(1,m-1,0), 3 <= m <= {m_max}"),
        "a(1,m,0) recurrence",
        a1_rec,
    ));
    for (kind, k, name) in [(ArrayKind::B, -1, "b(-1,m,0)"), (ArrayKind::A, 0, "a(0,m,0)"), (ArrayKind::A, 1, "a(1,m,0)")] {
        let outcome = (0..=m_max).try_for_each(|m| {
            let v = x(kind, k, m, 0)?;
            val3(&v).at_least(1).then_some(()).ok_or(format!("m={m}: {v}"))
        });
        checks.push(Check::new(
            format!("divisibility/{name}/by3"),
            format!("3 | {name} for 0 <= m <= {m_max}"),
            "special bounds of the main lemma",
            outcome,
        ));
    }
    checks
}
