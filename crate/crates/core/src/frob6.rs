//! `cφ₆(n)`: the generating function, two independent oracles, the
//! progressions `3^α n + λ_α` and the congruence checks.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::etaq::{mul_eta_in_place, EtaQuotient};
use crate::report::Check;
use crate::scalar::Coefficient;

/// `φ(q) = P₂⁵/(P₁²P₄²)` with `P_n = (q^n;q^n)_∞`.
fn phi() -> EtaQuotient {
    EtaQuotient::new(&[(2, 5), (1, -2), (4, -2)])
}

/// `ψ(q) = P₂²/P₁`.
fn psi() -> EtaQuotient {
    EtaQuotient::new(&[(2, 2), (1, -1)])
}

/// The three numerators `(shift, scalar, product)` of
/// `[φ³(q)φ(q²)φ(q⁶) + 24qψ³(q)ψ(q²)ψ(q³) + 4q²φ³(q)ψ(q⁴)ψ(q¹²)] / P₁⁶`.
fn numerators() -> [(usize, i64, EtaQuotient); 3] {
    [
        (0, 1, phi().pow(3).times(&phi().scaled(2)).times(&phi().scaled(6)).merged()),
        (1, 24, psi().pow(3).times(&psi().scaled(2)).times(&psi().scaled(3)).merged()),
        (2, 4, phi().pow(3).times(&psi().scaled(4)).times(&psi().scaled(12)).merged()),
    ]
}

/// `cφ₆(0), …, cφ₆(len−1)` over the ring `C`.
pub fn cphi6_series<C: Coefficient>(len: usize) -> Result<Vec<C>> {
    if len == 0 {
        return Err(Error::NonPositiveParameter(0));
    }
    let mut total = vec![C::zero(); len];
    for (shift, scalar, eq) in numerators() {
        if shift >= len {
            continue;
        }
        let mut part = vec![C::zero(); len - shift];
        part[0] = C::one();
        mul_eta_in_place(&mut part, &eq.factors);
        let k = C::from_i64(scalar);
        for (slot, c) in total[shift..].iter_mut().zip(&part) {
            slot.add_mul(&k, c);
        }
    }
    mul_eta_in_place(&mut total, &[(1, -6)]);
    Ok(total)
}

/// `Q(m) = Σ m_j² + Σ_{i<j} m_i m_j = (|m|² + (Σm)²)/2`.
pub fn quadratic_form(m: &[i64]) -> i64 {
    let sq: i64 = m.iter().map(|x| x * x).sum();
    let s: i64 = m.iter().sum();
    (sq + s * s) / 2
}

/// Smallest eigenvalue of the Gram matrix of `Q`, `(I + J)/2` in dimension
/// `d`: `1/2` for `d ≥ 2`, `1` for `d = 1`.
fn min_eigenvalue(d: usize) -> Ratio<i64> {
    if d <= 1 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(1, 2)
    }
}

/// `Σ_m q^{Q(m)}` over `ℤ^{k−1}`, coefficients below `len`.
pub fn andrews_theta(k: usize, len: usize) -> Vec<BigInt> {
    let d = k - 1;
    let mut theta = vec![BigInt::zero(); len];
    if d == 0 {
        theta[0] = BigInt::from(1);
        return theta;
    }
    let top = len as i64 - 1;
    // Q(m) ≥ λ|m|², so |m_i|² ≤ top/λ
    let r2 = (Ratio::from_integer(top) / min_eigenvalue(d)).floor().to_integer();
    let r = r2.sqrt();
    let mut m = vec![-r; d];
    loop {
        let q = quadratic_form(&m);
        if q <= top {
            theta[q as usize] += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return theta;
            }
            if m[i] < r {
                m[i] += 1;
                break;
            }
            m[i] = -r;
            i += 1;
        }
    }
}

/// `cφ_k(n)` for `n < len` from the lattice sum divided by `(q;q)_∞^k`.
pub fn cphi_oracle_andrews(k: usize, len: usize) -> Vec<BigInt> {
    let mut t = andrews_theta(k, len);
    mul_eta_in_place(&mut t, &[(1, -(k as i64))]);
    t
}

pub fn cphi6_oracle_andrews(len: usize) -> Vec<BigInt> {
    cphi_oracle_andrews(6, len)
}

/// Number of `r`-element sets of colored nonnegative integers (`colors`
/// colors) with value sum `s`, by generating them in decreasing order.
fn count_rows(r: usize, s: u32, colors: u32, below: Option<(u32, u32)>) -> u64 {
    if r == 0 {
        return u64::from(s == 0);
    }
    let mut total = 0;
    for v in 0..=s {
        for c in 0..colors {
            if let Some(b) = below {
                if (v, c) >= b {
                    continue;
                }
            }
            total += count_rows(r - 1, s - v, colors, Some((v, c)));
        }
    }
    total
}

/// Direct count of 6-colored generalized Frobenius symbols of `n`: two rows
/// of equal length `r`, strictly decreasing in (value, color), with
/// `n = r + Σ top + Σ bottom`.
pub fn cphi6_enumerate(n: u32) -> u64 {
    let mut total = 0;
    for r in 1..=n as usize {
        let rest = n - r as u32;
        for s1 in 0..=rest {
            let a = count_rows(r, s1, 6, None);
            if a > 0 {
                total += a * count_rows(r, rest - s1, 6, None);
            }
        }
    }
    total + u64::from(n == 0)
}

/// `λ_α`: `(3^α+1)/4` for odd `α`, `(3^{α+1}+1)/4` for even `α`.
pub fn lambda(alpha: u32) -> Result<u64> {
    if alpha < 1 {
        return Err(Error::InvalidArgument("lambda needs alpha >= 1".into()));
    }
    let e = if alpha % 2 == 1 { alpha } else { alpha + 1 };
    let p = 3u64
        .checked_pow(e)
        .ok_or_else(|| Error::InvalidArgument(format!("lambda({alpha}) overflows u64")))?;
    Ok((p + 1) / 4)
}

/// Modulus exponent of the theorem, `⌊α/2⌋ + 2`.
pub fn theorem_exponent(alpha: u32) -> u32 {
    alpha / 2 + 2
}

/// Largest index `3^α n + λ_α` touched for `α ≤ alpha_max`, `n ≤ n_max`.
pub fn theorem_table_len(alpha_max: u32, n_max: u64) -> Result<usize> {
    let mut top = 0;
    for a in 1..=alpha_max {
        top = top.max(3u64.pow(a) * n_max + lambda(a)?);
    }
    Ok(top as usize + 1)
}

/// `3^e | table[a·n + b]` for `0 ≤ n ≤ n_max`.
fn progression<C: Coefficient>(table: &[C], a: u64, b: u64, n_max: u64, e: u32) -> std::result::Result<(), String> {
    for n in 0..=n_max {
        let idx = (a * n + b) as usize;
        let Some(v) = table.get(idx) else {
            return Err(format!("index {idx} beyond table length {}", table.len()));
        };
        match v.divisible_by_pow3(e) {
            Some(true) => {}
            Some(false) => return Err(format!("n={n}: cphi6({idx}) = {v} in {}", C::ring())),
            None => return Err(format!("{} cannot certify divisibility by 3^{e}", C::ring())),
        }
    }
    Ok(())
}

/// `cφ₆(3^α n + λ_α) ≡ 0 (mod 3^{⌊α/2⌋+2})` for `1 ≤ α ≤ alpha_max`,
/// `0 ≤ n ≤ n_max`, over a precomputed table.
pub fn check_theorem_on<C: Coefficient>(table: &[C], alpha_max: u32, n_max: u64) -> Vec<Check> {
    (1..=alpha_max)
        .map(|a| {
            let e = theorem_exponent(a);
            let outcome = lambda(a)
                .map_err(|err| err.to_string())
                .and_then(|l| progression(table, 3u64.pow(a), l, n_max, e));
            let l = lambda(a).unwrap_or(0);
            Check::new(
                format!("theorem/alpha={a}"),
                format!("3^{e} | cphi6({}n+{l}) for n <= {n_max}", 3u64.pow(a)),
                "main theorem",
                outcome,
            )
        })
        .collect()
}

/// Builds the table mod `3^K` and runs [`check_theorem_on`].
pub fn check_theorem<C: Coefficient>(alpha_max: u32, n_max: u64) -> Result<Vec<Check>> {
    if alpha_max < 1 {
        return Err(Error::InvalidArgument("alpha_max must be >= 1".into()));
    }
    if C::one().divisible_by_pow3(theorem_exponent(alpha_max)).is_none() {
        return Err(Error::InvalidArgument(format!(
            "{} cannot certify 3^{}",
            C::ring(),
            theorem_exponent(alpha_max)
        )));
    }
    let table = cphi6_series::<C>(theorem_table_len(alpha_max, n_max)?)?;
    Ok(check_theorem_on(&table, alpha_max, n_max))
}

/// A congruence family `cφ₆(a n + b) ≡ 0 (mod 3^e)`.
#[derive(Debug, Clone, Copy)]
pub struct Family {
    pub a: u64,
    pub b: u64,
    pub e: u32,
    pub anchor: &'static str,
}

pub const KNOWN_FAMILIES: [Family; 4] = [
    Family { a: 3, b: 2, e: 3, anchor: "cphi6(3n+2) = 0 mod 27" },
    Family { a: 9, b: 7, e: 3, anchor: "cphi6(9n+7) = 0 mod 27" },
    Family { a: 19683, b: 11482, e: 7, anchor: "cphi6(19683n+11482) = 0 mod 3^7" },
    Family { a: 59049, b: 44287, e: 7, anchor: "cphi6(59049n+44287) = 0 mod 3^7" },
];

/// The literature congruences: the two mod-27 families for `n ≤ n_max`,
/// every family at all indices below `table.len()`.
pub fn check_known_on<C: Coefficient>(table: &[C], n_max: u64) -> Vec<Check> {
    KNOWN_FAMILIES
        .iter()
        .map(|f| {
            let available = (table.len() as u64).saturating_sub(f.b + 1) / f.a;
            let upto = if f.e <= 3 { n_max } else { available };
            let outcome = if f.b as usize >= table.len() {
                Err(format!("first index {} beyond table length {}", f.b, table.len()))
            } else {
                progression(table, f.a, f.b, upto, f.e)
            };
            Check::new(
                format!("known/{}n+{}", f.a, f.b),
                format!("3^{} | cphi6({}n+{}) for n <= {upto}", f.e, f.a, f.b),
                f.anchor,
                outcome,
            )
        })
        .collect()
}

/// Table long enough for `n_max` in the mod-27 families and `len` overall.
pub fn check_known_congruences<C: Coefficient>(n_max: u64, len: usize) -> Result<Vec<Check>> {
    let need = len.max(9 * n_max as usize + 8);
    let table = cphi6_series::<C>(need)?;
    Ok(check_known_on(&table, n_max))
}

/// Series route against the lattice oracle and the enumeration oracle.
pub fn check_oracles(andrews_len: usize, enum_max: u32) -> Vec<Check> {
    let series = cphi6_series::<BigInt>(andrews_len.max(enum_max as usize + 1));
    let mut checks = Vec::new();
    let oracle = cphi6_oracle_andrews(andrews_len);
    checks.push(Check::new(
        "oracle/andrews",
        format!("generating function equals the lattice sum for n < {andrews_len}"),
        "Andrews' theta-quotient formula",
        match &series {
            Ok(s) => first_mismatch(&s[..andrews_len], &oracle),
            Err(e) => Err(e.to_string()),
        },
    ));
    let counts: Vec<BigInt> = (0..=enum_max).map(|n| BigInt::from(cphi6_enumerate(n))).collect();
    checks.push(Check::new(
        "oracle/enumeration",
        format!("generating function equals direct symbol count for n <= {enum_max}"),
        "definition of colored Frobenius partitions",
        match &series {
            Ok(s) => first_mismatch(&s[..counts.len()], &counts),
            Err(e) => Err(e.to_string()),
        },
    ));
    checks
}

fn first_mismatch(a: &[BigInt], b: &[BigInt]) -> std::result::Result<(), String> {
    match a.iter().zip(b).position(|(x, y)| x != y) {
        None => Ok(()),
        Some(n) => Err(format!("n={n}: {} vs {}", a[n], b[n])),
    }
}
