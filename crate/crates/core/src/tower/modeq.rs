//! Coefficients of the cubic modular equations satisfied by `t` and `y`
//! over `τ → 3τ`, and the three-term `U_3` recurrences they induce.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::appendix::{terms_to_poly, B1_REWRITE_VARIANT, B_REWRITE_PRINTED};
use crate::error::Result;
use crate::etaq::{generator, Generator};
use crate::poly::{LaurentPoly, TPoly};
use crate::reduce::{ytw_series, Weight};
use crate::scalar::Coefficient;
use crate::series::Series;
use crate::tower::{apply_op, Op};

/// `a_j(t)`, `b_j(y)`, the `s(j,l)` table and the rewrites
/// `b_j(y) = y^{9−3j}·g_j(t)` obtained from `y = 1/(1−3t)`.
#[derive(Debug, Clone)]
pub struct ModEqCoeffs {
    pub a: [TPoly; 3],
    /// Polynomials in `y`.
    pub b: [TPoly; 3],
    pub s_table: BTreeMap<(u8, i64), i64>,
    /// `(power of y, g_j(t))`.
    pub b_rewrite: [(i64, TPoly); 3],
}

impl Default for ModEqCoeffs {
    fn default() -> Self {
        Self::new()
    }
}

fn one_minus_3t_pow(e: u32) -> TPoly {
    TPoly::from_i64_terms(&[(0, 1), (1, -3)]).pow(e)
}

impl ModEqCoeffs {
    pub fn new() -> Self {
        let a = [
            TPoly::from_i64_terms(&[(1, -1)]),
            TPoly::from_i64_terms(&[(2, 3)]),
            TPoly::from_i64_terms(&[(3, -9), (1, 6)]),
        ];
        let b = [
            TPoly::from_i64_terms(&[(3, -1)]),
            TPoly::from_i64_terms(&[(3, 8), (2, -3), (1, -3), (0, 1)]),
            TPoly::from_i64_terms(&[(3, -16), (2, 12), (1, 3), (0, -2)]),
        ];
        let s_table = [((0, 1), -1), ((1, 2), 1), ((2, 1), 2), ((2, 3), -1)].into_iter().collect();
        let b_rewrite = [0, 1, 2].map(|j| (9 - 3 * j as i64, Self::derive_rewrite(j, &b[j])));
        ModEqCoeffs {
            a,
            b,
            s_table,
            b_rewrite,
        }
    }

    /// `g(t)` with `b(y) = y^{9−3j} g(t)`: each `c_i y^i` becomes
    /// `c_i (1−3t)^{9−3j−i}`. Needs `deg b ≤ 9−3j`.
    fn derive_rewrite(j: usize, bj: &TPoly) -> TPoly {
        let top = 9 - 3 * j as i64;
        let mut g = TPoly::zero();
        for (i, c) in bj.terms() {
            g = g.add(&one_minus_3t_pow((top - i) as u32).scale(c));
        }
        g
    }

    /// `Σ_l s(j,l) 3^{⌊(2l+j)/3⌋} t^l`.
    pub fn a_from_s(&self, j: u8) -> TPoly {
        TPoly::from_terms(self.s_table.iter().filter(|((jj, _), _)| *jj == j).map(|(&(_, l), &s)| {
            let e = (2 * l + j as i64).div_euclid(3) as u32;
            (l, BigInt::from(s) * BigInt::from(3u8).pow(e))
        }))
    }

    pub fn check_a_reconstruction(&self) -> std::result::Result<(), String> {
        for j in 0..3u8 {
            let r = self.a_from_s(j);
            if r != self.a[j as usize] {
                return Err(format!("a_{j}: table gives {r}, stored {}", self.a[j as usize]));
            }
        }
        Ok(())
    }

    /// Clear denominators: `(1−3t)^3·b_j(1/(1−3t))·(1−3t)^{6−3j}` must equal
    /// `g_j(t)` as a polynomial.
    pub fn check_rewrite_algebra(&self, j: usize) -> std::result::Result<(), String> {
        let mut cleared = TPoly::zero();
        for (i, c) in self.b[j].terms() {
            cleared = cleared.add(&one_minus_3t_pow((3 - i) as u32).scale(c));
        }
        let lhs = cleared.mul(&one_minus_3t_pow(6 - 3 * j as u32));
        let (_, g) = &self.b_rewrite[j];
        if &lhs == g {
            Ok(())
        } else {
            Err(format!("b_{j}: cleared form {lhs} vs rewrite {g}"))
        }
    }

    /// Same identity as q-series: `b_j(y) = y^{9−3j} g_j(t)` to `prec`.
    pub fn check_rewrite_series(&self, j: usize, prec: i64) -> Result<std::result::Result<(), String>> {
        let y = generator::<BigInt>(Generator::Y, prec)?;
        let t = generator::<BigInt>(Generator::T, prec)?;
        let lhs = self.b[j].eval_series(&y)?;
        let (p, g) = &self.b_rewrite[j];
        let rhs = y.pow(*p)?.mul(&g.eval_series(&t)?);
        Ok(lhs.agrees_with(&rhs).map_err(|d| format!("b_{j}: {d}")))
    }

    /// Does the printed rewrite `b_j = −y^{9−3j}·Q_j(t)` match the derived one?
    pub fn printed_rewrite_matches(&self, j: usize) -> bool {
        terms_to_poly(B_REWRITE_PRINTED[j]).neg() == self.b_rewrite[j].1
    }

    /// The variant of the `b_1` rewrite shown in the derivation of the
    /// `b(−1,m,0)` recurrence.
    pub fn variant_rewrite_matches(&self) -> bool {
        terms_to_poly(B1_REWRITE_VARIANT).neg() == self.b_rewrite[1].1
    }
}

/// `X³ + c₂(Z)X² + c₁(Z)X + c₀(Z)` at `X = x`, `Z = z`.
fn cubic_residual<C: Coefficient>(c: &[LaurentPoly<C>; 3], x: &Series<C>, z: &Series<C>) -> Result<Series<C>> {
    let mut r = x.mul(x).mul(x);
    let mut xp = Series::one(x.prec());
    for cj in c {
        r = r.add(&cj.eval_series(z)?.mul(&xp));
        xp = xp.mul(x);
    }
    Ok(r)
}

/// `t(q)` is a root of `X³ + a₂(t(q³))X² + a₁(t(q³))X + a₀(t(q³))`.
pub fn verify_modeq_t_with(a: &[TPoly; 3], prec: i64) -> Result<std::result::Result<(), String>> {
    let t = generator::<BigInt>(Generator::T, prec)?;
    let t3 = t.substitute_q_power(3)?.truncate(prec);
    let r = cubic_residual(a, &t, &t3)?;
    Ok(check_vanishes(&r, prec))
}

pub fn verify_modeq_t(prec: i64) -> Result<std::result::Result<(), String>> {
    verify_modeq_t_with(&ModEqCoeffs::new().a, prec)
}

/// `y(q)` is a root of `X³ + b₂(y(q³))X² + b₁(y(q³))X + b₀(y(q³))`.
pub fn verify_modeq_y_with(b: &[TPoly; 3], prec: i64) -> Result<std::result::Result<(), String>> {
    let y = generator::<BigInt>(Generator::Y, prec)?;
    let y3 = y.substitute_q_power(3)?.truncate(prec);
    let r = cubic_residual(b, &y, &y3)?;
    Ok(check_vanishes(&r, prec))
}

pub fn verify_modeq_y(prec: i64) -> Result<std::result::Result<(), String>> {
    verify_modeq_y_with(&ModEqCoeffs::new().b, prec)
}

fn check_vanishes<C: Coefficient>(r: &Series<C>, prec: i64) -> std::result::Result<(), String> {
    if r.prec() < prec {
        return Err(format!("residual only known below q^{}", r.prec()));
    }
    r.vanishes_below(prec).map_err(|d| format!("residual nonzero at {d}"))
}

/// `U_3(t) = 3t³ − 2t`.
pub fn check_u3_t(prec: i64) -> Result<std::result::Result<(), String>> {
    let t = generator::<BigInt>(Generator::T, 3 * prec)?;
    let lhs = t.u_operator(3)?;
    let tt = t.truncate(prec);
    let rhs = TPoly::from_i64_terms(&[(3, 3), (1, -2)]).eval_series(&tt)?;
    Ok(compare(&lhs, &rhs, prec))
}

/// `U_3(t^{-1}) = t`.
pub fn check_u3_tinv(prec: i64) -> Result<std::result::Result<(), String>> {
    let t = generator::<BigInt>(Generator::T, 3 * prec + 2)?;
    let lhs = t.invert()?.u_operator(3)?;
    Ok(compare(&lhs, &t.truncate(prec), prec))
}

fn compare<C: Coefficient>(lhs: &Series<C>, rhs: &Series<C>, prec: i64) -> std::result::Result<(), String> {
    if lhs.prec() < prec || rhs.prec() < prec {
        return Err(format!("precision {} / {} below {prec}", lhs.prec(), rhs.prec()));
    }
    lhs.agrees_with(rhs).map_err(|d| d.to_string())
}

/// Variable stepped by a three-term recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    T,
    Y,
}

/// `u = weight·y^m·t^k` under `U_op`.
#[derive(Debug, Clone, Copy)]
pub struct USpec {
    pub op: Op,
    pub weight: Weight,
    pub y_exp: i64,
    pub t_exp: i64,
}

/// `U(u·v^{j+3}) = −Σ_i c_i(v) U(u·v^{j+i})` with `v = t` (`c = a`) or
/// `v = y` (`c = b`), checked as q-series to `prec`.
pub fn three_term_recurrence_check(u: USpec, var: Var, j: i64, prec: i64) -> Result<std::result::Result<(), String>> {
    let eq = ModEqCoeffs::new();
    let input_prec = u.op.input_prec(prec);
    let term = |step: i64| -> Result<Series<BigInt>> {
        let (ye, te) = match var {
            Var::T => (u.y_exp, u.t_exp + j + step),
            Var::Y => (u.y_exp + j + step, u.t_exp),
        };
        Ok(apply_op(u.op, &ytw_series::<BigInt>(u.weight, ye, te, input_prec)?)?.truncate(prec))
    };
    let (coeffs, v) = match var {
        Var::T => (&eq.a, generator::<BigInt>(Generator::T, prec + 1)?),
        Var::Y => (&eq.b, generator::<BigInt>(Generator::Y, prec + 1)?),
    };
    let lhs = term(3)?;
    let mut rhs = Series::zero(prec);
    for (i, c) in coeffs.iter().enumerate() {
        rhs = rhs.sub(&c.eval_series(&v)?.mul(&term(i as i64)?));
    }
    Ok(compare(&lhs, &rhs.truncate(prec), prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_reconstructs_from_s() {
        ModEqCoeffs::new().check_a_reconstruction().unwrap();
    }

    #[test]
    fn rewrites() {
        let eq = ModEqCoeffs::new();
        assert_eq!(eq.b_rewrite[0].1, one_minus_3t_pow(6).neg());
        assert_eq!(
            eq.b_rewrite[2].1,
            TPoly::from_i64_terms(&[(0, -3), (1, -36), (2, -27), (3, 54)])
        );
        for j in 0..3 {
            eq.check_rewrite_algebra(j).unwrap();
            eq.check_rewrite_series(j, 60).unwrap().unwrap();
            assert!(eq.printed_rewrite_matches(j), "b_{j}");
        }
        assert!(!eq.variant_rewrite_matches());
    }

    #[test]
    fn modular_equations() {
        verify_modeq_t(80).unwrap().unwrap();
        verify_modeq_y(80).unwrap().unwrap();
        let mut a = ModEqCoeffs::new().a;
        a[1] = TPoly::from_i64_terms(&[(2, 3), (1, 1)]);
        assert!(verify_modeq_t_with(&a, 80).unwrap().is_err());
    }

    #[test]
    fn u3_identities() {
        check_u3_t(60).unwrap().unwrap();
        check_u3_tinv(60).unwrap().unwrap();
    }

    #[test]
    fn recurrences_as_series() {
        let u = USpec {
            op: Op::A,
            weight: Weight::P1,
            y_exp: 0,
            t_exp: 0,
        };
        three_term_recurrence_check(u, Var::T, -1, 40).unwrap().unwrap();
        let v = USpec {
            op: Op::B,
            weight: Weight::P0,
            y_exp: 0,
            t_exp: -1,
        };
        three_term_recurrence_check(v, Var::Y, 0, 40).unwrap().unwrap();
    }
}
