//! The `U_A`/`U_B` tower `L_α`, the modular-equation data, the fundamental
//! arrays and the `d_n^{(α)}` coefficients.

pub mod arrays;
pub mod dcoeff;
pub mod modeq;

use crate::error::{Error, Result};
use crate::etaq::{generator, shared_cache, Generator};
use crate::reduce::Weight;
use crate::scalar::Coefficient;
use crate::series::Series;

pub use arrays::{FundArrays, Provenance};
pub use dcoeff::{check_divisibility_recurrences, check_main_lemma, d_coeffs_qseries, d_coeffs_symbolic};
pub use modeq::ModEqCoeffs;

/// Which of `A`, `B` multiplies before `U_3`; `A` has ord −3, `B` ord −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    A,
    B,
}

impl Op {
    pub fn generator(self) -> Generator {
        match self {
            Op::A => Generator::A,
            Op::B => Generator::B,
        }
    }

    pub fn ord(self) -> i64 {
        match self {
            Op::A => -3,
            Op::B => -1,
        }
    }

    /// Operator taking `L_{i−1}` to `L_i`.
    pub fn for_index(i: u32) -> Op {
        if i % 2 == 1 {
            Op::A
        } else {
            Op::B
        }
    }

    /// Input precision needed for output precision `prec`.
    pub fn input_prec(self, prec: i64) -> i64 {
        3 * prec - self.ord()
    }
}

/// `U_3(G·f)` with `G` the operator's eta quotient, expanded to match `f`.
pub fn apply_op<C: Coefficient>(op: Op, f: &Series<C>) -> Result<Series<C>> {
    let g = generator::<C>(op.generator(), f.relative_prec().max(1))?;
    g.mul(f).u_operator(3)
}

pub fn apply_ua<C: Coefficient>(f: &Series<C>) -> Result<Series<C>> {
    apply_op(Op::A, f)
}

pub fn apply_ub<C: Coefficient>(f: &Series<C>) -> Result<Series<C>> {
    apply_op(Op::B, f)
}

/// Like [`apply_op`] but insists on reaching precision `prec`.
pub fn apply_op_to<C: Coefficient>(op: Op, f: &Series<C>, prec: i64) -> Result<Series<C>> {
    f.require_prec(op.input_prec(prec))?;
    Ok(apply_op(op, f)?.truncate(prec))
}

/// `L_α` exact below `prec`; each level asks the previous one for about
/// three times the precision.
pub fn l_series<C: Coefficient>(alpha: u32, prec: i64) -> Result<Series<C>> {
    if alpha == 0 {
        return shared_cache::<C>().get(Generator::L0, prec);
    }
    let op = Op::for_index(alpha);
    let prev = l_series::<C>(alpha - 1, op.input_prec(prec))?;
    apply_op_to(op, &prev, prec)
}

/// `f(s)`, the power of `y` in `L_s`: `f(1) = 8`, `f(s) = 3f(s−1)` for even
/// `s` and `3f(s−1)+8` for odd `s`. The recursion is checked against the
/// closed form `3^{s+1}−3` (even) / `3^{s+1}−1` (odd).
pub fn y_exponent(s: u32) -> Result<i64> {
    if s < 1 {
        return Err(Error::InvalidArgument(format!("y_exponent needs s >= 1, got {s}")));
    }
    if s > 37 {
        return Err(Error::InvalidArgument(format!("y_exponent({s}) overflows i64")));
    }
    let mut f = 8i64;
    for i in 2..=s {
        f = 3 * f + if i % 2 == 1 { 8 } else { 0 };
    }
    let closed = 3i64.pow(s + 1) - if s.is_multiple_of(2) { 3 } else { 1 };
    if f != closed {
        return Err(Error::IdentityFailure(format!("f({s}) = {f} but closed form gives {closed}")));
    }
    Ok(f)
}

/// `(weight, y power)` of `L_i = weight·y^{f(i)}·Σ d_n t^n`.
pub fn tower_shape(i: u32) -> Result<(Weight, i64)> {
    if i == 0 {
        return Ok((Weight::One, 0));
    }
    let w = if i % 2 == 1 { Weight::P0 } else { Weight::P1 };
    Ok((w, y_exponent(i)?))
}

/// `Σ_n cφ₆(3^i n + λ_i) q^n` recovered from `L_i` by removing the eta
/// weight (and the `q^{-1}` for odd `i`).
pub fn l_series_to_cphi<C: Coefficient>(i: u32, l: &Series<C>) -> Result<Series<C>> {
    if i == 0 {
        return Err(Error::InvalidArgument("L_0 carries no cphi6 progression".into()));
    }
    let (w, shift) = if i % 2 == 1 {
        (Generator::WeightOdd, 1)
    } else {
        (Generator::WeightEven, 0)
    };
    let weight = generator::<C>(w, l.prec() + shift)?;
    l.shift(shift).div(&weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appendix::{terms_to_poly, L0_TERMS};
    use crate::ZSeries;

    #[test]
    fn y_exponents() {
        assert_eq!(y_exponent(1).unwrap(), 8);
        assert_eq!(y_exponent(2).unwrap(), 24);
        assert_eq!(y_exponent(3).unwrap(), 80);
        assert_eq!(y_exponent(4).unwrap(), 240);
        for s in 1..=30 {
            y_exponent(s).unwrap();
        }
        assert!(y_exponent(0).is_err());
    }

    #[test]
    fn l0_is_its_polynomial() {
        let t: ZSeries = generator(Generator::T, 60).unwrap();
        let l0: ZSeries = l_series(0, 50).unwrap();
        let p = terms_to_poly(L0_TERMS).eval_series(&t).unwrap();
        assert!(l0.agrees_with(&p).is_ok());
    }

    #[test]
    fn ua_of_zero_is_zero() {
        let z = ZSeries::zero(30);
        assert!(apply_ua(&z).unwrap().is_zero());
    }

    #[test]
    fn precision_is_tracked() {
        let l: ZSeries = l_series(2, 20).unwrap();
        assert_eq!(l.prec(), 20);
        let l0: ZSeries = l_series(0, 20).unwrap();
        assert!(apply_op_to(Op::A, &l0, 10).is_err());
    }
}
