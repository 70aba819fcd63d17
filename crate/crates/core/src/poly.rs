//! Laurent polynomials in a single generator (here always `t` or `y`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::scalar::{val3, Coefficient, Val};
use crate::series::Series;

/// Dense Laurent polynomial with an optional truncation cap: when `cap` is
/// `Some(d)`, only the terms of degree `≤ d` are meaningful.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C> {
    low: i64,
    coeffs: Vec<C>,
    cap: Option<i64>,
}

pub type TPoly = LaurentPoly<BigInt>;

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
            cap: None,
        }
    }

    pub fn from_dense(low: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPoly {
            low,
            coeffs,
            cap: None,
        };
        p.trim();
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().expect("nonempty");
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize].add_ref(&c);
        }
        Self::from_dense(lo, coeffs)
    }

    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, C::from_i64(c))))
    }

    pub fn monomial(c: C, e: i64) -> Self {
        Self::from_dense(e, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        if let Some(d) = self.cap {
            let keep = (d - self.low + 1).max(0) as usize;
            if keep < self.coeffs.len() {
                self.coeffs.truncate(keep);
                self.trim();
            }
        }
    }

    /// Drop every term above degree `d` and remember the cap.
    pub fn truncated(&self, d: i64) -> Self {
        let mut p = self.clone();
        p.cap = Some(self.cap.map_or(d, |c| c.min(d)));
        p.trim();
        p
    }

    pub fn cap(&self) -> Option<i64> {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> C {
        if e < self.low || e >= self.low + self.coeffs.len() as i64 {
            C::zero()
        } else {
            self.coeffs[(e - self.low) as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn to_map(&self) -> BTreeMap<i64, C> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    fn merged_cap(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            let mut p = self.clone();
            p.cap = Self::merged_cap(self.cap, other.cap);
            p.trim();
            return p;
        }
        if self.is_zero() {
            let mut p = if negate { other.neg() } else { other.clone() };
            p.cap = Self::merged_cap(self.cap, other.cap);
            p.trim();
            return p;
        }
        let lo = self.low.min(other.low);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + i].add_ref(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - lo) as usize + i];
            if negate {
                slot.sub_ref(c);
            } else {
                slot.add_ref(c);
            }
        }
        let mut p = LaurentPoly {
            low: lo,
            coeffs,
            cap: Self::merged_cap(self.cap, other.cap),
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            cap: self.cap,
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut p = LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(k)).collect(),
            cap: self.cap,
        };
        p.trim();
        p
    }

    /// Product. A capped factor stays exact up to its cap plus the other
    /// factor's lowest exponent; the result is capped accordingly.
    pub fn mul(&self, other: &Self) -> Self {
        let cap = match (self.cap, other.cap) {
            (None, None) => None,
            (Some(c), None) => Some(c + other.min_exp().unwrap_or(0)),
            (None, Some(c)) => Some(c + self.min_exp().unwrap_or(0)),
            (Some(a), Some(b)) => Some((a + other.min_exp().unwrap_or(0)).min(b + self.min_exp().unwrap_or(0))),
        };
        if self.is_zero() || other.is_zero() {
            return LaurentPoly {
                low: 0,
                coeffs: Vec::new(),
                cap,
            };
        }
        let low = self.low + other.low;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(c) = cap {
            len = len.min((c - low + 1).max(0) as usize);
        }
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            let upto = (len - i).min(other.coeffs.len());
            for (slot, b) in coeffs[i..i + upto].iter_mut().zip(&other.coeffs[..upto]) {
                slot.add_mul(a, b);
            }
        }
        let mut p = LaurentPoly { low, coeffs, cap };
        p.trim();
        p
    }

    pub fn mul_capped(&self, other: &Self, cap: i64) -> Self {
        self.truncated(cap - other.min_exp().unwrap_or(0).min(0)).mul(other).truncated(cap)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::monomial(C::one(), 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute a q-series for the variable. `x` must have ord 1 when the
    /// polynomial has negative exponents (so that `x` is invertible).
    pub fn eval_series(&self, x: &Series<C>) -> Result<Series<C>> {
        if self.is_zero() {
            return Ok(Series::zero(x.prec()));
        }
        let lo = self.low;
        let hi = self.max_exp().expect("nonzero");
        // Horner on the nonnegative shift, then multiply by x^lo.
        // constants are exact; any bound past the final precision will do
        let exact = x.prec().abs() + (x.relative_prec() + 1) * (hi - lo + 1) + 16;
        let mut acc = Series::monomial(self.coeff(hi), 0, exact);
        for e in (lo..hi).rev() {
            acc = acc.mul(x).add(&Series::monomial(self.coeff(e), 0, exact));
        }
        let base = x.pow(lo)?;
        Ok(acc.mul(&base))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut p = LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(f).collect(),
            cap: self.cap,
        };
        p.trim();
        p
    }
}

impl TPoly {
    /// Minimum of `val3(c_n) − bound(n)` style checks: returns the first
    /// exponent whose coefficient violates `val3(c_n) ≥ bound(n)`.
    pub fn first_val_violation(&self, bound: impl Fn(i64) -> i64) -> Option<(i64, Val)> {
        self.terms()
            .map(|(e, c)| (e, val3(c)))
            .find(|&(e, v)| !v.at_least(bound(e)))
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{c}*t^{e}")).collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        if let Some(c) = self.cap {
            write!(f, " (deg<={c})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<BigInt>;

    #[test]
    fn arithmetic() {
        let a = P::from_i64_terms(&[(-1, 1), (0, 27), (1, 3), (2, 9)]);
        let b = P::from_i64_terms(&[(0, 1), (1, 1)]);
        let prod = a.mul(&b);
        assert_eq!(prod, P::from_i64_terms(&[(-1, 1), (0, 28), (1, 30), (2, 12), (3, 9)]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.min_exp(), Some(-1));
        assert_eq!(a.max_exp(), Some(2));
        assert_eq!(b.pow(3), P::from_i64_terms(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
    }

    #[test]
    fn caps_propagate() {
        let a = P::from_i64_terms(&[(0, 1), (1, 1), (5, 7)]).truncated(3);
        assert_eq!(a.max_exp(), Some(1));
        let b = P::from_i64_terms(&[(1, 2), (4, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.cap(), Some(4));
        assert_eq!(ab, P::from_i64_terms(&[(1, 2), (2, 2), (4, 1)]).truncated(4));
    }

    #[test]
    fn eval_on_series() {
        // P(x) with x = q/(1-q)
        let x = Series::<BigInt>::from_i64_terms(&(1..30).map(|n| (n, 1)).collect::<Vec<_>>(), 30);
        let p = P::from_i64_terms(&[(-1, 1), (0, 2), (2, 1)]);
        let v = p.eval_series(&x).unwrap();
        let expect = x.invert().unwrap().add(&Series::monomial(BigInt::from(2), 0, 40)).add(&x.mul(&x));
        assert!(v.agrees_with(&expect).is_ok());
        assert!(v.prec() >= 28);
    }
}
