//! Truncated Laurent series in `q` with dense coefficient storage.
//!
//! A [`Series`] knows its coefficients exactly for exponents `n < prec`;
//! everything at or above `prec` is unknown (`O(q^prec)`). Storage starts at
//! the first nonzero coefficient, so `ord()` is the true valuation. The zero
//! series is an empty window (`start == prec`) and has no `ord`.
//!
//! Every operation propagates precision pessimistically: a result never
//! claims a coefficient its operands do not determine.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Mod3k};

#[derive(Clone, PartialEq)]
pub struct Series<C> {
    start: i64,
    prec: i64,
    coeffs: Vec<C>,
}

/// First exponent where two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub exponent: i64,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}: {} vs {}", self.exponent, self.left, self.right)
    }
}

fn ceil_div(a: i64, m: i64) -> i64 {
    a.div_euclid(m) + i64::from(a.rem_euclid(m) != 0)
}

impl<C: Coefficient> Series<C> {
    /// Series with `coeffs[i]` at exponent `ord + i`, known below `prec`.
    /// Coefficients at or beyond `prec` are dropped; missing ones are zero.
    pub fn from_coeffs(ord: i64, coeffs: Vec<C>, prec: i64) -> Self {
        let mut coeffs = coeffs;
        let len = (prec - ord).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, C::zero());
        let start = if prec < ord { prec } else { ord };
        let mut s = Series { start, prec, coeffs };
        s.normalize();
        s
    }

    pub fn from_terms(terms: &[(i64, C)], prec: i64) -> Self {
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(prec);
        };
        let lo = lo.min(prec);
        let mut coeffs = vec![C::zero(); (prec - lo).max(0) as usize];
        for (e, c) in terms {
            if *e < prec {
                coeffs[(e - lo) as usize].add_ref(c);
            }
        }
        Self::from_coeffs(lo, coeffs, prec)
    }

    pub fn from_i64_terms(terms: &[(i64, i64)], prec: i64) -> Self {
        let t: Vec<(i64, C)> = terms.iter().map(|&(e, c)| (e, C::from_i64(c))).collect();
        Self::from_terms(&t, prec)
    }

    pub fn zero(prec: i64) -> Self {
        Series {
            start: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(C::one(), 0, prec)
    }

    pub fn monomial(c: C, exp: i64, prec: i64) -> Self {
        Self::from_coeffs(exp, vec![c], prec)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(i) => {
                self.coeffs.drain(..i);
                self.start += i as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.prec;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation (exponent of the first nonzero coefficient).
    pub fn ord(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.start)
    }

    /// Lower bound on the valuation; equals `prec` for the zero series.
    pub fn val_lower(&self) -> i64 {
        self.start
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Number of known coefficients from the valuation on.
    pub fn relative_prec(&self) -> i64 {
        self.prec - self.start
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Dense coefficients from `ord()` to `prec - 1`.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `q^n`, or `None` if `n` is beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<C> {
        if n >= self.prec {
            None
        } else if n < self.start {
            Some(C::zero())
        } else {
            Some(self.coeffs[(n - self.start) as usize].clone())
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn require_prec(&self, needed: i64) -> Result<()> {
        if self.prec < needed {
            Err(Error::PrecisionShortfall {
                needed,
                available: self.prec,
            })
        } else {
            Ok(())
        }
    }

    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let keep = (prec - self.start).max(0) as usize;
        Self::from_coeffs(self.start.min(prec), self.coeffs[..keep.min(self.coeffs.len())].to_vec(), prec)
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: i64) -> Self {
        Series {
            start: self.start + s,
            prec: self.prec + s,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::from_coeffs(self.start, self.coeffs.iter().map(f).collect(), self.prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec.min(other.prec);
        let start = self.start.min(other.start).min(prec);
        let len = (prec - start) as usize;
        let mut out = vec![C::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.start + i as i64;
            if e >= prec {
                break;
            }
            out[(e - start) as usize].add_ref(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.start + i as i64;
            if e >= prec {
                break;
            }
            let slot = &mut out[(e - start) as usize];
            if negate {
                slot.sub_ref(c);
            } else {
                slot.add_ref(c);
            }
        }
        Self::from_coeffs(start, out, prec)
    }

    pub fn neg(&self) -> Self {
        Series {
            start: self.start,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.start, self.coeffs.iter().map(|x| x.mul_ref(c)).collect(), self.prec)
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&C::from_i64(c))
    }

    /// Cauchy product. Iterates over the nonzero terms of the sparser factor.
    pub fn mul(&self, other: &Self) -> Self {
        let start = self.start + other.start;
        let prec = (self.start + other.prec).min(other.start + self.prec);
        if self.is_zero() || other.is_zero() || prec <= start {
            return Self::zero(prec);
        }
        let len = (prec - start) as usize;
        let (sparse, dense) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![C::zero(); len];
        for (i, a) in sparse.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            let upto = (len - i).min(dense.coeffs.len());
            for (slot, b) in out[i..i + upto].iter_mut().zip(&dense.coeffs[..upto]) {
                slot.add_mul(a, b);
            }
        }
        Self::from_coeffs(start, out, prec)
    }

    fn unit_lead(&self) -> Result<C> {
        let lead = self.leading().ok_or(Error::ZeroSeries)?;
        lead.unit_inverse().ok_or_else(|| Error::NonUnit(lead.to_string()))
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn invert(&self) -> Result<Self> {
        self.div_impl(&Self::one(self.relative_prec().max(1)))
    }

    /// `self / other`; the leading coefficient of `other` must be a unit.
    pub fn div(&self, other: &Self) -> Result<Self> {
        other.div_impl(self)
    }

    // Computes numer / self.
    fn div_impl(&self, numer: &Self) -> Result<Self> {
        let inv_lead = self.unit_lead()?;
        let o = self.start;
        let start = numer.start - o;
        let prec = (numer.prec - o).min(numer.start + self.relative_prec() - o);
        if numer.is_zero() || prec <= start {
            return Ok(Self::zero(prec.min(numer.prec - o)));
        }
        let len = (prec - start) as usize;
        let tail: Vec<(usize, &C)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out: Vec<C> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = numer.coeffs.get(n).cloned().unwrap_or_else(C::zero);
            for &(k, c) in &tail {
                if k > n {
                    break;
                }
                acc.sub_mul(c, &out[n - k]);
            }
            out.push(acc.mul_ref(&inv_lead));
        }
        Ok(Self::from_coeffs(start, out, prec))
    }

    /// Integer power. Negative exponents require a unit leading coefficient.
    ///
    /// Over torsion-free rings the power is computed in one pass by the
    /// recurrence coming from `f·(f^e)' = e·f'·f^e`; otherwise by
    /// square-and-multiply.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            let rel = if self.is_zero() { self.prec.max(1) } else { self.relative_prec() };
            return Ok(Self::one(rel));
        }
        if self.is_zero() {
            if e < 0 {
                return Err(Error::ZeroSeries);
            }
            return Ok(Self::zero(self.prec * e));
        }
        if e < 0 {
            self.unit_lead()?;
        }
        if C::TORSION_FREE {
            self.pow_recurrence(e)
        } else {
            let base = if e < 0 { self.invert()? } else { self.clone() };
            Ok(base.pow_binary(e.unsigned_abs()))
        }
    }

    fn pow_binary(&self, mut e: u64) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("exponent is positive")
    }

    fn pow_recurrence(&self, e: i64) -> Result<Self> {
        let len = self.relative_prec() as usize;
        let h = &self.coeffs;
        let h0 = &h[0];
        let g0 = if e > 0 {
            num_traits::pow(h0.clone(), e as usize)
        } else {
            num_traits::pow(self.unit_lead()?, (-e) as usize)
        };
        let tail: Vec<(usize, &C)> = h.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut g: Vec<C> = Vec::with_capacity(len);
        g.push(g0);
        for n in 1..len {
            let mut acc = C::zero();
            for &(k, hk) in &tail {
                if k > n {
                    break;
                }
                let w = e * k as i64 - (n - k) as i64;
                if w != 0 {
                    acc.add_mul(&hk.mul_ref(&C::from_i64(w)), &g[n - k]);
                }
            }
            // n·h0·g_n = acc
            let q = acc
                .exact_div_u64(n as u64)
                .ok_or_else(|| Error::InvalidArgument("inexact division in power recurrence".into()))?;
            let q = q
                .exact_div(h0)
                .ok_or_else(|| Error::InvalidArgument("inexact division in power recurrence".into()))?;
            g.push(q);
        }
        let start = self.start * e;
        Ok(Self::from_coeffs(start, g, start + len as i64))
    }

    /// `f(q^m)`: coefficient `n` moves to exponent `m·n`.
    pub fn substitute_q_power(&self, m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::NonPositiveParameter(m));
        }
        let start = self.start * m;
        let prec = self.prec * m;
        let mut out = vec![C::zero(); (prec - start) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * m as usize] = c.clone();
        }
        Ok(Self::from_coeffs(start, out, prec))
    }

    /// Atkin's `U_m`: keeps every `m`-th coefficient, `q^{mn} -> q^n`.
    pub fn u_operator(&self, m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::NonPositiveParameter(m));
        }
        let prec = ceil_div(self.prec, m);
        let start = ceil_div(self.start, m).min(prec);
        let out: Vec<C> = (start..prec)
            .map(|n| {
                let e = n * m;
                self.coeffs[(e - self.start) as usize].clone()
            })
            .collect();
        Ok(Self::from_coeffs(start, out, prec))
    }

    /// Compare with `other` on their common window of known coefficients.
    pub fn agrees_with(&self, other: &Self) -> std::result::Result<(), Divergence> {
        let prec = self.prec.min(other.prec);
        let lo = self.start.min(other.start);
        for n in lo..prec {
            let a = self.coeff(n).expect("below precision");
            let b = other.coeff(n).expect("below precision");
            if a != b {
                return Err(Divergence {
                    exponent: n,
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Zero below `prec`? Returns the first nonzero exponent otherwise.
    pub fn vanishes_below(&self, prec: i64) -> std::result::Result<(), Divergence> {
        self.agrees_with(&Self::zero(prec))
    }
}

impl Series<BigInt> {
    /// Coefficientwise reduction modulo `3^K`.
    pub fn reduce_mod<const K: u32>(&self) -> Series<Mod3k<K>> {
        self.map_coeffs(Mod3k::<K>::from_bigint)
    }
}

impl<C: Coefficient> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().take(12) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*q^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Val;

    type Z = Series<BigInt>;

    fn z(terms: &[(i64, i64)], prec: i64) -> Z {
        Z::from_i64_terms(terms, prec)
    }

    #[test]
    fn add_examples() {
        let s = z(&[(0, 1), (1, 1)], 10).add(&z(&[(0, -1), (2, 1)], 10));
        assert_eq!(s, z(&[(1, 1), (2, 1)], 10));
        let f = z(&[(-1, 3), (4, 2)], 8);
        assert_eq!(f.add(&Z::zero(20)), f);
        let g = f.sub(&f);
        assert!(g.is_zero());
        assert_eq!(g.prec(), 8);
        assert_eq!(g.ord(), None);
    }

    #[test]
    fn add_takes_min_precision() {
        let s = z(&[(0, 1)], 5).add(&z(&[(3, 1)], 20));
        assert_eq!(s.prec(), 5);
        assert_eq!(s.coeff(3), Some(BigInt::from(1)));
        assert_eq!(s.coeff(5), None);
    }

    #[test]
    fn mul_examples() {
        let p = z(&[(0, 1), (1, 1)], 10).mul(&z(&[(0, 1), (1, -1)], 10));
        assert_eq!(p, z(&[(0, 1), (2, -1)], 10));
        let f = z(&[(-2, 5), (0, 1), (3, -7)], 12);
        assert_eq!(f.mul(&Z::one(30)), f);
        // ord_f + prec_g vs ord_g + prec_f
        let a = z(&[(2, 1)], 10);
        let b = z(&[(-1, 1)], 4);
        let ab = a.mul(&b);
        assert_eq!(ab.ord(), Some(1));
        assert_eq!(ab.prec(), 6);
    }

    #[test]
    fn invert_examples() {
        let g = z(&[(0, 1), (1, -1)], 10).invert().unwrap();
        assert_eq!(g, Z::from_i64_terms(&(0..10).map(|n| (n, 1)).collect::<Vec<_>>(), 10));
        let h = z(&[(1, 1), (2, 1)], 11).invert().unwrap();
        assert_eq!(h.ord(), Some(-1));
        let expect: Vec<(i64, i64)> = (0..10).map(|n| (n - 1, if n % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(h, z(&expect, 9));
        assert!(matches!(z(&[(0, 2)], 5).invert(), Err(Error::NonUnit(_))));
        assert!(matches!(Z::zero(5).invert(), Err(Error::ZeroSeries)));
    }

    #[test]
    fn pow_examples() {
        let f = z(&[(0, 1), (1, 1)], 10);
        assert_eq!(f.pow(2).unwrap(), z(&[(0, 1), (1, 2), (2, 1)], 10));
        assert_eq!(f.pow(0).unwrap(), Z::one(10));
        let inv = f.pow(-1).unwrap();
        assert_eq!(inv.mul(&f), Z::one(10));
        // non-unit leading coefficient, positive power
        let g = z(&[(1, 2), (2, 1)], 9);
        assert_eq!(g.pow(3).unwrap(), g.mul(&g).mul(&g));
        assert!(g.pow(-1).is_err());
    }

    #[test]
    fn pow_matches_binary_over_mod_ring() {
        let f = z(&[(0, 1), (1, -4), (3, 7), (4, 2)], 30);
        for e in [-5i64, -1, 1, 2, 7] {
            let exact = f.pow(e).unwrap().reduce_mod::<5>();
            let modular = f.reduce_mod::<5>().pow(e).unwrap();
            assert_eq!(exact, modular, "e = {e}");
        }
    }

    #[test]
    fn substitute_and_u() {
        let f = z(&[(0, 1), (1, 1)], 10);
        assert_eq!(f.substitute_q_power(3).unwrap(), z(&[(0, 1), (3, 1)], 30));
        assert_eq!(f.substitute_q_power(1).unwrap(), f);
        assert!(f.substitute_q_power(0).is_err());
        assert_eq!(z(&[(3, 1)], 12).u_operator(3).unwrap(), z(&[(1, 1)], 4));
        assert!(z(&[(1, 1)], 12).u_operator(3).unwrap().is_zero());
        let g = z(&[(-4, 2), (-3, 5), (0, 1), (6, 9)], 11);
        let u = g.u_operator(3).unwrap();
        assert_eq!(u.ord(), Some(-1));
        assert_eq!(u.prec(), 4);
        assert_eq!(u, z(&[(-1, 5), (0, 1), (2, 9)], 4));
    }

    #[test]
    fn reduce_mod_examples() {
        let f = z(&[(0, 27), (1, 1)], 5);
        assert_eq!(f.reduce_mod::<3>(), Series::<Mod3k<3>>::from_i64_terms(&[(1, 1)], 5));
    }

    #[test]
    fn divergence_witness() {
        let a = z(&[(0, 1), (4, 2)], 10);
        let b = z(&[(0, 1), (4, 3)], 10);
        assert_eq!(a.agrees_with(&b).unwrap_err().exponent, 4);
        assert_eq!(crate::scalar::val3_i64(0), Val::Infinite);
    }
}
