//! Coefficient rings for q-series arithmetic.
//!
//! Two rings are in use: exact integers ([`BigInt`]) and residues modulo
//! `3^K` ([`Mod3k`]). Both implement [`Coefficient`], which layers a few
//! in-place and divisibility primitives on top of the `num-traits` ring
//! traits so that the series code can stay generic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Runtime description of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    ExactInt,
    Mod3K(u32),
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::ExactInt => write!(f, "Z"),
            CoeffRing::Mod3K(k) => write!(f, "Z/3^{k}"),
        }
    }
}

/// A commutative ring usable as a q-series coefficient.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn ring() -> CoeffRing;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self);

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);

    fn add_ref(&mut self, a: &Self);

    fn sub_ref(&mut self, a: &Self);

    fn mul_ref(&self, a: &Self) -> Self;

    /// Multiplicative inverse, if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Exact division by a small positive integer, when the quotient is
    /// well defined in the ring.
    fn exact_div_u64(&self, d: u64) -> Option<Self>;

    /// Exact division, when the quotient is well defined in the ring.
    fn exact_div(&self, d: &Self) -> Option<Self>;

    /// Whether `3^e` divides the value. `None` when the ring cannot decide
    /// (residues mod `3^K` with `e > K`).
    fn divisible_by_pow3(&self, e: u32) -> Option<bool>;

    /// `true` when division by arbitrary nonzero integers is exact in this
    /// ring whenever the true quotient lies in it (i.e. the ring is
    /// torsion-free). Enables the derivative recurrence for powers.
    const TORSION_FREE: bool;
}

impl Coefficient for BigInt {
    const TORSION_FREE: bool = true;

    fn ring() -> CoeffRing {
        CoeffRing::ExactInt
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }

    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    #[inline]
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    #[inline]
    fn add_ref(&mut self, a: &Self) {
        *self += a;
    }

    #[inline]
    fn sub_ref(&mut self, a: &Self) {
        *self -= a;
    }

    #[inline]
    fn mul_ref(&self, a: &Self) -> Self {
        self * a
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn exact_div_u64(&self, d: u64) -> Option<Self> {
        let (q, r) = self.div_rem(&BigInt::from(d));
        r.is_zero().then_some(q)
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn divisible_by_pow3(&self, e: u32) -> Option<bool> {
        Some(match val3(self) {
            Val::Infinite => true,
            Val::Finite(v) => v >= e,
        })
    }
}

/// 3-adic valuation of an integer; `+∞` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Finite(u32),
    Infinite,
}

impl Val {
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Val::Infinite => true,
            Val::Finite(v) => i64::from(v) >= bound,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }
}

impl Add for Val {
    type Output = Val;

    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "inf"),
        }
    }
}

/// Exact 3-adic valuation.
pub fn val3(x: &BigInt) -> Val {
    if x.is_zero() {
        return Val::Infinite;
    }
    // Strip 3^20 at a time before finishing digit by digit.
    const CHUNK: u64 = 3_486_784_401; // 3^20
    let chunk = BigInt::from(CHUNK);
    let mut v = 0u32;
    let mut cur = x.abs();
    loop {
        let (q, r) = cur.div_rem(&chunk);
        if !r.is_zero() {
            break;
        }
        v += 20;
        cur = q;
    }
    let three = BigInt::from(3u8);
    loop {
        let (q, r) = cur.div_rem(&three);
        if !r.is_zero() {
            return Val::Finite(v);
        }
        v += 1;
        cur = q;
    }
}

pub fn val3_i64(x: i64) -> Val {
    val3(&BigInt::from(x))
}

/// Largest K for which residues mod `3^K` fit the single-word representation.
pub const MAX_WORD_K: u32 = 38;

pub const fn pow3_u64(k: u32) -> u64 {
    let mut r = 1u64;
    let mut i = 0;
    while i < k {
        r *= 3;
        i += 1;
    }
    r
}

/// Residue modulo `3^K`, stored reduced in `[0, 3^K)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mod3k<const K: u32>(u64);

impl<const K: u32> Mod3k<K> {
    pub const MODULUS: u64 = {
        assert!(K >= 1 && K <= MAX_WORD_K, "Mod3k requires 1 <= K <= 38");
        pow3_u64(K)
    };

    pub fn new(v: u64) -> Self {
        Mod3k(v % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Symmetric representative in `(-3^K/2, 3^K/2]`.
    pub fn centered(self) -> i64 {
        let m = Self::MODULUS;
        if self.0 > m / 2 {
            self.0 as i64 - m as i64
        } else {
            self.0 as i64
        }
    }

    #[inline]
    fn mul_raw(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % Self::MODULUS as u128) as u64
    }
}

impl<const K: u32> fmt::Debug for Mod3k<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 3^{})", self.0, K)
    }
}

impl<const K: u32> fmt::Display for Mod3k<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const K: u32> Add for Mod3k<K> {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Mod3k(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
}

impl<const K: u32> Sub for Mod3k<K> {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Mod3k(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + Self::MODULUS - rhs.0
        })
    }
}

impl<const K: u32> Mul for Mod3k<K> {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Mod3k(Self::mul_raw(self.0, rhs.0))
    }
}

impl<const K: u32> Neg for Mod3k<K> {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Mod3k(Self::MODULUS - self.0)
        }
    }
}

impl<const K: u32> Zero for Mod3k<K> {
    fn zero() -> Self {
        Mod3k(0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const K: u32> One for Mod3k<K> {
    fn one() -> Self {
        Mod3k(1 % Self::MODULUS)
    }
}

impl<const K: u32> Coefficient for Mod3k<K> {
    const TORSION_FREE: bool = false;

    fn ring() -> CoeffRing {
        CoeffRing::Mod3K(K)
    }

    fn from_i64(v: i64) -> Self {
        let m = Self::MODULUS as i128;
        Mod3k((v as i128).rem_euclid(m) as u64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(Self::MODULUS));
        Mod3k(r.to_u64().expect("reduced residue fits in u64"))
    }

    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }

    #[inline]
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = *self - *a * *b;
    }

    #[inline]
    fn add_ref(&mut self, a: &Self) {
        *self = *self + *a;
    }

    #[inline]
    fn sub_ref(&mut self, a: &Self) {
        *self = *self - *a;
    }

    #[inline]
    fn mul_ref(&self, a: &Self) -> Self {
        *self * *a
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.0.is_multiple_of(3) {
            return None;
        }
        let m = Self::MODULUS as i128;
        let (g, x, _) = ext_gcd(self.0 as i128, m);
        debug_assert_eq!(g, 1);
        Some(Mod3k(x.rem_euclid(m) as u64))
    }

    fn exact_div_u64(&self, d: u64) -> Option<Self> {
        Mod3k::<K>::new(d).unit_inverse().map(|inv| *self * inv)
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.unit_inverse().map(|inv| *self * inv)
    }

    fn divisible_by_pow3(&self, e: u32) -> Option<bool> {
        if e > K {
            return None;
        }
        Some(self.0.is_multiple_of(pow3_u64(e)))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn val3_examples() {
        assert_eq!(val3_i64(36), Val::Finite(2));
        assert_eq!(val3_i64(5751), Val::Finite(4));
        assert_eq!(val3_i64(0), Val::Infinite);
        assert_eq!(val3_i64(-81), Val::Finite(4));
        assert_eq!(val3(&BigInt::from(3u8).pow(47)), Val::Finite(47));
    }

    #[test]
    fn mod_ring_basics() {
        type R = Mod3k<3>;
        assert_eq!(R::MODULUS, 27);
        assert_eq!(R::from_i64(-1).value(), 26);
        assert_eq!((R::from_i64(5) * R::from_i64(11)).value(), 55 % 27);
        let inv = R::from_i64(2).unit_inverse().unwrap();
        assert_eq!((inv * R::from_i64(2)).value(), 1);
        assert!(R::from_i64(3).unit_inverse().is_none());
        assert_eq!(R::from_i64(297).value(), 0);
        assert_eq!(R::from_i64(9).divisible_by_pow3(2), Some(true));
        assert_eq!(R::from_i64(9).divisible_by_pow3(4), None);
        assert_eq!(R::from_i64(-13).centered(), -13);
    }

    #[test]
    fn widest_word_modulus() {
        type R = Mod3k<38>;
        let a = R::from_i64(-2);
        assert_eq!((a * a).value(), 4);
        assert_eq!(R::from_bigint(&BigInt::from(R::MODULUS)).value(), 0);
    }
}
