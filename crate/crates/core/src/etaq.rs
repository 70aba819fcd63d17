//! Dedekind eta quotients, q-Pochhammer products and the named generators.
//!
//! An eta quotient `∏ η(nτ)^e` expands as `q^{Σne/24}` times the pure
//! product `∏ (q^n;q^n)_∞^e`. Only integral prefactors are accepted.
//! Products are built by repeatedly multiplying or dividing a dense
//! accumulator by sparse factors: the pentagonal series for `(q^n;q^n)_∞`
//! and two-term binomials for general Pochhammer symbols.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::series::Series;

/// `∏ η(nτ)^e` as a list of `(n, e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    pub factors: Vec<(u32, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: &[(u32, i64)]) -> Self {
        EtaQuotient {
            factors: factors.to_vec(),
        }
    }

    /// Concatenation of factor lists, i.e. the product of the quotients.
    pub fn times(&self, other: &EtaQuotient) -> EtaQuotient {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        EtaQuotient { factors }
    }

    /// `η(nτ) -> η(mnτ)` for every factor.
    pub fn scaled(&self, m: u32) -> EtaQuotient {
        EtaQuotient {
            factors: self.factors.iter().map(|&(n, e)| (n * m, e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> EtaQuotient {
        EtaQuotient {
            factors: self.factors.iter().map(|&(n, e)| (n, e * k)).collect(),
        }
    }

    /// Same quotient with equal `n` combined and zero exponents dropped.
    pub fn merged(&self) -> EtaQuotient {
        let mut acc: std::collections::BTreeMap<u32, i64> = std::collections::BTreeMap::new();
        for &(n, e) in &self.factors {
            *acc.entry(n).or_default() += e;
        }
        EtaQuotient {
            factors: acc.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    /// Exponent of the `q` prefactor, `Σ n·e / 24`.
    pub fn q_order(&self) -> Ratio<i64> {
        let num: i64 = self.factors.iter().map(|&(n, e)| i64::from(n) * e).sum();
        Ratio::new(num, 24)
    }

    pub fn integral_q_order(&self) -> Result<i64> {
        let o = self.q_order();
        if o.is_integer() {
            Ok(o.to_integer())
        } else {
            Err(Error::NonIntegralPrefactor(o.to_string()))
        }
    }

    /// q-expansion, exact for exponents below `prec`.
    pub fn expand<C: Coefficient>(&self, prec: i64) -> Result<Series<C>> {
        let ord = self.integral_q_order()?;
        let len = prec - ord;
        Ok(eta_product::<C>(&self.factors, len).shift(ord))
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(n, e)| format!("{n}:{e}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for EtaQuotient {
    type Err = Error;

    /// Comma-separated `n:e` pairs; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty eta quotient".into()));
        }
        let mut factors = Vec::new();
        for item in cleaned.split(',') {
            let (n, e) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `n:e`, got `{item}`")))?;
            let n: u32 = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad eta index `{n}`")))?;
            if n == 0 {
                return Err(Error::Parse("eta index must be positive".into()));
            }
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?;
            factors.push((n, e));
        }
        Ok(EtaQuotient { factors })
    }
}

/// Sparse `(q^n;q^n)_∞` below `len`: pentagonal exponents `n·k(3k−1)/2`
/// with sign `(−1)^k`.
pub fn pentagonal_terms(n: u32, len: i64) -> Vec<(usize, i64)> {
    let mut out = vec![(0usize, 1i64)];
    let n = i64::from(n);
    let mut k = 1i64;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = n * k * (3 * k - 1) / 2;
        let e2 = n * k * (3 * k + 1) / 2;
        if e1 >= len {
            break;
        }
        out.push((e1 as usize, sign));
        if e2 < len {
            out.push((e2 as usize, sign));
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// `acc *= s` in place, where `s` is sparse with constant term 1.
fn mul_sparse_in_place<C: Coefficient>(acc: &mut [C], s: &[(usize, C)]) {
    for i in (0..acc.len()).rev() {
        let mut v = acc[i].clone();
        for (k, c) in s.iter().skip(1) {
            if *k > i {
                break;
            }
            v.add_mul(c, &acc[i - k]);
        }
        acc[i] = v;
    }
}

/// `acc /= s` in place, where `s` is sparse with constant term 1.
fn div_sparse_in_place<C: Coefficient>(acc: &mut [C], s: &[(usize, C)]) {
    for i in 0..acc.len() {
        let mut v = acc[i].clone();
        for (k, c) in s.iter().skip(1) {
            if *k > i {
                break;
            }
            v.sub_mul(c, &acc[i - k]);
        }
        acc[i] = v;
    }
}

fn apply_sparse<C: Coefficient>(acc: &mut [C], s: &[(usize, C)], e: i64) {
    for _ in 0..e.unsigned_abs() {
        if e > 0 {
            mul_sparse_in_place(acc, s);
        } else {
            div_sparse_in_place(acc, s);
        }
    }
}

/// `∏ (q^n;q^n)_∞^e`, ord 0, known below `len`.
pub fn eta_product<C: Coefficient>(factors: &[(u32, i64)], len: i64) -> Series<C> {
    if len <= 0 {
        return Series::zero(len.max(0));
    }
    let mut acc = vec![C::zero(); len as usize];
    acc[0] = C::one();
    mul_eta_in_place(&mut acc, factors);
    Series::from_coeffs(0, acc, len)
}

/// Multiply the power series `acc` (index = exponent) by
/// `∏ (q^n;q^n)_∞^e` in place.
pub fn mul_eta_in_place<C: Coefficient>(acc: &mut [C], factors: &[(u32, i64)]) {
    let len = acc.len() as i64;
    for &(n, e) in factors {
        if e == 0 {
            continue;
        }
        let s: Vec<(usize, C)> = pentagonal_terms(n, len)
            .into_iter()
            .map(|(k, c)| (k, C::from_i64(c)))
            .collect();
        apply_sparse(acc, &s, e);
    }
}

/// One factor `(sign·q^b; q^c)_∞^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PochFactor {
    pub sign: i8,
    pub b: u32,
    pub c: u32,
    pub e: i64,
}

/// `∏ (±q^b; q^c)_∞^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PochProduct {
    pub factors: Vec<PochFactor>,
}

impl PochProduct {
    pub fn new(factors: &[(i8, u32, u32, i64)]) -> Result<Self> {
        let mut out = Vec::with_capacity(factors.len());
        for &(sign, b, c, e) in factors {
            if c == 0 {
                return Err(Error::InvalidArgument("Pochhammer step c must be >= 1".into()));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidArgument("Pochhammer sign must be ±1".into()));
            }
            out.push(PochFactor { sign, b, c, e });
        }
        Ok(PochProduct { factors: out })
    }

    /// `φ(q) = (−q;q²)²_∞ (q²;q²)_∞`
    pub fn phi() -> Self {
        Self::new(&[(-1, 1, 2, 2), (1, 2, 2, 1)]).expect("valid factors")
    }

    /// `ψ(q) = (−q;q²)_∞ (q⁴;q⁴)_∞`
    pub fn psi() -> Self {
        Self::new(&[(-1, 1, 2, 1), (1, 4, 4, 1)]).expect("valid factors")
    }

    /// Exact expansion below `prec` (the product has ord ≥ 0).
    pub fn expand<C: Coefficient>(&self, prec: i64) -> Result<Series<C>> {
        let len = prec.max(0);
        let mut acc = vec![C::zero(); len as usize];
        if len == 0 {
            return Ok(Series::zero(0));
        }
        acc[0] = C::one();
        for f in &self.factors {
            if f.e == 0 {
                continue;
            }
            if f.sign == 1 && f.b == f.c {
                let s: Vec<(usize, C)> = pentagonal_terms(f.c, len)
                    .into_iter()
                    .map(|(k, c)| (k, C::from_i64(c)))
                    .collect();
                apply_sparse(&mut acc, &s, f.e);
                continue;
            }
            let mut m = 0i64;
            loop {
                let exp = i64::from(f.b) + i64::from(f.c) * m;
                if exp >= len {
                    break;
                }
                if exp == 0 {
                    // constant factor 1 − sign
                    let k = C::from_i64(1 - i64::from(f.sign));
                    let k = if f.e > 0 {
                        num_traits::pow(k, f.e as usize)
                    } else {
                        let inv = k.unit_inverse().ok_or_else(|| Error::NonUnit(k.to_string()))?;
                        num_traits::pow(inv, (-f.e) as usize)
                    };
                    for a in acc.iter_mut() {
                        *a = a.mul_ref(&k);
                    }
                } else {
                    let s = vec![(0usize, C::one()), (exp as usize, C::from_i64(-i64::from(f.sign)))];
                    apply_sparse(&mut acc, &s, f.e);
                }
                m += 1;
            }
        }
        Ok(Series::from_coeffs(0, acc, len))
    }
}

/// Named objects of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    T,
    Y,
    P0,
    P1,
    A,
    B,
    L0,
    WeightOdd,
    WeightEven,
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::T,
        Generator::Y,
        Generator::P0,
        Generator::P1,
        Generator::A,
        Generator::B,
        Generator::L0,
        Generator::WeightOdd,
        Generator::WeightEven,
    ];

    /// Eta-quotient definition; `None` for `L0` (a sum of quotients).
    /// The weights are pure products, so their q-prefactor is not integral
    /// and is dropped: they expand with ord 0.
    pub fn eta(self) -> Option<EtaQuotient> {
        let f: &[(u32, i64)] = match self {
            Generator::T => &[(12, 4), (2, 2), (6, -2), (4, -4)],
            Generator::Y => &[(4, 3), (3, 1), (12, -1), (1, -3)],
            Generator::P0 => &[(12, 4), (3, 12), (2, 8), (6, -8), (4, -12), (1, -4)],
            Generator::P1 => &[(12, 2), (3, 6), (2, 4), (6, -4), (4, -6), (1, -2)],
            Generator::A => &[(9, 9), (4, 2), (2, 5), (36, -2), (18, -5), (1, -9)],
            Generator::B => &[(9, 1), (2, 2), (18, -2), (1, -1)],
            Generator::WeightOdd => &[(1, 1), (3, 9), (2, -2), (6, -5), (12, -2)],
            Generator::WeightEven => &[(1, 9), (3, 1), (2, -5), (4, -2), (6, -2)],
            Generator::L0 => return None,
        };
        Some(EtaQuotient::new(f))
    }

    /// The two eta quotients summed (with 24) to form `L0`.
    pub fn l0_parts() -> (EtaQuotient, EtaQuotient) {
        (
            EtaQuotient::new(&[(12, 5), (3, 1), (2, 8), (24, -2), (8, -2), (6, -4), (4, -3), (1, -3)]),
            EtaQuotient::new(&[(24, 2), (8, 2), (3, 1), (2, 10), (12, -1), (6, -2), (4, -9), (1, -3)]),
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::T => "t",
            Generator::Y => "y",
            Generator::P0 => "p0",
            Generator::P1 => "p1",
            Generator::A => "A",
            Generator::B => "B",
            Generator::L0 => "L0",
            Generator::WeightOdd => "weight_odd",
            Generator::WeightEven => "weight_even",
        }
    }

    /// Expansion exact below `prec`.
    pub fn expand<C: Coefficient>(self, prec: i64) -> Result<Series<C>> {
        match self {
            Generator::L0 => {
                let (e1, e3) = Self::l0_parts();
                let a = e1.expand::<C>(prec)?;
                let b = e3.expand::<C>(prec)?.scale_i64(4);
                Ok(a.add(&Series::monomial(C::from_i64(24), 0, prec)).add(&b))
            }
            Generator::WeightOdd | Generator::WeightEven => {
                let eq = self.eta().expect("weights are eta products");
                Ok(eta_product::<C>(&eq.factors, prec))
            }
            _ => self.eta().expect("eta generator").expand(prec),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Memoized generator expansions. A cached expansion serves any request
/// at equal or lower precision by truncation.
pub struct GeneratorCache<C> {
    entries: RwLock<HashMap<Generator, Series<C>>>,
}

impl<C: Coefficient> Default for GeneratorCache<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> GeneratorCache<C> {
    pub fn new() -> Self {
        GeneratorCache {
            entries: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, g: Generator, prec: i64) -> Result<Series<C>> {
        if let Some(s) = self.entries.read().expect("cache lock").get(&g) {
            if s.prec() >= prec {
                return Ok(s.truncate(prec));
            }
        }
        let s = g.expand::<C>(prec)?;
        let mut w = self.entries.write().expect("cache lock");
        let keep = w.get(&g).is_none_or(|old| old.prec() < s.prec());
        if keep {
            w.insert(g, s.clone());
        }
        Ok(s)
    }

    /// Expansion with `rel` known coefficients past its valuation.
    pub fn get_relative(&self, g: Generator, rel: i64) -> Result<Series<C>> {
        let ord = match g.eta() {
            Some(eq) if !matches!(g, Generator::WeightOdd | Generator::WeightEven) => eq.integral_q_order()?,
            _ if g == Generator::L0 => -1,
            _ => 0,
        };
        self.get(g, ord + rel)
    }
}

/// Process-wide cache for coefficient ring `C`.
pub fn shared_cache<C: Coefficient>() -> Arc<GeneratorCache<C>> {
    type Caches = Mutex<HashMap<TypeId, Arc<dyn Any + Send + Sync>>>;
    static CACHES: OnceLock<Caches> = OnceLock::new();
    let mut map = CACHES.get_or_init(Default::default).lock().expect("cache registry");
    let entry = map
        .entry(TypeId::of::<C>())
        .or_insert_with(|| Arc::new(GeneratorCache::<C>::new()));
    Arc::clone(entry).downcast::<GeneratorCache<C>>().expect("registry keyed by type")
}

/// Expansion of `g` with `rel` known coefficients past its valuation, served
/// from the shared cache.
pub fn generator<C: Coefficient>(g: Generator, rel: i64) -> Result<Series<C>> {
    shared_cache::<C>().get_relative(g, rel)
}
