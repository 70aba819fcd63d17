//! Peeling q-series into `(y, t)`-polynomial form and rediscovering the
//! appendix relations.
//!
//! Since `t = q + O(q²)`, the expansion of `t^n` starts at `q^n` with
//! coefficient 1, so the lowest surviving coefficient of a residual is the
//! coefficient of the next power of `t`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::appendix::{terms_to_poly, ArrayKind, Relation, L0_TERMS, RELATIONS};
use crate::error::{Error, Result};
use crate::etaq::{generator, Generator};
use crate::poly::TPoly;
use crate::report::Check;
use crate::scalar::Coefficient;
use crate::series::Series;
use crate::tower::{apply_op, Op};
use crate::ZSeries;

/// Zero coefficients required past the last peeled term before a peel is
/// declared complete.
pub const PEEL_SLACK: i64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    P0,
    P1,
    One,
}

impl Weight {
    pub fn generator(self) -> Option<Generator> {
        match self {
            Weight::P0 => Some(Generator::P0),
            Weight::P1 => Some(Generator::P1),
            Weight::One => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Weight::P0 => "p0",
            Weight::P1 => "p1",
            Weight::One => "1",
        }
    }
}

/// `t^k` exact below `prec`.
pub fn t_power<C: Coefficient>(k: i64, prec: i64) -> Result<Series<C>> {
    let t = generator::<C>(Generator::T, (prec - k).max(1))?;
    Ok(t.pow(k)?.truncate(prec))
}

/// `weight·y^m·t^k` exact below `prec`.
pub fn ytw_series<C: Coefficient>(weight: Weight, y_exp: i64, t_exp: i64, prec: i64) -> Result<Series<C>> {
    let rel = (prec - t_exp).max(1);
    let mut s = t_power::<C>(t_exp, prec)?;
    if y_exp != 0 {
        s = s.mul(&generator::<C>(Generator::Y, rel)?.pow(y_exp)?);
    }
    if let Some(g) = weight.generator() {
        s = s.mul(&generator::<C>(g, rel)?);
    }
    Ok(s.truncate(prec))
}

/// `weight·y^{y_exp}·poly(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct YTForm {
    pub y_exp: i64,
    pub weight: Weight,
    pub poly: TPoly,
}

impl YTForm {
    pub fn expand<C: Coefficient>(&self, prec: i64) -> Result<Series<C>> {
        let lo = self.poly.min_exp().unwrap_or(0).min(0);
        let t = generator::<C>(Generator::T, prec - lo + 1)?;
        let p = self.poly.map_coeffs(C::from_bigint).eval_series(&t)?;
        Ok(ytw_series::<C>(self.weight, self.y_exp, 0, prec)?.mul(&p).truncate(prec))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeelResult {
    pub poly: TPoly,
    /// q-order of the residual when peeling stopped (its precision if it
    /// vanished).
    pub residual_ord: i64,
    pub complete: bool,
}

/// Greedy reduction of `g` to a Laurent polynomial in `t` of degree at most
/// `max_deg`. Coefficients are exact for every degree below the stopping
/// point even when the peel is incomplete.
pub fn peel_t(g: &ZSeries, min_exp: i64, max_deg: i64) -> Result<PeelResult> {
    let mut residual = g.clone();
    let mut terms = Vec::new();
    let mut tp: Option<(i64, ZSeries)> = None;
    let t = generator::<BigInt>(Generator::T, (g.prec() - min_exp.min(0)).max(1) + 1)?;
    loop {
        let Some(o) = residual.ord() else {
            let last = terms.last().map_or(min_exp - 1, |&(e, _)| e);
            let complete = residual.prec() - last > PEEL_SLACK;
            return Ok(PeelResult {
                poly: TPoly::from_terms(terms),
                residual_ord: residual.prec(),
                complete,
            });
        };
        if o < min_exp {
            return Err(Error::BelowMinExponent { found: o, min: min_exp });
        }
        if o > max_deg {
            return Ok(PeelResult {
                poly: TPoly::from_terms(terms),
                residual_ord: o,
                complete: false,
            });
        }
        let c = residual.leading().expect("nonzero residual").clone();
        let power = match tp.take() {
            Some((e, mut s)) if e <= o => {
                for _ in e..o {
                    s = s.mul(&t);
                }
                s
            }
            _ => t.pow(o)?,
        };
        residual = residual.sub(&power.scale(&c));
        terms.push((o, c));
        tp = Some((o, power));
    }
}

/// Divide `f` by `weight·y^{y_exp}` and peel.
pub fn to_yt_form(f: &ZSeries, y_exp: i64, weight: Weight, min_exp: i64, max_deg: i64) -> Result<PeelResult> {
    let rel = f.relative_prec().max(1);
    let mut den = generator::<BigInt>(Generator::Y, rel)?.pow(y_exp)?;
    if let Some(g) = weight.generator() {
        den = den.mul(&generator::<BigInt>(g, rel)?);
    }
    peel_t(&f.div(&den)?, min_exp, max_deg)
}

impl ArrayKind {
    pub fn op(self) -> Op {
        match self {
            ArrayKind::A => Op::A,
            ArrayKind::B => Op::B,
        }
    }

    /// Weight multiplying the input `y^m t^k`.
    pub fn input_weight(self) -> Weight {
        match self {
            ArrayKind::A => Weight::P1,
            ArrayKind::B => Weight::P0,
        }
    }

    pub fn output_weight(self) -> Weight {
        match self {
            ArrayKind::A => Weight::P0,
            ArrayKind::B => Weight::P1,
        }
    }
}

/// `U_op(weight·y^m·t^k)` exact below `prec`.
pub fn fundamental_series(kind: ArrayKind, k: i64, m: i64, prec: i64) -> Result<ZSeries> {
    let op = kind.op();
    let input = ytw_series::<BigInt>(kind.input_weight(), m, k, op.input_prec(prec))?;
    Ok(apply_op(op, &input)?.truncate(prec))
}

/// Peel `U_op(weight·y^m·t^k)` back to its array row.
pub fn fundamental_row(kind: ArrayKind, k: i64, m: i64, max_deg: i64) -> Result<PeelResult> {
    let prec = max_deg + 1 + PEEL_SLACK;
    let f = fundamental_series(kind, k, m, prec)?;
    to_yt_form(&f, kind.y_out(m), kind.output_weight(), -1, max_deg)
}

fn relation_anchor(r: &Relation) -> String {
    let group = match r.kind {
        ArrayKind::A => "II",
        ArrayKind::B => "III",
    };
    format!("appendix group {group}: {}", r.label)
}

fn relation_id(r: &Relation, suffix: &str) -> String {
    format!("{}({},{}){suffix}", r.kind.tag(), r.k, r.m)
}

/// Both sides of a printed relation agree as q-series below `prec`.
pub fn check_relation_series(r: &Relation, prec: i64) -> Check {
    let outcome = (|| -> Result<std::result::Result<(), String>> {
        let lhs = fundamental_series(r.kind, r.k, r.m, prec)?;
        let form = YTForm {
            y_exp: r.kind.y_out(r.m),
            weight: r.kind.output_weight(),
            poly: r.poly(),
        };
        let rhs = form.expand::<BigInt>(prec)?;
        Ok(lhs.agrees_with(&rhs).map_err(|d| d.to_string()))
    })();
    Check::new(
        relation_id(r, "/series"),
        format!("{} as q-series to q^{prec}", r.label),
        relation_anchor(r),
        outcome.unwrap_or_else(|e| Err(e.to_string())),
    )
}

/// Peeling the left side of a printed relation reproduces every coefficient.
pub fn check_relation_peel(r: &Relation, prec: i64) -> Check {
    let expect = r.poly();
    let outcome = (|| -> Result<std::result::Result<(), String>> {
        let lhs = fundamental_series(r.kind, r.k, r.m, prec)?;
        let max_deg = prec - 1 - PEEL_SLACK;
        let got = to_yt_form(&lhs, r.kind.y_out(r.m), r.kind.output_weight(), -1, max_deg)?;
        if !got.complete {
            return Ok(Err(format!("peel incomplete at q^{}", got.residual_ord)));
        }
        Ok(diff_polys(&got.poly, &expect))
    })();
    Check::new(
        relation_id(r, "/peel"),
        format!("rediscover {}", r.label),
        relation_anchor(r),
        outcome.unwrap_or_else(|e| Err(e.to_string())),
    )
}

/// First exponent where two polynomials differ.
pub fn diff_polys(got: &TPoly, expect: &TPoly) -> std::result::Result<(), String> {
    let lo = got.min_exp().into_iter().chain(expect.min_exp()).min();
    let hi = got.max_exp().into_iter().chain(expect.max_exp()).max();
    if let (Some(lo), Some(hi)) = (lo, hi) {
        for e in lo..=hi {
            let (a, b) = (got.coeff(e), expect.coeff(e));
            if a != b {
                return Err(format!("t^{e}: computed {a}, expected {b}"));
            }
        }
    }
    Ok(())
}

/// All eighteen relations, rediscovered by peeling.
pub fn rediscover_appendix(prec: i64) -> Vec<Check> {
    RELATIONS.par_iter().map(|r| check_relation_peel(r, prec)).collect()
}

/// All eighteen relations as q-series identities.
pub fn appendix_series_checks(prec: i64) -> Vec<Check> {
    RELATIONS.par_iter().map(|r| check_relation_series(r, prec)).collect()
}

/// `y = 1/(1−3t)`, `p0 = (1+t)^4`, `p1 = (1+t)^2`, `L0 = t^{-1}+27+3t+9t²`.
pub fn group1_checks(prec: i64) -> Vec<Check> {
    let run = || -> Result<Vec<std::result::Result<(), String>>> {
        let t = generator::<BigInt>(Generator::T, prec + 2)?;
        let one = ZSeries::one(prec);
        let y = generator::<BigInt>(Generator::Y, prec)?;
        let one_plus_t = one.add(&t);
        let cmp = |a: &ZSeries, b: &ZSeries| -> std::result::Result<(), String> {
            if a.prec() < prec || b.prec() < prec {
                return Err(format!("precision {} / {}", a.prec(), b.prec()));
            }
            a.agrees_with(b).map_err(|d| d.to_string())
        };
        Ok(vec![
            cmp(&y.mul(&one.sub(&t.scale_i64(3))), &one),
            cmp(&generator(Generator::P0, prec)?, &one_plus_t.pow(4)?),
            cmp(&generator(Generator::P1, prec)?, &one_plus_t.pow(2)?),
            cmp(
                &generator::<BigInt>(Generator::L0, prec + 1)?.truncate(prec),
                &terms_to_poly(L0_TERMS).eval_series(&t)?.truncate(prec),
            ),
        ])
    };
    let labels = [
        ("group1/y", "y = 1/(1-3t)"),
        ("group1/p0", "p0 = (1+t)^4"),
        ("group1/p1", "p1 = (1+t)^2"),
        ("group1/L0", "L0 = t^-1 + 27 + 3t + 9t^2"),
    ];
    let outcomes = run().unwrap_or_else(|e| vec![Err(e.to_string()); 4]);
    labels
        .iter()
        .zip(outcomes)
        .map(|(&(id, what), o)| Check::new(id, format!("{what} to q^{prec}"), "appendix group I", o))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appendix::relation;

    #[test]
    fn peel_l0() {
        let l0: ZSeries = generator(Generator::L0, 60).unwrap();
        let r = peel_t(&l0, -1, 4).unwrap();
        assert!(r.complete);
        assert_eq!(r.poly, terms_to_poly(L0_TERMS));
    }

    #[test]
    fn peel_roundtrip_small() {
        let p = TPoly::from_i64_terms(&[(1, -1), (3, 5)]);
        let t = generator::<BigInt>(Generator::T, 40).unwrap();
        let s = p.eval_series(&t).unwrap();
        let r = peel_t(&s, 0, 5).unwrap();
        assert!(r.complete);
        assert_eq!(r.poly, p);
    }

    #[test]
    fn y_is_not_a_polynomial() {
        let y: ZSeries = generator(Generator::Y, 80).unwrap();
        let r = peel_t(&y, 0, 50).unwrap();
        assert!(!r.complete);
        assert_eq!(r.poly.coeff(10), BigInt::from(3).pow(10));
    }

    #[test]
    fn below_min_exponent() {
        let l0: ZSeries = generator(Generator::L0, 30).unwrap();
        assert!(matches!(peel_t(&l0, 0, 4), Err(Error::BelowMinExponent { .. })));
    }

    #[test]
    fn ua_p1_row() {
        let r = relation(ArrayKind::A, 0, 0).unwrap();
        let got = fundamental_row(ArrayKind::A, 0, 0, 20).unwrap();
        assert!(got.complete);
        assert_eq!(got.poly, r.poly());
    }

    #[test]
    fn ub_p0_t_row() {
        let got = fundamental_row(ArrayKind::B, 1, 0, 20).unwrap();
        assert!(got.complete);
        assert_eq!(got.poly, relation(ArrayKind::B, 1, 0).unwrap().poly());
    }

    #[test]
    fn group1() {
        for c in group1_checks(80) {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn yt_form_expands() {
        let form = YTForm {
            y_exp: 2,
            weight: Weight::P1,
            poly: TPoly::from_i64_terms(&[(-1, 1), (0, 3)]),
        };
        let s: ZSeries = form.expand(30).unwrap();
        let back = to_yt_form(&s, 2, Weight::P1, -1, 5).unwrap();
        assert_eq!(back.poly, form.poly);
    }
}
