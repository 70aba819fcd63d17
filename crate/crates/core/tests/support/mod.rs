//! Strategies and property bodies shared by `properties` and `acceptance`.
#![allow(dead_code)]

use cphi6_core::reduce::{peel_t, t_power, to_yt_form, Weight, YTForm};
use cphi6_core::{val3, TPoly, ZSeries};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};

pub const CASES: u32 = 1000;

pub fn series() -> impl Strategy<Value = ZSeries> {
    (-3i64..4, prop::collection::vec(-50i64..50, 1..24), 0i64..4).prop_map(|(ord, cs, extra)| {
        let terms: Vec<(i64, i64)> = cs.iter().enumerate().map(|(i, &c)| (ord + i as i64, c)).collect();
        ZSeries::from_i64_terms(&terms, ord + cs.len() as i64 + extra)
    })
}

pub fn power_series() -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(-50i64..50, 1..24).prop_map(|cs| {
        let terms: Vec<(i64, i64)> = cs.iter().enumerate().map(|(i, &c)| (i as i64, c)).collect();
        ZSeries::from_i64_terms(&terms, cs.len() as i64)
    })
}

pub fn laurent() -> impl Strategy<Value = TPoly> {
    prop::collection::vec((-2i64..11, -1000i64..1000), 0..8).prop_map(|ts| TPoly::from_i64_terms(&ts))
}

pub fn nonzero() -> impl Strategy<Value = i64> {
    any::<i64>().prop_filter("nonzero", |x| *x != 0)
}

pub fn same(a: &ZSeries, b: &ZSeries) -> Result<(), TestCaseError> {
    a.agrees_with(b).map_err(|d| TestCaseError::fail(d.to_string()))
}

pub fn expand_t(p: &TPoly, prec: i64) -> ZSeries {
    let mut acc = ZSeries::zero(prec);
    for (n, c) in p.terms() {
        acc = acc.add(&t_power::<BigInt>(n, prec).unwrap().scale(c));
    }
    acc
}

pub fn ring_axioms(a: &ZSeries, b: &ZSeries, c: &ZSeries) -> Result<(), TestCaseError> {
    same(&a.add(b), &b.add(a))?;
    same(&a.mul(b), &b.mul(a))?;
    same(&a.mul(b).mul(c), &a.mul(&b.mul(c)))?;
    same(&a.mul(&b.add(c)), &a.mul(b).add(&a.mul(c)))?;
    same(&a.add(b).add(c), &a.add(&b.add(c)))?;
    prop_assert!(a.sub(a).is_zero());
    same(&a.mul(&ZSeries::one(a.prec() + 10)), a)
}

pub fn u_linearity(f: &ZSeries, g: &ZSeries, a: i64, b: i64, m: i64) -> Result<(), TestCaseError> {
    let lhs = f.scale_i64(a).add(&g.scale_i64(b)).u_operator(m).unwrap();
    let rhs = f.u_operator(m).unwrap().scale_i64(a).add(&g.u_operator(m).unwrap().scale_i64(b));
    same(&lhs, &rhs)
}

pub fn u_pull_out(f: &ZSeries, g: &ZSeries, m: i64) -> Result<(), TestCaseError> {
    let lhs = f.substitute_q_power(m).unwrap().mul(g).u_operator(m).unwrap();
    same(&lhs, &f.mul(&g.u_operator(m).unwrap()))
}

pub fn peel_roundtrip(p: &TPoly) -> Result<(), TestCaseError> {
    let got = peel_t(&expand_t(p, 40), -2, 12).unwrap();
    prop_assert_eq!(&got.poly, p);
    Ok(())
}

pub fn yt_form_roundtrip(p: &TPoly, y_exp: i64, w: usize) -> Result<(), TestCaseError> {
    let weight = [Weight::One, Weight::P0, Weight::P1][w];
    let form = YTForm { y_exp, weight, poly: p.clone() };
    let g = form.expand::<BigInt>(45).unwrap();
    let got = to_yt_form(&g, y_exp, weight, -2, 12).unwrap();
    prop_assert_eq!(&got.poly, p);
    Ok(())
}

pub fn val3_additive(a: i64, b: i64) -> Result<(), TestCaseError> {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    prop_assert_eq!(val3(&(&a * &b)), val3(&a) + val3(&b));
    Ok(())
}

/// Run one property outside the `proptest!` harness.
pub fn check<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, input) => format!("{why} for {input:?}"),
        TestError::Abort(why) => why.to_string(),
    })
}
