mod support;

use cphi6_core::etaq::{eta_product, EtaQuotient};
use cphi6_core::{Mod3k, ZSeries};
use num_bigint::BigInt;
use proptest::prelude::*;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn u_is_linear(f in series(), g in series(), a in -9i64..9, b in -9i64..9, m in 1i64..6) {
        u_linearity(&f, &g, a, b, m)?;
    }

    #[test]
    fn u_pulls_out_q_power_series(f in series(), g in series(), m in 1i64..6) {
        u_pull_out(&f, &g, m)?;
    }

    #[test]
    fn u_after_substitute_is_identity(f in series(), m in 1i64..6) {
        same(&f.substitute_q_power(m).unwrap().u_operator(m).unwrap(), &f)?;
    }

    #[test]
    fn unit_inverse_roundtrip(mut cs in prop::collection::vec(-20i64..20, 1..20), neg in any::<bool>(), ord in -3i64..3) {
        cs[0] = if neg { -1 } else { 1 };
        let terms: Vec<(i64, i64)> = cs.iter().enumerate().map(|(i, &c)| (ord + i as i64, c)).collect();
        let f = ZSeries::from_i64_terms(&terms, ord + cs.len() as i64);
        let prod = f.mul(&f.invert().unwrap());
        same(&prod, &ZSeries::one(prod.prec()))?;
    }

    #[test]
    fn t_peel_roundtrip(p in laurent()) {
        peel_roundtrip(&p)?;
    }

    #[test]
    fn weighted_yt_roundtrip(p in laurent(), y_exp in 0i64..6, w in 0usize..3) {
        yt_form_roundtrip(&p, y_exp, w)?;
    }

    #[test]
    fn val3_is_additive(a in nonzero(), b in nonzero()) {
        val3_additive(a, b)?;
    }

    #[test]
    fn reduce_mod_commutes(f in power_series(), g in power_series()) {
        let lhs = f.mul(&g).reduce_mod::<5>();
        let rhs = f.reduce_mod::<5>().mul(&g.reduce_mod::<5>());
        prop_assert!(lhs.agrees_with(&rhs).is_ok());
        let lhs = f.add(&g).reduce_mod::<38>();
        let rhs = f.reduce_mod::<38>().add(&g.reduce_mod::<38>());
        prop_assert!(lhs.agrees_with(&rhs).is_ok());
    }

    #[test]
    fn mod_ring_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (Mod3k::<9>::new(a), Mod3k::<9>::new(b), Mod3k::<9>::new(c));
        prop_assert_eq!((a + b) * c, a * c + b * c);
        prop_assert_eq!(a - a + b, b);
        prop_assert_eq!((a * b) * c, a * (b * c));
    }

    #[test]
    fn eta_text_roundtrip(fs in prop::collection::vec((1u32..40, -6i64..7), 1..6)) {
        let q = EtaQuotient { factors: fs };
        let back: EtaQuotient = q.to_string().parse().unwrap();
        prop_assert_eq!(back.factors, q.factors);
    }

    #[test]
    fn eta_multiplicative(f in prop::collection::vec((1u32..8, -3i64..4), 1..4), g in prop::collection::vec((1u32..8, -3i64..4), 1..4)) {
        let both: Vec<(u32, i64)> = f.iter().chain(g.iter()).copied().collect();
        let lhs = eta_product::<BigInt>(&both, 30);
        let rhs = eta_product::<BigInt>(&f, 30).mul(&eta_product(&g, 30));
        same(&lhs, &rhs)?;
    }
}
