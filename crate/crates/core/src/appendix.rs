//! Published fundamental relations, transcribed as `(c, e, n)` triples
//! meaning `c·3^e·t^n`.
//!
//! Group II rows are `U_A(p1·y^m·t^k) = y^{3m+8}·p0·P(t)`, Group III rows are
//! `U_B(p0·y^m·t^k) = y^{3m}·p1·P(t)`. These are the base cases of the
//! fundamental arrays; the reduce module rediscovers every one of them from
//! q-expansions.

use num_bigint::BigInt;

use crate::poly::TPoly;

/// Which operator a fundamental relation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum ArrayKind {
    /// `a(k,m,n)`: `U_A(p1 y^m t^k) = y^{3m+8} p0 Σ a(k,m,n) t^n`
    A,
    /// `b(k,m,n)`: `U_B(p0 y^m t^k) = y^{3m} p1 Σ b(k,m,n) t^n`
    B,
}

impl ArrayKind {
    pub fn tag(self) -> &'static str {
        match self {
            ArrayKind::A => "a",
            ArrayKind::B => "b",
        }
    }

    /// Power of `y` on the right-hand side for input `y^m`.
    pub fn y_out(self, m: i64) -> i64 {
        match self {
            ArrayKind::A => 3 * m + 8,
            ArrayKind::B => 3 * m,
        }
    }

    /// `a(k,m,n) = 0` for `n < ⌈(k−3)/3⌉`, `b(k,m,n) = 0` for `n < ⌈(k−1)/3⌉`.
    pub fn min_n(self, k: i64) -> i64 {
        let shift = match self {
            ArrayKind::A => 3,
            ArrayKind::B => 1,
        };
        (k - shift).div_euclid(3) + i64::from((k - shift).rem_euclid(3) != 0)
    }

    /// Lower bound on `val3` of the `(k, ·, n)` entry.
    pub fn val_bound(self, k: i64, n: i64) -> i64 {
        let shift = match self {
            ArrayKind::A => 3,
            ArrayKind::B => 2,
        };
        (2 * n - k + shift).div_euclid(3)
    }
}

pub type Terms = &'static [(i64, u32, i64)];

/// One published relation.
#[derive(Debug, Clone, Copy)]
pub struct Relation {
    pub kind: ArrayKind,
    pub k: i64,
    pub m: i64,
    pub terms: Terms,
    pub label: &'static str,
}

impl Relation {
    pub fn poly(&self) -> TPoly {
        terms_to_poly(self.terms)
    }
}

pub fn terms_to_poly(terms: Terms) -> TPoly {
    TPoly::from_terms(
        terms
            .iter()
            .map(|&(c, e, n)| (n, BigInt::from(c) * BigInt::from(3u8).pow(e))),
    )
}

const UA_P1_TM1: Terms = &[(11, 0, -1), (38, 3, 0), (1085, 2, 1), (212, 3, 2), (-961, 3, 3), (98, 4, 4), (1, 7, 5)];
const UA_P1: Terms = &[
    (1, 0, -1), (95, 1, 0), (16, 5, 1), (5, 3, 2), (-308, 3, 3), (91, 4, 4), (-20, 5, 5), (11, 5, 6), (-1, 6, 7),
];
const UA_P1_T: Terms = &[
    (22, 1, 0), (176, 2, 1), (-11, 4, 2), (-19, 4, 3), (8, 4, 4), (79, 4, 5), (-88, 5, 6), (17, 7, 7), (-2, 9, 8),
    (11, 7, 9), (-1, 8, 10),
];
const UA_P1Y_TM1: Terms = &[
    (14, 0, -1), (101, 3, 0), (7760, 2, 1), (188, 7, 2), (9572, 3, 3), (-16102, 4, 4), (-128, 7, 5), (20, 10, 6),
    (-14, 9, 7), (-1, 10, 8),
];
const UA_P1Y: Terms = &[
    (1, 0, -1), (200, 1, 0), (284, 4, 1), (5752, 3, 2), (1234, 3, 3), (-5912, 4, 4), (884, 5, 5), (392, 5, 6),
    (-55, 6, 7),
];
const UA_P1Y_T: Terms = &[
    (4, 3, 0), (802, 2, 1), (751, 4, 2), (-224, 4, 3), (-1892, 4, 4), (2116, 4, 5), (-514, 5, 6), (16, 8, 7),
    (-32, 7, 8), (14, 7, 9), (-1, 8, 10),
];
const UA_P1Y2_TM1: Terms = &[
    (17, 0, -1), (215, 3, 0), (31742, 2, 1), (148039, 3, 2), (657251, 3, 3), (119546, 4, 4), (-29324, 7, 5),
    (-1930, 9, 6), (4745, 9, 7), (241, 10, 8), (-10, 14, 9), (17, 12, 10), (1, 13, 11),
];
const UA_P1Y2: Terms = &[
    (1, 0, -1), (356, 1, 0), (2963, 3, 1), (17042, 4, 2), (239206, 3, 3), (16864, 4, 4), (-32678, 6, 5), (692, 5, 6),
    (35045, 6, 7), (-52, 11, 8), (-17, 11, 9), (2, 12, 10),
];
const UA_P1Y2_T: Terms = &[
    (53, 1, 0), (770, 3, 1), (5827, 4, 2), (29704, 4, 3), (-1958, 5, 4), (-103100, 4, 5), (21722, 5, 6),
    (392, 8, 7), (-967, 7, 8), (98, 7, 9), (-1, 8, 10),
];

const UB_P0_TM1: Terms = &[(4, 1, 0), (-14, 1, 1), (11, 2, 2), (-1, 4, 3), (-2, 4, 4), (5, 4, 5), (-1, 5, 6)];
const UB_P0: Terms = &[
    (5, 0, 0), (-11, 1, 1), (2, 4, 2), (-14, 3, 3), (-1, 3, 4), (8, 5, 5), (-13, 5, 6), (5, 6, 8), (-1, 7, 9),
];
const UB_P0_T: Terms = &[
    (1, 0, 0), (-1, 2, 1), (14, 2, 2), (-28, 3, 3), (61, 3, 4), (23, 4, 5), (-20, 6, 6), (8, 7, 7), (25, 6, 8),
    (-23, 7, 9), (2, 8, 10), (5, 8, 11), (-1, 9, 12),
];
const UB_P0Y_TM1: Terms = &[(4, 2, 0), (88, 1, 1), (-55, 2, 2), (8, 4, 3), (-10, 4, 4), (8, 4, 5), (-1, 5, 6)];
const UB_P0Y: Terms = &[
    (8, 0, 0), (46, 1, 1), (-16, 3, 2), (38, 3, 3), (-64, 3, 4), (5, 5, 5), (8, 5, 6), (-8, 6, 7), (8, 6, 8),
    (-1, 7, 9),
];
const UB_P0Y_T: Terms = &[
    (1, 0, 0), (8, 2, 1), (-38, 2, 2), (16, 4, 3), (-128, 3, 4), (56, 4, 5), (2, 7, 6), (-40, 6, 7), (64, 6, 8),
    (-8, 7, 9), (-2, 9, 10), (8, 8, 11), (-1, 9, 12),
];
const UB_P0Y2_TM1: Terms = &[(23, 1, 0), (802, 1, 1), (923, 2, 2), (-140, 4, 3), (-7, 5, 4), (38, 4, 5), (-1, 5, 6)];
const UB_P0Y2: Terms = &[
    (11, 0, 0), (274, 1, 1), (14, 5, 2), (-31, 5, 3), (314, 3, 4), (-49, 5, 5), (62, 5, 6), (-19, 6, 7), (11, 6, 8),
    (-1, 7, 9),
];
const UB_P0Y2_T: Terms = &[
    (1, 0, 0), (28, 2, 1), (20, 4, 2), (-197, 3, 3), (430, 3, 4), (-280, 4, 5), (5, 8, 6), (-32, 6, 7), (-32, 6, 8),
    (40, 7, 9), (-17, 8, 10), (11, 8, 11), (-1, 9, 12),
];

/// The eighteen base relations (Groups II and III).
pub const RELATIONS: [Relation; 18] = [
    Relation { kind: ArrayKind::A, k: -1, m: 0, terms: UA_P1_TM1, label: "U_A(p1 t^-1)" },
    Relation { kind: ArrayKind::A, k: 0, m: 0, terms: UA_P1, label: "U_A(p1)" },
    Relation { kind: ArrayKind::A, k: 1, m: 0, terms: UA_P1_T, label: "U_A(p1 t)" },
    Relation { kind: ArrayKind::A, k: -1, m: 1, terms: UA_P1Y_TM1, label: "U_A(p1 y t^-1)" },
    Relation { kind: ArrayKind::A, k: 0, m: 1, terms: UA_P1Y, label: "U_A(p1 y)" },
    Relation { kind: ArrayKind::A, k: 1, m: 1, terms: UA_P1Y_T, label: "U_A(p1 y t)" },
    Relation { kind: ArrayKind::A, k: -1, m: 2, terms: UA_P1Y2_TM1, label: "U_A(p1 y^2 t^-1)" },
    Relation { kind: ArrayKind::A, k: 0, m: 2, terms: UA_P1Y2, label: "U_A(p1 y^2)" },
    Relation { kind: ArrayKind::A, k: 1, m: 2, terms: UA_P1Y2_T, label: "U_A(p1 y^2 t)" },
    Relation { kind: ArrayKind::B, k: -1, m: 0, terms: UB_P0_TM1, label: "U_B(p0 t^-1)" },
    Relation { kind: ArrayKind::B, k: 0, m: 0, terms: UB_P0, label: "U_B(p0)" },
    Relation { kind: ArrayKind::B, k: 1, m: 0, terms: UB_P0_T, label: "U_B(p0 t)" },
    Relation { kind: ArrayKind::B, k: -1, m: 1, terms: UB_P0Y_TM1, label: "U_B(p0 y t^-1)" },
    Relation { kind: ArrayKind::B, k: 0, m: 1, terms: UB_P0Y, label: "U_B(p0 y)" },
    Relation { kind: ArrayKind::B, k: 1, m: 1, terms: UB_P0Y_T, label: "U_B(p0 y t)" },
    Relation { kind: ArrayKind::B, k: -1, m: 2, terms: UB_P0Y2_TM1, label: "U_B(p0 y^2 t^-1)" },
    Relation { kind: ArrayKind::B, k: 0, m: 2, terms: UB_P0Y2, label: "U_B(p0 y^2)" },
    Relation { kind: ArrayKind::B, k: 1, m: 2, terms: UB_P0Y2_T, label: "U_B(p0 y^2 t)" },
];

pub fn relation(kind: ArrayKind, k: i64, m: i64) -> Option<&'static Relation> {
    RELATIONS.iter().find(|r| r.kind == kind && r.k == k && r.m == m)
}

/// `L1 = y^8 p0 · P(t)`.
pub const L1_TERMS: Terms = &[
    (4, 2, -1), (71, 4, 0), (2351, 3, 1), (89, 5, 2), (-1975, 4, 3), (407, 5, 4), (-19, 7, 5), (11, 7, 6),
    (-1, 8, 7),
];

/// `L0 = t^-1 + 3^3 + 3t + 3^2 t^2`.
pub const L0_TERMS: Terms = &[(1, 0, -1), (1, 3, 0), (1, 1, 1), (1, 2, 2)];

/// Worked example `U_A(p1 t^2) = y^8 p0 · P(t)`, as printed.
pub const UA_P1_T2: Terms = &[
    (11, 0, 0), (209, 1, 1), (-22, 3, 2), (-106, 3, 3), (259, 4, 4), (259, 4, 5), (-11, 8, 6), (68, 7, 7),
    (-238, 6, 8), (7, 8, 9), (29, 8, 10), (-16, 9, 11), (11, 9, 12), (-1, 10, 13),
];

/// Worked example `U_B(p0 y^3 t^-1) = y^9 p1 · P(t)`, as printed.
pub const UB_P0Y3_TM1: Terms = &[
    (37, 1, 0), (2992, 1, 1), (13628, 2, 2), (3872, 4, 3), (-4814, 4, 4), (-7600, 4, 5), (2564, 5, 6),
    (-1, 10, 8),
];

/// Inner polynomials of the printed rewrites `b_j(y) = −y^{9−3j}·Q_j(t)`.
pub const B_REWRITE_PRINTED: [Terms; 3] = [
    &[(1, 0, 0), (-2, 2, 1), (5, 3, 2), (-20, 3, 3), (5, 5, 4), (-2, 6, 5), (1, 6, 6)],
    &[(-3, 0, 0), (1, 2, 1), (1, 4, 2), (-14, 3, 3), (1, 5, 4), (1, 6, 5), (-1, 6, 6)],
    &[(3, 0, 0), (4, 2, 1), (1, 3, 2), (-2, 3, 3)],
];

/// The variant of the `b_1` rewrite that appears inside the derivation of
/// the `b(−1,m,0)` recurrence (`t^4` in place of `t^3`, no `3^5 t^4` term).
pub const B1_REWRITE_VARIANT: Terms = &[(-3, 0, 0), (1, 2, 1), (1, 4, 2), (-14, 3, 4), (1, 6, 5), (-1, 6, 6)];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::val3;

    #[test]
    fn base_values_quoted_in_recurrences() {
        let v = |kind, k, m, n| relation(kind, k, m).unwrap().poly().coeff(n);
        assert_eq!(v(ArrayKind::B, -1, 0, 0), BigInt::from(12));
        assert_eq!(v(ArrayKind::B, -1, 1, 0), BigInt::from(36));
        assert_eq!(v(ArrayKind::B, -1, 2, 0), BigInt::from(69));
        assert_eq!(v(ArrayKind::A, 0, 0, 0), BigInt::from(285));
        assert_eq!(v(ArrayKind::A, 0, 1, 0), BigInt::from(600));
        assert_eq!(v(ArrayKind::A, 0, 2, 0), BigInt::from(1068));
        assert_eq!(v(ArrayKind::A, 1, 0, 0), BigInt::from(66));
        assert_eq!(v(ArrayKind::A, 1, 1, 0), BigInt::from(108));
        assert_eq!(v(ArrayKind::A, 1, 2, 0), BigInt::from(159));
    }

    #[test]
    fn printed_rows_satisfy_bounds() {
        for r in RELATIONS {
            let p = r.poly();
            assert!(p.min_exp().unwrap() >= r.kind.min_n(r.k), "{}", r.label);
            for (n, c) in p.terms() {
                assert!(val3(c).at_least(r.kind.val_bound(r.k, n)), "{} at t^{n}", r.label);
            }
        }
    }

    #[test]
    fn bounds_helpers() {
        assert_eq!(ArrayKind::A.min_n(-1), -1);
        assert_eq!(ArrayKind::A.min_n(0), -1);
        assert_eq!(ArrayKind::A.min_n(1), 0);
        assert_eq!(ArrayKind::B.min_n(-1), 0);
        assert_eq!(ArrayKind::B.min_n(2), 1);
        assert_eq!(ArrayKind::B.val_bound(-1, 0), 1);
        assert_eq!(ArrayKind::A.val_bound(0, -1), 0);
    }
}
