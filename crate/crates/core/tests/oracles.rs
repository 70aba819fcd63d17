//! Independent expansions compared against the library.

use cphi6_core::etaq::{eta_product, EtaQuotient, Generator, PochProduct};
use cphi6_core::frob6::{cphi6_enumerate, cphi6_oracle_andrews, cphi6_series};
use cphi6_core::{Mod3k, ZSeries};
use num_bigint::BigInt;

/// `∏(1 − q^n)^e` over `(q^n;q^n)_∞` by repeated dense multiplication and
/// geometric division, one `(1 − q^{nk})` factor at a time.
fn naive_eta(factors: &[(u32, i64)], len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::from(0); len];
    acc[0] = BigInt::from(1);
    for &(n, e) in factors {
        let mut step = n as usize;
        while step < len {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    for i in (step..len).rev() {
                        let sub = acc[i - step].clone();
                        acc[i] -= sub;
                    }
                } else {
                    for i in step..len {
                        let add = acc[i - step].clone();
                        acc[i] += add;
                    }
                }
            }
            step += n as usize;
        }
    }
    acc
}

fn coeffs(s: &ZSeries, len: usize) -> Vec<BigInt> {
    (0..len as i64).map(|n| s.coeff(n).unwrap()).collect()
}

#[test]
fn pentagonal_theorem() {
    let len = 200;
    let mut want = vec![BigInt::from(0); len];
    for k in -20i64..=20 {
        let e = (k * (3 * k - 1) / 2) as usize;
        if e < len {
            want[e] = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
        }
    }
    assert_eq!(coeffs(&eta_product(&[(1, 1)], len as i64), len), want);
}

#[test]
fn partition_numbers() {
    let len = 120;
    let mut p = vec![BigInt::from(0); len];
    p[0] = BigInt::from(1);
    for part in 1..len {
        for n in part..len {
            let add = p[n - part].clone();
            p[n] += add;
        }
    }
    assert_eq!(coeffs(&eta_product(&[(1, -1)], len as i64), len), p);
    assert_eq!(p[100].to_string(), "190569292");
}

#[test]
fn theta_functions() {
    let len = 150;
    let mut phi = vec![BigInt::from(0); len];
    let mut psi = vec![BigInt::from(0); len];
    for n in -20i64..=20 {
        if ((n * n) as usize) < len {
            phi[(n * n) as usize] += 1;
        }
    }
    for n in 0..20usize {
        if n * (n + 1) / 2 < len {
            psi[n * (n + 1) / 2] += 1;
        }
    }
    let l = len as i64;
    assert_eq!(coeffs(&PochProduct::phi().expand(l).unwrap(), len), phi);
    assert_eq!(coeffs(&PochProduct::psi().expand(l).unwrap(), len), psi);
    assert_eq!(coeffs(&eta_product(&[(2, 5), (1, -2), (4, -2)], l), len), phi);
    assert_eq!(coeffs(&eta_product(&[(2, 2), (1, -1)], l), len), psi);
}

#[test]
fn generators_match_naive_products() {
    let len = 80;
    for g in Generator::ALL {
        let Some(eq) = g.eta() else { continue };
        let want = naive_eta(&eq.factors, len);
        let got = g.expand::<BigInt>(len as i64).unwrap();
        let ord = got.ord().unwrap();
        for n in 0..60 {
            assert_eq!(got.coeff(n + ord).unwrap(), want[n as usize], "{} at q^{}", g.name(), n + ord);
        }
    }
}

#[test]
fn t_head() {
    let t: EtaQuotient = "12:4,2:2,6:-2,4:-4".parse().unwrap();
    let s = t.expand::<BigInt>(12).unwrap();
    let want = naive_eta(&t.factors, 11);
    assert_eq!(s.ord(), Some(1));
    for n in 1..12 {
        assert_eq!(s.coeff(n).unwrap(), want[n as usize - 1]);
    }
}

/// Two-rowed arrays with strictly decreasing columns of `(value, colour)`
/// pairs, six colours: `Σ_r Σ_{a+b=n−r} D(r,a) D(r,b)` where `D(r,s)`
/// counts `r`-subsets of the coloured values with total `s`.
fn cphi6_brute(len: usize) -> Vec<BigInt> {
    let rmax = len;
    let mut d = vec![vec![BigInt::from(0); len]; rmax + 1];
    d[0][0] = BigInt::from(1);
    for v in 0..len {
        for _colour in 0..6 {
            for r in (1..=rmax).rev() {
                for s in (v..len).rev() {
                    let add = d[r - 1][s - v].clone();
                    d[r][s] += add;
                }
            }
        }
    }
    (0..len)
        .map(|n| {
            let mut total = BigInt::from(0);
            for r in 0..=n {
                for a in 0..=n - r {
                    total += &d[r][a] * &d[r][n - r - a];
                }
            }
            total
        })
        .collect()
}

#[test]
fn cphi6_against_brute_count() {
    let len = 45;
    let brute = cphi6_brute(len);
    assert_eq!(cphi6_series::<BigInt>(len).unwrap(), brute);
    assert_eq!(&brute[..3], &[BigInt::from(1), BigInt::from(36), BigInt::from(297)]);
}

#[test]
fn cphi6_library_oracles() {
    let series = cphi6_series::<BigInt>(41).unwrap();
    assert_eq!(cphi6_oracle_andrews(41), series);
    for n in 0..=6u32 {
        assert_eq!(BigInt::from(cphi6_enumerate(n)), series[n as usize], "n={n}");
    }
}

#[test]
fn modular_table_is_reduction() {
    let exact = cphi6_series::<BigInt>(300).unwrap();
    let reduced = cphi6_series::<Mod3k<11>>(300).unwrap();
    let m = BigInt::from(3u64.pow(11));
    for (e, r) in exact.iter().zip(&reduced) {
        let want: BigInt = ((e % &m) + &m) % &m;
        assert_eq!(want, BigInt::from(r.value()));
    }
}
