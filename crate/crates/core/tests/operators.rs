//! Algebraic relations among Hecke and Atkin-Lehner operators on random
//! levels, and consistency of `Lambda` with the eta divisor map.

use std::sync::Arc;

use oddcong::arith::{factorize, rat};
use oddcong::eta::{class_order, divisor_of_eta_vector, is_principal, lambda_map};
use oddcong::hecke::{atkin_lehner_matrix, hecke_matrix, verify_newness};
use oddcong::matrix::RatMatrix;
use oddcong::{parse_divisor, CuspDivisor, EtaExponentVector, Level, Rat};
use proptest::prelude::*;

fn level(n: u64) -> Arc<Level> {
    Arc::new(Level::new(n).unwrap())
}

/// A level in `[2, max)` together with a subset mask of its primes.
fn level_and_mask(max: u64) -> impl Strategy<Value = (Arc<Level>, u32, u32)> {
    (2..max, any::<u32>(), any::<u32>()).prop_map(|(n, a, b)| (level(n), a, b))
}

fn subset(level: &Level, mask: u32) -> u64 {
    level
        .primes()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, p)| *p)
        .product()
}

fn random_divisor(level: &Arc<Level>, seed: &[i8]) -> CuspDivisor {
    let coeffs: Vec<Rat> = (0..level.dimension())
        .map(|i| rat(seed[i % seed.len()] as i64, 1))
        .collect();
    CuspDivisor::from_dense(level, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn atkin_lehner_is_an_involution((lvl, mask, _) in level_and_mask(3000)) {
        let r = subset(&lvl, mask);
        prop_assume!(r > 1);
        let w = atkin_lehner_matrix(&lvl, r).unwrap().to_dense();
        prop_assert!(RatMatrix::mul(&w, &w).is_identity());
    }

    #[test]
    fn atkin_lehner_is_multiplicative((lvl, a, b) in level_and_mask(3000)) {
        let r = subset(&lvl, a);
        let s = subset(&lvl, b & !a);
        prop_assume!(r > 1 && s > 1);
        let wr = atkin_lehner_matrix(&lvl, r).unwrap().to_dense();
        let ws = atkin_lehner_matrix(&lvl, s).unwrap().to_dense();
        let wrs = atkin_lehner_matrix(&lvl, r * s).unwrap().to_dense();
        prop_assert_eq!(RatMatrix::mul(&wr, &ws), wrs);
    }

    #[test]
    fn hecke_operators_commute((lvl, a, b) in level_and_mask(3000)) {
        let ps = lvl.primes();
        let p = ps[a as usize % ps.len()];
        let q = ps[b as usize % ps.len()];
        let tp = hecke_matrix(&lvl, p).unwrap().to_dense();
        let tq = hecke_matrix(&lvl, q).unwrap().to_dense();
        prop_assert_eq!(RatMatrix::mul(&tp, &tq), RatMatrix::mul(&tq, &tp));
    }

    #[test]
    fn hecke_commutes_with_coprime_atkin_lehner((lvl, a, b) in level_and_mask(3000)) {
        let ps = lvl.primes();
        let p = ps[a as usize % ps.len()];
        let r = subset(&lvl, b);
        prop_assume!(r > 1 && r % p != 0);
        let tp = hecke_matrix(&lvl, p).unwrap().to_dense();
        let wr = atkin_lehner_matrix(&lvl, r).unwrap().to_dense();
        prop_assert_eq!(RatMatrix::mul(&tp, &wr), RatMatrix::mul(&wr, &tp));
    }

    #[test]
    fn operators_preserve_degree_zero(n in 2u64..2000, seed in prop::collection::vec(-5i8..=5, 1..8)) {
        let lvl = level(n);
        let v = random_divisor(&lvl, &seed);
        let v = v.try_sub(&CuspDivisor::from_terms(&lvl, [(1, v.degree())]).unwrap()).unwrap();
        for p in lvl.primes() {
            let image = hecke_matrix(&lvl, p).unwrap().apply(&v).unwrap();
            prop_assert_eq!(image.degree(), rat(0, 1));
        }
    }

    #[test]
    fn display_parse_roundtrip(n in 2u64..5000, seed in prop::collection::vec(-9i8..=9, 1..12)) {
        let lvl = level(n);
        let v = random_divisor(&lvl, &seed);
        let text = v.to_string();
        prop_assert_eq!(parse_divisor(&lvl, &text).unwrap(), v);
    }

    #[test]
    fn eta_json_roundtrip(n in 2u64..5000, seed in prop::collection::vec(-9i8..=9, 1..12), d in 1i64..5) {
        let lvl = level(n);
        let r: Vec<Rat> = (0..lvl.dimension()).map(|i| rat(seed[i % seed.len()] as i64, d)).collect();
        let e = EtaExponentVector::from_dense(&lvl, r).unwrap();
        prop_assert_eq!(EtaExponentVector::from_json(&lvl, &e.to_json()).unwrap(), e);
    }

    #[test]
    fn lambda_inverts_divisor_of_eta(n in 2u64..3000, seed in prop::collection::vec(-9i8..=9, 1..12)) {
        let lvl = level(n);
        let r: Vec<Rat> = (0..lvl.dimension()).map(|i| rat(seed[i % seed.len()] as i64, 7)).collect();
        let e = EtaExponentVector::from_dense(&lvl, r).unwrap();
        let lam = lambda_map(&lvl).unwrap();
        prop_assert_eq!(lam.apply(&divisor_of_eta_vector(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn order_kills_the_class(n in 2u64..1500, seed in prop::collection::vec(-4i8..=4, 1..8)) {
        let lvl = level(n);
        prop_assume!(oddcong::eta::is_supported_shape(n));
        let v = random_divisor(&lvl, &seed);
        let v = v.try_sub(&CuspDivisor::from_terms(&lvl, [(1, v.degree())]).unwrap()).unwrap();
        let cert = class_order(&v).unwrap();
        prop_assert!(is_principal(&v.scale_int(cert.order.clone())).unwrap());
        if cert.order > 1.into() {
            prop_assert!(!is_principal(&v).unwrap());
        }
    }
}

/// The vector form of every newness identity holds on squarefree shapes;
/// only class identities can fail.
#[test]
fn newness_vector_identities_hold() {
    for n in 2u64..3000 {
        let a = n.trailing_zeros();
        if a > 3 || !factorize(n >> a).is_squarefree() {
            continue;
        }
        let report = verify_newness(&level(n)).unwrap();
        for case in &report.cases {
            for check in &case.checks {
                assert!(check.vector_holds, "N={n} {} {}", case.divisor, check.statement);
            }
        }
    }
}
