use num_complex::Complex64;
use proptest::prelude::*;

use nlsym::correlation::Correlation;
use nlsym::cyclotomic::{real_sign, Cyclotomic, RealSign};
use nlsym::graph::five_point_witness;
use nlsym::locality::certificate::Admissible;
use nlsym::locality::decide_local;
use nlsym::perm;
use nlsym::qls::{characteristic_matrix, is_classical_qls, QuantumLatinSquare};
use nlsym::AbelianGroup;

/// Exponents of ω in the published order-five square, row by row.
const FIGURE: [[[u32; 5]; 5]; 5] = [
    [[0, 0, 0, 0, 0], [0, 4, 3, 2, 1], [0, 3, 1, 4, 2], [0, 2, 4, 1, 3], [0, 1, 2, 3, 4]],
    [[0, 1, 2, 4, 3], [0, 0, 0, 1, 4], [0, 4, 3, 3, 0], [0, 3, 1, 0, 1], [0, 2, 4, 2, 2]],
    [[0, 2, 4, 3, 1], [0, 1, 2, 0, 2], [0, 0, 0, 2, 3], [0, 4, 3, 4, 4], [0, 3, 1, 1, 0]],
    [[0, 3, 1, 2, 4], [0, 2, 4, 4, 0], [0, 1, 2, 1, 1], [0, 0, 0, 3, 2], [0, 4, 3, 0, 3]],
    [[0, 4, 3, 1, 2], [0, 3, 1, 3, 3], [0, 2, 4, 0, 4], [0, 1, 2, 2, 0], [0, 0, 0, 4, 1]],
];

fn figure_q(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let w = |e: u32| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / 5.0);
    let inner: Complex64 = (0..5).map(|t| w(FIGURE[c][a][t]).conj() * w(FIGURE[d][b][t])).sum();
    inner.norm_sqr() / 125.0
}

fn phi() -> Cyclotomic {
    (Cyclotomic::one() + Cyclotomic::sqrt5()).div_int(2)
}

fn witness() -> Correlation {
    five_point_witness()
}

#[test]
fn witness_matches_the_published_square() {
    let p = witness();
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    assert!((p.approx(a, b, c, d) - figure_q(a, b, c, d)).abs() < 1e-12, "{a}{b}{c}{d}");
                }
            }
        }
    }
}

#[test]
fn characteristic_matrix_has_golden_entries() {
    let g = AbelianGroup::cyclic(5);
    let d = characteristic_matrix(&g, &[0, 1, 2, 4, 3]).unwrap();
    let (one, two) = (Cyclotomic::one(), Cyclotomic::from_int(2));
    let hi = &one + &phi();
    let lo = &two - &phi();
    let z = Cyclotomic::zero();
    let expect = [
        [Cyclotomic::from_int(5), z.clone(), z.clone(), z.clone(), z.clone()],
        [z.clone(), hi.clone(), one.clone(), one.clone(), lo.clone()],
        [z.clone(), one.clone(), lo.clone(), hi.clone(), one.clone()],
        [z.clone(), one.clone(), hi.clone(), lo.clone(), one.clone()],
        [z, lo, one.clone(), one, hi],
    ];
    for a in 0..5 {
        for b in 0..5 {
            assert_eq!(d.get(a, b), &expect[a][b].div_int(5), "D[{a}][{b}]");
        }
    }
    let via = QuantumLatinSquare::new(&g, &[0, 1, 2, 4, 3]).unwrap().characteristic_via_correlation().unwrap();
    assert_eq!(via.entries(), d.entries());
}

#[test]
fn separating_functional_is_negative() {
    let p = witness();
    let q = |a, b, c, d| p.exact(a, b, c, d).unwrap().clone();
    assert_eq!(q(0, 3, 0, 1), Cyclotomic::ratio(1, 25));
    let value = q(0, 2, 0, 2).scale_int(2) + q(0, 3, 0, 1) - q(0, 4, 0, 4);
    let closed = (Cyclotomic::from_int(5) - Cyclotomic::sqrt5().scale_int(3)).div_int(50);
    assert_eq!(value, closed);
    assert_eq!(real_sign(&value), RealSign::Negative);
    assert!((value.approx_re() - (5.0 - 3.0 * 5f64.sqrt()) / 50.0).abs() < 1e-15);
    let float = 2.0 * figure_q(0, 2, 0, 2) + figure_q(0, 3, 0, 1) - figure_q(0, 4, 0, 4);
    assert!((value.approx_re() - float).abs() < 1e-12);
}

#[test]
fn witness_is_nonlocal_with_verified_certificate() {
    let p = witness();
    assert!(p.validate().is_empty());
    let v = decide_local(&p, &perm::all(5)).unwrap();
    assert!(v.is_nonlocal());
    assert!(v.certificate_verified);
    let cert = v.certificate.unwrap();
    let check = cert.verify(&p, &Admissible::All(5)).unwrap();
    assert!(check.sound);
    assert_eq!(real_sign(check.value_on_p.as_ref().unwrap()), RealSign::Negative);
    assert!(!is_classical_qls(&AbelianGroup::cyclic(5), &[0, 1, 2, 4, 3]).unwrap().is_classical());
}

#[test]
fn tampered_certificate_is_rejected() {
    let p = witness();
    let v = decide_local(&p, &perm::all(5)).unwrap();
    let mut cert = v.certificate.unwrap();
    cert.min_over_deterministic += num_rational::BigRational::from_integer(1.into());
    assert!(!cert.verify(&p, &Admissible::All(5)).unwrap().sound);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_z5_square_is_orthogonal_and_bijective(r in 0u64..120) {
        let pi = perm::unrank(r, 5);
        let s = QuantumLatinSquare::new(&AbelianGroup::cyclic(5), &pi).unwrap();
        prop_assert!(s.is_orthogonal());
        prop_assert!(s.correlation().validate().is_empty());
    }
}

#[test]
fn square_entries_match_the_published_exponents() {
    let s = QuantumLatinSquare::new(&AbelianGroup::cyclic(5), &[0, 1, 2, 4, 3]).unwrap();
    for a in 0..5 {
        for b in 0..5 {
            assert_eq!(s.exponents(a, b), &FIGURE[a][b], "entry ({a},{b})");
        }
    }
}
