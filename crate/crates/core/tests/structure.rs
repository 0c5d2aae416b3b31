use proptest::prelude::*;

use nlsym::correlation::Correlation;
use nlsym::cyclotomic::Cyclotomic;
use nlsym::perm;
use nlsym::qls::{characteristic_matrix, is_classical_qls, QuantumLatinSquare};
use nlsym::AbelianGroup;

fn groups_up_to_twelve() -> Vec<AbelianGroup> {
    let mut out: Vec<AbelianGroup> = (1..=12).map(AbelianGroup::cyclic).collect();
    for f in [[2, 2].as_slice(), &[2, 4], &[2, 2, 2], &[3, 3], &[2, 6]] {
        out.push(AbelianGroup::new(f).unwrap());
    }
    out
}

#[test]
fn character_tables_are_orthogonal() {
    for g in groups_up_to_twelve() {
        let c = g.character_table();
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                let dot: Cyclotomic = (0..n).map(|m| &c[m][a].conj() * &c[m][b]).sum();
                let expect = if a == b { Cyclotomic::from_int(n as i64) } else { Cyclotomic::zero() };
                assert_eq!(dot, expect, "{g} at ({a},{b})");
            }
        }
    }
}

#[test]
fn pairing_is_a_bicharacter() {
    for g in groups_up_to_twelve() {
        let n = g.order();
        let big = g.exponent();
        for m in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let lhs = g.pairing(m, g.add(a, b));
                    assert_eq!(lhs, (g.pairing(m, a) + g.pairing(m, b)) % big, "{g}");
                    assert_eq!(g.pairing(m, a), g.pairing(a, m), "{g}");
                }
            }
        }
    }
}

#[test]
fn both_routes_to_the_characteristic_matrix_agree() {
    for spec in ["Z4", "Z5", "Z2xZ2"] {
        let g: AbelianGroup = spec.parse().unwrap();
        for pi in perm::all(g.order()) {
            let s = QuantumLatinSquare::new(&g, &pi).unwrap();
            let direct = characteristic_matrix(&g, &pi).unwrap();
            let via = s.characteristic_via_correlation().unwrap();
            assert_eq!(direct.entries(), via.entries(), "{spec} {pi:?}");
            assert!(s.correlation().is_group_invariant(&g));
            let check = is_classical_qls(&g, &pi).unwrap();
            assert!(check.consistent());
            assert_eq!(check.is_classical(), direct.is_permutation_matrix());
        }
    }
}

#[test]
fn squares_are_orthogonal_up_to_twelve() {
    for g in groups_up_to_twelve() {
        let n = g.order();
        let mut pi = perm::identity(n);
        pi.rotate_left(1.min(n.saturating_sub(1)));
        if n > 2 {
            pi.swap(0, 2);
        }
        assert!(QuantumLatinSquare::new(&g, &pi).unwrap().is_orthogonal(), "{g}");
    }
}

fn compose_check(spec: &str, r1: u64, r2: u64) {
    let g: AbelianGroup = spec.parse().unwrap();
    let (a, b) = (perm::unrank(r1, g.order()), perm::unrank(r2, g.order()));
    let pa = QuantumLatinSquare::new(&g, &a).unwrap().correlation();
    let pb = QuantumLatinSquare::new(&g, &b).unwrap().correlation();
    let composed = pa.compose(&pb).unwrap();
    let lhs = composed.to_characteristic(&g).unwrap();
    let rhs = characteristic_matrix(&g, &a).unwrap().mul(&characteristic_matrix(&g, &b).unwrap());
    assert_eq!(lhs.entries(), rhs.entries());
}

#[test]
fn uniform_correlation_is_idempotent() {
    for spec in ["Z4", "Z2xZ2", "Z5"] {
        let g: AbelianGroup = spec.parse().unwrap();
        let u = Correlation::uniform_group(&g);
        assert!(u.compose(&u).unwrap().same_values(&u));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn composition_multiplies_characteristic_matrices_z5(r1 in 0u64..120, r2 in 0u64..120) {
        compose_check("Z5", r1, r2);
    }

    #[test]
    fn composition_multiplies_characteristic_matrices_z6(r1 in 0u64..720, r2 in 0u64..720) {
        compose_check("Z6", r1, r2);
    }

    #[test]
    fn characteristic_matrices_are_doubly_stochastic(r in 0u64..720) {
        let g = AbelianGroup::cyclic(6);
        let d = characteristic_matrix(&g, &perm::unrank(r, 6)).unwrap();
        for a in 0..6 {
            let row: Cyclotomic = (0..6).map(|b| d.get(a, b).clone()).sum();
            let col: Cyclotomic = (0..6).map(|b| d.get(b, a).clone()).sum();
            prop_assert_eq!(row, Cyclotomic::one());
            prop_assert_eq!(col, Cyclotomic::one());
        }
    }
}
