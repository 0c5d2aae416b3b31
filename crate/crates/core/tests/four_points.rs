use nlsym::correlation::Correlation;
use nlsym::cyclotomic::{real_sign, Cyclotomic, RealSign};
use nlsym::locality::k4::{k4_decide, k4_inequalities, recover_decomposition_k4, distinct_inequality_count};
use nlsym::locality::{decide_local, LocalityStatus};
use nlsym::perm;
use nlsym::qls::{orbit_representatives, QuantumLatinSquare, Reduction};
use nlsym::AbelianGroup;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_qls(g: &AbelianGroup) -> Vec<Correlation> {
    perm::all(g.order())
        .into_iter()
        .map(|pi| QuantumLatinSquare::new(g, &pi).unwrap().correlation().with_labels(Correlation::numeric_labels(4)))
        .collect()
}

fn reproduces(p: &Correlation, terms: &[(Vec<usize>, Cyclotomic)]) -> bool {
    let n = p.n();
    let mut sum = vec![Cyclotomic::zero(); n.pow(4)];
    for (pi, w) in terms {
        for i in 0..n {
            for j in 0..n {
                sum[p.flat_index(pi[i], pi[j], i, j)] += w;
            }
        }
    }
    sum.iter().zip(p.exact_values().unwrap()).all(|(a, b)| a == b)
}

#[test]
fn inequality_family_size() {
    assert_eq!(k4_inequalities().len(), 144);
    let d = distinct_inequality_count();
    assert!(d <= 144 && d > 0);
}

#[test]
fn every_qls_on_four_points_is_local() {
    let s4 = perm::all(4);
    for spec in ["Z4", "Z2xZ2"] {
        let g: AbelianGroup = spec.parse().unwrap();
        for p in all_qls(&g) {
            let rep = k4_decide(&p).unwrap();
            assert!(rep.slacks.iter().all(|s| real_sign(s) != RealSign::Negative));
            assert_eq!(rep.verdict.status, LocalityStatus::Local);
            let terms: Vec<_> =
                rep.verdict.decomposition.iter().map(|t| (t.perm.clone(), t.exact.clone().unwrap())).collect();
            assert!(reproduces(&p, &terms));
            assert_eq!(decide_local(&p, &s4).unwrap().status, LocalityStatus::Local);
        }
    }
}

#[test]
fn magic_unitaries_recover_decompositions() {
    let g = AbelianGroup::cyclic(4);
    for pi in orbit_representatives(&g, Reduction::Correlation).unwrap() {
        let rec = recover_decomposition_k4(&QuantumLatinSquare::new(&g, &pi).unwrap().magic_unitary()).unwrap();
        assert!(rec.residual < 1e-10);
        let beta = rec.beta.unwrap();
        assert!(beta.iter().all(|&b| b >= -1e-10));
        assert!((beta.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn random_mixtures_agree_with_lp() {
    let s4 = perm::all(4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let k = rng.gen_range(1..=6);
        let mut terms = Vec::new();
        let mut total = 0;
        let raw: Vec<(usize, i64)> = (0..k).map(|_| (rng.gen_range(0..24), rng.gen_range(1..20))).collect();
        raw.iter().for_each(|&(_, w)| total += w);
        for (v, w) in raw {
            terms.push((s4[v].clone(), Cyclotomic::ratio(w, total)));
        }
        let p = Correlation::from_fn_exact(Correlation::numeric_labels(4), nlsym::Provenance::Composed, |l, k, i, j| {
            terms.iter().filter(|(pi, _)| pi[i] == l && pi[j] == k).map(|(_, w)| w.clone()).sum()
        });
        let a = k4_decide(&p).unwrap().verdict.status;
        let b = decide_local(&p, &s4).unwrap().status;
        assert_eq!(a, b);
        assert_eq!(a, LocalityStatus::Local);
    }
}

/// A point of the bisynchronous polytope outside the local polytope, as
/// `(l, k, i, j, 5·p)`. Found with an external LP over the full table.
const OUTSIDE: [(usize, usize, usize, usize, i64); 76] = [
    (0, 0, 0, 0, 1), (0, 0, 1, 1, 2), (0, 0, 2, 2, 1), (0, 0, 3, 3, 1), (0, 1, 0, 3, 1), (0, 1, 1, 0, 1), (0, 1, 1, 2, 1), (0, 1, 2, 3, 1),
    (0, 1, 3, 1, 1), (0, 2, 0, 1, 1), (0, 2, 1, 2, 1), (0, 2, 1, 3, 1), (0, 2, 2, 0, 1), (0, 2, 3, 0, 1), (0, 3, 0, 2, 1), (0, 3, 1, 0, 1),
    (0, 3, 1, 3, 1), (0, 3, 2, 1, 1), (0, 3, 3, 2, 1), (1, 0, 0, 1, 1), (1, 0, 1, 3, 1), (1, 0, 2, 1, 1), (1, 0, 3, 0, 1), (1, 0, 3, 2, 1),
    (1, 1, 0, 0, 1), (1, 1, 1, 1, 1), (1, 1, 2, 2, 1), (1, 1, 3, 3, 2), (1, 2, 0, 3, 1), (1, 2, 1, 0, 1), (1, 2, 2, 0, 1), (1, 2, 3, 1, 1),
    (1, 2, 3, 2, 1), (1, 3, 0, 2, 1), (1, 3, 1, 2, 1), (1, 3, 2, 3, 1), (1, 3, 3, 0, 1), (1, 3, 3, 1, 1), (2, 0, 0, 2, 1), (2, 0, 0, 3, 1),
    (2, 0, 1, 0, 1), (2, 0, 2, 1, 1), (2, 0, 3, 1, 1), (2, 1, 0, 1, 1), (2, 1, 0, 2, 1), (2, 1, 1, 3, 1), (2, 1, 2, 3, 1), (2, 1, 3, 0, 1),
    (2, 2, 0, 0, 2), (2, 2, 1, 1, 1), (2, 2, 2, 2, 1), (2, 2, 3, 3, 1), (2, 3, 0, 1, 1), (2, 3, 0, 3, 1), (2, 3, 1, 2, 1), (2, 3, 2, 0, 1),
    (2, 3, 3, 2, 1), (3, 0, 0, 1, 1), (3, 0, 1, 2, 1), (3, 0, 2, 0, 1), (3, 0, 2, 3, 1), (3, 0, 3, 1, 1), (3, 1, 0, 3, 1), (3, 1, 1, 3, 1),
    (3, 1, 2, 0, 1), (3, 1, 2, 1, 1), (3, 1, 3, 2, 1), (3, 2, 0, 2, 1), (3, 2, 1, 0, 1), (3, 2, 2, 1, 1), (3, 2, 2, 3, 1), (3, 2, 3, 0, 1),
    (3, 3, 0, 0, 1), (3, 3, 1, 1, 1), (3, 3, 2, 2, 2), (3, 3, 3, 3, 1),
];

#[test]
fn table_outside_the_local_polytope_is_certified() {
    let p = Correlation::from_fn_exact(Correlation::numeric_labels(4), nlsym::Provenance::UserSupplied, |l, k, i, j| {
        match OUTSIDE.iter().find(|e| (e.0, e.1, e.2, e.3) == (l, k, i, j)) {
            Some(e) => Cyclotomic::ratio(e.4, 5),
            None => Cyclotomic::zero(),
        }
    });
    assert!(p.validate().is_empty());
    let rep = k4_decide(&p).unwrap();
    assert_eq!(rep.verdict.status, LocalityStatus::Nonlocal);
    assert!(rep.verdict.certificate_verified);
    assert_eq!(rep.slacks[rep.min_slack], Cyclotomic::ratio(-1, 5));
    let lp = decide_local(&p, &perm::all(4)).unwrap();
    assert!(lp.is_nonlocal() && lp.certificate_verified);
}
