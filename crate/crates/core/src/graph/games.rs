//! Automorphism-game correlations: the three-disjoint-automorphisms magic
//! unitary and lifts to graph products.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::automorphism::is_automorphism;
use super::{Graph, Product};
use crate::correlation::{Correlation, Provenance};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Equal,
    Adjacent,
    NonAdjacent,
}

impl Relation {
    pub fn of(g: &Graph, u: usize, v: usize) -> Relation {
        if u == v {
            Relation::Equal
        } else if g.adjacent(u, v) {
            Relation::Adjacent
        } else {
            Relation::NonAdjacent
        }
    }
}

/// Symbolic entry of the magic unitary built from three projections `q₁, q₂, q₃`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Entry {
    Zero,
    One,
    Q(usize),
    OneMinusQ(usize),
}

impl Entry {
    /// Coefficients on `(1, q₁, q₂, q₃)`.
    fn coefficients(self) -> [i64; 4] {
        match self {
            Entry::Zero => [0, 0, 0, 0],
            Entry::One => [1, 0, 0, 0],
            Entry::Q(k) => {
                let mut c = [0; 4];
                c[k + 1] = 1;
                c
            }
            Entry::OneMinusQ(k) => {
                let mut c = [1, 0, 0, 0];
                c[k + 1] = -1;
                c
            }
        }
    }
}

/// `tr(xy)` with `tr(1)=1`, `tr(q_k)=tr(q_k²)=1/2`, `tr(q_k q_l)=1/8` for `k ≠ l`.
pub fn pairing_trace(x: Entry, y: Entry) -> BigRational {
    let (a, b) = (x.coefficients(), y.coefficients());
    let basis = |i: usize, j: usize| -> BigRational {
        match (i, j) {
            (0, 0) => BigRational::one(),
            (0, _) | (_, 0) => BigRational::new(1.into(), 2.into()),
            (i, j) if i == j => BigRational::new(1.into(), 2.into()),
            _ => BigRational::new(1.into(), 8.into()),
        }
    };
    let mut acc = BigRational::zero();
    for i in 0..4 {
        for j in 0..4 {
            if a[i] != 0 && b[j] != 0 {
                acc += basis(i, j) * BigRational::from_integer((a[i] * b[j]).into());
            }
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub struct DisjointAutoCorrelation {
    pub automorphisms: [Perm; 3],
    /// `u[i][j]`
    pub entries: Vec<Vec<Entry>>,
    pub correlation: Correlation,
}

/// `u_{ij} = Σ_k δ_{i,σ_k(j)} q_k + δ_{ij}(1 − q₁ − q₂ − q₃)` and `p(l,k|i,j) = tr(u_{il} u_{jk})`.
pub fn disjoint_auto_correlation(g: &Graph, sigmas: &[Perm]) -> Result<DisjointAutoCorrelation> {
    let n = g.n();
    if sigmas.len() != 3 {
        return Err(Error::Invalid("exactly three automorphisms are required".into()));
    }
    for s in sigmas {
        if !is_automorphism(g, s) {
            return Err(Error::NotAutomorphism(format!("{s:?}")));
        }
        if perm::is_identity(s) {
            return Err(Error::NotDisjoint);
        }
    }
    let supports: Vec<Vec<usize>> = sigmas.iter().map(|s| perm::support(s)).collect();
    for a in 0..3 {
        for b in a + 1..3 {
            if supports[a].iter().any(|v| supports[b].contains(v)) {
                return Err(Error::NotDisjoint);
            }
        }
    }
    let mover = |j: usize| (0..3).find(|&k| sigmas[k][j] != j);
    let entries: Vec<Vec<Entry>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match mover(j) {
                    Some(k) if sigmas[k][j] == i => Entry::Q(k),
                    Some(k) if i == j => Entry::OneMinusQ(k),
                    None if i == j => Entry::One,
                    _ => Entry::Zero,
                })
                .collect()
        })
        .collect();
    let labels = Correlation::numeric_labels(n);
    let correlation = Correlation::from_fn_exact(labels, Provenance::DisjointAutos, |l, k, i, j| {
        Cyclotomic::from_rational(pairing_trace(entries[i][l], entries[j][k]))
    });
    Ok(DisjointAutoCorrelation {
        automorphisms: [sigmas[0].clone(), sigmas[1].clone(), sigmas[2].clone()],
        entries,
        correlation,
    })
}

/// Satisfies the linear conditions and vanishes whenever `rel(i,j) ≠ rel(l,k)`.
pub fn is_winning(g: &Graph, p: &Correlation) -> bool {
    let n = g.n();
    if p.n() != n || !p.validate().is_empty() {
        return false;
    }
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if Relation::of(g, i, j) != Relation::of(g, l, k) {
                        let zero = match p.exact(l, k, i, j) {
                            Some(v) => v.is_zero(),
                            None => p.approx(l, k, i, j).abs() <= crate::correlation::FLOAT_TOLERANCE,
                        };
                        if !zero {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// `p′(jb,ld|ia,kc) = δ_{ab} δ_{cd} p(j,l|i,k)` on vertices `i·|H| + a`.
pub fn lift_correlation_to_product(p: &Correlation, h: &Graph, _kind: Product) -> Result<Correlation> {
    let n = p.n();
    let m = h.n();
    let labels: Vec<String> =
        (0..n * m).map(|v| format!("{}.{}", p.labels()[v / m], v % m)).collect();
    let split = |v: usize| (v / m, v % m);
    let lifted = if p.is_exact() {
        Correlation::from_fn_exact(labels, Provenance::Lifted, |out1, out2, in1, in2| {
            let ((j, b), (l, d), (i, a), (k, c)) = (split(out1), split(out2), split(in1), split(in2));
            if a == b && c == d {
                p.exact(j, l, i, k).cloned().expect("exact")
            } else {
                Cyclotomic::zero()
            }
        })
    } else {
        let total = (n * m).pow(4);
        let mut values = Vec::with_capacity(total);
        for out1 in 0..n * m {
            for out2 in 0..n * m {
                for in1 in 0..n * m {
                    for in2 in 0..n * m {
                        let ((j, b), (l, d), (i, a), (k, c)) = (split(out1), split(out2), split(in1), split(in2));
                        values.push(if a == b && c == d { p.approx(j, l, i, k) } else { 0.0 });
                    }
                }
            }
        }
        Correlation::from_float(labels, values)?.with_provenance(Provenance::Lifted)
    };
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_disjoint_automorphisms;

    fn q(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn trace_table() {
        assert_eq!(pairing_trace(Entry::Q(0), Entry::Q(1)), q(1, 8));
        assert_eq!(pairing_trace(Entry::Q(2), Entry::OneMinusQ(2)), q(0, 1));
        assert_eq!(pairing_trace(Entry::OneMinusQ(0), Entry::OneMinusQ(1)), q(1, 8));
        assert_eq!(pairing_trace(Entry::OneMinusQ(1), Entry::OneMinusQ(1)), q(1, 2));
        assert_eq!(pairing_trace(Entry::One, Entry::Q(1)), q(1, 2));
    }

    #[test]
    fn three_k2_correlation_is_winning() {
        let g = Graph::from_name("3K2").unwrap();
        let s = find_disjoint_automorphisms(&g, 3).unwrap().unwrap();
        let c = disjoint_auto_correlation(&g, &s).unwrap();
        assert!(is_winning(&g, &c.correlation));
    }

    #[test]
    fn rejects_overlapping_supports() {
        let g = Graph::complete(4).unwrap();
        let s = vec![vec![1, 0, 2, 3], vec![0, 2, 1, 3], vec![0, 1, 3, 2]];
        assert_eq!(disjoint_auto_correlation(&g, &s).unwrap_err(), Error::NotDisjoint);
        let c5 = Graph::cycle(5).unwrap();
        let bad = vec![vec![1, 0, 2, 3, 4], vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3, 4]];
        assert!(matches!(disjoint_auto_correlation(&c5, &bad), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn lift_of_deterministic_is_deterministic() {
        let pi = vec![2, 0, 1];
        let p = Correlation::deterministic(&pi, Correlation::numeric_labels(3));
        let lifted = lift_correlation_to_product(&p, &Graph::complete(2).unwrap(), Product::Cartesian).unwrap();
        let big: Perm = (0..6).map(|v| pi[v / 2] * 2 + v % 2).collect();
        let expect = Correlation::deterministic(&big, lifted.labels().to_vec());
        assert!(lifted.same_values(&expect));
    }
}
