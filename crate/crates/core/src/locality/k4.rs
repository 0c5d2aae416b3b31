//! Bijective correlations on four points: the transposition graph of `S₄`,
//! its incidence matrix, the 144 cycle inequalities and the exact decision
//! procedure that solves `Mα = p̂` and shifts by the parity vector.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::certificate::{Admissible, Certificate, HyperplaneEntry};
use super::linsolve;
use super::{t_coordinates, DecompositionTerm, LocalityStatus, LocalityVerdict};
use crate::correlation::Correlation;
use crate::cyclotomic::{compare_real, real_sign, Cyclotomic, RealSign};
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

pub const MAGIC_TOLERANCE: f64 = 1e-10;

/// `G₄`: vertices are the 24 permutations (lexicographic), edges are indexed
/// like the T coordinates `(l,k|i,j)`, `i < j`, `l ≠ k`.
#[derive(Clone, Debug)]
pub struct TranspositionGraph {
    pub perms: Vec<Perm>,
    pub coordinates: Vec<(usize, usize, usize, usize)>,
    pub edges: Vec<(usize, usize)>,
}

impl Default for TranspositionGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl TranspositionGraph {
    pub fn new() -> TranspositionGraph {
        let perms = perm::all(4);
        let coordinates = t_coordinates(4);
        let edges = coordinates
            .iter()
            .map(|&(l, k, i, j)| {
                let ends: Vec<usize> =
                    (0..24).filter(|&v| perms[v][i] == l && perms[v][j] == k).collect();
                (ends[0], ends[1])
            })
            .collect();
        TranspositionGraph { perms, coordinates, edges }
    }

    /// 72×24 incidence matrix; column π is `p̂_π`.
    pub fn incidence(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; 24]; 72];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            m[e][a] = 1;
            m[e][b] = 1;
        }
        m
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; 24];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = [false; 24];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Every edge joins permutations of opposite parity.
    pub fn is_bipartite_by_parity(&self) -> bool {
        self.edges.iter().all(|&(a, b)| perm::parity(&self.perms[a]) != perm::parity(&self.perms[b]))
    }

    /// `γ_π = sign(π)`.
    pub fn parity_vector(&self) -> Vec<i64> {
        self.perms.iter().map(|p| perm::parity(p) as i64).collect()
    }

    pub fn incidence_rank(&self) -> usize {
        let m: Vec<Vec<BigRational>> = self
            .incidence()
            .into_iter()
            .map(|r| r.into_iter().map(linsolve::rational).collect())
            .collect();
        linsolve::rank(&m)
    }

    pub fn perm_index(&self, p: &[usize]) -> usize {
        perm::rank(p) as usize
    }
}

/// `p̂(e) = p(l,k|i,j)` for the coordinate labelling edge `e`.
pub fn hat_map(p: &Correlation) -> Vec<Cyclotomic> {
    t_coordinates(4)
        .into_iter()
        .map(|(l, k, i, j)| match p.exact(l, k, i, j) {
            Some(v) => v.clone(),
            None => Cyclotomic::from_rational(crate::cyclotomic::rational_approximation(p.approx(l, k, i, j), 1 << 40)),
        })
        .collect()
}

/// `p(π(c),π(d)|c,d) − p(π(b),π(d)|a,d) + p(π(b),π(c)|a,b) ≥ 0` for the 4-cycle `(a b c d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4Inequality {
    pub pi: Perm,
    pub cycle: [usize; 4],
    /// Terms on T coordinates (symmetry applied so that `i < j`).
    pub terms: Vec<((usize, usize, usize, usize), i64)>,
}

impl K4Inequality {
    pub fn evaluate(&self, p: &Correlation) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for &((l, k, i, j), c) in &self.terms {
            let v = p.exact(l, k, i, j).cloned().unwrap_or_else(|| {
                Cyclotomic::from_rational(crate::cyclotomic::rational_approximation(p.approx(l, k, i, j), 1 << 40))
            });
            acc += &v.scale_int(c);
        }
        acc
    }

    pub fn label(&self) -> String {
        let [a, b, c, d] = self.cycle;
        format!("π={:?}, cycle=({a} {b} {c} {d})", self.pi)
    }

    fn canonical_terms(&self) -> Vec<((usize, usize, usize, usize), i64)> {
        let mut t = self.terms.clone();
        t.sort();
        t
    }
}

fn normalize(l: usize, k: usize, i: usize, j: usize) -> (usize, usize, usize, usize) {
    if i < j {
        (l, k, i, j)
    } else {
        (k, l, j, i)
    }
}

/// The six 4-cycles on `{0,1,2,3}`, written starting at 0.
pub fn four_cycles() -> Vec<[usize; 4]> {
    perm::all(3).into_iter().map(|p| [0, p[0] + 1, p[1] + 1, p[2] + 1]).collect()
}

/// All 24 × 6 = 144 inequalities, in order of `(π, cycle)`.
pub fn k4_inequalities() -> Vec<K4Inequality> {
    let mut out = Vec::with_capacity(144);
    for pi in perm::all(4) {
        for cycle in four_cycles() {
            let [a, b, c, d] = cycle;
            let terms = vec![
                (normalize(pi[c], pi[d], c, d), 1),
                (normalize(pi[b], pi[d], a, d), -1),
                (normalize(pi[b], pi[c], a, b), 1),
            ];
            out.push(K4Inequality { pi: pi.clone(), cycle, terms });
        }
    }
    out
}

/// Number of distinct functionals among the 144.
pub fn distinct_inequality_count() -> usize {
    let mut seen: Vec<Vec<((usize, usize, usize, usize), i64)>> =
        k4_inequalities().iter().map(K4Inequality::canonical_terms).collect();
    seen.sort();
    seen.dedup();
    seen.len()
}

#[derive(Clone, Debug)]
pub struct K4Report {
    pub verdict: LocalityVerdict,
    /// Exact slack of each inequality, aligned with [`k4_inequalities`].
    pub slacks: Vec<Cyclotomic>,
    /// Index of the smallest slack.
    pub min_slack: usize,
    /// Particular solution of `Mα = p̂` before the parity shift.
    pub alpha: Vec<Cyclotomic>,
}

/// Exact decision for `p ∈ B(4)`.
pub fn k4_decide(p: &Correlation) -> Result<K4Report> {
    if p.n() != 4 {
        return Err(Error::NotB4(format!("index set has {} points", p.n())));
    }
    if let Some(v) = p.validate().first() {
        return Err(Error::NotB4(v.to_string()));
    }
    k4_decide_span(p)
}

/// As [`k4_decide`] for any table satisfying the linear conditions (entries may be negative).
pub fn k4_decide_span(p: &Correlation) -> Result<K4Report> {
    let graph = TranspositionGraph::new();
    let m: Vec<Vec<BigRational>> =
        graph.incidence().into_iter().map(|r| r.into_iter().map(linsolve::rational).collect()).collect();
    let hat = hat_map(p);
    let alpha = linsolve::solve(&m, &hat).ok_or_else(|| Error::NotB4("p̂ is not in the span of M".into()))?;
    let gamma = graph.parity_vector();
    let min_of = |sign: i64| {
        (0..24)
            .filter(|&v| gamma[v] == sign)
            .map(|v| alpha[v].clone())
            .min_by(compare_real)
            .unwrap()
    };
    let min_even = min_of(1);
    let min_odd = min_of(-1);
    let local = real_sign(&(&min_even + &min_odd)) != RealSign::Negative;
    let ineqs = k4_inequalities();
    let slacks: Vec<Cyclotomic> = ineqs.iter().map(|q| q.evaluate(p)).collect();
    let min_slack = (0..slacks.len()).min_by(|&a, &b| compare_real(&slacks[a], &slacks[b])).unwrap();
    let by_inequalities = real_sign(&slacks[min_slack]) != RealSign::Negative;
    if by_inequalities != local {
        return Err(Error::Inconsistent("parity shift and cycle inequalities disagree".into()));
    }
    let numeric_only = p.is_numeric_only();
    let verdict = if local {
        let terms = (0..24)
            .filter_map(|v| {
                let shift = if gamma[v] == 1 { -&min_even } else { min_even.clone() };
                let beta = &alpha[v] + &shift;
                (!beta.is_zero()).then(|| DecompositionTerm { perm: graph.perms[v].clone(), weight: beta.approx_re(), exact: Some(beta) })
            })
            .collect();
        LocalityVerdict {
            status: LocalityStatus::Local,
            decomposition: terms,
            exact_decomposition: !numeric_only,
            group_averaged: false,
            certificate: None,
            certificate_verified: false,
            gap: 0.0,
            numeric_only,
            note: None,
        }
    } else {
        let q = &ineqs[min_slack];
        let cert = Certificate {
            labels: p.labels().to_vec(),
            hyperplane: q
                .terms
                .iter()
                .map(|&((l, k, i, j), c)| HyperplaneEntry { l, k, i, j, coef: BigRational::from_integer(c.into()) })
                .collect(),
            min_over_deterministic: BigRational::zero(),
            value_on_p: Some(slacks[min_slack].clone()),
            value_on_p_approx: slacks[min_slack].approx_re(),
        };
        let sound = cert.verify(p, &Admissible::All(4))?.sound;
        LocalityVerdict {
            status: LocalityStatus::Nonlocal,
            decomposition: vec![],
            exact_decomposition: false,
            group_averaged: false,
            gap: slacks[min_slack].approx_re(),
            certificate: Some(cert),
            certificate_verified: sound,
            numeric_only,
            note: Some(format!("violated: {}", q.label())),
        }
    };
    Ok(K4Report { verdict, slacks, min_slack, alpha })
}

/// Result of reading a decomposition off a finite-dimensional magic unitary.
#[derive(Clone, Debug)]
pub struct K4Recovery {
    /// `α_π = tr(u_{aπ(a)} u_{bπ(b)} u_{cπ(c)})` (normalized trace), by lexicographic π.
    pub alpha: Vec<f64>,
    /// `max |Mα − p̂|`.
    pub residual: f64,
    /// Nonnegative solution after the parity shift, when one exists.
    pub beta: Option<Vec<f64>>,
}

/// Checks the magic-unitary conditions to [`MAGIC_TOLERANCE`].
pub fn check_magic_unitary(u: &[Vec<DMatrix<Complex64>>]) -> Result<()> {
    let n = u.len();
    if n == 0 || u.iter().any(|r| r.len() != n) {
        return Err(Error::NotMagicUnitary("not square".into()));
    }
    let d = u[0][0].nrows();
    let id = DMatrix::<Complex64>::identity(d, d);
    for (i, row) in u.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.nrows() != d || x.ncols() != d {
                return Err(Error::NotMagicUnitary(format!("entry ({i},{j}) has the wrong size")));
            }
            if (x * x - x).norm() > MAGIC_TOLERANCE || (x.adjoint() - x).norm() > MAGIC_TOLERANCE {
                return Err(Error::NotMagicUnitary(format!("entry ({i},{j}) is not a projection")));
            }
        }
    }
    for i in 0..n {
        let row: DMatrix<Complex64> = (0..n).fold(DMatrix::zeros(d, d), |acc, j| acc + &u[i][j]);
        let col: DMatrix<Complex64> = (0..n).fold(DMatrix::zeros(d, d), |acc, j| acc + &u[j][i]);
        if (row - &id).norm() > MAGIC_TOLERANCE || (col - &id).norm() > MAGIC_TOLERANCE {
            return Err(Error::NotMagicUnitary(format!("line {i} does not sum to the identity")));
        }
    }
    Ok(())
}

fn ntrace(m: &DMatrix<Complex64>) -> Complex64 {
    m.trace() / m.nrows() as f64
}

/// `α_π` from the triple `(a,b,c)` of distinct points.
pub fn alpha_from_triple(u: &[Vec<DMatrix<Complex64>>], pi: &[usize], abc: [usize; 3]) -> Complex64 {
    let [a, b, c] = abc;
    ntrace(&(&u[a][pi[a]] * &u[b][pi[b]] * &u[c][pi[c]]))
}

pub fn recover_decomposition_k4(u: &[Vec<DMatrix<Complex64>>]) -> Result<K4Recovery> {
    if u.len() != 4 {
        return Err(Error::NotMagicUnitary("expected a 4×4 array".into()));
    }
    check_magic_unitary(u)?;
    let graph = TranspositionGraph::new();
    let alpha: Vec<f64> = graph.perms.iter().map(|pi| alpha_from_triple(u, pi, [0, 1, 2]).re).collect();
    let mut residual = 0.0f64;
    for (e, &(l, k, i, j)) in graph.coordinates.iter().enumerate() {
        let phat = ntrace(&(&u[i][l] * &u[j][k])).re;
        let (a, b) = graph.edges[e];
        residual = residual.max((alpha[a] + alpha[b] - phat).abs());
    }
    let gamma = graph.parity_vector();
    let min_even = (0..24).filter(|&v| gamma[v] == 1).map(|v| alpha[v]).fold(f64::INFINITY, f64::min);
    let min_odd = (0..24).filter(|&v| gamma[v] == -1).map(|v| alpha[v]).fold(f64::INFINITY, f64::min);
    let beta = (min_even + min_odd >= -MAGIC_TOLERANCE).then(|| {
        (0..24).map(|v| (alpha[v] - gamma[v] as f64 * min_even).max(0.0)).collect()
    });
    Ok(K4Recovery { alpha, residual, beta })
}

/// The magic unitary of a permutation: `u_{ij} = δ_{π(i) j}` as 1×1 matrices.
pub fn classical_magic_unitary(pi: &[usize]) -> Vec<Vec<DMatrix<Complex64>>> {
    let n = pi.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| DMatrix::from_element(1, 1, if pi[i] == j { Complex64::one() } else { Complex64::zero() }))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_of_g4() {
        let g = TranspositionGraph::new();
        assert_eq!(g.edges.len(), 72);
        assert!(g.degrees().iter().all(|&d| d == 6));
        assert!(g.is_bipartite_by_parity());
        assert!(g.is_connected());
        assert_eq!(g.incidence_rank(), 23);
        let m = g.incidence();
        let gamma = g.parity_vector();
        assert!(m.iter().all(|row| row.iter().zip(&gamma).map(|(a, b)| a * b).sum::<i64>() == 0));
    }

    #[test]
    fn edges_are_distinct() {
        let g = TranspositionGraph::new();
        let mut e: Vec<(usize, usize)> = g.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        e.sort();
        e.dedup();
        assert_eq!(e.len(), 72);
    }

    #[test]
    fn vertices_satisfy_all_inequalities() {
        let ineqs = k4_inequalities();
        assert_eq!(ineqs.len(), 144);
        for pi in perm::all(4) {
            let p = Correlation::deterministic(&pi, Correlation::numeric_labels(4));
            for q in &ineqs {
                assert_ne!(real_sign(&q.evaluate(&p)), RealSign::Negative);
            }
        }
    }

    #[test]
    fn classical_unitary_recovers_indicator() {
        let pi = vec![2, 0, 3, 1];
        let rec = recover_decomposition_k4(&classical_magic_unitary(&pi)).unwrap();
        let idx = perm::rank(&pi) as usize;
        for (v, a) in rec.alpha.iter().enumerate() {
            assert!((a - if v == idx { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
        assert!(rec.residual < 1e-12);
    }
}
