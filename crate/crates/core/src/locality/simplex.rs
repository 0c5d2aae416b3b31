//! Dense phase-1 simplex for feasibility of `A x = b, x ≥ 0`.
//!
//! Each row gets one artificial variable; rows with negative right-hand side
//! are negated first. When the artificial objective cannot reach zero, the
//! final reduced costs yield a Farkas vector `h` with `hᵀA ≥ 0` and `hᵀb < 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Scalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero_s(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    /// Structural zero (skipped during elimination).
    fn is_exact_zero(&self) -> bool;
    fn magnitude(&self) -> f64;
    /// Whether Dantzig pricing is safe (inexact types) or Bland is required.
    const EXACT: bool;
}

pub const FLOAT_EPS: f64 = 1e-10;

impl Scalar for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn add(&self, o: &f64) -> f64 {
        self + o
    }
    fn sub(&self, o: &f64) -> f64 {
        self - o
    }
    fn mul(&self, o: &f64) -> f64 {
        self * o
    }
    fn div(&self, o: &f64) -> f64 {
        self / o
    }
    fn neg(&self) -> f64 {
        -self
    }
    fn is_pos(&self) -> bool {
        *self > FLOAT_EPS
    }
    fn is_neg(&self) -> bool {
        *self < -FLOAT_EPS
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    const EXACT: bool = false;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn magnitude(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::MAX)
    }
    const EXACT: bool = true;
}

#[derive(Clone, Debug)]
pub enum Phase1<T> {
    /// A feasible point and the structural columns that ended basic.
    Feasible { x: Vec<T>, basis: Vec<usize> },
    /// Farkas vector over the original rows and the optimal artificial sum.
    Infeasible { farkas: Vec<T>, residual: T },
}

const DEGENERATE_SWITCH: usize = 50;

/// Solves the phase-1 problem for `A x = b, x ≥ 0` with `A` given row-major.
pub fn phase1<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Phase1<T> {
    let m = a.len();
    let ns = a.first().map_or(0, Vec::len);
    let width = ns + m + 1;
    let rhs = ns + m;
    let mut flip = vec![false; m];
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_neg();
        flip[i] = neg;
        let mut row = Vec::with_capacity(width);
        for v in &a[i] {
            row.push(if neg { v.neg() } else { v.clone() });
        }
        for r in 0..m {
            row.push(if r == i { T::one() } else { T::zero() });
        }
        row.push(if neg { b[i].neg() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (ns..ns + m).collect();
    // reduced costs: structural r_j = -Σ_i t[i][j]; artificial 0; rhs holds -objective.
    let mut cost = vec![T::zero(); width];
    for row in &t {
        for j in 0..ns {
            cost[j] = cost[j].sub(&row[j]);
        }
        cost[rhs] = cost[rhs].sub(&row[rhs]);
    }
    let mut degenerate_run = 0usize;
    loop {
        let bland = T::EXACT || degenerate_run >= DEGENERATE_SWITCH;
        let entering = if bland {
            (0..ns + m).find(|&j| cost[j].is_neg())
        } else {
            let mut best: Option<(usize, f64)> = None;
            for j in 0..ns + m {
                if cost[j].is_neg() {
                    let v = cost[j].magnitude();
                    if best.is_none_or(|(_, bv)| v > bv) {
                        best = Some((j, v));
                    }
                }
            }
            best.map(|(j, _)| j)
        };
        let Some(e) = entering else { break };
        let mut leave: Option<usize> = None;
        let mut best_ratio: Option<T> = None;
        for i in 0..m {
            if !t[i][e].is_pos() {
                continue;
            }
            let ratio = t[i][rhs].div(&t[i][e]);
            let better = match &best_ratio {
                None => true,
                Some(br) => {
                    let d = ratio.sub(br);
                    d.is_neg() || (d.is_zero_s() && basis[i] < basis[leave.unwrap()])
                }
            };
            if better {
                best_ratio = Some(ratio);
                leave = Some(i);
            }
        }
        let Some(r) = leave else {
            // Unbounded direction cannot occur in phase 1 (objective bounded below by 0).
            break;
        };
        if best_ratio.as_ref().is_some_and(|x| x.is_zero_s()) {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        pivot(&mut t, &mut cost, r, e);
        basis[r] = e;
    }
    let residual = cost[rhs].neg();
    if residual.is_pos() {
        let farkas = (0..m)
            .map(|i| {
                // y_i = 1 - r_art_i; h = -y, undoing the row flip.
                let y = T::one().sub(&cost[ns + i]);
                if flip[i] {
                    y
                } else {
                    y.neg()
                }
            })
            .collect();
        return Phase1::Infeasible { farkas, residual };
    }
    let mut x = vec![T::zero(); ns];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < ns {
            x[bv] = t[i][rhs].clone();
        }
    }
    let structural_basis = basis.into_iter().filter(|&bv| bv < ns).collect();
    Phase1::Feasible { x, basis: structural_basis }
}

fn pivot<T: Scalar>(t: &mut [Vec<T>], cost: &mut [T], r: usize, e: usize) {
    let width = t[r].len();
    let p = t[r][e].clone();
    for j in 0..width {
        t[r][j] = t[r][j].div(&p);
    }
    let prow = t[r].clone();
    let nz: Vec<usize> = (0..width).filter(|&j| !prow[j].is_exact_zero()).collect();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[e].clone();
        if f.is_exact_zero() {
            continue;
        }
        for &j in &nz {
            row[j] = row[j].sub(&f.mul(&prow[j]));
        }
        row[e] = T::zero();
    }
    let f = cost[e].clone();
    if !f.is_exact_zero() {
        for &j in &nz {
            cost[j] = cost[j].sub(&f.mul(&prow[j]));
        }
        cost[e] = T::zero();
    }
}
