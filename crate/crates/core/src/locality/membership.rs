//! Convex-hull membership of a target vector in the hull of nonnegative
//! integer columns (scaled by a common denominator), with exact confirmation.
//!
//! Columns inconsistent with the zero pattern of the target are dropped before
//! the LP runs. A separating vector found on the reduced problem is repaired
//! by adding a multiple of the zero-pattern indicator, which leaves its value
//! on the target unchanged and lifts every dropped column above the minimum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::linsolve;
use super::simplex::{phase1, Phase1};
use crate::cyclotomic::{rational_approximation, real_sign, Cyclotomic, RealSign};

pub const ZERO_TOLERANCE: f64 = 1e-12;
pub const DENOMINATOR_SCHEDULE: [u64; 3] = [1_000_000, 1_000_000_000, 1_000_000_000_000];
const LCM_LIMIT: u128 = 1 << 50;

#[derive(Clone, Debug)]
pub enum Target {
    Exact(Vec<Cyclotomic>),
    Float(Vec<f64>),
}

impl Target {
    pub fn len(&self) -> usize {
        match self {
            Target::Exact(v) => v.len(),
            Target::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn approx(&self, r: usize) -> f64 {
        match self {
            Target::Exact(v) => v[r].approx_re(),
            Target::Float(v) => v[r],
        }
    }

    fn is_zero(&self, r: usize) -> bool {
        match self {
            Target::Exact(v) => v[r].is_zero(),
            Target::Float(v) => v[r].abs() <= ZERO_TOLERANCE,
        }
    }

    fn is_rational(&self) -> bool {
        matches!(self, Target::Exact(v) if v.iter().all(Cyclotomic::is_rational))
    }
}

/// Sparse column: `(row, count)` pairs; the real entry is `count / col_den`.
pub type Column = Vec<(u32, u32)>;

pub struct Problem<'a> {
    pub rows: usize,
    pub columns: &'a [Column],
    pub col_den: u32,
    pub target: &'a Target,
}

#[derive(Clone, Debug)]
pub struct Weight {
    pub column: usize,
    pub approx: f64,
    pub exact: Option<Cyclotomic>,
}

#[derive(Clone, Debug)]
pub struct Separation {
    /// Numerators over `den`, one per row.
    pub y: Vec<i128>,
    pub den: i128,
    /// Exact minimum of `y·column` over every column.
    pub min: BigRational,
    /// `y·target`; exact when the target is.
    pub value: Option<Cyclotomic>,
    pub value_approx: f64,
}

impl Separation {
    pub fn y_rational(&self, r: usize) -> BigRational {
        BigRational::new(BigInt::from(self.y[r]), BigInt::from(self.den))
    }

    /// `value - min`, negative for a valid separation.
    pub fn gap_exact(&self) -> Option<Cyclotomic> {
        self.value.as_ref().map(|v| v - &Cyclotomic::from_rational(self.min.clone()))
    }

    pub fn gap_approx(&self) -> f64 {
        self.value_approx - self.min.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Local { weights: Vec<Weight>, exact: bool },
    Nonlocal(Separation),
    Inconclusive(String),
}

pub fn decide(problem: &Problem<'_>) -> Outcome {
    let t = problem.target;
    assert_eq!(t.len(), problem.rows);
    let zero_rows: Vec<bool> = (0..problem.rows).map(|r| t.is_zero(r)).collect();
    let kept: Vec<usize> = (0..problem.columns.len())
        .filter(|&c| problem.columns[c].iter().all(|&(r, _)| !zero_rows[r as usize]))
        .collect();
    if kept.is_empty() {
        let y: Vec<i128> = zero_rows.iter().map(|&z| z as i128).collect();
        return finish_separation(problem, y, 1)
            .map(Outcome::Nonlocal)
            .unwrap_or_else(|| Outcome::Inconclusive("no admissible column fits the support".into()));
    }
    let mut active = vec![false; problem.rows];
    for r in 0..problem.rows {
        active[r] = !zero_rows[r];
    }
    for &c in &kept {
        for &(r, _) in &problem.columns[c] {
            active[r as usize] = true;
        }
    }
    let rows: Vec<usize> = (0..problem.rows).filter(|&r| active[r]).collect();
    let mut pos = vec![usize::MAX; problem.rows];
    for (i, &r) in rows.iter().enumerate() {
        pos[r] = i;
    }
    let den = problem.col_den as f64;
    let mut a = vec![vec![0.0; kept.len()]; rows.len() + 1];
    for (j, &c) in kept.iter().enumerate() {
        for &(r, cnt) in &problem.columns[c] {
            a[pos[r as usize]][j] = cnt as f64 / den;
        }
        a[rows.len()][j] = 1.0;
    }
    let mut b: Vec<f64> = rows.iter().map(|&r| t.approx(r)).collect();
    b.push(1.0);

    match phase1(&a, &b) {
        Phase1::Feasible { x, basis } => {
            if let Target::Exact(values) = t {
                if let Some(w) = confirm_exact(problem, &kept, &rows, &a, values, &basis) {
                    return Outcome::Local { weights: w, exact: true };
                }
                if t.is_rational() {
                    return exact_rational(problem, &kept, &rows, &zero_rows);
                }
            }
            let weights = kept
                .iter()
                .zip(&x)
                .filter(|(_, &v)| v > ZERO_TOLERANCE)
                .map(|(&c, &v)| Weight { column: c, approx: v, exact: None })
                .collect();
            Outcome::Local { weights, exact: false }
        }
        Phase1::Infeasible { farkas, .. } => {
            let coords = &farkas[..rows.len()];
            let scale = coords.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if scale > 0.0 {
                for &max_den in &DENOMINATOR_SCHEDULE {
                    let (nums, d) = round_vector(coords, scale, max_den);
                    let mut y = vec![0i128; problem.rows];
                    for (i, &r) in rows.iter().enumerate() {
                        y[r] = nums[i];
                    }
                    if let Some(sep) = repair_and_finish(problem, &kept, &zero_rows, y, d) {
                        return Outcome::Nonlocal(sep);
                    }
                }
            }
            if t.is_rational() {
                return exact_rational(problem, &kept, &rows, &zero_rows);
            }
            Outcome::Inconclusive("rounded certificates failed exact verification".into())
        }
    }
}

fn confirm_exact(
    problem: &Problem<'_>,
    kept: &[usize],
    rows: &[usize],
    a: &[Vec<f64>],
    values: &[Cyclotomic],
    basis: &[usize],
) -> Option<Vec<Weight>> {
    if basis.is_empty() {
        return None;
    }
    let sub: Vec<Vec<f64>> = a.iter().map(|row| basis.iter().map(|&j| row[j]).collect()).collect();
    let chosen = linsolve::independent_rows(&sub);
    if chosen.len() < basis.len() {
        return None;
    }
    let den = BigRational::from_integer(BigInt::from(problem.col_den));
    let exact_entry = |lp_row: usize, j: usize| -> BigRational {
        if lp_row == rows.len() {
            return BigRational::from_integer(1.into());
        }
        let r = rows[lp_row] as u32;
        let cnt = problem.columns[kept[basis[j]]].iter().find(|&&(rr, _)| rr == r).map_or(0, |&(_, c)| c);
        BigRational::from_integer(BigInt::from(cnt)) / &den
    };
    let rhs_of = |lp_row: usize| -> Cyclotomic {
        if lp_row == rows.len() {
            Cyclotomic::one()
        } else {
            values[rows[lp_row]].clone()
        }
    };
    let mat: Vec<Vec<BigRational>> =
        chosen.iter().map(|&r| (0..basis.len()).map(|j| exact_entry(r, j)).collect()).collect();
    let rhs: Vec<Cyclotomic> = chosen.iter().map(|&r| rhs_of(r)).collect();
    let alpha = linsolve::solve(&mat, &rhs)?;
    if alpha.iter().any(|x| real_sign(x) == RealSign::Negative) {
        return None;
    }
    // Verify every LP row, not only the chosen square subsystem.
    let mut pos = vec![usize::MAX; problem.rows];
    for (i, &r) in rows.iter().enumerate() {
        pos[r] = i;
    }
    let mut sums = vec![Cyclotomic::zero(); rows.len() + 1];
    for (j, al) in alpha.iter().enumerate() {
        if al.is_zero() {
            continue;
        }
        for &(r, cnt) in &problem.columns[kept[basis[j]]] {
            let lp_row = pos[r as usize];
            let v = al.scale(&BigRational::new(BigInt::from(cnt), BigInt::from(problem.col_den)));
            sums[lp_row] += &v;
        }
        sums[rows.len()] += al;
    }
    if (0..=rows.len()).any(|r| sums[r] != rhs_of(r)) {
        return None;
    }
    Some(
        basis
            .iter()
            .zip(alpha)
            .filter(|(_, al)| !al.is_zero())
            .map(|(&j, al)| Weight { column: kept[j], approx: al.approx_re(), exact: Some(al) })
            .collect(),
    )
}

fn exact_rational(problem: &Problem<'_>, kept: &[usize], rows: &[usize], zero_rows: &[bool]) -> Outcome {
    let Target::Exact(values) = problem.target else { unreachable!() };
    let den = BigRational::from_integer(BigInt::from(problem.col_den));
    let mut pos = vec![usize::MAX; problem.rows];
    for (i, &r) in rows.iter().enumerate() {
        pos[r] = i;
    }
    let mut a = vec![vec![BigRational::zero(); kept.len()]; rows.len() + 1];
    for (j, &c) in kept.iter().enumerate() {
        for &(r, cnt) in &problem.columns[c] {
            a[pos[r as usize]][j] = BigRational::from_integer(BigInt::from(cnt)) / &den;
        }
        a[rows.len()][j] = BigRational::from_integer(1.into());
    }
    let mut b: Vec<BigRational> = rows.iter().map(|&r| values[r].as_rational().cloned().unwrap()).collect();
    b.push(BigRational::from_integer(1.into()));
    match phase1(&a, &b) {
        Phase1::Feasible { x, .. } => {
            let weights = kept
                .iter()
                .zip(x)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&c, v)| Weight {
                    column: c,
                    approx: v.to_f64().unwrap_or(f64::NAN),
                    exact: Some(Cyclotomic::from_rational(v)),
                })
                .collect();
            Outcome::Local { weights, exact: true }
        }
        Phase1::Infeasible { farkas, .. } => {
            let coords = &farkas[..rows.len()];
            let l = coords.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
            let Some(d) = l.to_i128() else {
                return Outcome::Inconclusive("exact certificate too large".into());
            };
            let mut y = vec![0i128; problem.rows];
            for (i, &r) in rows.iter().enumerate() {
                let num = coords[i].numer() * (&l / coords[i].denom());
                match num.to_i128() {
                    Some(v) => y[r] = v,
                    None => return Outcome::Inconclusive("exact certificate too large".into()),
                }
            }
            repair_and_finish(problem, kept, zero_rows, y, d)
                .map(Outcome::Nonlocal)
                .unwrap_or_else(|| Outcome::Inconclusive("exact Farkas vector failed verification".into()))
        }
    }
}

/// Rounds `v / scale` entrywise by continued fractions; falls back to a fixed
/// grid with denominator `max_den` when the common denominator grows too large.
pub fn round_vector(v: &[f64], scale: f64, max_den: u64) -> (Vec<i128>, i128) {
    let rounded: Vec<BigRational> = v.iter().map(|x| rational_approximation(x / scale, max_den)).collect();
    let mut l: u128 = 1;
    let mut ok = true;
    for q in &rounded {
        let d = q.denom().to_u128().unwrap_or(u128::MAX);
        l = l.lcm(&d);
        if l > LCM_LIMIT {
            ok = false;
            break;
        }
    }
    if ok {
        let nums = rounded
            .iter()
            .map(|q| (q.numer() * BigInt::from(l) / q.denom()).to_i128().unwrap())
            .collect();
        (nums, l as i128)
    } else {
        let d = max_den as f64;
        (v.iter().map(|x| (x / scale * d).round() as i128).collect(), max_den as i128)
    }
}

fn column_value(col: &Column, y: &[i128]) -> i128 {
    col.iter().map(|&(r, c)| y[r as usize] * c as i128).sum()
}

fn repair_and_finish(
    problem: &Problem<'_>,
    kept: &[usize],
    zero_rows: &[bool],
    mut y: Vec<i128>,
    den: i128,
) -> Option<Separation> {
    // Values below are numerators over den·col_den.
    let mut is_kept = vec![false; problem.columns.len()];
    for &c in kept {
        is_kept[c] = true;
    }
    let m_kept = kept.iter().map(|&c| column_value(&problem.columns[c], &y)).min()?;
    let value = target_value(problem.target, &y, den);
    let threshold = BigRational::new(BigInt::from(m_kept), BigInt::from(den * problem.col_den as i128));
    if !is_below(&value, &threshold) {
        return None;
    }
    let mut lift = 0i128;
    for (c, col) in problem.columns.iter().enumerate() {
        if is_kept[c] {
            continue;
        }
        let deficit = m_kept - column_value(col, &y);
        if deficit > 0 {
            let zc: i128 = col.iter().filter(|&&(r, _)| zero_rows[r as usize]).map(|&(_, c)| c as i128).sum();
            lift = lift.max((deficit + zc - 1) / zc);
        }
    }
    if lift > 0 {
        for (r, z) in zero_rows.iter().enumerate() {
            if *z {
                y[r] += lift;
            }
        }
    }
    finish_separation(problem, y, den)
}

fn target_value(t: &Target, y: &[i128], den: i128) -> (Option<Cyclotomic>, f64) {
    match t {
        Target::Exact(v) => {
            let mut acc = Cyclotomic::zero();
            for (r, &num) in y.iter().enumerate() {
                if num != 0 && !v[r].is_zero() {
                    acc += &v[r].scale(&BigRational::from_integer(BigInt::from(num)));
                }
            }
            let acc = acc.scale(&BigRational::new(1.into(), BigInt::from(den)));
            let approx = acc.approx_re();
            (Some(acc), approx)
        }
        Target::Float(v) => {
            let s: f64 = y.iter().zip(v).map(|(&n, &x)| n as f64 * x).sum::<f64>() / den as f64;
            (None, s)
        }
    }
}

fn is_below(value: &(Option<Cyclotomic>, f64), threshold: &BigRational) -> bool {
    match &value.0 {
        Some(v) => real_sign(&(v - &Cyclotomic::from_rational(threshold.clone()))) == RealSign::Negative,
        None => value.1 < threshold.to_f64().unwrap_or(f64::NAN) - 1e-9,
    }
}

/// Computes the exact minimum over all columns and checks the separation.
fn finish_separation(problem: &Problem<'_>, y: Vec<i128>, den: i128) -> Option<Separation> {
    let m = problem.columns.iter().map(|c| column_value(c, &y)).min()?;
    let min = BigRational::new(BigInt::from(m), BigInt::from(den * problem.col_den as i128));
    let value = target_value(problem.target, &y, den);
    if !is_below(&value, &min) {
        return None;
    }
    Some(Separation { y, den, min, value: value.0, value_approx: value.1 })
}

/// Exact signed check used by callers that re-verify a separation.
pub fn separation_is_sound(sep: &Separation) -> bool {
    match sep.gap_exact() {
        Some(g) => real_sign(&g) == RealSign::Negative,
        None => sep.gap_approx() < -1e-9,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(v: &[&[u32]]) -> Vec<Column> {
        v.iter()
            .map(|c| c.iter().enumerate().filter(|(_, &x)| x > 0).map(|(r, &x)| (r as u32, x)).collect())
            .collect()
    }

    #[test]
    fn midpoint_is_local() {
        let columns = cols(&[&[1, 0], &[0, 1]]);
        let t = Target::Exact(vec![Cyclotomic::ratio(1, 3), Cyclotomic::ratio(2, 3)]);
        match decide(&Problem { rows: 2, columns: &columns, col_den: 1, target: &t }) {
            Outcome::Local { weights, exact } => {
                assert!(exact);
                assert_eq!(weights.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn outside_point_is_separated() {
        let columns = cols(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        // (0.6, 0.6, -0.2) lies on the affine hull but outside the simplex.
        let t = Target::Float(vec![0.6, 0.6, -0.2]);
        match decide(&Problem { rows: 3, columns: &columns, col_den: 1, target: &t }) {
            Outcome::Nonlocal(sep) => assert!(separation_is_sound(&sep)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn support_violation_with_repair() {
        // Target (1/2, 1/2, 0) but the only columns with mass on rows 0,1 also hit row 2.
        let columns = cols(&[&[1, 0, 1], &[0, 1, 1], &[1, 0, 0]]);
        let t = Target::Exact(vec![Cyclotomic::ratio(1, 2), Cyclotomic::ratio(1, 2), Cyclotomic::zero()]);
        match decide(&Problem { rows: 3, columns: &columns, col_den: 1, target: &t }) {
            Outcome::Nonlocal(sep) => {
                assert!(separation_is_sound(&sep));
                for c in &columns {
                    let v = BigRational::new(column_value(c, &sep.y).into(), sep.den.into());
                    assert!(v >= sep.min);
                }
            }
            other => panic!("{other:?}"),
        }
    }
}
