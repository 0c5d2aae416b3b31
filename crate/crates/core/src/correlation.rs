//! Bijective correlations `p(l,k|i,j)` over a finite index set.
//!
//! Outputs are `(l,k)`, inputs are `(i,j)`. Tables are dense (`n⁴` entries).
//! Exact correlations carry cyclotomic values with float shadows; user
//! supplied float tables carry shadows only and are compared with
//! [`FLOAT_TOLERANCE`].

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cyclotomic::{parse_rational, real_sign, CycloJson, Cyclotomic, RealSign};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::perm;

pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Deterministic,
    Qls,
    DisjointAutos,
    Composed,
    Uniform,
    Lifted,
    UserSupplied,
}

#[derive(Clone, Debug)]
pub struct Correlation {
    labels: Vec<String>,
    n: usize,
    exact: Option<Vec<Cyclotomic>>,
    approx: Vec<f64>,
    provenance: Provenance,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `p(l,k|i,j) = 0` whenever `δ_ij ≠ δ_lk`.
    Bisynchronous,
    /// `p(l,k|i,j) = p(k,l|j,i)`.
    Symmetry,
    /// The four marginal sums for `(a,b)` coincide.
    Marginal,
    /// The marginal matrix `p(a|b)` is doubly stochastic.
    MarginalStochastic,
    /// `Σ_{l,k} p(l,k|i,j) = 1`.
    Normalization,
    /// `0 ≤ p ≤ 1`.
    Range,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    /// Witness `(l,k,i,j)`; for marginal conditions `(a,b,x,_)`.
    pub indices: [usize; 4],
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [l, k, i, j] = self.indices;
        write!(f, "{:?} at ({l},{k}|{i},{j})", self.condition)
    }
}

#[inline]
fn idx(n: usize, l: usize, k: usize, i: usize, j: usize) -> usize {
    ((l * n + k) * n + i) * n + j
}

impl Correlation {
    pub fn from_exact(labels: Vec<String>, values: Vec<Cyclotomic>, provenance: Provenance) -> Result<Correlation> {
        let n = labels.len();
        if values.len() != n.pow(4) {
            return Err(Error::Invalid(format!("expected {} values, got {}", n.pow(4), values.len())));
        }
        let approx = values.iter().map(Cyclotomic::approx_re).collect();
        Ok(Correlation { labels, n, exact: Some(values), approx, provenance })
    }

    pub fn from_float(labels: Vec<String>, values: Vec<f64>) -> Result<Correlation> {
        let n = labels.len();
        if values.len() != n.pow(4) {
            return Err(Error::Invalid(format!("expected {} values, got {}", n.pow(4), values.len())));
        }
        Ok(Correlation { labels, n, exact: None, approx: values, provenance: Provenance::UserSupplied })
    }

    /// Builds an exact table from a function of `(l,k,i,j)`.
    pub fn from_fn_exact<F>(labels: Vec<String>, provenance: Provenance, mut f: F) -> Correlation
    where
        F: FnMut(usize, usize, usize, usize) -> Cyclotomic,
    {
        let n = labels.len();
        let mut values = Vec::with_capacity(n.pow(4));
        for l in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        values.push(f(l, k, i, j));
                    }
                }
            }
        }
        Correlation::from_exact(labels, values, provenance).expect("shape is consistent")
    }

    pub fn numeric_labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub fn group_labels(g: &AbelianGroup) -> Vec<String> {
        (0..g.order()).map(|a| g.element_label(a)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Correlation {
        self.provenance = provenance;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Correlation {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// True when every value is an exact rational.
    pub fn is_rational(&self) -> bool {
        self.exact.as_ref().is_some_and(|v| v.iter().all(Cyclotomic::is_rational))
    }

    /// Reports built from float tables must be flagged as numeric-only.
    pub fn is_numeric_only(&self) -> bool {
        self.exact.is_none()
    }

    pub fn exact_values(&self) -> Option<&[Cyclotomic]> {
        self.exact.as_deref()
    }

    pub fn approx_values(&self) -> &[f64] {
        &self.approx
    }

    pub fn exact(&self, l: usize, k: usize, i: usize, j: usize) -> Option<&Cyclotomic> {
        self.exact.as_ref().map(|v| &v[idx(self.n, l, k, i, j)])
    }

    pub fn approx(&self, l: usize, k: usize, i: usize, j: usize) -> f64 {
        self.approx[idx(self.n, l, k, i, j)]
    }

    pub fn flat_index(&self, l: usize, k: usize, i: usize, j: usize) -> usize {
        idx(self.n, l, k, i, j)
    }

    fn is_zero_at(&self, pos: usize) -> bool {
        match &self.exact {
            Some(v) => v[pos].is_zero(),
            None => self.approx[pos].abs() <= FLOAT_TOLERANCE,
        }
    }

    fn sum_eq(&self, positions: &[usize], target: &Sum) -> bool {
        self.sum(positions).approx_eq(target)
    }

    fn sum(&self, positions: &[usize]) -> Sum {
        match &self.exact {
            Some(v) => Sum::Exact(positions.iter().map(|&p| v[p].clone()).sum()),
            None => Sum::Float(positions.iter().map(|&p| self.approx[p]).sum()),
        }
    }

    fn one_sum(&self) -> Sum {
        if self.exact.is_some() {
            Sum::Exact(Cyclotomic::one())
        } else {
            Sum::Float(1.0)
        }
    }

    /// Lists every violated bijective-correlation condition with a witness.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n;
        let mut out = Vec::new();
        for l in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let pos = idx(n, l, k, i, j);
                        if (i == j) != (l == k) && !self.is_zero_at(pos) {
                            out.push(Violation { condition: Condition::Bisynchronous, indices: [l, k, i, j] });
                        }
                        let mirrored = idx(n, k, l, j, i);
                        if pos < mirrored && !self.sum_eq(&[pos], &self.sum(&[mirrored])) {
                            out.push(Violation { condition: Condition::Symmetry, indices: [l, k, i, j] });
                        }
                        if !self.in_unit_interval(pos) {
                            out.push(Violation { condition: Condition::Range, indices: [l, k, i, j] });
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let cells: Vec<usize> =
                    (0..n).flat_map(|l| (0..n).map(move |k| idx(n, l, k, i, j))).collect();
                if !self.sum_eq(&cells, &self.one_sum()) {
                    out.push(Violation { condition: Condition::Normalization, indices: [0, 0, i, j] });
                }
            }
        }
        let mut marginal = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                let m = self.sum(&(0..n).map(|k| idx(n, a, k, b, 0)).collect::<Vec<_>>());
                let mut ok = true;
                for x in 0..n {
                    let sums = [
                        (0..n).map(|k| idx(n, a, k, b, x)).collect::<Vec<_>>(),
                        (0..n).map(|j| idx(n, a, x, b, j)).collect(),
                        (0..n).map(|l| idx(n, l, a, x, b)).collect(),
                        (0..n).map(|i| idx(n, x, a, i, b)).collect(),
                    ];
                    if sums.iter().any(|s| !self.sum_eq(s, &m)) {
                        out.push(Violation { condition: Condition::Marginal, indices: [a, b, x, 0] });
                        ok = false;
                        break;
                    }
                }
                if ok {
                    marginal[a][b] = Some(m);
                }
            }
        }
        for a in 0..n {
            let row: Option<Vec<&Sum>> = (0..n).map(|b| marginal[a][b].as_ref()).collect();
            let col: Option<Vec<&Sum>> = (0..n).map(|b| marginal[b][a].as_ref()).collect();
            for line in [row, col].into_iter().flatten() {
                let total = Sum::total(line.into_iter());
                if !total.approx_eq(&self.one_sum()) {
                    out.push(Violation { condition: Condition::MarginalStochastic, indices: [a, 0, 0, 0] });
                }
            }
        }
        out
    }

    fn in_unit_interval(&self, pos: usize) -> bool {
        match &self.exact {
            Some(v) => {
                let x = &v[pos];
                if let Some(q) = x.as_rational() {
                    return !q.is_negative_rational() && *q <= BigRational::one();
                }
                let lo = real_sign(x) != RealSign::Negative;
                let hi = real_sign(&(&Cyclotomic::one() - x)) != RealSign::Negative;
                lo && hi
            }
            None => {
                let x = self.approx[pos];
                (-FLOAT_TOLERANCE..=1.0 + FLOAT_TOLERANCE).contains(&x)
            }
        }
    }

    /// Deterministic correlation: `1` iff `l = π(i)` and `k = π(j)`.
    pub fn deterministic(pi: &[usize], labels: Vec<String>) -> Correlation {
        assert!(perm::is_permutation(pi) && pi.len() == labels.len());
        Correlation::from_fn_exact(labels, Provenance::Deterministic, |l, k, i, j| {
            if pi[i] == l && pi[j] == k {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        })
    }

    /// `p∘p′(l,k|i,j) = Σ_{s,t} p(l,k|s,t)·p′(s,t|i,j)`.
    pub fn compose(&self, other: &Correlation) -> Result<Correlation> {
        if self.n != other.n {
            return Err(Error::IndexMismatch);
        }
        let n = self.n;
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => {
                let mut out = vec![Cyclotomic::zero(); n.pow(4)];
                for l in 0..n {
                    for k in 0..n {
                        for s in 0..n {
                            for t in 0..n {
                                let x = &a[idx(n, l, k, s, t)];
                                if x.is_zero() {
                                    continue;
                                }
                                for i in 0..n {
                                    for j in 0..n {
                                        let y = &b[idx(n, s, t, i, j)];
                                        if !y.is_zero() {
                                            out[idx(n, l, k, i, j)] += &(x * y);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                Correlation::from_exact(self.labels.clone(), out, Provenance::Composed)
            }
            _ => {
                let mut out = vec![0.0; n.pow(4)];
                for l in 0..n {
                    for k in 0..n {
                        for s in 0..n {
                            for t in 0..n {
                                let x = self.approx[idx(n, l, k, s, t)];
                                for i in 0..n {
                                    for j in 0..n {
                                        out[idx(n, l, k, i, j)] += x * other.approx[idx(n, s, t, i, j)];
                                    }
                                }
                            }
                        }
                    }
                }
                Correlation::from_float(self.labels.clone(), out)
            }
        }
    }

    /// `p′(l,k|i,j) = p(i,j|l,k)`.
    pub fn swap_io(&self) -> Correlation {
        let n = self.n;
        let perm_pos = |pos: usize| {
            let (j, r) = (pos % n, pos / n);
            let (i, r) = (r % n, r / n);
            let (k, l) = (r % n, r / n);
            idx(n, i, j, l, k)
        };
        let size = n.pow(4);
        let approx = (0..size).map(|p| self.approx[perm_pos(p)]).collect();
        let exact = self.exact.as_ref().map(|v| (0..size).map(|p| v[perm_pos(p)].clone()).collect());
        Correlation { labels: self.labels.clone(), n, exact, approx, provenance: self.provenance }
    }

    /// Exact equality (or tolerance equality when either side is float-only).
    pub fn same_values(&self, other: &Correlation) -> bool {
        if self.n != other.n {
            return false;
        }
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.approx.iter().zip(&other.approx).all(|(x, y)| (x - y).abs() <= FLOAT_TOLERANCE),
        }
    }

    /// `p_Γ(w,x|y,z) = 1/|Γ|` iff `w⁻¹x = y⁻¹z`.
    pub fn uniform_group(g: &AbelianGroup) -> Correlation {
        let inv = Cyclotomic::ratio(1, g.order() as i64);
        Correlation::from_fn_exact(Correlation::group_labels(g), Provenance::Uniform, |w, x, y, z| {
            if g.diff(w, x) == g.diff(y, z) {
                inv.clone()
            } else {
                Cyclotomic::zero()
            }
        })
    }

    pub fn is_group_invariant(&self, g: &AbelianGroup) -> bool {
        let n = self.n;
        if n != g.order() {
            return false;
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let pos = idx(n, w, x, y, z);
                        let base = idx(n, 0, g.diff(w, x), 0, g.diff(y, z));
                        let equal = match &self.exact {
                            Some(v) => v[pos] == v[base],
                            None => (self.approx[pos] - self.approx[base]).abs() <= FLOAT_TOLERANCE,
                        };
                        if !equal {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_characteristic(&self, g: &AbelianGroup) -> Result<CharacteristicMatrix> {
        let exact = self.exact.as_ref().ok_or_else(|| Error::Invalid("characteristic matrix needs exact values".into()))?;
        if !self.is_group_invariant(g) {
            return Err(Error::NotInvariant);
        }
        let n = self.n;
        let d = (0..n)
            .map(|a| (0..n).map(|b| exact[idx(n, 0, a, 0, b)].scale_int(n as i64)).collect())
            .collect();
        CharacteristicMatrix::new(g.clone(), d)
    }

    /// Writes the JSON exchange format; zero entries are omitted.
    pub fn to_json(&self) -> CorrelationJson {
        let n = self.n;
        let mut entries = Vec::new();
        for l in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let pos = idx(n, l, k, i, j);
                        let value = match &self.exact {
                            Some(v) if v[pos].is_zero() => continue,
                            Some(v) => match v[pos].as_rational() {
                                Some(q) => EntryValue::Rational(q.to_string()),
                                None => EntryValue::Exact(CycloJson::from(&v[pos])),
                            },
                            None if self.approx[pos] == 0.0 => continue,
                            None => EntryValue::Float(self.approx[pos]),
                        };
                        let lab = |x: usize| Value::String(self.labels[x].clone());
                        entries.push(EntryJson { l: lab(l), k: lab(k), i: lab(i), j: lab(j), value });
                    }
                }
            }
        }
        CorrelationJson { labels: self.labels.iter().cloned().map(Value::String).collect(), entries }
    }

    pub fn from_json(doc: &CorrelationJson) -> Result<Correlation> {
        let labels: Vec<String> = doc.labels.iter().map(label_string).collect();
        let n = labels.len();
        let find = |v: &Value| {
            let s = label_string(v);
            labels.iter().position(|l| *l == s).ok_or_else(|| Error::Parse(format!("unknown label {s}")))
        };
        let all_exact = doc.entries.iter().all(|e| !matches!(e.value, EntryValue::Float(_)));
        let mut approx = vec![0.0; n.pow(4)];
        let mut exact = all_exact.then(|| vec![Cyclotomic::zero(); n.pow(4)]);
        for e in &doc.entries {
            let pos = idx(n, find(&e.l)?, find(&e.k)?, find(&e.i)?, find(&e.j)?);
            match &e.value {
                EntryValue::Float(x) => approx[pos] = *x,
                EntryValue::Rational(s) => {
                    let q = parse_rational(s)?;
                    approx[pos] = q.to_f64().unwrap_or(f64::NAN);
                    if let Some(v) = exact.as_mut() {
                        v[pos] = Cyclotomic::from_rational(q);
                    }
                }
                EntryValue::Exact(c) => {
                    let x = Cyclotomic::try_from(c)?;
                    if !x.is_real() {
                        return Err(Error::NotReal(x.to_string()));
                    }
                    approx[pos] = x.approx_re();
                    if let Some(v) = exact.as_mut() {
                        v[pos] = x;
                    }
                }
            }
        }
        Ok(Correlation { labels, n, exact, approx, provenance: Provenance::UserSupplied })
    }
}

fn label_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

trait NegCheck {
    fn is_negative_rational(&self) -> bool;
}

impl NegCheck for BigRational {
    fn is_negative_rational(&self) -> bool {
        *self < BigRational::zero()
    }
}

#[derive(Clone)]
enum Sum {
    Exact(Cyclotomic),
    Float(f64),
}

impl Sum {
    fn approx_eq(&self, other: &Sum) -> bool {
        match (self, other) {
            (Sum::Exact(a), Sum::Exact(b)) => a == b,
            (Sum::Float(a), Sum::Float(b)) => (a - b).abs() <= FLOAT_TOLERANCE * 10.0,
            _ => false,
        }
    }

    fn total<'a>(mut it: impl Iterator<Item = &'a Sum>) -> Sum {
        let first = match it.next() {
            Some(s) => s,
            None => return Sum::Float(0.0),
        };
        match first {
            Sum::Exact(a) => Sum::Exact(it.fold(a.clone(), |acc, s| match s {
                Sum::Exact(b) => acc + b,
                Sum::Float(_) => acc,
            })),
            Sum::Float(a) => Sum::Float(it.fold(*a, |acc, s| match s {
                Sum::Float(b) => acc + b,
                Sum::Exact(_) => acc,
            })),
        }
    }
}

/// `D[a][b] = |Γ|·p(w,x|y,z)` with `a = w⁻¹x` (outputs) and `b = y⁻¹z` (inputs).
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicMatrix {
    group: AbelianGroup,
    d: Vec<Vec<Cyclotomic>>,
}

impl CharacteristicMatrix {
    /// Checks exact double stochasticity and entrywise nonnegativity.
    pub fn new(group: AbelianGroup, d: Vec<Vec<Cyclotomic>>) -> Result<CharacteristicMatrix> {
        let n = group.order();
        if d.len() != n || d.iter().any(|r| r.len() != n) {
            return Err(Error::NotDoublyStochastic("shape".into()));
        }
        let one = Cyclotomic::one();
        for a in 0..n {
            let row: Cyclotomic = d[a].iter().cloned().sum();
            let col: Cyclotomic = (0..n).map(|b| d[b][a].clone()).sum();
            if row != one || col != one {
                return Err(Error::NotDoublyStochastic(format!("line {a} does not sum to 1")));
            }
        }
        for (a, row) in d.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if !x.is_real() || real_sign(x) == RealSign::Negative {
                    return Err(Error::NotDoublyStochastic(format!("entry ({a},{b}) is not a nonnegative real")));
                }
            }
        }
        Ok(CharacteristicMatrix { group, d })
    }

    pub fn new_unchecked(group: AbelianGroup, d: Vec<Vec<Cyclotomic>>) -> CharacteristicMatrix {
        CharacteristicMatrix { group, d }
    }

    pub fn identity(group: &AbelianGroup) -> CharacteristicMatrix {
        let n = group.order();
        let d = (0..n)
            .map(|a| (0..n).map(|b| if a == b { Cyclotomic::one() } else { Cyclotomic::zero() }).collect())
            .collect();
        CharacteristicMatrix { group: group.clone(), d }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn entries(&self) -> &[Vec<Cyclotomic>] {
        &self.d
    }

    pub fn get(&self, a: usize, b: usize) -> &Cyclotomic {
        &self.d[a][b]
    }

    pub fn approx(&self) -> Vec<Vec<f64>> {
        self.d.iter().map(|r| r.iter().map(Cyclotomic::approx_re).collect()).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.d.iter().flatten().all(Cyclotomic::is_rational)
    }

    pub fn is_permutation_matrix(&self) -> bool {
        let n = self.d.len();
        let one = Cyclotomic::one();
        self.d.iter().all(|r| r.iter().filter(|x| **x == one).count() == 1 && r.iter().filter(|x| x.is_zero()).count() == n - 1)
    }

    pub fn mul(&self, other: &CharacteristicMatrix) -> CharacteristicMatrix {
        let n = self.d.len();
        let d = (0..n)
            .map(|a| (0..n).map(|b| (0..n).map(|c| &self.d[a][c] * &other.d[c][b]).sum()).collect())
            .collect();
        CharacteristicMatrix { group: self.group.clone(), d }
    }

    /// The unique group-invariant correlation with this characteristic matrix.
    pub fn to_correlation(&self) -> Correlation {
        let g = &self.group;
        let n = g.order() as i64;
        let scaled: Vec<Vec<Cyclotomic>> = self.d.iter().map(|r| r.iter().map(|x| x.div_int(n)).collect()).collect();
        Correlation::from_fn_exact(Correlation::group_labels(g), Provenance::Composed, |w, x, y, z| {
            scaled[g.diff(w, x)][g.diff(y, z)].clone()
        })
    }
}

/// Entry value in the JSON exchange format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryValue {
    Float(f64),
    Rational(String),
    Exact(CycloJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub l: Value,
    pub k: Value,
    pub i: Value,
    pub j: Value,
    pub value: EntryValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationJson {
    pub labels: Vec<Value>,
    pub entries: Vec<EntryJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_identity_on_three() {
        let p = Correlation::deterministic(&[0, 1, 2], Correlation::numeric_labels(3));
        assert!(p.validate().is_empty());
        assert_eq!(p.approx(1, 2, 1, 2), 1.0);
        assert_eq!(p.approx(1, 2, 2, 1), 0.0);
    }

    #[test]
    fn swap_on_two_points() {
        let p = Correlation::deterministic(&[1, 0], Correlation::numeric_labels(2));
        assert_eq!(p.approx(1, 0, 0, 1), 1.0);
    }

    #[test]
    fn bisynchronous_violation_detected() {
        let labels = Correlation::numeric_labels(3);
        let p = Correlation::from_fn_exact(labels, Provenance::UserSupplied, |l, k, i, j| {
            if (l, k, i, j) == (1, 1, 1, 2) {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        });
        let v = p.validate();
        assert!(v.iter().any(|x| x.condition == Condition::Bisynchronous && x.indices == [1, 1, 1, 2]));
    }

    #[test]
    fn uniform_is_idempotent_with_identity_matrix() {
        let g = AbelianGroup::cyclic(3);
        let u = Correlation::uniform_group(&g);
        assert!(u.validate().is_empty());
        assert!(u.compose(&u).unwrap().same_values(&u));
        assert_eq!(u.to_characteristic(&g).unwrap(), CharacteristicMatrix::identity(&g));
    }

    #[test]
    fn json_roundtrip_exact() {
        let g = AbelianGroup::cyclic(2);
        let u = Correlation::uniform_group(&g);
        let text = serde_json::to_string(&u.to_json()).unwrap();
        let back = Correlation::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.is_exact());
        assert!(back.same_values(&u));
    }

    #[test]
    fn float_json_is_numeric_only() {
        let text = r#"{"labels":[0,1],"entries":[
            {"l":0,"k":0,"i":0,"j":0,"value":0.5},{"l":1,"k":1,"i":0,"j":0,"value":0.5},
            {"l":0,"k":0,"i":1,"j":1,"value":0.5},{"l":1,"k":1,"i":1,"j":1,"value":0.5},
            {"l":0,"k":1,"i":0,"j":1,"value":0.5},{"l":1,"k":0,"i":0,"j":1,"value":0.5},
            {"l":0,"k":1,"i":1,"j":0,"value":0.5},{"l":1,"k":0,"i":1,"j":0,"value":0.5}]}"#;
        let p = Correlation::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert!(p.is_numeric_only());
        assert!(p.validate().is_empty());
    }
}
