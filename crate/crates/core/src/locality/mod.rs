//! Locality decisions: is a correlation a convex combination of deterministic
//! correlations?
//!
//! [`decide_local`] works on the coordinates `(l,k|i,j)` with `i < j`, `l ≠ k`;
//! these determine any element of the affine span of bijective correlations.
//! [`decide_local_invariant`] works on characteristic matrices, where the
//! columns are group-averaged deterministic correlations.

pub mod certificate;
pub mod k4;
pub mod linsolve;
pub mod membership;
pub mod simplex;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::correlation::{CharacteristicMatrix, Correlation};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::perm::{self, Perm};
use certificate::{Admissible, Certificate, HyperplaneEntry};
use membership::{Column, Outcome, Problem, Separation, Target};

pub const INVARIANT_BOUND: usize = 10;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LocalityStatus {
    Local,
    Nonlocal,
    NumericInconclusive,
}

#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub perm: Perm,
    pub weight: f64,
    pub exact: Option<Cyclotomic>,
}

#[derive(Clone, Debug)]
pub struct LocalityVerdict {
    pub status: LocalityStatus,
    pub decomposition: Vec<DecompositionTerm>,
    /// Weights are exact and reproduce the input exactly.
    pub exact_decomposition: bool,
    /// Terms stand for the group average `p_Γ ∘ p_π ∘ p_Γ` of their permutation.
    pub group_averaged: bool,
    pub certificate: Option<Certificate>,
    /// Exact re-verification of the certificate against the admissible set.
    pub certificate_verified: bool,
    /// `⟨h,p⟩ - min_π ⟨h,p_π⟩` (negative when nonlocal).
    pub gap: f64,
    pub numeric_only: bool,
    pub note: Option<String>,
}

impl LocalityVerdict {
    pub fn is_local(&self) -> bool {
        self.status == LocalityStatus::Local
    }

    pub fn is_nonlocal(&self) -> bool {
        self.status == LocalityStatus::Nonlocal
    }

    fn inconclusive(note: String, numeric_only: bool) -> LocalityVerdict {
        LocalityVerdict {
            status: LocalityStatus::NumericInconclusive,
            decomposition: vec![],
            exact_decomposition: false,
            group_averaged: false,
            certificate: None,
            certificate_verified: false,
            gap: f64::NAN,
            numeric_only,
            note: Some(note),
        }
    }
}

/// Coordinates `(l,k,i,j)` with `i < j` and `l ≠ k`, in lexicographic order of `(i,j,l,k)`.
pub fn t_coordinates(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::with_capacity(n * n * (n.saturating_sub(1)).pow(2) / 2);
    for i in 0..n {
        for j in i + 1..n {
            for l in 0..n {
                for k in 0..n {
                    if l != k {
                        out.push((l, k, i, j));
                    }
                }
            }
        }
    }
    out
}

fn t_index(n: usize) -> impl Fn(usize, usize, usize, usize) -> usize {
    // position of (l,k,i,j), i<j, l≠k in t_coordinates order
    let mut pair = vec![usize::MAX; n * n];
    let mut c = 0;
    for i in 0..n {
        for j in i + 1..n {
            pair[i * n + j] = c;
            c += 1;
        }
    }
    let block = n * (n - 1);
    move |l, k, i, j| pair[i * n + j] * block + l * (n - 1) + if k > l { k - 1 } else { k }
}

/// Sparse column of `p_π` on the T coordinates.
fn deterministic_column(pi: &[usize], idx: &impl Fn(usize, usize, usize, usize) -> usize) -> Column {
    let n = pi.len();
    let mut col = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            col.push((idx(pi[i], pi[j], i, j) as u32, 1));
        }
    }
    col
}

/// Decides whether `p` lies in the convex hull of `{p_π : π ∈ admissible}`.
pub fn decide_local(p: &Correlation, admissible: &[Perm]) -> Result<LocalityVerdict> {
    let n = p.n();
    if admissible.is_empty() {
        return Err(Error::Invalid("admissible set is empty".into()));
    }
    if admissible.iter().any(|a| a.len() != n || !perm::is_permutation(a)) {
        return Err(Error::Invalid("admissible entries must be permutations of the index set".into()));
    }
    if n < 2 {
        return Ok(local_single(admissible[0].clone()));
    }
    let coords = t_coordinates(n);
    let idx = t_index(n);
    let columns: Vec<Column> = admissible.iter().map(|pi| deterministic_column(pi, &idx)).collect();
    let target = match p.exact_values() {
        Some(_) => Target::Exact(coords.iter().map(|&(l, k, i, j)| p.exact(l, k, i, j).unwrap().clone()).collect()),
        None => Target::Float(coords.iter().map(|&(l, k, i, j)| p.approx(l, k, i, j)).collect()),
    };
    let problem = Problem { rows: coords.len(), columns: &columns, col_den: 1, target: &target };
    let numeric_only = p.is_numeric_only();
    Ok(match membership::decide(&problem) {
        Outcome::Local { weights, exact } => LocalityVerdict {
            status: LocalityStatus::Local,
            decomposition: weights
                .into_iter()
                .map(|w| DecompositionTerm { perm: admissible[w.column].clone(), weight: w.approx, exact: w.exact })
                .collect(),
            exact_decomposition: exact,
            group_averaged: false,
            certificate: None,
            certificate_verified: false,
            gap: 0.0,
            numeric_only,
            note: (!exact).then(|| "numeric confidence: exact support solve failed".to_string()),
        },
        Outcome::Nonlocal(sep) => {
            let cert = full_certificate(p, &coords, &sep);
            let check = cert.verify(p, &Admissible::List(admissible.to_vec()))?;
            LocalityVerdict {
                status: LocalityStatus::Nonlocal,
                decomposition: vec![],
                exact_decomposition: false,
                group_averaged: false,
                gap: sep.gap_approx(),
                certificate_verified: check.sound,
                certificate: Some(cert),
                numeric_only,
                note: None,
            }
        }
        Outcome::Inconclusive(why) => LocalityVerdict::inconclusive(why, numeric_only),
    })
}

fn local_single(pi: Perm) -> LocalityVerdict {
    LocalityVerdict {
        status: LocalityStatus::Local,
        decomposition: vec![DecompositionTerm { perm: pi, weight: 1.0, exact: Some(Cyclotomic::one()) }],
        exact_decomposition: true,
        group_averaged: false,
        certificate: None,
        certificate_verified: false,
        gap: 0.0,
        numeric_only: false,
        note: None,
    }
}

/// Builds a certificate with minimum folded to zero: the offset is spread over
/// the block `(·,·|0,1)`, whose entries sum to one for every correlation.
fn full_certificate(p: &Correlation, coords: &[(usize, usize, usize, usize)], sep: &Separation) -> Certificate {
    let n = p.n();
    let mut entries: HashMap<(usize, usize, usize, usize), BigRational> = HashMap::new();
    for (r, &(l, k, i, j)) in coords.iter().enumerate() {
        if sep.y[r] != 0 {
            entries.insert((l, k, i, j), sep.y_rational(r));
        }
    }
    if !sep.min.is_zero() {
        for l in 0..n {
            for k in 0..n {
                let e = entries.entry((l, k, 0, 1)).or_insert_with(BigRational::zero);
                *e -= &sep.min;
            }
        }
    }
    let mut hyperplane: Vec<HyperplaneEntry> = entries
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((l, k, i, j), coef)| HyperplaneEntry { l, k, i, j, coef })
        .collect();
    hyperplane.sort_by_key(|e| (e.i, e.j, e.l, e.k));
    let shift = Cyclotomic::from_rational(sep.min.clone());
    let value = sep.value.as_ref().map(|v| v - &shift);
    Certificate {
        labels: p.labels().to_vec(),
        hyperplane,
        min_over_deterministic: BigRational::zero(),
        value_on_p_approx: sep.gap_approx(),
        value_on_p: value,
    }
}

/// Distinct group-averaged deterministic correlations of `Sym(Γ)`, stored as
/// count matrices `K[a][b] = #{s : π(s·b) = π(s)·a}` (the matrix is `K / |Γ|`).
#[derive(Clone, Debug)]
pub struct InvariantColumns {
    group: AbelianGroup,
    columns: Vec<Column>,
    representatives: Vec<Perm>,
}

impl InvariantColumns {
    pub fn new(g: &AbelianGroup) -> Result<InvariantColumns> {
        let n = g.order();
        if n > INVARIANT_BOUND {
            return Err(Error::BoundExceeded(format!("|Γ| = {n} exceeds {INVARIANT_BOUND} for invariant columns")));
        }
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut columns = Vec::new();
        let mut representatives = Vec::new();
        // Left translations fix the count matrix, so π(0) = 0 suffices.
        let mut rest: Vec<usize> = (1..n).collect();
        loop {
            let mut pi = Vec::with_capacity(n);
            pi.push(0);
            pi.extend_from_slice(&rest);
            let mut key = vec![0u8; n * n];
            for b in 0..n {
                for s in 0..n {
                    let a = g.diff(pi[s], pi[g.add(s, b)]);
                    key[a * n + b] += 1;
                }
            }
            if !seen.contains_key(&key) {
                seen.insert(key.clone(), columns.len());
                columns.push(
                    key.iter().enumerate().filter(|(_, &c)| c > 0).map(|(r, &c)| (r as u32, c as u32)).collect(),
                );
                representatives.push(pi);
            }
            if !perm::next_lex(&mut rest) {
                break;
            }
        }
        Ok(InvariantColumns { group: g.clone(), columns, representatives })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.representatives
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }
}

/// Separating functional on characteristic matrices: `Y·M_π ≥ 0` for every
/// group-averaged deterministic `M_π` and `Y·D < 0`. On full tables it is the
/// hyperplane `h(w,x|y,z) = Y[w⁻¹x][y⁻¹z] / |Γ|²`, with `⟨h,p⟩ = Y·D/|Γ|`.
#[derive(Clone, Debug)]
pub struct InvariantCertificate {
    pub group: AbelianGroup,
    pub y: Vec<Vec<BigRational>>,
    /// `Y·D`, exact.
    pub value: Cyclotomic,
    pub min_over_columns: BigRational,
}

impl InvariantCertificate {
    pub fn to_certificate(&self) -> Certificate {
        let g = &self.group;
        let n = g.order();
        let scale = BigRational::new(1.into(), BigInt::from((n * n) as u64));
        let mut hyperplane = Vec::new();
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let c = &self.y[g.diff(w, x)][g.diff(y, z)];
                        if !c.is_zero() {
                            hyperplane.push(HyperplaneEntry { l: w, k: x, i: y, j: z, coef: c * &scale });
                        }
                    }
                }
            }
        }
        let value = self.value.div_int(n as i64);
        Certificate {
            labels: Correlation::group_labels(g),
            hyperplane,
            min_over_deterministic: BigRational::zero(),
            value_on_p_approx: value.approx_re(),
            value_on_p: Some(value),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InvariantVerdict {
    pub verdict: LocalityVerdict,
    pub invariant_certificate: Option<InvariantCertificate>,
}

/// Decides locality of the group-invariant correlation with matrix `d`.
pub fn decide_local_invariant(d: &CharacteristicMatrix, columns: Option<&InvariantColumns>) -> Result<InvariantVerdict> {
    let g = d.group();
    let n = g.order();
    if n > INVARIANT_BOUND {
        return Err(Error::BoundExceeded(format!("|Γ| = {n} exceeds {INVARIANT_BOUND}")));
    }
    let owned;
    let cols = match columns {
        Some(c) => c,
        None => {
            owned = InvariantColumns::new(g)?;
            &owned
        }
    };
    let target = Target::Exact(d.entries().iter().flatten().cloned().collect());
    let problem = Problem { rows: n * n, columns: &cols.columns, col_den: n as u32, target: &target };
    Ok(match membership::decide(&problem) {
        Outcome::Local { weights, exact } => InvariantVerdict {
            verdict: LocalityVerdict {
                status: LocalityStatus::Local,
                decomposition: weights
                    .into_iter()
                    .map(|w| DecompositionTerm {
                        perm: cols.representatives[w.column].clone(),
                        weight: w.approx,
                        exact: w.exact,
                    })
                    .collect(),
                exact_decomposition: exact,
                group_averaged: true,
                certificate: None,
                certificate_verified: false,
                gap: 0.0,
                numeric_only: false,
                note: (!exact).then(|| "numeric confidence: exact support solve failed".to_string()),
            },
            invariant_certificate: None,
        },
        Outcome::Nonlocal(sep) => {
            // Fold the minimum: Y' = Y - (min/n)·J; every M_π and D have entry sum n.
            let shift = &sep.min / BigRational::from_integer(BigInt::from(n as u64));
            let y: Vec<Vec<BigRational>> =
                (0..n).map(|a| (0..n).map(|b| sep.y_rational(a * n + b) - &shift).collect()).collect();
            let value = sep.gap_exact().expect("exact target");
            let cert = InvariantCertificate { group: g.clone(), y, value, min_over_columns: BigRational::zero() };
            let sound = verify_invariant(&cert, d, cols);
            InvariantVerdict {
                verdict: LocalityVerdict {
                    status: LocalityStatus::Nonlocal,
                    decomposition: vec![],
                    exact_decomposition: false,
                    group_averaged: true,
                    certificate: None,
                    certificate_verified: sound,
                    gap: sep.gap_approx(),
                    numeric_only: false,
                    note: None,
                },
                invariant_certificate: Some(cert),
            }
        }
        Outcome::Inconclusive(why) => InvariantVerdict { verdict: LocalityVerdict::inconclusive(why, false), invariant_certificate: None },
    })
}

/// Independent exact check of an invariant certificate: minimum over every
/// column is at least the claim, and `Y·D` is strictly below it.
pub fn verify_invariant(cert: &InvariantCertificate, d: &CharacteristicMatrix, cols: &InvariantColumns) -> bool {
    let n = cert.group.order();
    let den_n = BigRational::from_integer(BigInt::from(n as u64));
    let mut min: Option<BigRational> = None;
    for col in &cols.columns {
        let v: BigRational = col
            .iter()
            .map(|&(r, c)| &cert.y[r as usize / n][r as usize % n] * BigRational::from_integer(BigInt::from(c)))
            .fold(BigRational::zero(), |a, b| a + b)
            / &den_n;
        if min.as_ref().is_none_or(|m| v < *m) {
            min = Some(v);
        }
    }
    let Some(min) = min else { return false };
    let mut value = Cyclotomic::zero();
    for a in 0..n {
        for b in 0..n {
            if !cert.y[a][b].is_zero() && !d.get(a, b).is_zero() {
                value += &d.get(a, b).scale(&cert.y[a][b]);
            }
        }
    }
    let ok_value = value == cert.value;
    let below = crate::cyclotomic::real_sign(&(&value - &Cyclotomic::from_rational(min.clone())))
        == crate::cyclotomic::RealSign::Negative;
    ok_value && below && min >= cert.min_over_columns && min.to_f64().is_some()
}
