//! Quantum Latin squares from character tables.
//!
//! For a bijection `π` of `Γ̂` the square has entries
//! `ψ_{a,b}[χ] = χ'(a)·conj(χ(b))` with `χ' = π⁻¹(χ)`. Vectors are stored as
//! exponents of `ζ_N`, unscaled (each has squared norm `|Γ|`).

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{CharacteristicMatrix, Correlation, Provenance};
use crate::cyclotomic::{reduce_integer, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, DualPermutation, GroupAutomorphism};
use crate::locality::{self, InvariantColumns, LocalityStatus};
use crate::perm::{self, Perm};

/// Largest group handled by orbit enumeration and surveys.
pub const SURVEY_BOUND: usize = 10;

#[derive(Clone, Debug)]
pub struct QuantumLatinSquare {
    group: AbelianGroup,
    pi: DualPermutation,
    /// `exps[a][b][χ]`: `ψ_{a,b}[χ] = ζ_N^{exps[a][b][χ]}`.
    exps: Vec<Vec<Vec<u32>>>,
}

impl QuantumLatinSquare {
    pub fn new(g: &AbelianGroup, pi: &[usize]) -> Result<QuantumLatinSquare> {
        let n = g.order();
        if pi.len() != n || !perm::is_permutation(pi) {
            return Err(Error::Invalid(format!("expected a permutation of {n} characters")));
        }
        let e = g.pairing_table();
        let big_n = g.exponent();
        let inv = perm::inverse(pi);
        let exps = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).map(|x| (e[inv[x]][a] + big_n - e[x][b]) % big_n).collect())
                    .collect()
            })
            .collect();
        Ok(QuantumLatinSquare { group: g.clone(), pi: pi.to_vec(), exps })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn exponents(&self, a: usize, b: usize) -> &[u32] {
        &self.exps[a][b]
    }

    pub fn vector(&self, a: usize, b: usize) -> Vec<Cyclotomic> {
        let big_n = self.group.exponent();
        self.exps[a][b].iter().map(|&e| Cyclotomic::root_of_unity(big_n, e as i64)).collect()
    }

    fn inner_raw(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<i64> {
        let big_n = self.group.exponent();
        let mut raw = vec![0i64; big_n as usize];
        for (x, y) in self.exps[a][b].iter().zip(&self.exps[c][d]) {
            raw[((y + big_n - x) % big_n) as usize] += 1;
        }
        raw
    }

    /// `⟨ψ_{a,b}, ψ_{c,d}⟩`, conjugate-linear in the first slot.
    pub fn inner(&self, a: usize, b: usize, c: usize, d: usize) -> Cyclotomic {
        Cyclotomic::from_integer_raw(&self.inner_raw(a, b, c, d), self.group.exponent())
    }

    /// Rows and columns are orthogonal families of squared norm `|Γ|`.
    pub fn is_orthogonal(&self) -> bool {
        let n = self.group.order();
        let big_n = self.group.exponent();
        let check = |raw: Vec<i64>, same: bool| {
            let r = reduce_integer(&raw, big_n);
            let expect = if same { n as i64 } else { 0 };
            r[0] == expect && r[1..].iter().all(|&c| c == 0)
        };
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| check(self.inner_raw(a, b, a, c), b == c) && check(self.inner_raw(b, a, c, a), b == c))
            })
        })
    }

    /// `q(a,b|c,d) = |⟨ψ_{c,a}, ψ_{d,b}⟩|² / |Γ|³`.
    pub fn correlation(&self) -> Correlation {
        let n = self.group.order();
        let big_n = self.group.exponent();
        let scale = BigRational::new(1.into(), BigInt::from((n * n * n) as u64));
        let mut cache: HashMap<Vec<i64>, Cyclotomic> = HashMap::new();
        Correlation::from_fn_exact(Correlation::group_labels(&self.group), Provenance::Qls, |a, b, c, d| {
            let sq = reduce_integer(&abs_squared_raw(&self.inner_raw(c, a, d, b)), big_n);
            cache
                .entry(sq)
                .or_insert_with_key(|k| Cyclotomic::from_integer_raw(k, big_n).scale(&scale))
                .clone()
        })
    }

    /// `D` computed from the inner products.
    pub fn characteristic_via_correlation(&self) -> Result<CharacteristicMatrix> {
        self.correlation().to_characteristic(&self.group)
    }

    /// Rank-one projections `u_{ab} = |ψ_{a,b}⟩⟨ψ_{a,b}| / |Γ|` in floating point.
    pub fn magic_unitary(&self) -> Vec<Vec<DMatrix<Complex64>>> {
        let n = self.group.order();
        let big_n = self.group.exponent() as f64;
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let v: Vec<Complex64> = self.exps[a][b]
                            .iter()
                            .map(|&e| Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / big_n))
                            .collect();
                        let col = DMatrix::from_vec(n, 1, v);
                        &col * col.adjoint() / Complex64::new(n as f64, 0.0)
                    })
                    .collect()
            })
            .collect()
    }
}

fn abs_squared_raw(raw: &[i64]) -> Vec<i64> {
    let m = raw.len();
    let mut out = vec![0i64; m];
    for (i, &x) in raw.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in raw.iter().enumerate() {
            if y != 0 {
                out[(i + m - j) % m] += x * y;
            }
        }
    }
    out
}

/// Precomputed data for evaluating `D^π` in integer arithmetic.
#[derive(Clone, Debug)]
pub struct Kernel {
    group: AbelianGroup,
    pairing: Vec<Vec<u32>>,
    width: usize,
}

/// `D^π` as integers: entry `(a,b)` holds the reduced coefficients of `|Γ|²·D[a][b]`.
pub type MatrixKey = Vec<i32>;

impl Kernel {
    pub fn new(g: &AbelianGroup) -> Kernel {
        let width = reduce_integer(&[0], g.exponent()).len();
        Kernel { group: g.clone(), pairing: g.pairing_table(), width }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `K[a][b] = Σ_y ζ^{E[y][b] − E[π(y)][a]}` and `|Γ|²·D[a][b] = |K[a][b]|²`.
    pub fn key(&self, pi: &[usize]) -> MatrixKey {
        let n = self.group.order();
        let big_n = self.group.exponent();
        let mut out = Vec::with_capacity(n * n * self.width);
        let mut raw = vec![0i64; big_n as usize];
        for a in 0..n {
            for b in 0..n {
                raw.iter_mut().for_each(|x| *x = 0);
                for y in 0..n {
                    raw[((self.pairing[y][b] + big_n - self.pairing[pi[y]][a]) % big_n) as usize] += 1;
                }
                out.extend(reduce_integer(&abs_squared_raw(&raw), big_n).into_iter().map(|c| c as i32));
            }
        }
        out
    }

    /// Key of the matrix `D'[a][b] = D[rows[a]][cols[b]]`.
    pub fn permute(&self, key: &[i32], rows: &[usize], cols: &[usize]) -> MatrixKey {
        let n = self.group.order();
        let w = self.width;
        let mut out = Vec::with_capacity(key.len());
        for &ra in rows {
            for &cb in cols {
                let at = (ra * n + cb) * w;
                out.extend_from_slice(&key[at..at + w]);
            }
        }
        out
    }

    pub fn is_permutation_matrix(&self, key: &[i32]) -> bool {
        let n = self.group.order();
        let w = self.width;
        let full = (n * n) as i32;
        (0..n).all(|a| {
            let mut ones = 0;
            for b in 0..n {
                let e = &key[(a * n + b) * w..(a * n + b + 1) * w];
                if e[0] == full && e[1..].iter().all(|&c| c == 0) {
                    ones += 1;
                } else if e.iter().any(|&c| c != 0) {
                    return false;
                }
            }
            ones == 1
        })
    }

    pub fn matrix(&self, key: &[i32]) -> CharacteristicMatrix {
        let n = self.group.order();
        let w = self.width;
        let big_n = self.group.exponent();
        let scale = BigRational::new(1.into(), BigInt::from((n * n) as u64));
        let d = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let raw: Vec<i64> = key[(a * n + b) * w..(a * n + b + 1) * w].iter().map(|&c| c as i64).collect();
                        Cyclotomic::from_integer_raw(&raw, big_n).scale(&scale)
                    })
                    .collect()
            })
            .collect();
        CharacteristicMatrix::new_unchecked(self.group.clone(), d)
    }
}

/// `D^π`, exact.
pub fn characteristic_matrix(g: &AbelianGroup, pi: &[usize]) -> Result<CharacteristicMatrix> {
    if pi.len() != g.order() || !perm::is_permutation(pi) {
        return Err(Error::Invalid(format!("expected a permutation of {} characters", g.order())));
    }
    let k = Kernel::new(g);
    Ok(k.matrix(&k.key(pi)))
}

pub fn key_hash(key: &[i32]) -> u64 {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    h.finish()
}

#[derive(Clone, Debug)]
pub struct ClassicalCheck {
    /// `(z, σ)` with `π(x) = z·σ̂(x)`.
    pub witness: Option<(usize, GroupAutomorphism)>,
    pub permutation_matrix: bool,
}

impl ClassicalCheck {
    pub fn is_classical(&self) -> bool {
        self.witness.is_some()
    }

    pub fn consistent(&self) -> bool {
        self.witness.is_some() == self.permutation_matrix
    }
}

pub fn is_classical_qls(g: &AbelianGroup, pi: &[usize]) -> Result<ClassicalCheck> {
    let auts = g.automorphism_group()?;
    let z = pi[0];
    let shifted: Perm = pi.iter().map(|&x| g.diff(z, x)).collect();
    let witness = auts.into_iter().find(|s| g.dual_map(s) == shifted).map(|s| (z, s));
    let permutation_matrix = characteristic_matrix(g, pi)?.is_permutation_matrix();
    Ok(ClassicalCheck { witness, permutation_matrix })
}

/// Which symmetries identify permutations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    /// Translations on both sides and conjugation by inversion; `D^π` is unchanged.
    Correlation,
    /// Affine maps `x ↦ z·σ̂(x)` on both sides; locality status is unchanged.
    Locality,
}

/// Affine maps of `Γ̂` as permutations (translation after dual automorphism).
pub fn affine_maps(g: &AbelianGroup, auts: &[GroupAutomorphism]) -> Vec<Perm> {
    let n = g.order();
    let mut out = Vec::with_capacity(n * auts.len());
    for s in auts {
        let hat = g.dual_map(s);
        for z in 0..n {
            out.push(hat.iter().map(|&x| g.add(z, x)).collect());
        }
    }
    out
}

/// Lexicographically least permutation of each orbit.
pub fn orbit_representatives(g: &AbelianGroup, reduction: Reduction) -> Result<Vec<Perm>> {
    let n = g.order();
    if n > SURVEY_BOUND {
        return Err(Error::BoundExceeded(format!("|Γ| = {n} exceeds {SURVEY_BOUND} for orbit enumeration")));
    }
    // Blocks of (left, right) factor lists; images are a∘π∘b within a block.
    let blocks: Vec<(Vec<Perm>, Vec<Perm>)> = match reduction {
        Reduction::Locality => {
            let aff = affine_maps(g, &g.automorphism_group()?);
            vec![(aff.clone(), aff)]
        }
        Reduction::Correlation => {
            let eta = g.inversion();
            let t: Vec<Perm> = (0..n).map(|z| g.translation(z)).collect();
            let left_eta = t.iter().map(|a| perm::compose(a, &eta)).collect();
            let right_eta = t.iter().map(|b| perm::compose(&eta, b)).collect();
            vec![(t.clone(), t), (left_eta, right_eta)]
        }
    };
    let total = perm::factorial(n) as usize;
    let mut visited = vec![false; total];
    let mut reps = Vec::new();
    let mut pi = perm::identity(n);
    let mut r = 0usize;
    loop {
        if !visited[r] {
            reps.push(pi.clone());
            for (left, right) in &blocks {
                for b in right {
                    let pb = perm::compose(&pi, b);
                    for a in left {
                        visited[perm::rank(&perm::compose(a, &pb)) as usize] = true;
                    }
                }
            }
        }
        r += 1;
        if !perm::next_lex(&mut pi) {
            break;
        }
    }
    Ok(reps)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: Perm,
    /// Hash of the representative's exact `D^π`.
    pub d_hash: String,
    /// Distinct matrices in the class (row/column permutations by `Aut(Γ)`).
    pub size: usize,
    pub classical: usize,
    pub status: LocalityStatus,
    pub gap: f64,
    /// Index into [`SurveyReport::certificates`].
    pub certificate_id: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateRecord {
    /// `Y[a][b]`: `Σ Y·M_π ≥ 0` over group-averaged deterministic matrices and `Σ Y·D < 0`.
    pub y: Vec<Vec<String>>,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurveyReport {
    pub group: String,
    pub order: usize,
    pub automorphisms: usize,
    pub locality_orbits: usize,
    pub distinct: usize,
    pub classical: usize,
    pub local: usize,
    pub nonlocal: usize,
    pub inconclusive: usize,
    pub classical_matches_aut: bool,
    pub classes: Vec<ClassRecord>,
    pub certificates: Vec<CertificateRecord>,
    pub elapsed_ms: u128,
}

impl SurveyReport {
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.distinct, self.classical, self.local, self.nonlocal)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Every `D^π`, deduplicated exactly, with a locality decision per class.
pub fn survey(g: &AbelianGroup) -> Result<SurveyReport> {
    let start = Instant::now();
    let n = g.order();
    if n > SURVEY_BOUND {
        return Err(Error::BoundExceeded(format!("|Γ| = {n} exceeds {SURVEY_BOUND} for surveys")));
    }
    let auts = g.automorphism_group()?;
    let perms: Vec<(Perm, Perm)> = auts
        .iter()
        .map(|s| {
            let m = s.map.clone();
            let inv = perm::inverse(&m);
            (m, inv)
        })
        .collect();
    let reps = orbit_representatives(g, Reduction::Locality)?;
    let kernel = Kernel::new(g);
    // D^{σ̂∘π∘τ̂}[a][b] = D^π[σ(a)][τ⁻¹(b)]
    let expanded: Vec<Vec<MatrixKey>> = reps
        .par_iter()
        .map(|pi| {
            let base = kernel.key(pi);
            let mut keys: Vec<MatrixKey> = Vec::with_capacity(perms.len() * perms.len());
            for (rows, _) in &perms {
                for (_, cols) in &perms {
                    keys.push(kernel.permute(&base, rows, cols));
                }
            }
            keys.sort_unstable();
            keys.dedup();
            keys
        })
        .collect();
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    let mut owner: HashMap<&[i32], usize> = HashMap::new();
    for (r, keys) in expanded.iter().enumerate() {
        for k in keys {
            match owner.get(k.as_slice()) {
                Some(&o) => {
                    let (x, y) = (find(&mut parent, o), find(&mut parent, r));
                    if x != y {
                        parent[y.max(x)] = x.min(y);
                    }
                }
                None => {
                    owner.insert(k, r);
                }
            }
        }
    }
    let mut size = vec![0usize; reps.len()];
    let mut classical = vec![0usize; reps.len()];
    for (k, &o) in &owner {
        let root = find(&mut parent, o);
        size[root] += 1;
        if kernel.is_permutation_matrix(k) {
            classical[root] += 1;
        }
    }
    let roots: Vec<usize> = (0..reps.len()).filter(|&r| find(&mut parent, r) == r).collect();
    let columns = InvariantColumns::new(g)?;
    let decided: Vec<Result<(LocalityStatus, f64, Option<CertificateRecord>)>> = roots
        .par_iter()
        .map(|&r| {
            let d = kernel.matrix(&kernel.key(&reps[r]));
            let v = locality::decide_local_invariant(&d, Some(&columns))?;
            let verdict = v.verdict;
            if verdict.is_nonlocal() && !verdict.certificate_verified {
                return Err(Error::CertificateFailed(format!("class of {:?}", reps[r])));
            }
            let cert = v.invariant_certificate.map(|c| CertificateRecord {
                y: c.y.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
                value: c.value.approx_re(),
            });
            Ok((verdict.status, verdict.gap, cert))
        })
        .collect();
    let mut classes = Vec::with_capacity(roots.len());
    let mut certificates = Vec::new();
    for (&r, res) in roots.iter().zip(decided) {
        let (status, gap, cert) = res?;
        let certificate_id = cert.map(|c| {
            certificates.push(c);
            certificates.len() - 1
        });
        classes.push(ClassRecord {
            representative: reps[r].clone(),
            d_hash: format!("{:016x}", key_hash(&kernel.key(&reps[r]))),
            size: size[r],
            classical: classical[r],
            status,
            gap,
            certificate_id,
        });
    }
    let count = |s: LocalityStatus| classes.iter().filter(|c| c.status == s).map(|c| c.size).sum::<usize>();
    let total_classical: usize = classes.iter().map(|c| c.classical).sum();
    Ok(SurveyReport {
        group: g.to_string(),
        order: n,
        automorphisms: auts.len(),
        locality_orbits: reps.len(),
        distinct: owner.len(),
        classical: total_classical,
        local: count(LocalityStatus::Local),
        nonlocal: count(LocalityStatus::Nonlocal),
        inconclusive: count(LocalityStatus::NumericInconclusive),
        classical_matches_aut: total_classical == auts.len(),
        classes,
        certificates,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::cyclic(n)
    }

    #[test]
    fn identity_square_is_diagonal() {
        let g = z(5);
        let q = QuantumLatinSquare::new(&g, &perm::identity(5)).unwrap();
        assert!(q.exponents(0, 0).iter().all(|&e| e == 0));
        assert!(q.is_orthogonal());
        assert!(characteristic_matrix(&g, &perm::identity(5)).unwrap().is_permutation_matrix());
    }

    #[test]
    fn swap_is_orthogonal_and_nonclassical() {
        let g = z(5);
        let pi = vec![0, 1, 2, 4, 3];
        assert!(QuantumLatinSquare::new(&g, &pi).unwrap().is_orthogonal());
        let c = is_classical_qls(&g, &pi).unwrap();
        assert!(!c.is_classical() && c.consistent());
    }

    #[test]
    fn permute_matches_direct_kernel() {
        let g = z(5);
        let k = Kernel::new(&g);
        let pi = vec![0, 1, 2, 4, 3];
        let base = k.key(&pi);
        for s in g.automorphism_group().unwrap() {
            let hat = g.dual_map(&s);
            let inv = perm::inverse(&s.map);
            assert_eq!(k.key(&perm::compose(&hat, &pi)), k.permute(&base, &s.map, &perm::identity(5)));
            assert_eq!(k.key(&perm::compose(&pi, &hat)), k.permute(&base, &perm::identity(5), &inv));
        }
    }

    #[test]
    fn z2_has_one_orbit() {
        assert_eq!(orbit_representatives(&z(2), Reduction::Locality).unwrap().len(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(orbit_representatives(&z(11), Reduction::Locality), Err(Error::BoundExceeded(_))));
        assert!(matches!(survey(&z(11)), Err(Error::BoundExceeded(_))));
    }
}
