//! Finite abelian groups `Z_{n1} × … × Z_{nd}`, their characters and automorphisms.
//!
//! Elements and characters are both indexed by residue tuples in lexicographic
//! order (last factor varies fastest), so index `0` is the identity of `Γ` and
//! the trivial character of `Γ̂`. Character `χ_m` is printed under the fixed
//! identification `m ↦ χ_m`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

pub const DEFAULT_GROUP_BOUND: usize = 64;
pub const DEFAULT_AUT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: usize,
    exponent: u32,
    add: Vec<usize>,
    neg: Vec<usize>,
}

/// A permutation of the enumerated character list of `Γ̂`.
pub type DualPermutation = Perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism {
    /// Images of the standard generators `e_1, …, e_d` (as element indices).
    pub generator_images: Vec<usize>,
    /// Full action on element indices.
    pub map: Perm,
}

impl AbelianGroup {
    pub fn new(factors: &[u32]) -> Result<AbelianGroup> {
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::Invalid("cyclic factors must be positive".into()));
        }
        let factors: Vec<u32> = factors.iter().copied().filter(|&n| n > 1).collect();
        let order: usize = factors.iter().map(|&n| n as usize).product();
        let exponent = factors.iter().fold(1u32, |acc, &n| acc.lcm(&n));
        let mut g = AbelianGroup { factors, order, exponent, add: vec![], neg: vec![] };
        let elems: Vec<Vec<u32>> = (0..order).map(|i| g.residues(i)).collect();
        let mut add = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let r: Vec<u32> = elems[a]
                    .iter()
                    .zip(&elems[b])
                    .zip(&g.factors)
                    .map(|((x, y), n)| (x + y) % n)
                    .collect();
                add[a * order + b] = g.index_of(&r);
            }
        }
        let neg = (0..order)
            .map(|a| {
                let r: Vec<u32> = elems[a].iter().zip(&g.factors).map(|(x, n)| (n - x) % n).collect();
                g.index_of(&r)
            })
            .collect();
        g.add = add;
        g.neg = neg;
        Ok(g)
    }

    pub fn cyclic(n: u32) -> AbelianGroup {
        AbelianGroup::new(&[n]).expect("positive order")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn residues(&self, mut idx: usize) -> Vec<u32> {
        let mut r = vec![0; self.factors.len()];
        for (slot, &n) in r.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % n as usize) as u32;
            idx /= n as usize;
        }
        r
    }

    pub fn index_of(&self, residues: &[u32]) -> usize {
        residues
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&r, &n)| acc * n as usize + (r % n) as usize)
    }

    pub fn elements(&self) -> Vec<Vec<u32>> {
        (0..self.order).map(|i| self.residues(i)).collect()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `a⁻¹b` in multiplicative notation.
    #[inline]
    pub fn diff(&self, a: usize, b: usize) -> usize {
        self.add(self.neg[a], b)
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.residues(a)
            .iter()
            .zip(&self.factors)
            .map(|(&r, &n)| n / n.gcd(&r))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Index of the standard generator `e_i`.
    pub fn generator(&self, i: usize) -> usize {
        let mut r = vec![0; self.factors.len()];
        r[i] = 1;
        self.index_of(&r)
    }

    /// Exponent `e` with `χ_m(a) = ζ_N^e`.
    pub fn pairing(&self, m: usize, a: usize) -> u32 {
        let n = self.exponent as u64;
        let (rm, ra) = (self.residues(m), self.residues(a));
        let s: u64 = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, &ni)| (n / ni as u64) * rm[i] as u64 * ra[i] as u64)
            .sum();
        (s % n) as u32
    }

    /// `E[m][a]` such that `χ_m(a) = ζ_N^{E[m][a]}`.
    pub fn pairing_table(&self) -> Vec<Vec<u32>> {
        (0..self.order).map(|m| (0..self.order).map(|a| self.pairing(m, a)).collect()).collect()
    }

    /// `C[χ][a] = χ(a)`.
    pub fn character_table(&self) -> Vec<Vec<Cyclotomic>> {
        let roots: Vec<Cyclotomic> =
            (0..self.exponent).map(|k| Cyclotomic::root_of_unity(self.exponent, k as i64)).collect();
        self.pairing_table()
            .into_iter()
            .map(|row| row.into_iter().map(|e| roots[e as usize].clone()).collect())
            .collect()
    }

    /// Translation `x ↦ z·x` on indices (valid on `Γ` and on `Γ̂`).
    pub fn translation(&self, z: usize) -> Perm {
        (0..self.order).map(|x| self.add(z, x)).collect()
    }

    /// Inversion `x ↦ x⁻¹`.
    pub fn inversion(&self) -> Perm {
        self.neg.clone()
    }

    /// All automorphisms with the default bounds.
    pub fn automorphism_group(&self) -> Result<Vec<GroupAutomorphism>> {
        self.automorphism_group_bounded(DEFAULT_GROUP_BOUND, DEFAULT_AUT_CAP)
    }

    /// Backtracking over images of the standard generators. A partial
    /// assignment is kept only while the subgroup it generates has full size.
    pub fn automorphism_group_bounded(&self, bound: usize, cap: usize) -> Result<Vec<GroupAutomorphism>> {
        if self.order > bound {
            return Err(Error::BoundExceeded(format!("|Γ| = {} exceeds the bound {}", self.order, bound)));
        }
        let d = self.rank();
        let candidates: Vec<Vec<usize>> = self
            .factors
            .iter()
            .map(|&n| (0..self.order).filter(|&a| n % self.element_order(a) == 0).collect())
            .collect();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(d);
        let mut partial = vec![0usize];
        self.aut_search(&candidates, &mut images, &mut partial, &mut out, cap)?;
        Ok(out)
    }

    fn aut_search(
        &self,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        partial: &mut Vec<usize>,
        out: &mut Vec<GroupAutomorphism>,
        cap: usize,
    ) -> Result<()> {
        let k = images.len();
        if k == self.rank() {
            let map = self.extend(images);
            out.push(GroupAutomorphism { generator_images: images.clone(), map });
            if out.len() > cap {
                return Err(Error::BoundExceeded(format!("more than {cap} automorphisms")));
            }
            return Ok(());
        }
        let n = self.factors[k] as usize;
        for &g in &candidates[k] {
            // image of the first k+1 factors: partial + j·g
            let mut next = Vec::with_capacity(partial.len() * n);
            let mut mult = 0usize;
            for _ in 0..n {
                for &p in partial.iter() {
                    next.push(self.add(p, mult));
                }
                mult = self.add(mult, g);
            }
            let mut seen = vec![false; self.order];
            if next.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                images.push(g);
                let saved = std::mem::replace(partial, next);
                self.aut_search(candidates, images, partial, out, cap)?;
                *partial = saved;
                images.pop();
            }
        }
        Ok(())
    }

    fn extend(&self, images: &[usize]) -> Perm {
        (0..self.order)
            .map(|a| {
                let r = self.residues(a);
                let mut acc = 0;
                for (i, &ri) in r.iter().enumerate() {
                    for _ in 0..ri {
                        acc = self.add(acc, images[i]);
                    }
                }
                acc
            })
            .collect()
    }

    /// `σ̂(χ) = χ∘σ` as a permutation of character indices.
    pub fn dual_map(&self, sigma: &GroupAutomorphism) -> DualPermutation {
        let n = self.exponent;
        (0..self.order)
            .map(|m| {
                let r: Vec<u32> = self
                    .factors
                    .iter()
                    .enumerate()
                    .map(|(i, &ni)| self.pairing(m, sigma.generator_images[i]) / (n / ni))
                    .collect();
                self.index_of(&r)
            })
            .collect()
    }

    pub fn compose_automorphisms(&self, a: &GroupAutomorphism, b: &GroupAutomorphism) -> GroupAutomorphism {
        let map = perm::compose(&a.map, &b.map);
        let generator_images = (0..self.rank()).map(|i| map[self.generator(i)]).collect();
        GroupAutomorphism { generator_images, map }
    }

    pub fn element_label(&self, a: usize) -> String {
        let r = self.residues(a);
        match r.len() {
            0 => "0".into(),
            1 => r[0].to_string(),
            _ => format!("({})", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
        }
    }

    pub fn character_label(&self, m: usize) -> String {
        format!("χ{}", self.element_label(m))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<AbelianGroup> {
        let bad = || Error::Parse(format!("invalid group literal {s:?}"));
        let factors = s
            .trim()
            .to_ascii_lowercase()
            .split('x')
            .map(|part| {
                let digits = part.trim().strip_prefix('z').ok_or_else(bad)?;
                digits.parse::<u32>().ok().filter(|&n| n > 0).ok_or_else(bad)
            })
            .collect::<Result<Vec<u32>>>()?;
        AbelianGroup::new(&factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_literals() {
        let g: AbelianGroup = "z2xZ2xz2".parse().unwrap();
        assert_eq!(g.factors(), &[2, 2, 2]);
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 2);
        let h: AbelianGroup = "Z2xZ4".parse().unwrap();
        assert_eq!(h.exponent(), 4);
        assert!("Z0".parse::<AbelianGroup>().is_err());
        assert!("Q5".parse::<AbelianGroup>().is_err());
        assert_eq!("Z1".parse::<AbelianGroup>().unwrap().order(), 1);
    }

    #[test]
    fn enumeration_starts_at_identity() {
        let g: AbelianGroup = "Z2xZ3".parse().unwrap();
        let e = g.elements();
        assert_eq!(e[0], vec![0, 0]);
        assert_eq!(e[1], vec![0, 1]);
        assert_eq!(e[3], vec![1, 0]);
    }

    #[test]
    fn z2_table() {
        let c = AbelianGroup::cyclic(2).character_table();
        let m1 = Cyclotomic::from_int(-1);
        assert_eq!(c[1][1], m1);
        assert_eq!(c[0][1], Cyclotomic::one());
    }

    #[test]
    fn aut_counts() {
        assert_eq!(AbelianGroup::cyclic(5).automorphism_group().unwrap().len(), 4);
        assert_eq!(AbelianGroup::new(&[]).unwrap().automorphism_group().unwrap().len(), 1);
        let z222: AbelianGroup = "Z2xZ2xZ2".parse().unwrap();
        assert_eq!(z222.automorphism_group().unwrap().len(), 168);
        let z24: AbelianGroup = "Z2xZ4".parse().unwrap();
        assert_eq!(z24.automorphism_group().unwrap().len(), 8);
        let z33: AbelianGroup = "Z3xZ3".parse().unwrap();
        assert_eq!(z33.automorphism_group().unwrap().len(), 48);
    }

    #[test]
    fn bounds() {
        let big = AbelianGroup::cyclic(65);
        assert!(matches!(big.automorphism_group(), Err(Error::BoundExceeded(_))));
        let z2_6: AbelianGroup = "Z2xZ2xZ2xZ2xZ2xZ2".parse().unwrap();
        assert!(matches!(z2_6.automorphism_group_bounded(64, 1000), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn dual_of_doubling_on_z5() {
        let g = AbelianGroup::cyclic(5);
        let sigma = g.automorphism_group().unwrap().into_iter().find(|s| s.generator_images == vec![2]).unwrap();
        let hat = g.dual_map(&sigma);
        assert_eq!(hat, vec![0, 2, 4, 1, 3]);
    }
}
