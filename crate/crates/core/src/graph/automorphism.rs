use super::Graph;
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// Largest graph accepted by the automorphism search.
pub const AUTOMORPHISM_BOUND: usize = 12;
/// Largest automorphism group enumerated in full.
pub const AUTOMORPHISM_CAP: usize = 1_000_000;

pub fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
    p.len() == g.n()
        && perm::is_permutation(p)
        && (0..g.n()).all(|u| (0..g.n()).all(|v| g.adjacent(u, v) == g.adjacent(p[u], p[v])))
}

pub fn automorphisms(g: &Graph) -> Result<Vec<Perm>> {
    automorphisms_bounded(g, AUTOMORPHISM_BOUND, AUTOMORPHISM_CAP)
}

pub fn automorphisms_bounded(g: &Graph, bound: usize, cap: usize) -> Result<Vec<Perm>> {
    if g.n() > bound {
        return Err(Error::BoundExceeded(format!("{} vertices exceeds {bound} for automorphism search", g.n())));
    }
    let mut out = Vec::new();
    search(g, g, usize::MAX, &mut |p| {
        out.push(p.to_vec());
        if out.len() > cap {
            return Err(Error::BoundExceeded(format!("more than {cap} automorphisms")));
        }
        Ok(true)
    })?;
    Ok(out)
}

/// A bijection `f` with `u ~ v ⇔ f(u) ~ f(v)`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Perm> {
    if g.n() != h.n() || g.edges().len() != h.edges().len() {
        return None;
    }
    let mut found = None;
    search(g, h, 1, &mut |p| {
        found = Some(p.to_vec());
        Ok(false)
    })
    .ok()?;
    found
}

/// Backtracking over images of `0, 1, …` with degree and adjacency pruning.
/// The callback returns whether to continue.
fn search(g: &Graph, h: &Graph, limit: usize, visit: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<()> {
    let n = g.n();
    if n != h.n() {
        return Ok(());
    }
    let dg: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let dh: Vec<usize> = (0..n).map(|u| h.degree(u)).collect();
    let (mut sg, mut sh) = (dg.clone(), dh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(());
    }
    let mut image = vec![usize::MAX; n];
    let mut used = 0u64;
    let mut count = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        h: &Graph,
        u: usize,
        image: &mut [usize],
        used: &mut u64,
        deg: (&[usize], &[usize]),
        count: &mut usize,
        limit: usize,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        let n = g.n();
        if u == n {
            *count += 1;
            return Ok(visit(image)? && *count < limit);
        }
        for c in 0..n {
            if *used >> c & 1 == 1 || deg.0[u] != deg.1[c] {
                continue;
            }
            if (0..u).any(|w| g.adjacent(u, w) != h.adjacent(c, image[w])) {
                continue;
            }
            image[u] = c;
            *used |= 1 << c;
            let go = rec(g, h, u + 1, image, used, deg, count, limit, visit)?;
            *used &= !(1 << c);
            image[u] = usize::MAX;
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
    rec(g, h, 0, &mut image, &mut used, (&dg, &dh), &mut count, limit, visit)?;
    Ok(())
}

/// Closed under composition and inverses, and contains the identity.
pub fn is_group(perms: &[Perm]) -> bool {
    let Some(first) = perms.first() else { return false };
    let mut sorted = perms.to_vec();
    sorted.sort();
    let has = |p: &Perm| sorted.binary_search(p).is_ok();
    has(&perm::identity(first.len()))
        && perms.iter().all(|a| has(&perm::inverse(a)) && perms.iter().all(|b| has(&perm::compose(a, b))))
}

/// `k` nontrivial automorphisms with pairwise disjoint supports, searched
/// over all distinct supports (smallest first).
pub fn find_disjoint_automorphisms(g: &Graph, k: usize) -> Result<Option<Vec<Perm>>> {
    let autos = automorphisms(g)?;
    let mut by_support: Vec<(u64, Perm)> = Vec::new();
    for p in autos.into_iter().filter(|p| !perm::is_identity(p)) {
        let mask = perm::support(&p).iter().fold(0u64, |m, &v| m | 1 << v);
        by_support.push((mask, p));
    }
    by_support.sort_by_key(|(m, p)| (m.count_ones(), *m, p.clone()));
    by_support.dedup_by_key(|(m, _)| *m);
    let masks: Vec<u64> = by_support.iter().map(|(m, _)| *m).collect();
    let mut chosen = Vec::with_capacity(k);
    if pick(&masks, 0, 0, k, &mut chosen) {
        Ok(Some(chosen.into_iter().map(|i| by_support[i].1.clone()).collect()))
    } else {
        Ok(None)
    }
}

fn pick(masks: &[u64], from: usize, used: u64, k: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    for i in from..masks.len() {
        if masks[i] & used == 0 {
            chosen.push(i);
            if pick(masks, i + 1, used | masks[i], k, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Graph {
        Graph::from_name(name).unwrap()
    }

    #[test]
    fn automorphism_counts() {
        for (name, count) in [("K4", 24), ("3K2", 48), ("C5", 10), ("C10(4)", 320), ("petersen", 120), ("Q3", 48)] {
            assert_eq!(automorphisms(&g(name)).unwrap().len(), count, "{name}");
        }
    }

    #[test]
    fn automorphisms_form_groups() {
        for name in ["K4", "3K2", "C5", "2C4", "Q3"] {
            assert!(is_group(&automorphisms(&g(name)).unwrap()), "{name}");
        }
    }

    #[test]
    fn disjoint_triples() {
        assert!(find_disjoint_automorphisms(&g("K4"), 3).unwrap().is_none());
        assert_eq!(find_disjoint_automorphisms(&g("K4"), 2).unwrap().unwrap(), vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]);
        let t = find_disjoint_automorphisms(&g("3K2"), 3).unwrap().unwrap();
        assert_eq!(t, vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]]);
        let c = find_disjoint_automorphisms(&g("C10(4)"), 3).unwrap().unwrap();
        assert!(c.iter().all(|p| perm::support(p).len() == 2));
    }

    #[test]
    fn isomorphism_of_cube_and_double_cover() {
        assert!(find_isomorphism(&g("Q3"), &g("K4*K2")).is_some());
        assert!(find_isomorphism(&g("Q3"), &g("2K4")).is_none());
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(automorphisms(&g("13K1")), Err(Error::BoundExceeded(_))));
    }
}
