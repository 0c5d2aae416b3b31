//! Simple graphs on at most 64 vertices, stored as adjacency bitmasks.

mod automorphism;
mod classify;
mod games;
mod spectrum;

pub use automorphism::{
    automorphisms, automorphisms_bounded, find_disjoint_automorphisms, find_isomorphism, is_automorphism,
    is_group, AUTOMORPHISM_BOUND, AUTOMORPHISM_CAP,
};
pub use classify::{attestations, classify, five_point_witness, table2, TABLE2, Attestation, Classification, GraphVerdict, Rule, Table2Row, LP_CONFIRM_BOUND};
pub use games::{
    disjoint_auto_correlation, is_winning, lift_correlation_to_product, pairing_trace, DisjointAutoCorrelation, Entry,
    Relation,
};
pub use spectrum::{spectral_product_check, spectrum, Spectrum, SPECTRAL_TOLERANCE};

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Product {
    /// `A⊗I + I⊗A`
    Cartesian,
    /// `A⊗A`
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
    name: Option<String>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::BoundExceeded(format!("{n} vertices exceeds {MAX_VERTICES}")));
        }
        Ok(Graph { n, rows: vec![0; n], name: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at {u}")));
            }
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.rows[u] = full(n) & !(1 << u);
        }
        Ok(g.named(format!("K{n}")))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Invalid("cycles need at least 3 vertices".into()));
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Ok(Graph::from_edges(n, &edges)?.named(format!("C{n}")))
    }

    pub fn hypercube(d: usize) -> Result<Graph> {
        let n = 1usize << d;
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
        Ok(Graph::from_edges(n, &edges)?.named(format!("Q{d}")))
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("valid").named("petersen".into())
    }

    /// `C10(4)`: the complement of the lexicographic product `C₅[K₂]`.
    pub fn c10_4() -> Graph {
        let c5 = Graph::cycle(5).unwrap();
        let k2 = Graph::complete(2).unwrap();
        c5.lexicographic(&k2).unwrap().complement().named("C10(4)".into())
    }

    pub fn named(mut self, name: String) -> Graph {
        self.name = Some(name);
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, u: usize) -> u64 {
        self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| (u + 1..self.n).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v))).collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|u| (0..self.n).map(|v| self.adjacent(u, v) as i64).collect()).collect()
    }

    pub fn is_regular(&self) -> bool {
        (1..self.n).all(|u| self.degree(u) == self.degree(0))
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.rows[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push(bits(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn complement(&self) -> Graph {
        let rows = (0..self.n).map(|u| !self.rows[u] & full(self.n) & !(1 << u)).collect();
        let name = self.name.as_ref().map(|s| format!("~{s}"));
        Graph { n: self.n, rows, name }
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let m = vertices.len();
        let mut g = Graph { n: m, rows: vec![0; m], name: None };
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.adjacent(u, v) {
                    g.rows[a] |= 1 << b;
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for u in 0..self.n {
            g.rows[u] = self.rows[u];
        }
        for u in 0..other.n {
            g.rows[self.n + u] = other.rows[u] << self.n;
        }
        Ok(g)
    }

    pub fn copies(&self, m: usize) -> Result<Graph> {
        let mut g = Graph::empty(0)?;
        for _ in 0..m {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    /// Vertex `(i,a)` has index `i·|H| + a`.
    pub fn product(&self, h: &Graph, kind: Product) -> Result<Graph> {
        let (n, m) = (self.n, h.n);
        let mut edges = Vec::new();
        for i in 0..n {
            for a in 0..m {
                for j in 0..n {
                    for b in 0..m {
                        let adj = match kind {
                            Product::Cartesian => (i == j && h.adjacent(a, b)) || (a == b && self.adjacent(i, j)),
                            Product::Tensor => self.adjacent(i, j) && h.adjacent(a, b),
                        };
                        if adj && (i * m + a) < (j * m + b) {
                            edges.push((i * m + a, j * m + b));
                        }
                    }
                }
            }
        }
        Graph::from_edges(n * m, &edges)
    }

    /// `G[H]`: `(i,a) ~ (j,b)` iff `i ~ j`, or `i = j` and `a ~ b`.
    pub fn lexicographic(&self, h: &Graph) -> Result<Graph> {
        let (n, m) = (self.n, h.n);
        let mut edges = Vec::new();
        for i in 0..n {
            for a in 0..m {
                for j in 0..n {
                    for b in 0..m {
                        if (self.adjacent(i, j) || (i == j && h.adjacent(a, b))) && (i * m + a) < (j * m + b) {
                            edges.push((i * m + a, j * m + b));
                        }
                    }
                }
            }
        }
        Graph::from_edges(n * m, &edges)
    }

    /// Parses a named graph: `K5`, `C7`, `Q3`, `petersen`, `C10(4)`, an optional copy
    /// count prefix (`3K2`), `~G` for complements, `GxH` (cartesian) and `G*H` (tensor).
    pub fn from_name(spec: &str) -> Result<Graph> {
        let s = spec.trim();
        let g = parse_expr(s)?;
        Ok(g.named(s.to_string()))
    }

    /// Edge-list text: a header `n m`, then `m` lines `u v` (0-indexed). `#` starts a comment.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut nums = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace)
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))));
        let mut next = || nums.next().unwrap_or_else(|| Err(Error::Parse("edge list ends early".into())));
        let n = next()?;
        let m = next()?;
        let edges = (0..m).map(|_| Ok((next()?, next()?))).collect::<Result<Vec<_>>>()?;
        if nums.next().is_some() {
            return Err(Error::Parse("trailing data after the declared edges".into()));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let e = self.edges();
        let mut s = format!("{} {}\n", self.n, e.len());
        for (u, v) in e {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_graph6(text: &str) -> Result<Graph> {
        let bytes: Vec<u8> = text.trim().strip_prefix(">>graph6<<").unwrap_or(text.trim()).bytes().collect();
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) || bytes.is_empty() {
            return Err(Error::Parse("graph6 characters must lie in 63..=126".into()));
        }
        let (n, rest) = if bytes[0] != 126 {
            ((bytes[0] - 63) as usize, &bytes[1..])
        } else if bytes.len() >= 4 && bytes[1] != 126 {
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        } else {
            return Err(Error::Parse("graph6 header too large".into()));
        };
        let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
        if rest.len() != need {
            return Err(Error::Parse(format!("graph6 body has {} bytes, expected {need}", rest.len())));
        }
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                    g.rows[u] |= 1 << v;
                    g.rows[v] |= 1 << u;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out: Vec<u8> = if n < 63 {
            vec![n as u8 + 63]
        } else {
            vec![126, ((n >> 12) & 63) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]
        };
        let mut acc = 0u8;
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                acc = (acc << 1) | self.adjacent(u, v) as u8;
                k += 1;
                if k % 6 == 0 {
                    out.push(acc + 63);
                    acc = 0;
                }
            }
        }
        if k % 6 != 0 {
            out.push((acc << (6 - k % 6)) + 63);
        }
        String::from_utf8(out).expect("ascii")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "{name}"),
            None => write!(f, "{}", self.to_graph6()),
        }
    }
}

fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> Vec<usize> {
    let mut v = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        v.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    v
}

fn parse_expr(s: &str) -> Result<Graph> {
    if let Some((a, b)) = s.split_once('*') {
        return parse_expr(a)?.product(&parse_expr(b)?, Product::Tensor);
    }
    if let Some(pos) = s.find('x').filter(|_| !s.eq_ignore_ascii_case("petersen")) {
        return parse_expr(&s[..pos])?.product(&parse_expr(&s[pos + 1..])?, Product::Cartesian);
    }
    if let Some(rest) = s.strip_prefix('~') {
        return Ok(parse_expr(rest)?.complement());
    }
    let digits = s.chars().take_while(char::is_ascii_digit).count();
    if digits > 0 {
        let m: usize = s[..digits].parse().map_err(|_| Error::Parse(s.into()))?;
        return parse_atom(&s[digits..])?.copies(m);
    }
    parse_atom(s)
}

fn parse_atom(s: &str) -> Result<Graph> {
    let bad = || Error::Parse(format!("unknown graph {s:?}"));
    if s.eq_ignore_ascii_case("petersen") {
        return Ok(Graph::petersen());
    }
    if s == "C10(4)" {
        return Ok(Graph::c10_4());
    }
    let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
    let m: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "K" => Graph::complete(m),
        "C" => Graph::cycle(m),
        "Q" => Graph::hypercube(m),
        "E" => Graph::empty(m),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs_have_expected_sizes() {
        for (name, n, m) in [
            ("K5", 5, 10),
            ("3K2", 6, 3),
            ("Q3", 8, 12),
            ("C10(4)", 10, 20),
            ("2C4", 8, 8),
            ("K5xK2", 10, 25),
            ("petersen", 10, 15),
            ("K4*K2", 8, 12),
            ("~K3", 3, 0),
        ] {
            let g = Graph::from_name(name).unwrap();
            assert_eq!((g.n(), g.edges().len()), (n, m), "{name}");
        }
    }

    #[test]
    fn graph6_round_trip() {
        for name in ["K5", "petersen", "C10(4)", "2C5"] {
            let g = Graph::from_name(name).unwrap();
            let h = Graph::from_graph6(&g.to_graph6()).unwrap();
            assert_eq!(g.edges(), h.edges());
        }
        assert_eq!(Graph::complete(4).unwrap().to_graph6(), "C~");
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_name("2C4").unwrap();
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap().edges(), g.edges());
        assert!(Graph::from_edge_list("3 1\n0 0\n").is_err());
    }

    #[test]
    fn components_of_unions() {
        assert_eq!(Graph::from_name("3K3").unwrap().components().len(), 3);
        assert!(Graph::from_name("C10(4)").unwrap().is_connected());
    }
}
