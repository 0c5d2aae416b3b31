use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{Graph, Product};
use crate::error::{Error, Result};
use crate::locality::linsolve;

pub const SPECTRAL_TOLERANCE: f64 = 1e-8;

/// Distinct adjacency eigenvalues with multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// Every eigenvalue is an integer, confirmed by exact rank computations.
    pub integral: bool,
}

impl Spectrum {
    fn contains_zero(&self) -> bool {
        self.values.iter().any(|v| v.abs() <= SPECTRAL_TOLERANCE)
    }

    fn differences(&self) -> Vec<f64> {
        let mut d = Vec::new();
        for a in &self.values {
            for b in &self.values {
                if (a - b).abs() > SPECTRAL_TOLERANCE {
                    d.push(a - b);
                }
            }
        }
        d
    }

    fn ratios(&self) -> Vec<f64> {
        let mut r = Vec::new();
        for a in &self.values {
            for b in &self.values {
                let q = a / b;
                if (q - 1.0).abs() > SPECTRAL_TOLERANCE {
                    r.push(q);
                }
            }
        }
        r
    }
}

pub fn spectrum(g: &Graph) -> Spectrum {
    let n = g.n();
    let a = DMatrix::from_fn(n, n, |i, j| if g.adjacent(i, j) { 1.0 } else { 0.0 });
    let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let mut values: Vec<f64> = Vec::new();
    let mut multiplicities = Vec::new();
    for v in ev {
        match values.last() {
            Some(&last) if (v - last).abs() <= SPECTRAL_TOLERANCE => *multiplicities.last_mut().unwrap() += 1,
            _ => {
                values.push(v);
                multiplicities.push(1);
            }
        }
    }
    // Snap clusters near integers when `A − kI` has the matching exact nullity.
    let adj = g.adjacency();
    let mut integral = true;
    for (v, &mult) in values.iter_mut().zip(&multiplicities) {
        let k = v.round();
        if (*v - k).abs() <= 1e-6 && nullity(&adj, k as i64) == mult {
            *v = k;
        } else {
            integral = false;
        }
    }
    Spectrum { values, multiplicities, integral }
}

fn nullity(adj: &[Vec<i64>], k: i64) -> usize {
    let n = adj.len();
    let m: Vec<Vec<_>> = (0..n)
        .map(|i| (0..n).map(|j| linsolve::rational(adj[i][j] - if i == j { k } else { 0 })).collect())
        .collect();
    n - linsolve::rank(&m)
}

fn near(a: f64, b: f64, exact: bool) -> bool {
    if exact {
        a == b
    } else {
        (a - b).abs() <= SPECTRAL_TOLERANCE
    }
}

/// Spectral condition under which the product inherits the absence of
/// nonlocal symmetry from its factors. `Ok(true)` means the condition holds.
///
/// Cartesian: no nonzero eigenvalue difference is shared. Tensor: neither
/// spectrum contains 0 and no ratio other than 1 is shared.
pub fn spectral_product_check(g: &Graph, h: &Graph, kind: Product) -> Result<bool> {
    for x in [g, h] {
        if !x.is_connected() || !x.is_regular() {
            return Err(Error::NotConnectedRegular(x.to_string()));
        }
    }
    let (sg, sh) = (spectrum(g), spectrum(h));
    let exact = sg.integral && sh.integral;
    Ok(match kind {
        Product::Cartesian => {
            let dh = sh.differences();
            !sg.differences().iter().any(|a| dh.iter().any(|b| near(*a, *b, exact)))
        }
        Product::Tensor => {
            if sg.contains_zero() || sh.contains_zero() {
                false
            } else {
                let rh = sh.ratios();
                !sg.ratios().iter().any(|a| rh.iter().any(|b| near(*a, *b, exact)))
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectra_of_small_graphs() {
        let k4 = spectrum(&Graph::complete(4).unwrap());
        assert_eq!((k4.values.clone(), k4.multiplicities.clone(), k4.integral), (vec![-1.0, 3.0], vec![3, 1], true));
        let k2 = spectrum(&Graph::complete(2).unwrap());
        assert_eq!(k2.values, vec![-1.0, 1.0]);
        let c5 = spectrum(&Graph::cycle(5).unwrap());
        assert!(!c5.integral);
        assert_eq!(c5.multiplicities, vec![2, 2, 1]);
    }

    #[test]
    fn product_criteria() {
        let k4 = Graph::complete(4).unwrap();
        let k2 = Graph::complete(2).unwrap();
        assert!(spectral_product_check(&k4, &k2, Product::Tensor).unwrap());
        assert!(!spectral_product_check(&k2, &k2, Product::Cartesian).unwrap());
        let two_k2 = Graph::from_name("2K2").unwrap();
        assert!(matches!(spectral_product_check(&two_k2, &k2, Product::Tensor), Err(Error::NotConnectedRegular(_))));
    }
}
