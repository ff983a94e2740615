//! Perron root of a nonnegative matrix.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::types::tarjan_scc;

/// Perron root estimate with Collatz-Wielandt bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralEstimate {
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    /// Stop once `upper - lower <= tol * max(1, upper)`.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iterations: 200_000,
        }
    }
}

pub fn max_column_sum(a: &[Vec<f64>]) -> f64 {
    let d = a.len();
    (0..d).map(|j| a.iter().map(|row| row[j]).sum::<f64>()).fold(0.0, f64::max)
}

pub fn spectral_radius(a: &[Vec<f64>]) -> Result<SpectralEstimate> {
    spectral_radius_with(a, SpectralOptions::default())
}

/// The spectral radius is the largest Perron root over the irreducible
/// diagonal blocks. On each block, power iteration runs on `B + I`, which is
/// primitive, and `min/max_i (Bx)_i / x_i` bracket the root.
pub fn spectral_radius_with(a: &[Vec<f64>], opts: SpectralOptions) -> Result<SpectralEstimate> {
    let d = a.len();
    if a.iter().any(|row| row.len() != d || row.iter().any(|&x| !x.is_finite() || x < 0.0)) {
        return Err(Error::InvalidMatrix);
    }
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|row| (0..d).filter(|&j| row[j] > 0.0).collect())
        .collect();
    let mut best = SpectralEstimate {
        radius: 0.0,
        lower: 0.0,
        upper: 0.0,
        iterations: 0,
        converged: true,
    };
    for comp in tarjan_scc(&adj) {
        let est = if comp.len() == 1 {
            let x = a[comp[0]][comp[0]];
            SpectralEstimate {
                radius: x,
                lower: x,
                upper: x,
                iterations: 0,
                converged: true,
            }
        } else {
            block_root(a, &comp, opts)
        };
        best.iterations += est.iterations;
        best.converged &= est.converged;
        best.radius = best.radius.max(est.radius);
        best.lower = best.lower.max(est.lower);
        best.upper = best.upper.max(est.upper);
    }
    let cap = max_column_sum(a);
    assert!(
        best.radius <= cap * (1.0 + 1e-12) + 1e-300,
        "spectral radius {} above the maximal column sum {cap}",
        best.radius
    );
    Ok(best)
}

fn block_root(a: &[Vec<f64>], comp: &[usize], opts: SpectralOptions) -> SpectralEstimate {
    let b: Vec<Vec<f64>> = comp.iter().map(|&i| comp.iter().map(|&j| a[i][j]).collect()).collect();
    let d = comp.len();
    let mut x = vec![1.0 / d as f64; d];
    let mut y = vec![0.0; d];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for it in 1..=opts.max_iterations {
        for (yi, row) in y.iter_mut().zip(&b) {
            *yi = row.iter().zip(&x).map(|(p, q)| p * q).sum();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter_mut().zip(&x) {
            // x stays positive for the primitive matrix B + I
            let r = *yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
            *yi += xi;
        }
        lower = f64::max(lower, lo);
        upper = f64::min(upper, hi);
        let norm: f64 = y.iter().sum();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        if upper - lower <= opts.tol * upper.max(1.0) {
            return SpectralEstimate {
                radius: 0.5 * (lower + upper),
                lower,
                upper,
                iterations: it,
                converged: true,
            };
        }
    }
    SpectralEstimate {
        radius: 0.5 * (lower + upper),
        lower,
        upper,
        iterations: opts.max_iterations,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(spectral_radius(&id).unwrap().radius, 1.0);
        let nil = vec![vec![0.0, 1.0], vec![0.0, 0.0]];
        assert_eq!(spectral_radius(&nil).unwrap().radius, 0.0);
        // eigenvalues (5 ± sqrt 33) / 2
        let m = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let est = spectral_radius(&m).unwrap();
        assert!((est.radius - (5.0 + 33f64.sqrt()) / 2.0).abs() < 1e-10);
        assert!(est.converged && est.lower <= est.radius && est.radius <= est.upper);
        // periodic block: eigenvalues ±1
        let p = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!((spectral_radius(&p).unwrap().radius - 1.0).abs() < 1e-12);
        assert_eq!(spectral_radius(&[vec![1.0, -1.0], vec![0.0, 0.0]]), Err(Error::InvalidMatrix));
    }

    #[test]
    fn iteration_cap_is_reported() {
        let m = vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0], vec![1e-9, 0.0, 1.0]];
        let est = spectral_radius_with(&m, SpectralOptions { tol: 1e-15, max_iterations: 3 }).unwrap();
        assert!(!est.converged);
        assert_eq!(est.iterations, 3);
    }
}
