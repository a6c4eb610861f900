//! Spectral certification of positive and negative type on finite point
//! sets.
//!
//! For an invariant kernel `f` the translation Gram matrix is
//! `G_ij = f(xi_i - xi_j)`; positive type means `G` is positive
//! semidefinite. Negative type constrains the quadratic form to the
//! zero-sum subspace, which the centering projector `P = I - J/N` turns
//! into an ordinary eigenvalue test on `P G P`. These are sampled
//! certificates on the given points, not proofs.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::spherical::MatrixPoint;

/// Outcome of a spectral definiteness check.
///
/// `gram` holds the matrix whose spectrum was examined: the Gram matrix
/// itself for positive type, the centered `P G P` for negative type.
#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    pub size: usize,
    pub gram: Vec<f64>,
    /// Eigenvalues sorted nondecreasing.
    pub eigenvalues: Vec<f64>,
    pub min_eig: f64,
    pub max_eig: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Translation Gram matrix `G_ij = f(xi_i - xi_j)`, symmetrized after
/// evaluation. All kernels in this crate are even, so the symmetrization
/// only removes roundoff.
pub fn gram_matrix(
    f: impl Fn(&MatrixPoint) -> f64,
    points: &[MatrixPoint],
) -> Result<Vec<f64>> {
    let n_points = points.len();
    if n_points == 0 {
        return Err(Error::EmptyPoints);
    }
    let dim = points[0].dim();
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
        }
    }
    let mut g = vec![0.0f64; n_points * n_points];
    for i in 0..n_points {
        for j in 0..n_points {
            g[i * n_points + j] = f(&points[i].sub(&points[j])?);
        }
    }
    for i in 0..n_points {
        for j in (i + 1)..n_points {
            let avg = 0.5 * (g[i * n_points + j] + g[j * n_points + i]);
            g[i * n_points + j] = avg;
            g[j * n_points + i] = avg;
        }
    }
    Ok(g)
}

fn spectral_scale(g: &[f64]) -> f64 {
    g.iter().fold(1.0f64, |acc, &x| acc.max(x.abs()))
}

fn report(size: usize, gram: Vec<f64>, tolerance: f64, pass: impl Fn(f64, f64) -> bool) -> GramReport {
    let eigenvalues = linalg::symmetric_eigenvalues(size, &gram);
    let min_eig = eigenvalues[0];
    let max_eig = eigenvalues[size - 1];
    let verdict = pass(min_eig, max_eig);
    GramReport { size, gram, eigenvalues, min_eig, max_eig, tolerance, pass: verdict }
}

/// Positive-type check: passes iff the smallest Gram eigenvalue is at least
/// `-tol * scale`, with `scale = max(1, max |G_ij|)`.
pub fn positive_type_check(
    f: impl Fn(&MatrixPoint) -> f64,
    points: &[MatrixPoint],
    tol: f64,
) -> Result<GramReport> {
    let g = gram_matrix(f, points)?;
    let scale = spectral_scale(&g);
    Ok(report(points.len(), g, tol, |min_eig, _| min_eig >= -tol * scale))
}

/// Negative-type check: examines `P G P` with the centering projector
/// `P = I - J/N`; passes iff its largest eigenvalue is at most
/// `tol * scale`, with `scale = max(1, max |G_ij|)` of the original Gram.
pub fn negative_type_check(
    psi: impl Fn(&MatrixPoint) -> f64,
    points: &[MatrixPoint],
    tol: f64,
) -> Result<GramReport> {
    let g = gram_matrix(psi, points)?;
    let n = points.len();
    let scale = spectral_scale(&g);

    // double centering: (PGP)_ij = G_ij - rowmean_i - rowmean_j + totalmean
    let mut row_mean = vec![0.0f64; n];
    for i in 0..n {
        row_mean[i] = (0..n).map(|j| g[i * n + j]).sum::<f64>() / n as f64;
    }
    let total_mean = row_mean.iter().sum::<f64>() / n as f64;
    let mut centered = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            centered[i * n + j] = g[i * n + j] - row_mean[i] - row_mean[j] + total_mean;
        }
    }
    Ok(report(n, centered, tol, |_, max_eig| max_eig <= tol * scale))
}

/// Schoenberg criterion: one positive-type check of `exp(-t psi)` per grid
/// value. `psi` is of negative type iff all of them pass (for every `t`,
/// which the grid samples).
pub fn schoenberg_check(
    psi: impl Fn(&MatrixPoint) -> f64,
    points: &[MatrixPoint],
    t_grid: &[f64],
    tol: f64,
) -> Result<Vec<GramReport>> {
    for (index, &t) in t_grid.iter().enumerate() {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::NonPositiveT { index, value: t });
        }
    }
    t_grid
        .iter()
        .map(|&t| positive_type_check(|xi| (-t * psi(xi)).exp(), points, tol))
        .collect()
}
