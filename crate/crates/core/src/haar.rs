//! Haar-distributed unitary matrices and the Monte Carlo check of the
//! multiplicativity limit
//! `int phi(xi + k1 eta k2*) dk1 dk2 -> phi(xi) phi(eta)` as the dimension
//! grows.
//!
//! Sampling follows the QR construction: orthonormalize a Ginibre matrix and
//! absorb the phases of the triangular factor's diagonal, which makes the
//! law exactly Haar rather than merely approximately invariant.

use num_complex::Complex64;
#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::omega::OmegaParam;
use crate::sampling;
use crate::spherical::{self, MatrixPoint};

/// A Monte Carlo mean with its standard error. Identical inputs (including
/// the seed) reproduce the mean bitwise.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Haar-distributed `n x n` unitary matrix from an explicit generator.
pub fn sample_unitary_rng(n: usize, rng: &mut impl Rng) -> MatrixPoint {
    assert!(n >= 1, "unitary dimension must be at least 1");
    let g = sampling::gaussian_matrix(n, rng);
    let (mut q, r_diag) = linalg::qr_unitary(n, g.entries());
    // absorb the R diagonal phases so the factorization is the canonical one
    for (j, r) in r_diag.iter().enumerate() {
        let mag = r.norm();
        let phase = if mag <= f64::MIN_POSITIVE {
            Complex64::new(1.0, 0.0)
        } else {
            r / mag
        };
        for i in 0..n {
            q[i * n + j] *= phase;
        }
    }
    MatrixPoint::new(n, q).expect("unitary factor entries are finite")
}

/// Haar-distributed unitary for a top-level seed.
pub fn sample_unitary(n: usize, seed: u64) -> MatrixPoint {
    sample_unitary_rng(n, &mut sampling::seeded_rng(seed))
}

/// `xi + k1 eta k2*`, the translated-and-rotated point appearing in the
/// multiplicativity integrand.
pub fn conjugate_translate(
    xi: &MatrixPoint,
    eta: &MatrixPoint,
    k1: &MatrixPoint,
    k2: &MatrixPoint,
) -> Result<MatrixPoint> {
    let rotated = k1.matmul(eta)?.matmul(&k2.adjoint())?;
    xi.add(&rotated)
}

/// Monte Carlo estimate of
/// `int phi_omega(xi + k1 eta k2*) dk1 dk2` over independent Haar pairs in
/// dimension `n` (inputs are zero-padded up to `n`). The caller compares the
/// mean against `phi_omega(xi) * phi_omega(eta)`.
///
/// Each sample draws from its own counter-derived stream, so the estimate is
/// independent of evaluation order.
pub fn multiplicativity_estimate(
    omega: &OmegaParam,
    xi: &MatrixPoint,
    eta: &MatrixPoint,
    n: usize,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if n_samples < 2 {
        return Err(Error::TooFewSamples { got: n_samples });
    }
    let xi = xi.pad_to(n)?;
    let eta = eta.pad_to(n)?;

    // Welford accumulation: a constant integrand (eta = 0, or omega = 0)
    // yields the constant bitwise, with zero standard error.
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for i in 0..n_samples {
        let mut rng = sampling::stream_rng(seed, i as u64);
        let k1 = sample_unitary_rng(n, &mut rng);
        let k2 = sample_unitary_rng(n, &mut rng);
        let point = conjugate_translate(&xi, &eta, &k1, &k2)?;
        let value = spherical::eval(omega, &point);
        let delta = value - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (value - mean);
    }
    let var = m2 / (n_samples - 1) as f64;
    let stderr = (var / n_samples as f64).sqrt();
    Ok(McEstimate { mean, stderr, n_samples, seed })
}
