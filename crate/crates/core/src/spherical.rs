//! Evaluation of spherical functions on finite complex matrices.
//!
//! A matrix is reduced to its singular values; the spherical function is the
//! product of the scalar [`crate::polya`] factors over them, accumulated in
//! log-space. This is the unique extension of the diagonal formulas that is
//! invariant under `xi -> u xi v*` for unitary `u`, `v`, and it makes
//! `tr(xi^2)` mean `sum_j sigma_j^2 = |||xi|||^2` throughout.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::omega::OmegaParam;

/// A finite square complex matrix, the evaluation point of every kernel in
/// this crate. Entries are validated finite on construction and immutable
/// afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPoint {
    n: usize,
    data: Vec<Complex64>,
}

impl MatrixPoint {
    /// Builds an `n x n` matrix from row-major entries.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(Error::BadMatrixShape { n, len: data.len() });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: idx / n, col: idx % n });
            }
        }
        Ok(MatrixPoint { n, data })
    }

    /// The zero matrix of dimension `n >= 1`.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        MatrixPoint { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    /// Real diagonal matrix `diag(d)`.
    pub fn from_diag(d: &[f64]) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(Error::BadMatrixShape { n: 0, len: 0 });
        }
        let mut m = MatrixPoint::zero(n);
        for (i, &x) in d.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: i });
            }
            m.data[i * n + i] = Complex64::new(x, 0.0);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// Hilbert-Schmidt (Frobenius) norm `(sum |xi_ij|^2)^{1/2}`.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The invariant extension of `tr(xi^2)`: `sum_j sigma_j^2`, which is
    /// exactly the squared Hilbert-Schmidt norm.
    pub fn trace_square(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn add(&self, other: &MatrixPoint) -> Result<MatrixPoint> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(MatrixPoint { n: self.n, data })
    }

    pub fn sub(&self, other: &MatrixPoint) -> Result<MatrixPoint> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(MatrixPoint { n: self.n, data })
    }

    pub fn scale(&self, t: f64) -> MatrixPoint {
        MatrixPoint { n: self.n, data: self.data.iter().map(|z| z * t).collect() }
    }

    pub fn neg(&self) -> MatrixPoint {
        self.scale(-1.0)
    }

    pub fn matmul(&self, other: &MatrixPoint) -> Result<MatrixPoint> {
        self.check_dim(other)?;
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for l in 0..n {
                let ail = self.data[i * n + l];
                if ail == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += ail * other.data[l * n + j];
                }
            }
        }
        Ok(MatrixPoint { n, data })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> MatrixPoint {
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        MatrixPoint { n, data }
    }

    /// Embeds into a larger dimension, top-left block, zeros elsewhere.
    pub fn pad_to(&self, n: usize) -> Result<MatrixPoint> {
        if n < self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: n });
        }
        if n == self.n {
            return Ok(self.clone());
        }
        let mut m = MatrixPoint::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.data[i * n + j] = self.data[i * self.n + j];
            }
        }
        Ok(m)
    }

    fn check_dim(&self, other: &MatrixPoint) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    /// Eigenvalues of `xi* xi` (squared singular values), ascending,
    /// clamped at zero.
    pub(crate) fn gram_spectrum(&self) -> Vec<f64> {
        let n = self.n;
        let mut h = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let mut s = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    s += self.data[l * n + i].conj() * self.data[l * n + j];
                }
                h[i * n + j] = s;
                if i != j {
                    h[j * n + i] = s.conj();
                } else {
                    h[i * n + i] = Complex64::new(s.re, 0.0);
                }
            }
        }
        let mut eigs = linalg::hermitian_eigenvalues(n, &h);
        for e in eigs.iter_mut() {
            if *e < 0.0 {
                *e = 0.0;
            }
        }
        eigs
    }
}

/// Nonincreasing singular values of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    /// Singular values, sorted nonincreasing, all nonnegative.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Singular values of `xi`, computed through the spectrum of `xi* xi`.
/// Invariant under `xi -> u xi v*` for unitary `u`, `v`.
pub fn singular_values(xi: &MatrixPoint) -> SingularSpectrum {
    let mut values: Vec<f64> = xi.gram_spectrum().into_iter().map(|e| e.sqrt()).collect();
    values.reverse();
    SingularSpectrum { values }
}

/// `log phi_omega(xi) = -gamma |||xi|||^2 - sum_k sum_j log(1 + alpha_k sigma_j^2)`.
pub fn log_eval(omega: &OmegaParam, xi: &MatrixPoint) -> f64 {
    let spectrum = xi.gram_spectrum();
    let mut acc = -omega.gamma() * xi.trace_square();
    for &a in omega.alpha() {
        for &s in &spectrum {
            acc -= (a * s).ln_1p();
        }
    }
    acc
}

/// The spherical function `phi_omega(xi)`, in `(0, 1]`, exactly 1 at `xi = 0`.
pub fn eval(omega: &OmegaParam, xi: &MatrixPoint) -> f64 {
    log_eval(omega, xi).exp()
}

/// Expansion remainder `R(omega, xi) = phi_omega(xi) - 1 + ||omega|| tr(xi^2)`,
/// with `phi - 1` accumulated through `exp_m1` so that the small-parameter
/// regime keeps full relative accuracy.
pub fn remainder(omega: &OmegaParam, xi: &MatrixPoint) -> f64 {
    log_eval(omega, xi).exp_m1() + omega.norm() * xi.trace_square()
}

/// Explicit upper bound for `|R(omega, xi)|`, valid on
/// `||omega|| < min(1 / |||xi|||^2, 1)`:
/// `(exp(B) + |||xi|||^4 / (1 - ||omega|| |||xi|||^2)) ||omega||^2` with
/// `B = |||xi|||^2 + ||omega|| |||xi|||^4 / (1 - ||omega|| |||xi|||^2)`.
pub fn remainder_bound(omega: &OmegaParam, xi: &MatrixPoint) -> Result<f64> {
    let w = omega.norm();
    let t = xi.trace_square();
    let limit = if t > 0.0 { (1.0 / t).min(1.0) } else { 1.0 };
    if w >= limit {
        return Err(Error::OutsideExpansionRegion { omega_norm: w, limit });
    }
    let denom = 1.0 - w * t;
    let b = t + w * t * t / denom;
    Ok((b.exp() + t * t / denom) * w * w)
}

/// The constant `C` with `|1 - phi_omega(xi)| <= C ||omega||` whenever
/// `||omega|| <= eps` and `|||xi||| <= rho`; requires
/// `0 < eps < min(1/rho^2, 1)`.
pub fn linear_bound_constant(rho: f64, eps: f64) -> Result<f64> {
    let ok = rho > 0.0
        && rho.is_finite()
        && eps > 0.0
        && eps < (1.0 / (rho * rho)).min(1.0);
    if !ok {
        return Err(Error::BadLinearBoundParams { rho, eps });
    }
    let rho2 = rho * rho;
    let c1 = rho2 + eps * rho2 * rho2 / (1.0 - eps * rho2);
    Ok(c1 + eps * c1.exp())
}
