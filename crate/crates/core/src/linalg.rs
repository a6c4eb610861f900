//! Small dense kernels used by the rest of the crate: eigenvalues of
//! Hermitian matrices by cyclic Jacobi, a Householder QR for unitary
//! factors, and a least-squares solve for the recovery code.
//!
//! Everything here is sequential and allocation-light; matrices in this
//! crate stay far below the sizes where a LAPACK-backed dependency would
//! pay for itself, and keeping the kernels local makes the bitwise
//! reproducibility contract easy to honor.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;

const MAX_JACOBI_SWEEPS: usize = 60;

/// Eigenvalues of a Hermitian matrix (row-major, `n * n` entries), sorted
/// ascending. Only the real diagonal survives; eigenvectors are never formed.
pub(crate) fn hermitian_eigenvalues(n: usize, h: &[Complex64]) -> Vec<f64> {
    debug_assert_eq!(h.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![h[0].re];
    }
    let mut a = h.to_vec();
    let frob: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let off_tol = f64::EPSILON * frob;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a[p * n + q].norm_sqr();
                }
            }
            (2.0 * s).sqrt()
        };
        if off <= off_tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let beta = apq.norm();
                if beta <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / beta;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * beta);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // columns: A <- A J, with J the rotation in the (p, q) plane
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = aip * c - aiq * (s * phase.conj());
                    a[i * n + q] = aip * (s * phase) + aiq * c;
                }
                // rows: A <- J* A
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = apj * c - aqj * (s * phase);
                    a[q * n + j] = apj * (s * phase.conj()) + aqj * c;
                }
                // annihilated pair; keep the matrix exactly Hermitian
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eigs.sort_unstable_by(f64::total_cmp);
    eigs
}

/// Eigenvalues of a real symmetric matrix, ascending. Runs the complex
/// Jacobi on an embedded copy; at the sizes this crate handles the factor
/// of two in arithmetic is irrelevant.
pub(crate) fn symmetric_eigenvalues(n: usize, a: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), n * n);
    let h: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    hermitian_eigenvalues(n, &h)
}

/// Householder QR of a square complex matrix. Returns the unitary factor `Q`
/// (row-major) and the diagonal of `R`.
pub(crate) fn qr_unitary(n: usize, g: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    debug_assert_eq!(g.len(), n * n);
    let mut a = g.to_vec();
    let mut q = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        q[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n {
        let norm_x: f64 = (k..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if norm_x <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = a[k * n + k];
        let phase = if x0.norm() <= f64::MIN_POSITIVE {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        v[k] = x0 + phase * norm_x;
        for i in (k + 1)..n {
            v[i] = a[i * n + k];
        }
        let vnorm2: f64 = (k..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let tau = 2.0 / vnorm2;

        // A <- (I - tau v v*) A on the trailing block
        for j in k..n {
            let mut w = Complex64::new(0.0, 0.0);
            for i in k..n {
                w += v[i].conj() * a[i * n + j];
            }
            let tw = tau * w;
            for i in k..n {
                a[i * n + j] -= tw * v[i];
            }
        }
        // Q <- Q (I - tau v v*)
        for i in 0..n {
            let mut w = Complex64::new(0.0, 0.0);
            for j in k..n {
                w += q[i * n + j] * v[j];
            }
            let tw = tau * w;
            for j in k..n {
                q[i * n + j] -= tw * v[j].conj();
            }
        }
    }

    let r_diag: Vec<Complex64> = (0..n).map(|i| a[i * n + i]).collect();
    (q, r_diag)
}

/// Least-squares solve of an `m x k` real system (`m >= k`) by Householder
/// QR. Returns the coefficient vector and the absolute values of the `R`
/// diagonal (the caller's rank/conditioning diagnostic).
pub(crate) fn lstsq(m: usize, k: usize, a: &[f64], y: &[f64]) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(y.len(), m);
    debug_assert!(m >= k);
    let mut a = a.to_vec();
    let mut y = y.to_vec();
    let mut v = vec![0.0f64; m];

    for col in 0..k {
        let norm_x: f64 = (col..m).map(|i| a[i * k + col] * a[i * k + col]).sum::<f64>().sqrt();
        if norm_x <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = a[col * k + col];
        let sign = if x0 >= 0.0 { 1.0 } else { -1.0 };
        v[col] = x0 + sign * norm_x;
        for i in (col + 1)..m {
            v[i] = a[i * k + col];
        }
        let vnorm2: f64 = (col..m).map(|i| v[i] * v[i]).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let tau = 2.0 / vnorm2;
        for j in col..k {
            let mut w = 0.0;
            for i in col..m {
                w += v[i] * a[i * k + j];
            }
            let tw = tau * w;
            for i in col..m {
                a[i * k + j] -= tw * v[i];
            }
        }
        let mut w = 0.0;
        for i in col..m {
            w += v[i] * y[i];
        }
        let tw = tau * w;
        for i in col..m {
            y[i] -= tw * v[i];
        }
    }

    let r_diag: Vec<f64> = (0..k).map(|i| a[i * k + i].abs()).collect();
    let mut x = vec![0.0f64; k];
    for i in (0..k).rev() {
        let mut s = y[i];
        for j in (i + 1)..k {
            s -= a[i * k + j] * x[j];
        }
        let d = a[i * k + i];
        x[i] = if d.abs() <= f64::MIN_POSITIVE { 0.0 } else { s / d };
    }
    (x, r_diag)
}
