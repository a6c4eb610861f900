//! Nonnegative least squares by the Lawson-Hanson active-set method.
//!
//! Deterministic given the input order: the entering variable is always the
//! one with the largest dual value (lowest index on ties), and subproblems
//! are solved by Householder QR. Sized for the small dense designs the
//! recovery code produces.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::linalg;

pub(crate) struct NnlsSolution {
    pub x: Vec<f64>,
    pub residual_l2: f64,
}

/// Minimizes `||a x - y||_2` subject to `x >= 0`. `a` is `m x k` row-major.
pub(crate) fn solve(m: usize, k: usize, a: &[f64], y: &[f64]) -> NnlsSolution {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(y.len(), m);

    let mut x = vec![0.0f64; k];
    let mut passive = vec![false; k];
    // columns rejected as numerically dependent on the current passive set;
    // reconsidered once the passive set changes
    let mut excluded = vec![false; k];

    // stationarity threshold relative to the initial dual scale
    let dual_scale = (0..k)
        .map(|j| (0..m).map(|i| a[i * k + j] * y[i]).sum::<f64>().abs())
        .fold(1.0f64, f64::max);
    let w_tol = 1e-12 * dual_scale;

    let max_outer = 6 * (k + 1);
    for _ in 0..max_outer {
        // dual vector w = a^T (y - a x)
        let mut residual = vec![0.0f64; m];
        for i in 0..m {
            let mut s = y[i];
            for j in 0..k {
                s -= a[i * k + j] * x[j];
            }
            residual[i] = s;
        }
        let mut best: Option<(usize, f64)> = None;
        for j in 0..k {
            if passive[j] || excluded[j] {
                continue;
            }
            let wj: f64 = (0..m).map(|i| a[i * k + j] * residual[i]).sum();
            match best {
                Some((_, wb)) if wj <= wb => {}
                _ => {
                    if wj > w_tol {
                        best = Some((j, wj));
                    }
                }
            }
        }
        let Some((enter, _)) = best else { break };
        passive[enter] = true;

        // inner loop: restrict to the passive set, back off along the
        // segment to the previous iterate while any coefficient would
        // leave the feasible region
        for _ in 0..=k {
            let cols: Vec<usize> = (0..k).filter(|&j| passive[j]).collect();
            let sub: Vec<f64> = (0..m)
                .flat_map(|i| cols.iter().map(move |&j| a[i * k + j]))
                .collect();
            let (z, r_diag) = linalg::lstsq(m, cols.len(), &sub, y);

            let r_max = r_diag.iter().fold(0.0f64, |acc, &d| acc.max(d));
            let degenerate = r_diag.iter().any(|&d| d <= 1e-12 * r_max.max(1.0));
            if degenerate {
                // entering column is numerically dependent on the passive
                // set; drop it until the set changes again
                passive[enter] = false;
                excluded[enter] = true;
                break;
            }

            if z.iter().all(|&v| v > 0.0) {
                for (idx, &j) in cols.iter().enumerate() {
                    x[j] = z[idx];
                }
                excluded.iter_mut().for_each(|e| *e = false);
                break;
            }

            let mut alpha = f64::INFINITY;
            for (idx, &j) in cols.iter().enumerate() {
                if z[idx] <= 0.0 {
                    let denom = x[j] - z[idx];
                    let step = if denom > 0.0 { x[j] / denom } else { 0.0 };
                    if step < alpha {
                        alpha = step;
                    }
                }
            }
            for (idx, &j) in cols.iter().enumerate() {
                x[j] += alpha * (z[idx] - x[j]);
            }
            for &j in &cols {
                if x[j] <= f64::EPSILON * dual_scale || !x[j].is_finite() {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
        }
        if !passive[enter] && x[enter] == 0.0 {
            // entering failed outright; do not pick it again immediately
            excluded[enter] = true;
        }
    }

    let mut rss = 0.0f64;
    for i in 0..m {
        let mut s = y[i];
        for j in 0..k {
            s -= a[i * k + j] * x[j];
        }
        rss += s * s;
    }
    NnlsSolution { x, residual_l2: rss.sqrt() }
}
