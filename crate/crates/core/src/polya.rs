//! Scalar building block of all kernels in this crate:
//! `Pi(omega, lambda) = exp(-gamma lambda^2) prod_k 1/(1 + alpha_k lambda^2)`,
//! its logarithmic derivative, and the elementary bounds attached to it.
//!
//! Everything is evaluated in log-space; the product form only appears in
//! tests as a cross-check, since it underflows for large arguments.

#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::error::{Error, Result};
use crate::omega::OmegaParam;

/// Default series length for [`log_deriv_series`]; combined with the early
/// exit this resolves anything comfortably inside the convergence radius.
pub const DEFAULT_SERIES_TERMS: u32 = 64;

/// `log Pi(omega, lambda) = -gamma lambda^2 - sum_k log(1 + alpha_k lambda^2)`.
pub fn log_eval(omega: &OmegaParam, lambda: f64) -> f64 {
    let l2 = lambda * lambda;
    let mut acc = -omega.gamma() * l2;
    for &a in omega.alpha() {
        acc -= (a * l2).ln_1p();
    }
    acc
}

/// `Pi(omega, lambda)`, always in `(0, 1]`, exactly 1 at `lambda = 0`.
pub fn eval(omega: &OmegaParam, lambda: f64) -> f64 {
    log_eval(omega, lambda).exp()
}

/// Logarithmic derivative in closed form:
/// `Pi'/Pi = -2 gamma lambda - sum_k 2 alpha_k lambda / (1 + alpha_k lambda^2)`.
///
/// Odd in `lambda`, zero at the origin.
pub fn log_deriv(omega: &OmegaParam, lambda: f64) -> f64 {
    let mut acc = -2.0 * omega.gamma() * lambda;
    for &a in omega.alpha() {
        acc -= 2.0 * a * lambda / (1.0 + a * lambda * lambda);
    }
    acc
}

/// Partial sum of the power series of the logarithmic derivative,
/// `-2 (gamma + p_1) lambda + sum_{m >= 2} 2 p_m(-alpha) lambda^{2m-1}`,
/// with `p_m(-alpha) = (-1)^m p_m(alpha)`.
///
/// Only converges for `max(alpha) * lambda^2 < 1`; outside that radius the
/// call fails rather than returning a garbage partial sum. Terms stop early
/// once they drop below `1e-15` of the running sum. This is a diagnostic
/// companion to [`log_deriv`], which is the authoritative value everywhere.
pub fn log_deriv_series(omega: &OmegaParam, lambda: f64, m_max: u32) -> Result<f64> {
    if m_max < 1 {
        return Err(Error::ZeroOrder { what: "series length m_max" });
    }
    // alpha is sorted nonincreasing, so the first entry is the maximum
    let max_alpha = omega.alpha().first().copied().unwrap_or(0.0);
    let l2 = lambda * lambda;
    if max_alpha * l2 >= 1.0 {
        return Err(Error::SeriesDivergent { max_alpha, lambda });
    }

    let p1: f64 = omega.alpha().iter().sum();
    let mut sum = -2.0 * (omega.gamma() + p1) * lambda;
    // running alpha_k^m and lambda^{2m-1}
    let mut powers: alloc::vec::Vec<f64> = omega.alpha().to_vec();
    let mut lambda_pow = lambda;
    let mut sign = -1.0;
    for _ in 2..=m_max {
        for (p, &a) in powers.iter_mut().zip(omega.alpha()) {
            *p *= a;
        }
        lambda_pow *= l2;
        sign = -sign;
        let p_m: f64 = powers.iter().sum();
        let term = 2.0 * sign * p_m * lambda_pow;
        sum += term;
        if term.abs() < 1e-15 * sum.abs() {
            break;
        }
    }
    Ok(sum)
}

/// Curvature at the origin: `Pi''(omega, 0) = -2 ||omega||`.
pub fn second_deriv_at_zero(omega: &OmegaParam) -> f64 {
    -2.0 * omega.norm()
}

/// `2 ||omega|| s^2`, an upper bound for `1 - Pi(omega, s)` valid for all
/// real `s` (it equals `-s^2 Pi''(omega, 0)`).
pub fn one_minus_bound(omega: &OmegaParam, s: f64) -> f64 {
    2.0 * omega.norm() * s * s
}
