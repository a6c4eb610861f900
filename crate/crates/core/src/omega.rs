//! Canonical parameter points: a summable weight sequence plus a drift.
//!
//! A parameter `omega = (alpha, gamma)` consists of finitely many strictly
//! positive weights `alpha` (stored nonincreasing) and a drift `gamma >= 0`.
//! Infinite summable sequences are represented by truncations; see
//! [`truncation_error_bound`] for the cost of dropping a tail.

use alloc::vec::Vec;

#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::error::{Error, Result};

/// A canonical parameter point.
///
/// Two raw inputs that differ only by permutation and zero entries
/// canonicalize to the same value, and equality is exact componentwise
/// equality of canonical forms.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaParam {
    alpha: Vec<f64>,
    gamma: f64,
}

impl OmegaParam {
    /// Canonicalizes raw input: validates entries, strips zeros, sorts the
    /// weights nonincreasing.
    pub fn new(raw_alpha: Vec<f64>, gamma: f64) -> Result<Self> {
        for (index, &value) in raw_alpha.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidAlpha { index, value });
            }
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidGamma { value: gamma });
        }
        let mut alpha: Vec<f64> = raw_alpha.into_iter().filter(|&a| a > 0.0).collect();
        alpha.sort_unstable_by(|a, b| b.total_cmp(a));
        Ok(OmegaParam { alpha, gamma })
    }

    /// The zero parameter (empty weights, zero drift).
    pub fn zero() -> Self {
        OmegaParam { alpha: Vec::new(), gamma: 0.0 }
    }

    /// The weights, sorted nonincreasing, all strictly positive.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_empty() && self.gamma == 0.0
    }

    /// `||omega|| = p_1(alpha) + gamma`.
    pub fn norm(&self) -> f64 {
        self.alpha.iter().sum::<f64>() + self.gamma
    }

    /// Newton power sum `p_m(alpha) = sum_k alpha_k^m`, `m >= 1`.
    pub fn power_sum(&self, m: u32) -> Result<f64> {
        if m < 1 {
            return Err(Error::ZeroOrder { what: "power sum order m" });
        }
        Ok(self.alpha.iter().map(|a| a.powi(m as i32)).sum())
    }

    /// `L_f(omega) = gamma f(0) + sum_j alpha_j f(alpha_j)`.
    pub fn l_functional(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.gamma * f(0.0) + self.alpha.iter().map(|&a| a * f(a)).sum::<f64>()
    }

    /// Moment of the spectral measure attached to this parameter:
    /// `gamma + p_1` for `m = 0`, `p_{m+1}` for `m >= 1`.
    pub fn sigma_moment(&self, m: u32) -> f64 {
        if m == 0 {
            self.gamma + self.alpha.iter().sum::<f64>()
        } else {
            // saturating keeps the order >= 2, always valid
            self.power_sum(m.saturating_add(1)).unwrap()
        }
    }
}

/// Upper bound on the change of `|log Pi(omega, lambda)|` when a weight tail
/// of total mass `tail_mass` is dropped: `tail_mass * lambda^2`, from
/// `log(1 + x) <= x`.
pub fn truncation_error_bound(tail_mass: f64, lambda: f64) -> f64 {
    debug_assert!(tail_mass >= 0.0);
    tail_mass * lambda * lambda
}
