//! Deterministic random generators used by the Monte Carlo verification
//! code and the test suites.
//!
//! All randomness flows from explicit `u64` seeds through ChaCha streams;
//! there is no ambient entropy anywhere in the crate. [`stream_rng`] derives
//! an independent generator per (seed, counter) pair, so sample streams stay
//! identical no matter how work is scheduled.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::omega::OmegaParam;
use crate::spherical::MatrixPoint;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Generator for a top-level seed.
pub fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Counter-based per-sample generator: `(seed, index)` fully determines the
/// stream, independently of evaluation order.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha12Rng {
    let mut state = seed;
    let s0 = splitmix64(&mut state);
    let mut mixed = s0 ^ index.wrapping_mul(0xD1B54A32D192ED03);
    ChaCha12Rng::seed_from_u64(splitmix64(&mut mixed))
}

/// Standard complex Gaussian with `E|z|^2 = 1`, via Box-Muller.
pub fn standard_complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let u1 = 1.0 - rng.gen::<f64>(); // in (0, 1], keeps the log finite
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * core::f64::consts::PI * u2;
    Complex64::new(r * theta.cos(), r * theta.sin()) * core::f64::consts::FRAC_1_SQRT_2
}

/// Square matrix of independent standard complex Gaussians (Ginibre).
pub fn gaussian_matrix(n: usize, rng: &mut impl Rng) -> MatrixPoint {
    let data: Vec<Complex64> = (0..n * n).map(|_| standard_complex_gaussian(rng)).collect();
    MatrixPoint::new(n, data).expect("gaussian entries are finite")
}

/// Random parameter with up to `max_atoms` weights and `||omega||` uniform
/// in `(0, norm_cap]`. Never returns the zero parameter.
pub fn random_omega(rng: &mut impl Rng, max_atoms: usize, norm_cap: f64) -> OmegaParam {
    let k = rng.gen_range(0..=max_atoms);
    let mut alpha: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
    let mut gamma = if rng.gen::<f64>() < 0.25 { 0.0 } else { rng.gen::<f64>() };
    let total: f64 = alpha.iter().sum::<f64>() + gamma;
    let target = norm_cap * (1.0 - rng.gen::<f64>());
    if total > 0.0 {
        let scale = target / total;
        for a in alpha.iter_mut() {
            *a *= scale;
        }
        gamma *= scale;
    } else {
        gamma = target;
    }
    OmegaParam::new(alpha, gamma).expect("sampled parameters are valid")
}

/// Diagonal point with entries drawn from `{0, +-0.5, +-1, +-2}`.
pub fn random_diag_point(n: usize, rng: &mut impl Rng) -> MatrixPoint {
    const ENTRIES: [f64; 7] = [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0];
    let d: Vec<f64> = (0..n).map(|_| ENTRIES[rng.gen_range(0..ENTRIES.len())]).collect();
    MatrixPoint::from_diag(&d).expect("diagonal entries are finite")
}

/// Dense Gaussian point rescaled so that its Hilbert-Schmidt norm does not
/// exceed `hs_cap`.
pub fn random_dense_point(n: usize, hs_cap: f64, rng: &mut impl Rng) -> MatrixPoint {
    let m = gaussian_matrix(n, rng);
    let hs = m.hs_norm();
    if hs > hs_cap {
        m.scale(hs_cap * rng.gen::<f64>() / hs)
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_rng_is_reproducible_and_index_sensitive() {
        let a: u64 = stream_rng(7, 0).gen();
        let b: u64 = stream_rng(7, 0).gen();
        let c: u64 = stream_rng(7, 1).gen();
        let d: u64 = stream_rng(8, 0).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn complex_gaussian_moments() {
        let mut rng = seeded_rng(5);
        let n = 20_000;
        let mut mean = Complex64::new(0.0, 0.0);
        let mut second = 0.0;
        for _ in 0..n {
            let z = standard_complex_gaussian(&mut rng);
            mean += z;
            second += z.norm_sqr();
        }
        mean /= n as f64;
        second /= n as f64;
        assert!(mean.norm() < 0.02);
        assert!((second - 1.0).abs() < 0.03);
    }

    #[test]
    fn random_omega_respects_cap_and_is_nonzero() {
        let mut rng = seeded_rng(6);
        for _ in 0..200 {
            let w = random_omega(&mut rng, 5, 3.0);
            assert!(w.norm() > 0.0 && w.norm() <= 3.0);
        }
    }

    #[test]
    fn dense_point_respects_cap() {
        let mut rng = seeded_rng(7);
        for _ in 0..50 {
            let p = random_dense_point(4, 2.0, &mut rng);
            assert!(p.hs_norm() <= 2.0 + 1e-12);
        }
    }
}
