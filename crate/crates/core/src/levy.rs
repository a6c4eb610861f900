//! Discrete mixing measures, the forward maps they induce (Bochner averages
//! of spherical functions, negative-type functions from a drift plus a jump
//! measure), and desk-scale inverse recovery of the drift and the measure.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // needed by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::nnls;
use crate::omega::OmegaParam;
use crate::spherical::{self, MatrixPoint};

/// Finitely many weighted atoms on the parameter space. Atoms with identical
/// canonical parameters are merged (weights summed) on construction, so the
/// representation of a measure is unique.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOmegaMeasure {
    atoms: Vec<(OmegaParam, f64)>,
}

impl DiscreteOmegaMeasure {
    pub fn new(atoms: Vec<(OmegaParam, f64)>) -> Result<Self> {
        for (index, (_, w)) in atoms.iter().enumerate() {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidWeight { index, value: *w });
            }
        }
        let mut merged: Vec<(OmegaParam, f64)> = Vec::with_capacity(atoms.len());
        for (omega, w) in atoms {
            match merged.iter_mut().find(|(o, _)| *o == omega) {
                Some((_, acc)) => *acc += w,
                None => merged.push((omega, w)),
            }
        }
        Ok(DiscreteOmegaMeasure { atoms: merged })
    }

    pub fn empty() -> Self {
        DiscreteOmegaMeasure { atoms: Vec::new() }
    }

    pub fn atoms(&self) -> &[(OmegaParam, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    /// `sum_m w_m ||omega_m|| / (1 + ||omega_m||)`, the Lévy integrability
    /// functional. Fails if any atom sits at the zero parameter.
    pub fn integrability_functional(&self) -> Result<f64> {
        let mut acc = 0.0;
        for (index, (omega, w)) in self.atoms.iter().enumerate() {
            let norm = omega.norm();
            if norm == 0.0 {
                return Err(Error::AtomAtZero { index });
            }
            acc += w * norm / (1.0 + norm);
        }
        Ok(acc)
    }
}

/// Bochner average `sum_m w_m phi_{omega_m}(xi)` of a probability mixture;
/// the weights must sum to 1 within `1e-12`.
pub fn bochner_forward(mu: &DiscreteOmegaMeasure, xi: &MatrixPoint) -> Result<f64> {
    let total = mu.total_mass();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightsNotNormalized { total });
    }
    Ok(mu
        .atoms()
        .iter()
        .map(|(omega, w)| w * spherical::eval(omega, xi))
        .sum())
}

/// The data of a drift-plus-jumps representation: a constant `psi0 >= 0`,
/// a quadratic drift coefficient `A >= 0`, and a discrete measure off the
/// zero parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyTriple {
    psi0: f64,
    drift: f64,
    nu: DiscreteOmegaMeasure,
}

impl LevyTriple {
    pub fn new(psi0: f64, drift: f64, nu: DiscreteOmegaMeasure) -> Result<Self> {
        if !psi0.is_finite() || psi0 < 0.0 {
            return Err(Error::InvalidTriple { field: "psi0", value: psi0 });
        }
        if !drift.is_finite() || drift < 0.0 {
            return Err(Error::InvalidTriple { field: "A", value: drift });
        }
        // also rejects atoms at zero
        let integrability = nu.integrability_functional()?;
        debug_assert!(integrability.is_finite());
        Ok(LevyTriple { psi0, drift, nu })
    }

    pub fn psi0(&self) -> f64 {
        self.psi0
    }

    /// The drift coefficient `A`.
    pub fn drift(&self) -> f64 {
        self.drift
    }

    pub fn nu(&self) -> &DiscreteOmegaMeasure {
        &self.nu
    }
}

/// Evaluates the negative-type function of a triple:
/// `psi(xi) = psi0 + A tr(xi^2) + sum_m w_m (1 - phi_{omega_m}(xi))`.
pub fn lk_forward(triple: &LevyTriple, xi: &MatrixPoint) -> f64 {
    let jumps: f64 = triple
        .nu
        .atoms()
        .iter()
        .map(|(omega, w)| w * (-spherical::log_eval(omega, xi).exp_m1()))
        .sum();
    triple.psi0 + triple.drift * xi.trace_square() + jumps
}

/// Estimates the drift `A = lim_{s->inf} psi(s xi0)/s^2` from evaluations
/// along an increasing grid, where `xi0 = diag(1, 0, ..., 0)` in dimension
/// `n`. Fits `g(s) = A + c/s^2` on the two largest grid points and clamps
/// the result at zero.
///
/// The grid needs at least three points, strictly increasing, with the
/// largest at least 10. For a genuine negative-type `psi` the profile
/// `g(s)` is nonincreasing; a clear increase (beyond `1e-6` relative slack)
/// is reported as a model violation instead of being extrapolated.
pub fn recover_drift(
    psi: impl Fn(&MatrixPoint) -> f64,
    n: usize,
    s_grid: &[f64],
) -> Result<f64> {
    if s_grid.len() < 3 {
        return Err(Error::BadSGrid { reason: "need at least 3 grid points" });
    }
    if !s_grid.iter().all(|s| s.is_finite() && *s > 0.0) {
        return Err(Error::BadSGrid { reason: "grid values must be positive and finite" });
    }
    for w in s_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::BadSGrid { reason: "grid must be strictly increasing" });
        }
    }
    let s_max = s_grid[s_grid.len() - 1];
    if s_max < 10.0 {
        return Err(Error::BadSGrid { reason: "largest grid point must be at least 10" });
    }

    let mut d = vec![0.0f64; n];
    d[0] = 1.0;
    let xi0 = MatrixPoint::from_diag(&d).expect("unit projector is a valid matrix");

    let g: Vec<f64> = s_grid
        .iter()
        .map(|&s| psi(&xi0.scale(s)) / (s * s))
        .collect();
    for i in 1..g.len() {
        if g[i] > g[i - 1] + 1e-6 * g[i - 1].abs().max(1.0) {
            return Err(Error::ModelViolation {
                s_prev: s_grid[i - 1],
                g_prev: g[i - 1],
                s_last: s_grid[i],
                g_last: g[i],
            });
        }
    }

    let (s1, s2) = (s_grid[s_grid.len() - 2], s_max);
    let (g1, g2) = (g[g.len() - 2], g[g.len() - 1]);
    // Richardson step for the model g(s) = A + c/s^2
    let a = (g2 * s2 * s2 - g1 * s1 * s1) / (s2 * s2 - s1 * s1);
    Ok(a.max(0.0))
}

/// Result of a grid-based measure recovery.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureRecovery {
    /// Recovered drift coefficient.
    pub drift: f64,
    /// Recovered weight per grid atom, in grid order (zero where the
    /// measure puts no mass).
    pub weights: Vec<f64>,
    /// Root-mean-square fit residual over the probes.
    pub residual_rms: f64,
    /// Ratio of the largest to the smallest `R` diagonal of the design QR;
    /// large values flag near-collinear grid columns.
    pub condition: f64,
}

/// The default probe family: multiples of the unit projector plus all
/// two-entry diagonal combinations from `{0.5, 1, 2}`.
pub fn default_probes() -> Vec<MatrixPoint> {
    let mut probes = Vec::new();
    for s in [0.25, 0.5, 1.0, 2.0, 4.0] {
        probes.push(MatrixPoint::from_diag(&[s]).expect("finite diagonal"));
    }
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0, 2.0] {
            probes.push(MatrixPoint::from_diag(&[a, b]).expect("finite diagonal"));
        }
    }
    probes
}

/// Recovers `(A, weights)` of a drift-plus-jumps function sampled through
/// `psi`, assuming the measure is supported on the given grid of nonzero
/// parameters: minimizes the sum over probes of
/// `[psi(xi) - psi(0) - A tr(xi^2) - sum_m w_m (1 - phi_{omega_m}(xi))]^2`
/// subject to `A >= 0`, `w >= 0`, by nonnegative least squares. `psi(0)` is
/// read off internally from a probe at the zero matrix.
///
/// `tol` is the column-collision threshold: grid atoms whose design columns
/// agree to within `tol` (relative to the column scale) make the problem
/// ill-posed and are reported as an error.
pub fn recover_measure(
    psi: impl Fn(&MatrixPoint) -> f64,
    probes: &[MatrixPoint],
    grid: &[OmegaParam],
    tol: f64,
) -> Result<MeasureRecovery> {
    if probes.is_empty() {
        return Err(Error::EmptyPoints);
    }
    if probes.len() < grid.len() + 1 {
        return Err(Error::InsufficientProbes { probes: probes.len(), grid: grid.len() });
    }
    for (index, omega) in grid.iter().enumerate() {
        if omega.norm() == 0.0 {
            return Err(Error::AtomAtZero { index });
        }
    }

    let m = probes.len();
    let k = grid.len() + 1;
    let psi0 = psi(&MatrixPoint::zero(probes[0].dim()));

    // design: column 0 is the quadratic drift, then one column per atom
    let mut design = vec![0.0f64; m * k];
    let mut rhs = vec![0.0f64; m];
    for (p, probe) in probes.iter().enumerate() {
        design[p * k] = probe.trace_square();
        for (j, omega) in grid.iter().enumerate() {
            design[p * k + j + 1] = -spherical::log_eval(omega, probe).exp_m1();
        }
        rhs[p] = psi(probe) - psi0;
    }

    // collision scan over the atom columns
    let mut collisions = Vec::new();
    for i in 0..grid.len() {
        for j in (i + 1)..grid.len() {
            let mut max_diff = 0.0f64;
            let mut max_entry = 1.0f64;
            for p in 0..m {
                let a = design[p * k + i + 1];
                let b = design[p * k + j + 1];
                max_diff = max_diff.max((a - b).abs());
                max_entry = max_entry.max(a.abs()).max(b.abs());
            }
            if max_diff <= tol * max_entry {
                collisions.push((i, j));
            }
        }
    }
    if !collisions.is_empty() {
        return Err(Error::IllPosedGrid { collisions });
    }

    let (_, r_diag) = linalg::lstsq(m, k, &design, &rhs);
    let r_max = r_diag.iter().fold(0.0f64, |acc, &d| acc.max(d));
    let r_min = r_diag.iter().fold(f64::INFINITY, |acc, &d| acc.min(d));
    let condition = if r_min > 0.0 { r_max / r_min } else { f64::INFINITY };

    let solution = nnls::solve(m, k, &design, &rhs);
    let weights = solution.x[1..].to_vec();
    Ok(MeasureRecovery {
        drift: solution.x[0],
        weights,
        residual_rms: solution.residual_l2 / (m as f64).sqrt(),
        condition,
    })
}
