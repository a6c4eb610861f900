use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the numeric operations in this crate.
///
/// Every variant carries enough context to point at the offending input
/// (index, value, or the violated bound) so that callers can surface a
/// field-level message without re-deriving it.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An `alpha` entry was negative or non-finite.
    InvalidAlpha { index: usize, value: f64 },
    /// `gamma` was negative or non-finite.
    InvalidGamma { value: f64 },
    /// An order parameter (power-sum index, series length) was below 1.
    ZeroOrder { what: &'static str },
    /// The log-derivative power series does not converge at this point.
    SeriesDivergent { max_alpha: f64, lambda: f64 },
    /// A matrix entry was NaN or infinite.
    NonFiniteEntry { row: usize, col: usize },
    /// Entry buffer length does not match the declared square dimension.
    BadMatrixShape { n: usize, len: usize },
    /// Two matrices (or a matrix and a target dimension) disagree in size.
    DimensionMismatch { expected: usize, got: usize },
    /// The expansion bounds only hold for `||omega|| < min(1/|||xi|||^2, 1)`.
    OutsideExpansionRegion { omega_norm: f64, limit: f64 },
    /// The linear-bound constant requires `0 < eps < min(1/rho^2, 1)`.
    BadLinearBoundParams { rho: f64, eps: f64 },
    /// A measure atom had a nonpositive or non-finite weight.
    InvalidWeight { index: usize, value: f64 },
    /// Mixture weights must sum to 1 for a Bochner average.
    WeightsNotNormalized { total: f64 },
    /// A Lévy measure must not charge the zero parameter.
    AtomAtZero { index: usize },
    /// A Lévy triple field was negative or non-finite.
    InvalidTriple { field: &'static str, value: f64 },
    /// The extrapolation grid for drift recovery is unusable.
    BadSGrid { reason: &'static str },
    /// `psi(s xi0)/s^2` failed the decreasing-model diagnostic.
    ModelViolation { s_prev: f64, g_prev: f64, s_last: f64, g_last: f64 },
    /// Fewer probes than unknowns in the measure-recovery design.
    InsufficientProbes { probes: usize, grid: usize },
    /// Grid atoms whose design columns are numerically identical.
    IllPosedGrid { collisions: Vec<(usize, usize)> },
    /// An operation that needs at least one point got none.
    EmptyPoints,
    /// Schoenberg grid values must be strictly positive.
    NonPositiveT { index: usize, value: f64 },
    /// Monte Carlo estimates need at least two samples.
    TooFewSamples { got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAlpha { index, value } => write!(
                f,
                "alpha[{index}]: entries must be finite and nonnegative (got {value})"
            ),
            Error::InvalidGamma { value } => {
                write!(f, "gamma must be finite and nonnegative (got {value})")
            }
            Error::ZeroOrder { what } => write!(f, "{what} must be at least 1"),
            Error::SeriesDivergent { max_alpha, lambda } => write!(
                f,
                "series divergent: max(alpha)*lambda^2 = {} >= 1",
                max_alpha * lambda * lambda
            ),
            Error::NonFiniteEntry { row, col } => {
                write!(f, "matrix entry ({row},{col}) is not finite")
            }
            Error::BadMatrixShape { n, len } => {
                write!(f, "matrix of dimension {n} needs {} entries, got {len}", n * n)
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::OutsideExpansionRegion { omega_norm, limit } => write!(
                f,
                "outside expansion region: ||omega|| = {omega_norm} must be < {limit}"
            ),
            Error::BadLinearBoundParams { rho, eps } => write!(
                f,
                "linear bound needs 0 < eps < min(1/rho^2, 1): rho = {rho}, eps = {eps}"
            ),
            Error::InvalidWeight { index, value } => write!(
                f,
                "atom[{index}]: weight must be finite and positive (got {value})"
            ),
            Error::WeightsNotNormalized { total } => {
                write!(f, "mixture weights must sum to 1 (got {total})")
            }
            Error::AtomAtZero { index } => {
                write!(f, "atom[{index}]: Levy measure may not charge omega = 0")
            }
            Error::InvalidTriple { field, value } => {
                write!(f, "{field} must be finite and nonnegative (got {value})")
            }
            Error::BadSGrid { reason } => write!(f, "bad s-grid: {reason}"),
            Error::ModelViolation { s_prev, g_prev, s_last, g_last } => write!(
                f,
                "psi(s xi0)/s^2 is not decreasing: g({s_prev}) = {g_prev} but g({s_last}) = {g_last}"
            ),
            Error::InsufficientProbes { probes, grid } => write!(
                f,
                "need at least {} probes for a grid of {grid} atoms, got {probes}",
                grid + 1
            ),
            Error::IllPosedGrid { collisions } => {
                write!(f, "ill-posed grid, numerically identical design columns:")?;
                for (i, j) in collisions {
                    write!(f, " (atom {i}, atom {j})")?;
                }
                Ok(())
            }
            Error::EmptyPoints => write!(f, "need at least one point"),
            Error::NonPositiveT { index, value } => {
                write!(f, "t_grid[{index}]: values must be > 0 (got {value})")
            }
            Error::TooFewSamples { got } => {
                write!(f, "need at least 2 Monte Carlo samples (got {got})")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
