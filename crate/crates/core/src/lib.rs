//! Numerics for spherical functions of unitarily invariant matrix kernels
//! and their Lévy-Khinchin representations.
//!
//! The crate evaluates the scalar product kernels
//! `Pi(omega, lambda) = exp(-gamma lambda^2) prod_k 1/(1 + alpha_k lambda^2)`
//! and their matrix extensions `phi_omega(xi) = prod_j Pi(omega, sigma_j)`
//! over singular values, certifies positive and negative type of invariant
//! kernels spectrally on finite point sets, maps drift-plus-jump-measure
//! data to negative-type functions and back, and Monte Carlo-checks the
//! high-dimension multiplicativity limit over Haar-random unitaries.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `sphlevy` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod definiteness;
mod error;
pub mod haar;
pub mod levy;
mod linalg;
mod nnls;
pub mod omega;
pub mod polya;
pub mod sampling;
pub mod spherical;

pub use definiteness::GramReport;
pub use error::{Error, Result};
pub use haar::McEstimate;
pub use levy::{DiscreteOmegaMeasure, LevyTriple, MeasureRecovery};
pub use omega::OmegaParam;
pub use spherical::{MatrixPoint, SingularSpectrum};
