//! Pseudospectral simulation of damped water-wave models on the periodic
//! circle: the quadratic and cubic bidirectional systems for `(f, f_t)` and
//! the unidirectional equation for `u`.
//!
//! The linear parts are propagated exactly, per Fourier mode, and the
//! nonlinear forcing enters through exponential time differencing. The
//! [`diagnostics`] module measures norms, the high-order energy balance and
//! decay rates; [`verify`] bundles the quantitative checks.

pub mod diagnostics;
pub mod error;
pub mod integrator;
pub mod linear;
pub mod models;
pub mod oracle;
pub mod params;
pub mod phi;
pub mod record;
pub mod spectral;
pub mod verify;

pub use error::{CoreError, Result};
pub use params::ModelParams;
pub use spectral::{Grid, SpectralField};
