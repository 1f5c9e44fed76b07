use thiserror::Error;

/// Errors raised by the spectral operators, models and integrators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("grid mismatch: {left} modes vs {right} modes")]
    GridMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("under-resolved field: |coefficient| = {magnitude:.3e} at k = {k} exceeds guard {threshold:.1e}")]
    UnderResolved { k: i64, magnitude: f64, threshold: f64 },

    #[error("blow-up at t = {t:.6} (last good time {last_good_t:.6}): {reason}")]
    BlowUp { t: f64, last_good_t: f64, reason: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
