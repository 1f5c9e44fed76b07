use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Physical parameters shared by all three models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    /// Dimensionless viscosity, `δ > 0`.
    pub delta: f64,
    /// Bond number, `β >= 0`.
    pub beta: f64,
    /// Steepness, `ε > 0`.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    1.0
}

impl ModelParams {
    pub fn new(delta: f64, beta: f64, epsilon: f64) -> Result<Self> {
        let p = Self {
            delta,
            beta,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds parameters without validation. Operator symbols are defined for
    /// `δ = 0` too (where they degenerate); models and integrators validate.
    pub const fn unchecked(delta: f64, beta: f64, epsilon: f64) -> Self {
        Self {
            delta,
            beta,
            epsilon,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(CoreError::Config(format!(
                "delta must be finite and > 0, got {}",
                self.delta
            )));
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return Err(CoreError::Config(format!(
                "beta must be finite and >= 0, got {}",
                self.beta
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(CoreError::Config(format!(
                "epsilon must be finite and > 0, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}
