use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and limits shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Residual ∞-norm accepted as converged.
    pub tol: f64,
    pub max_iter: usize,
    /// ∞-distance under which two solutions are the same.
    pub dedup_tol: f64,
    /// |det| threshold (after row equilibration) below which a zero is degenerate.
    pub morse_tol: f64,
    /// Largest Newton step, in ∞-norm.
    pub step_clamp: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 100,
            dedup_tol: 1e-6,
            morse_tol: 1e-10,
            step_clamp: 10.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tol", self.tol),
            ("dedup_tol", self.dedup_tol),
            ("morse_tol", self.morse_tol),
            ("step_clamp", self.step_clamp),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be positive".into()));
        }
        if self.dedup_tol <= self.tol {
            return Err(Error::InvalidConfig("dedup_tol must exceed tol".into()));
        }
        Ok(())
    }
}
