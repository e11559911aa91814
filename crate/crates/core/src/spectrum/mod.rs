//! Slice symbols `P(τ, iθ)` at lattice frequencies: roots, imaginary-axis
//! classification and the per-frequency data `(c, m, λ, d)`.

mod axis;
mod roots;
mod slice;

pub use axis::{classify_axis, ExactSymbol};
pub use roots::{cluster_roots, find_roots};
pub use slice::{slice_factorize, specialize_frequency, AxisMethod, SliceFactorization, Specialized};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{FreqVector, LatticeError};
use crate::symbolic::SymbolicError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("P(τ, iθ) vanishes identically at ξ = {0}")]
    IdenticallyZeroSlice(FreqVector),
    #[error("root finding needs degree ≥ 1")]
    DegreeZero,
    #[error("root iteration did not converge after {iterations} iterations (relative residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("exact axis classification requested without an exact polynomial")]
    ExactUnavailable,
    #[error("invalid root solver configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisMode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSolverConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub axis_mode: AxisMode,
    pub axis_tolerance: f64,
}

impl Default for RootSolverConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iterations: 500,
            axis_mode: AxisMode::Exact,
            axis_tolerance: 1e-9,
        }
    }
}

impl RootSolverConfig {
    pub fn validate(&self) -> Result<(), SpectrumError> {
        if !(self.tolerance > 0.0 && self.tolerance <= 1e-6) {
            return Err(SpectrumError::InvalidConfig(format!(
                "tolerance {} outside (0, 1e-6]",
                self.tolerance
            )));
        }
        if self.max_iterations < 50 {
            return Err(SpectrumError::InvalidConfig(format!(
                "max_iterations {} below 50",
                self.max_iterations
            )));
        }
        if !(self.axis_tolerance > 0.0) {
            return Err(SpectrumError::InvalidConfig("axis tolerance must be positive".into()));
        }
        Ok(())
    }
}
