//! One-dimensional quadrature.
//!
//! [`integrate_finite`] is a globally adaptive Gauss-Kronrod (10/21 point)
//! integrator with QUADPACK-style error estimates. [`integrate_bessel_halfline`]
//! handles `∫_0^∞ g(s) J̃_ν(ωs) ds` by splitting at the zeros of `J_ν`,
//! integrating each inter-zero panel with the finite rule and accelerating the
//! alternating partial sums with Wynn's epsilon algorithm.

mod epsilon;
mod kronrod;
mod legendre;
mod oscillatory;

use thiserror::Error;

use crate::bessel::BesselError;

pub use epsilon::wynn_epsilon;
pub use kronrod::{integrate_finite, integrate_halfline, try_integrate_finite, try_integrate_halfline};
pub use legendre::gauss_legendre;
pub use oscillatory::{
    integrate_bessel_halfline, integrate_bessel_j_halfline, try_integrate_bessel_halfline,
    try_integrate_bessel_j_halfline,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("integrand returned a non-finite value at s = {at}")]
    PoisonedEvaluation { at: f64 },
    #[error("integrand failed at s = {at}: {message}")]
    Integrand { at: f64, message: String },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid quadrature settings: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Bessel(#[from] BesselError),
}

/// Tolerances and work limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on adaptive panels per finite integral.
    pub max_panels: usize,
    /// Upper bound on inter-zero panels for oscillatory half-line integrals.
    pub max_oscillations: usize,
    /// Number of epsilon-table columns used by the accelerator.
    pub accelerator_depth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_panels: 2000,
            max_oscillations: 500,
            accelerator_depth: 12,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        QuadratureSpec { rel_tol, ..self }
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        QuadratureSpec { abs_tol, ..self }
    }

    pub fn with_max_oscillations(self, max_oscillations: usize) -> Self {
        QuadratureSpec {
            max_oscillations,
            ..self
        }
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        let bad = |msg: &str| Err(QuadError::InvalidSpec(msg.to_string()));
        if !(self.rel_tol >= 1e-15) || !self.rel_tol.is_finite() {
            return bad("rel_tol must be finite and at least 1e-15");
        }
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return bad("abs_tol must be positive");
        }
        if self.max_panels == 0 || self.max_oscillations == 0 || self.accelerator_depth == 0 {
            return bad("work limits must be positive");
        }
        Ok(())
    }

    /// Acceptable absolute error for a result of size `value`.
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_spec_is_valid() {
        let spec = QuadratureSpec::default();
        assert!(spec.validate().is_ok());
        assert_eq!(spec.max_panels, 2000);
        assert_eq!(spec.accelerator_depth, 12);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(QuadratureSpec::default().with_rel_tol(1e-16).validate().is_err());
        assert!(QuadratureSpec::default().with_abs_tol(0.0).validate().is_err());
        assert!(QuadratureSpec::default().with_max_oscillations(0).validate().is_err());
    }
}
