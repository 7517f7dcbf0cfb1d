//! Closed-form kernels of functions of the Laplacian and the wave-equation
//! solution formulas.
//!
//! Odd-dimensional resolvent, spectral-projection and sech kernels come from
//! a catalog whose low rungs are the printed formulas and whose higher rungs
//! are generated once by symbolic lifting.

mod catalog;
mod squared;
mod wave;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::{EvalError, Expression};
use crate::quad::{QuadError, QuadratureSpec};
use crate::transform::{radial_fourier, Dimension, RadialProfile, TransformError, TransformResult};

pub use catalog::{
    projection_profile, resolvent_profile, sech_profile, MAX_PROJECTION_DIM, MAX_RESOLVENT_DIM, MAX_SECH_DIM,
};
pub use squared::{derivative_bound_constant, even_to_squared};
pub use wave::{dalembert, kirchhoff};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("z = {0} lies on [0, ∞), where √(-z) has no principal value with positive real part")]
    Branch(Complex64),
    #[error("invalid kernel parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("profile is not even: |f(s) - f(-s)| = {gap:e} at s = {at}")]
    NotEven { at: f64, gap: f64 },
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Kernel families of the catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily {
    /// `F_n(sech(π·))`.
    Sech,
    /// `e^{-πr²}`, fixed by every `F_n`.
    Gaussian,
    /// Kernel of `(-Δ - z)^{-1}`.
    Resolvent(Complex64),
    /// Kernel of `χ_{[0,E]}(-Δ)`.
    Projection(f64),
    /// Kernel of `e^{tΔ}`.
    Heat(f64),
    /// Kernel of `sin(t√-Δ)/√-Δ`.
    Wave(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub dim: Dimension,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, dim: Dimension) -> Result<Self, KernelError> {
        match family {
            KernelFamily::Resolvent(z) => check_branch(z)?,
            KernelFamily::Projection(e) if !(e > 0.0 && e.is_finite()) => {
                return Err(KernelError::InvalidParameter(format!("projection level E must be positive, got {e}")));
            }
            KernelFamily::Heat(t) if !(t > 0.0 && t.is_finite()) => {
                return Err(KernelError::InvalidParameter(format!("heat time t must be positive, got {t}")));
            }
            KernelFamily::Wave(t) if !t.is_finite() => {
                return Err(KernelError::InvalidParameter(format!("wave time t must be finite, got {t}")));
            }
            _ => {}
        }
        Ok(KernelSpec { family, dim })
    }

    /// Kernel value at radius `r > 0`.
    pub fn eval(&self, r: f64) -> Result<Complex64, KernelError> {
        check_radius(r)?;
        let n = self.dim;
        match self.family {
            KernelFamily::Sech => sech_kernel(n, r).map(Complex64::from),
            KernelFamily::Gaussian => Ok(Complex64::from((-PI * r * r).exp())),
            KernelFamily::Resolvent(z) => resolvent_kernel(n, z, r),
            KernelFamily::Projection(e) => projection_kernel(n, e, r).map(Complex64::from),
            KernelFamily::Heat(t) => heat_kernel(n, t, r).map(Complex64::from),
            KernelFamily::Wave(t) => {
                if n.get() != 1 {
                    return Err(KernelError::Unsupported(format!(
                        "the wave kernel in dimension {n} is a distribution; use kirchhoff or dalembert"
                    )));
                }
                Ok(Complex64::from(if r < t.abs() { 0.5 * t.signum() } else { 0.0 }))
            }
        }
    }
}

fn check_branch(z: Complex64) -> Result<(), KernelError> {
    if !(z.re.is_finite() && z.im.is_finite()) || (z.im == 0.0 && z.re >= 0.0) {
        return Err(KernelError::Branch(z));
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<(), KernelError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(KernelError::InvalidParameter(format!("radius must be positive, got {r}")))
    }
}

fn catalog_rung(rung: Option<&'static Expression>, name: &str, n: Dimension, max: u32) -> Result<&'static Expression, KernelError> {
    rung.ok_or_else(|| {
        KernelError::Unsupported(format!("{name} kernels are catalogued for odd n ≤ {max}, got n = {n}"))
    })
}

/// `G_n(r)` for odd `n ≤ 9`: `e^{-cr}/(2c)`, `e^{-cr}/(4πr)`, `(1+cr)e^{-cr}/(8π²r³)`, ... with `c = √(-z)`.
pub fn resolvent_kernel(n: Dimension, z: Complex64, r: f64) -> Result<Complex64, KernelError> {
    check_branch(z)?;
    check_radius(r)?;
    let h = catalog_rung(resolvent_profile(n.get()), "resolvent", n, MAX_RESOLVENT_DIM)?;
    let c = (-z).sqrt();
    Ok(c.powi(n.get() as i32 - 2) * h.eval(c * r)?)
}

/// `P_n(r)` for odd `n ≤ 7`: `sin(ar)/(πr)`, `(sin(ar) - ar cos(ar))/(2π²r³)`, ... with `a = √E`.
pub fn projection_kernel(n: Dimension, e: f64, r: f64) -> Result<f64, KernelError> {
    if !(e > 0.0 && e.is_finite()) {
        return Err(KernelError::InvalidParameter(format!("projection level E must be positive, got {e}")));
    }
    check_radius(r)?;
    let q = catalog_rung(projection_profile(n.get()), "projection", n, MAX_PROJECTION_DIM)?;
    let a = e.sqrt();
    Ok(a.powi(n.get() as i32) * q.eval_real(a * r)?)
}

/// `F_n(sech(π·))(r)` for odd `n ≤ 9`.
pub fn sech_kernel(n: Dimension, r: f64) -> Result<f64, KernelError> {
    check_radius(r)?;
    let q = catalog_rung(sech_profile(n.get()), "sech", n, MAX_SECH_DIM)?;
    Ok(q.eval_real(r)?)
}

/// `(4πt)^{-n/2} e^{-r²/4t}`.
pub fn heat_kernel(n: Dimension, t: f64, r: f64) -> Result<f64, KernelError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(KernelError::InvalidParameter(format!("heat time t must be positive, got {t}")));
    }
    Ok((4.0 * PI * t).powf(-0.5 * n.get() as f64) * (-r * r / (4.0 * t)).exp())
}

/// The radial profile `ρ ↦ f(4π²ρ²)` of a multiplier `f(λ)` written in the variable `s`.
pub fn multiplier_profile(f: &Expression) -> Expression {
    let lambda = Expression::real(4.0 * PI * PI) * Expression::var().powi(2);
    f.substitute(&lambda).simplify()
}

/// Kernel of `f(-Δ)` at radius `r`: `F_n` of the radial function `f(4π²ρ²)`.
pub fn kernel_of_multiplier(f: &Expression, n: Dimension, r: f64, spec: &QuadratureSpec) -> Result<TransformResult, KernelError> {
    check_radius(r)?;
    let profile = RadialProfile::Analytic(multiplier_profile(f));
    Ok(radial_fourier(&profile, n, r, spec)?)
}
