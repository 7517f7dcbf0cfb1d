//! Radial Fourier transforms in dimension `n`:
//!
//! ```text
//! F_n(f)(r) = (2π)^{n/2} ∫_0^∞ f(s) J̃_{n/2-1}(2πsr) s^{n-1} ds
//! ```
//!
//! together with the classical Hankel transform, spherical means and the
//! integrability probe that gates the transform.

mod gate;
mod profile;
pub(crate) mod sphere;

use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt::{self, Display};

use log::warn;
use num_complex::Complex64;
use thiserror::Error;

use crate::bessel::{bessel_j_tilde_at_zero, gamma_half, Order};
use crate::expr::{EvalError, ParseError};
use crate::quad::{
    try_integrate_bessel_halfline, try_integrate_bessel_j_halfline, try_integrate_halfline, QuadError,
    QuadratureResult, QuadratureSpec,
};

pub use gate::{integrability_check, IntegrabilityReport, Piece};
pub use profile::{RadialProfile, SampledProfile, MIN_SAMPLES};
pub use sphere::spherical_mean;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(u32),
    #[error("radius must be finite and positive, got {0}")]
    InvalidRadius(f64),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{piece} appears divergent: {report}")]
    NotIntegrable { piece: Piece, report: Box<IntegrabilityReport> },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("{0}")]
    Unsupported(String),
}

/// Spatial dimension `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self, TransformError> {
        if n == 0 {
            return Err(TransformError::InvalidDimension(n));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Bessel order `n/2 - 1` of the transform kernel.
    pub fn order(self) -> Order {
        Order::for_dimension(self.0)
    }

    pub fn plus(self, k: u32) -> Dimension {
        Dimension(self.0 + k)
    }
}

impl Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Surface area `ω_{n-1} = 2π^{n/2} / Γ(n/2)` of the unit sphere in `R^n`.
pub fn sphere_surface(n: Dimension) -> f64 {
    let half = 0.5 * n.get() as f64;
    2.0 * PI.powf(half) / gamma_half(n.get() as i32)
}

/// A transform value with its quadrature bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl TransformResult {
    fn from_parts(re: QuadratureResult, im: Option<QuadratureResult>, scale: f64) -> Self {
        let (im_value, im_error, im_evals, im_ok) = im.map_or((0.0, 0.0, 0, true), |q| {
            (q.value, q.error_estimate, q.evaluations, q.converged)
        });
        TransformResult {
            value: Complex64::new(re.value, im_value) * scale,
            error_estimate: (re.error_estimate + im_error) * scale.abs(),
            evaluations: re.evaluations + im_evals,
            converged: re.converged && im_ok,
        }
    }
}

fn check_radius(r: f64) -> Result<(), TransformError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(TransformError::InvalidRadius(r))
    }
}

/// Runs a real quadrature over `Re f`, then over `Im f` only if some sample had a nonzero imaginary part.
fn split_complex<F, E, Q>(f: F, mut quad: Q) -> Result<(QuadratureResult, Option<QuadratureResult>), QuadError>
where
    F: Fn(f64) -> Result<Complex64, E>,
    E: Display,
    Q: FnMut(&mut dyn FnMut(f64) -> Result<f64, String>) -> Result<QuadratureResult, QuadError>,
{
    let complex = Cell::new(false);
    let re = quad(&mut |s| {
        let v = f(s).map_err(|e| e.to_string())?;
        if v.im != 0.0 {
            complex.set(true);
        }
        Ok(v.re)
    })?;
    if !complex.get() {
        return Ok((re, None));
    }
    let im = quad(&mut |s| f(s).map(|v| v.im).map_err(|e| e.to_string()))?;
    Ok((re, Some(im)))
}

/// `F_n(f)(r)` for a profile given as a closure, without the integrability gate.
///
/// `r = 0` is evaluated as the moment `(2π)^{n/2} J̃_{n/2-1}(0) ∫_0^∞ f(s) s^{n-1} ds`.
pub fn radial_fourier_fn<F, E>(f: F, n: Dimension, r: f64, spec: &QuadratureSpec) -> Result<TransformResult, TransformError>
where
    F: Fn(f64) -> Result<Complex64, E>,
    E: Display,
{
    if !(r >= 0.0 && r.is_finite()) {
        return Err(TransformError::InvalidRadius(r));
    }
    let order = n.order();
    let power = n.get() as i32 - 1;
    let weighted = |s: f64| f(s).map(|v| v * s.powi(power));
    let prefactor = (2.0 * PI).powf(0.5 * n.get() as f64);
    if r == 0.0 {
        let (re, im) = split_complex(weighted, |g| try_integrate_halfline(g, 0.0, spec))?;
        return Ok(TransformResult::from_parts(re, im, prefactor * bessel_j_tilde_at_zero(order)));
    }
    let (re, im) = split_complex(weighted, |g| try_integrate_bessel_halfline(g, order, 2.0 * PI * r, spec))?;
    Ok(TransformResult::from_parts(re, im, prefactor))
}

/// `F_n(f)(r)` after the integrability gate.
///
/// A profile that fails absolute integrability but whose oscillatory tail is
/// still summable goes ahead with a warning; otherwise the failing piece is
/// reported as [`TransformError::NotIntegrable`].
pub fn radial_fourier(f: &RadialProfile, n: Dimension, r: f64, spec: &QuadratureSpec) -> Result<TransformResult, TransformError> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(TransformError::InvalidRadius(r));
    }
    gate(f, n, r.max(1e-3))?;
    radial_fourier_unchecked(f, n, r, spec)
}

/// `F_n(f)(r)` skipping the integrability gate.
pub fn radial_fourier_unchecked(
    f: &RadialProfile,
    n: Dimension,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<TransformResult, TransformError> {
    if let Some(end) = f.support_end() {
        warn!("sampled profile extended by zero beyond s = {end}");
    }
    radial_fourier_fn(|s| f.eval(s), n, r, spec)
}

fn gate(f: &RadialProfile, n: Dimension, r: f64) -> Result<(), TransformError> {
    let report = integrability_check(f, n, r);
    if report.passed {
        return Ok(());
    }
    if report.summable {
        warn!("profile {f} is not absolutely integrable in dimension {n}; summing the oscillatory tail ({report})");
        return Ok(());
    }
    Err(TransformError::NotIntegrable {
        piece: report.failed.unwrap_or(Piece::Tail),
        report: Box::new(report),
    })
}

/// Classical Hankel transform `H_ν(f)(r) = ∫_0^∞ f(s) J_ν(rs) s ds`.
pub fn hankel(f: &RadialProfile, order: Order, r: f64, spec: &QuadratureSpec) -> Result<TransformResult, TransformError> {
    hankel_fn(|s| f.eval(s), order, r, spec)
}

pub fn hankel_fn<F, E>(f: F, order: Order, r: f64, spec: &QuadratureSpec) -> Result<TransformResult, TransformError>
where
    F: Fn(f64) -> Result<Complex64, E>,
    E: Display,
{
    check_radius(r)?;
    let weighted = |s: f64| f(s).map(|v| v * s);
    let (re, im) = split_complex(weighted, |g| try_integrate_bessel_j_halfline(g, order, r, spec))?;
    Ok(TransformResult::from_parts(re, im, 1.0))
}

/// Both sides of `F_n(f)(r) = (2π / r^ν) H_ν(f(s) s^ν)(2πr)`, `ν = n/2 - 1`.
///
/// The left side uses the `J̃_ν` kernel with weight `s^{n-1}`, the right side the
/// plain `J_ν` kernel, so the two share only the underlying quadrature engine.
pub fn hankel_fourier_relation(
    f: &RadialProfile,
    n: Dimension,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, Complex64), TransformError> {
    check_radius(r)?;
    let lhs = radial_fourier_unchecked(f, n, r, spec)?;
    let order = n.order();
    let nu = order.nu();
    let h = hankel_fn(|s| f.eval(s).map(|v| v * s.powf(nu)), order, 2.0 * PI * r, spec)?;
    Ok((lhs.value, h.value * (2.0 * PI / r.powf(nu))))
}
