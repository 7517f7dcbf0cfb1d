//! Dimension recursion for radial Fourier transforms.
//!
//! ```text
//! F_{n+2}(f)(r) = -(1 / 2πr) d/dr F_n(f)(r)
//! ```
//!
//! applied once ([`lift_once`]), in pre-differentiated form ([`lift_prediff`]),
//! or `k` times at once through exact coefficient tables ([`lift_to_dimension`]).

mod coefficients;
mod engine;
mod numeric;

use std::f64::consts::PI;
use std::fmt::Display;

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::{EvalError, Expression};
use crate::quad::QuadratureSpec;
use crate::transform::{radial_fourier, Dimension, RadialProfile, TransformError};

pub use coefficients::{corollary_coefficients, iterate_operator_symbolic, CoefficientTable};
pub use engine::DerivativeEngine;
pub use numeric::{chebyshev_grid, Estimate};

use coefficients::rational_to_f64;
use numeric::{derivatives, Sampler};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiftError {
    #[error("derivative engine: {0}")]
    Engine(String),
    #[error("r = {r} lies outside the Chebyshev interval [{a}, {b}]")]
    OutsideInterval { r: f64, a: f64, b: f64 },
    #[error("radius must be finite and positive, got {0}")]
    InvalidRadius(f64),
    #[error("cannot lift from dimension {base} to {target}: the difference must be even and nonnegative")]
    Parity { base: u32, target: u32 },
    #[error("profile evaluation failed: {0}")]
    Evaluation(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// A lifted value with its propagated error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftResult {
    pub value: Complex64,
    pub error_estimate: f64,
    /// The simplified symbolic derivative, for analytic lifts.
    pub derivative: Option<Expression>,
}

fn check_radius(r: f64) -> Result<(), LiftError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(LiftError::InvalidRadius(r))
    }
}

fn eval_expr(e: &Expression, s: f64) -> Result<Complex64, LiftError> {
    Ok(e.eval(Complex64::new(s, 0.0))?)
}

fn profile_sampler(f: &RadialProfile) -> impl Fn(f64) -> Result<Complex64, LiftError> + '_ {
    move |s| f.eval(s).map_err(LiftError::from)
}

/// Samples a sampled profile already holds at the engine's nodes, if any.
fn matching_samples(f: &RadialProfile, engine: DerivativeEngine) -> Option<&[f64]> {
    let (RadialProfile::Sampled(p), DerivativeEngine::Chebyshev { degree, a, b }) = (f, engine) else {
        return None;
    };
    let nodes = chebyshev_grid(degree, a, b);
    let same = nodes.len() == p.len()
        && nodes
            .iter()
            .zip(p.grid())
            .all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(1.0));
    same.then(|| p.values())
}

fn numeric_derivatives(
    f: &RadialProfile,
    max_order: usize,
    r: f64,
    engine: DerivativeEngine,
) -> Result<Vec<Estimate>, LiftError> {
    let sampler = profile_sampler(f);
    derivatives(&sampler, max_order, r, engine, matching_samples(f, engine))
}

/// `-(1/2πr) F′(r)` for a profile `F = F_n(f)`.
pub fn lift_once(f: &RadialProfile, r: f64, engine: DerivativeEngine) -> Result<LiftResult, LiftError> {
    check_radius(r)?;
    let scale = -1.0 / (2.0 * PI * r);
    if engine == DerivativeEngine::Analytic {
        let Some(e) = f.expression() else {
            return Err(LiftError::Engine("the analytic engine needs an expression profile".into()));
        };
        let d = e.differentiate().simplify();
        let value = eval_expr(&d, r)? * scale;
        return Ok(LiftResult {
            value,
            error_estimate: 4.0 * f64::EPSILON * value.norm(),
            derivative: Some(d),
        });
    }
    let d = numeric_derivatives(f, 1, r, engine)?;
    Ok(LiftResult {
        value: d[1].value * scale,
        error_estimate: d[1].error * scale.abs(),
        derivative: None,
    })
}

/// [`lift_once`] for a profile known only through evaluations, such as a
/// numerically computed transform. Requires a numerical engine.
pub fn lift_once_fn<F, E>(f: F, r: f64, engine: DerivativeEngine) -> Result<LiftResult, LiftError>
where
    F: Fn(f64) -> Result<Complex64, E>,
    E: Display,
{
    check_radius(r)?;
    let sampler: &Sampler<'_> = &|s| f(s).map_err(|e| LiftError::Evaluation(e.to_string()));
    let d = derivatives(sampler, 1, r, engine, None)?;
    let scale = -1.0 / (2.0 * PI * r);
    Ok(LiftResult {
        value: d[1].value * scale,
        error_estimate: d[1].error * scale.abs(),
        derivative: None,
    })
}

/// The `r → 0` limit `-(1/2π) F″(0)` of the lift, for an even profile.
///
/// For expressions with a removable singularity at the origin (such as
/// `sin(s)/s`), `F″(h)` is extrapolated to `h = 0` in powers of `h²`.
pub fn lift_once_at_zero(f: &RadialProfile, engine: DerivativeEngine) -> Result<LiftResult, LiftError> {
    let scale = -1.0 / (2.0 * PI);
    match engine {
        DerivativeEngine::Analytic => {
            let Some(e) = f.expression() else {
                return Err(LiftError::Engine("the analytic engine needs an expression profile".into()));
            };
            let d2 = e.nth_derivative(2);
            let direct = eval_expr(&d2, 0.0).ok().filter(|v| v.re.is_finite() && v.im.is_finite());
            let (value, error) = match direct {
                Some(v) => (v, 4.0 * f64::EPSILON * v.norm()),
                None => extrapolate_to_zero(|h| eval_expr(&d2, h))?,
            };
            Ok(LiftResult {
                value: value * scale,
                error_estimate: error * scale.abs(),
                derivative: Some(d2),
            })
        }
        DerivativeEngine::Chebyshev { a, b, .. } => Err(LiftError::OutsideInterval { r: 0.0, a, b }),
        DerivativeEngine::CentralFd { step, levels } => {
            engine.validate().map_err(LiftError::Engine)?;
            let sampler = profile_sampler(f);
            let f0 = sampler(0.0)?;
            // even extension: F″(0) ≈ 2 (F(h) - F(0)) / h²
            let second = |h: f64| sampler(h).map(|fh| (fh - f0) * (2.0 / (h * h)));
            let (value, error) = richardson(second, step, levels)?;
            Ok(LiftResult {
                value: value * scale,
                error_estimate: error * scale.abs(),
                derivative: None,
            })
        }
    }
}

fn extrapolate_to_zero<G>(g: G) -> Result<(Complex64, f64), LiftError>
where
    G: Fn(f64) -> Result<Complex64, LiftError>,
{
    richardson(g, 0.4, 4)
}

/// Richardson extrapolation of `g(h)` to `h = 0`, assuming an error series in `h²`.
fn richardson<G>(g: G, step: f64, levels: usize) -> Result<(Complex64, f64), LiftError>
where
    G: Fn(f64) -> Result<Complex64, LiftError>,
{
    let mut previous: Vec<Complex64> = Vec::new();
    let mut error = f64::INFINITY;
    for level in 0..=levels {
        let h = step / f64::powi(2.0, level as i32);
        let mut row = vec![g(h)?];
        for m in 1..=level {
            let factor = f64::powi(4.0, m as i32);
            let v = row[m - 1] + (row[m - 1] - previous[m - 1]) / (factor - 1.0);
            row.push(v);
        }
        if level > 0 {
            error = (row[level] - previous[level - 1]).norm();
        }
        previous = row;
    }
    Ok((previous[levels], error))
}

/// `-(1/2πs) F′(s)` as a simplified expression.
pub fn lift_symbolic(f: &Expression) -> Expression {
    let scale = Expression::real(-0.5 / PI) / Expression::var();
    (scale * f.differentiate()).simplify()
}

/// `η(s) = n φ(s) + s φ′(s)`, the profile whose `n`-dimensional transform,
/// scaled by `1/(2πr²)`, gives `F_{n+2}(φ)(r)`.
pub fn prediff_profile(phi: &Expression, n: Dimension) -> Expression {
    (Expression::real(n.get() as f64) * phi.clone() + Expression::var() * phi.differentiate()).simplify()
}

/// `F_{n+2}(φ)(r) = (1/2πr²) F_n(η)(r)` with `η` built symbolically.
pub fn lift_prediff(phi: &RadialProfile, n: Dimension, r: f64, spec: &QuadratureSpec) -> Result<LiftResult, LiftError> {
    check_radius(r)?;
    let Some(e) = phi.expression() else {
        return Err(LiftError::Engine("the pre-differentiated lift needs an expression profile".into()));
    };
    let eta = prediff_profile(e, n);
    let t = radial_fourier(&RadialProfile::Analytic(eta.clone()), n, r, spec)?;
    let scale = 1.0 / (2.0 * PI * r * r);
    Ok(LiftResult {
        value: t.value * scale,
        error_estimate: t.error_estimate * scale,
        derivative: Some(eta),
    })
}

/// `F_{n+2k}` from a profile `F_n` in one step:
/// `(2π)^{-k} Σ_ℓ c_{k,ℓ} ρ^{-(2k-ℓ)} D^ℓ F_n(ρ)`.
pub fn lift_to_dimension(
    base: &RadialProfile,
    base_dim: Dimension,
    target_dim: Dimension,
    rho: f64,
    engine: DerivativeEngine,
) -> Result<LiftResult, LiftError> {
    check_radius(rho)?;
    let k = steps(base_dim, target_dim)?;
    let table = corollary_coefficients(k);
    let derivs: Vec<Estimate> = if engine == DerivativeEngine::Analytic {
        let Some(e) = base.expression() else {
            return Err(LiftError::Engine("the analytic engine needs an expression profile".into()));
        };
        let mut d = e.clone();
        let mut out = Vec::with_capacity(k + 1);
        for order in 0..=k {
            if order > 0 {
                d = d.differentiate().simplify();
            }
            let value = eval_expr(&d, rho)?;
            out.push(Estimate {
                value,
                error: 4.0 * f64::EPSILON * value.norm(),
            });
        }
        out
    } else {
        numeric_derivatives(base, k, rho, engine)?
    };
    Ok(combine(&table, &derivs, rho))
}

/// [`lift_to_dimension`] for a profile known only through evaluations.
pub fn lift_to_dimension_fn<F, E>(
    base: F,
    base_dim: Dimension,
    target_dim: Dimension,
    rho: f64,
    engine: DerivativeEngine,
) -> Result<LiftResult, LiftError>
where
    F: Fn(f64) -> Result<Complex64, E>,
    E: Display,
{
    check_radius(rho)?;
    let k = steps(base_dim, target_dim)?;
    let sampler: &Sampler<'_> = &|s| base(s).map_err(|e| LiftError::Evaluation(e.to_string()));
    let derivs = derivatives(sampler, k, rho, engine, None)?;
    Ok(combine(&corollary_coefficients(k), &derivs, rho))
}

fn steps(base: Dimension, target: Dimension) -> Result<usize, LiftError> {
    let (b, t) = (base.get(), target.get());
    if t < b || (t - b) % 2 != 0 {
        return Err(LiftError::Parity { base: b, target: t });
    }
    Ok(((t - b) / 2) as usize)
}

fn combine(table: &CoefficientTable, derivs: &[Estimate], rho: f64) -> LiftResult {
    let k = table.k();
    let prefactor = (2.0 * PI).powi(-(k as i32));
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for (l, c) in table.iter() {
        let weight = rational_to_f64(c) * rho.powi(-(table.rho_power(l) as i32)) * prefactor;
        value += derivs[l].value * weight;
        error += derivs[l].error * weight.abs();
    }
    LiftResult {
        value,
        error_estimate: error,
        derivative: None,
    }
}
