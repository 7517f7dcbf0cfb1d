//! Numerical derivatives for the Chebyshev and finite-difference engines.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{DerivativeEngine, LiftError};

pub(crate) type Sampler<'a> = dyn Fn(f64) -> Result<Complex64, LiftError> + 'a;

/// A derivative value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

/// Chebyshev extreme points `(a+b)/2 - (b-a)/2 cos(jπ/N)`, `j = 0..=N`, increasing.
pub fn chebyshev_grid(degree: usize, a: f64, b: f64) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut grid: Vec<f64> = (0..=degree)
        .map(|j| mid - half * (PI * j as f64 / degree as f64).cos())
        .collect();
    grid[0] = a;
    grid[degree] = b;
    grid
}

/// Derivatives of orders `0..=max_order` at `r`.
///
/// `values` may hold samples already taken at the engine's Chebyshev grid.
pub(crate) fn derivatives(
    g: &Sampler<'_>,
    max_order: usize,
    r: f64,
    engine: DerivativeEngine,
    values: Option<&[f64]>,
) -> Result<Vec<Estimate>, LiftError> {
    engine.validate().map_err(LiftError::Engine)?;
    match engine {
        DerivativeEngine::Analytic => Err(LiftError::Engine(
            "the analytic engine needs an expression profile".into(),
        )),
        DerivativeEngine::Chebyshev { degree, a, b } => {
            if !(a <= r && r <= b) {
                return Err(LiftError::OutsideInterval { r, a, b });
            }
            let samples = match values {
                Some(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
                None => chebyshev_grid(degree, a, b)
                    .into_iter()
                    .map(g)
                    .collect::<Result<Vec<_>, _>>()?,
            };
            Ok(chebyshev_derivatives(&samples, max_order, r, a, b))
        }
        DerivativeEngine::CentralFd { step, levels } => (0..=max_order)
            .map(|order| central_difference(g, order, r, step, levels))
            .collect(),
    }
}

fn chebyshev_derivatives(samples: &[Complex64], max_order: usize, r: f64, a: f64, b: f64) -> Vec<Estimate> {
    let n = samples.len() - 1;
    let nf = n as f64;
    // DCT-I: f = Σ'' c_k T_k on the extreme points (node j sits at x = -cos(jπ/N))
    let mut coeffs: Vec<Complex64> = (0..=n)
        .map(|k| {
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, &v) in samples.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                // T_k(-cos θ) = (-1)^k cos(kθ)
                sum += v * (w * (PI * (k * j) as f64 / nf).cos());
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let scale = if k == 0 || k == n { 1.0 / nf } else { 2.0 / nf };
            sum * (sign * scale)
        })
        .collect();
    let x = (2.0 * r - a - b) / (b - a);
    let jacobian = 2.0 / (b - a);
    let magnitude = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = Vec::with_capacity(max_order + 1);
    for order in 0..=max_order {
        let value = clenshaw(&coeffs, x) * jacobian.powi(order as i32);
        let tail: f64 = coeffs.iter().rev().take(3).map(|c| c.norm()).sum();
        let rounding = f64::EPSILON * magnitude * nf.powi(2 * order as i32);
        out.push(Estimate {
            value,
            error: (tail + rounding) * jacobian.powi(order as i32),
        });
        coeffs = differentiate_series(&coeffs);
    }
    out
}

fn clenshaw(coeffs: &[Complex64], x: f64) -> Complex64 {
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + b1 * (2.0 * x) - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + b1 * x - b2
}

fn differentiate_series(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len();
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    if n < 2 {
        return d;
    }
    for k in (1..n).rev() {
        let next = if k + 1 < n { d[k + 1] } else { Complex64::new(0.0, 0.0) };
        d[k - 1] = next + c[k] * (2.0 * k as f64);
    }
    d[0] *= 0.5;
    d
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn stencil(g: &Sampler<'_>, order: usize, r: f64, h: f64) -> Result<Complex64, LiftError> {
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..=order {
        let x = r + (0.5 * order as f64 - j as f64) * h;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += g(x)? * (sign * binomial(order, j));
    }
    Ok(sum / h.powi(order as i32))
}

fn central_difference(g: &Sampler<'_>, order: usize, r: f64, step: f64, levels: usize) -> Result<Estimate, LiftError> {
    if order == 0 {
        return Ok(Estimate {
            value: g(r)?,
            error: 0.0,
        });
    }
    if r - 0.5 * order as f64 * step <= 0.0 {
        return Err(LiftError::Engine(format!(
            "finite-difference stencil of order {order} with step {step} reaches s ≤ 0 from r = {r}"
        )));
    }
    let mut previous: Vec<Complex64> = Vec::new();
    let mut error = f64::INFINITY;
    let mut h = step;
    for level in 0..=levels {
        h = step / f64::powi(2.0, level as i32);
        let mut row = vec![stencil(g, order, r, h)?];
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
    let value = previous[levels];
    if levels == 0 {
        error = (stencil(g, order, r, 0.5 * h)? - value).norm() * 4.0 / 3.0;
    }
    let rounding = f64::EPSILON * g(r)?.norm().max(value.norm() * h.powi(order as i32)) * f64::powi(2.0, order as i32)
        / h.powi(order as i32);
    let error = error + rounding;
    Ok(Estimate { value, error })
}
