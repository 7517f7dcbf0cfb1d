use super::KernelError;
use crate::quad::{integrate_finite, QuadratureSpec};
use crate::transform::sphere::sphere_rule;

const KIRCHHOFF_ORDERS: (usize, usize) = (24, 48);
const KIRCHHOFF_TOL: f64 = 1e-10;

/// `u(t, x) = (1/2) ∫_{x-t}^{x+t} φ(y) dy`, the solution of `u_tt = u_xx`
/// with `u(0) = 0`, `u_t(0) = φ`. Odd in `t`.
pub fn dalembert<F>(phi: F, t: f64, x: f64, spec: &QuadratureSpec) -> Result<f64, KernelError>
where
    F: Fn(f64) -> f64,
{
    if t == 0.0 {
        return Ok(0.0);
    }
    let (lo, hi) = if t > 0.0 { (x - t, x + t) } else { (x + t, x - t) };
    let q = integrate_finite(&phi, lo, hi, spec)?;
    // cancelling data (odd φ about x) has a tiny value; measure against ∫|φ| instead
    if !q.converged && q.error_estimate > spec.rel_tol * integrate_finite(|y| phi(y).abs(), lo, hi, spec)?.value {
        return Err(KernelError::NotConverged(format!(
            "d'Alembert integral on [{lo}, {hi}] reached {:.3e}",
            q.error_estimate
        )));
    }
    Ok(0.5 * t.signum() * q.value)
}

/// `u(t, x) = t · mean of φ(x - tθ)` over the unit sphere in `R^3`.
///
/// The product rule runs at orders (24, 48) and again at (48, 96); disagreement
/// beyond `1e-10 · max(1, |u|)` is an error.
pub fn kirchhoff<F>(phi: F, t: f64, x: [f64; 3]) -> Result<f64, KernelError>
where
    F: Fn([f64; 3]) -> f64,
{
    let radius = t.abs();
    let shifted = |y: &[f64]| phi([x[0] - y[0], x[1] - y[1], x[2] - y[2]]);
    let (m, k) = KIRCHHOFF_ORDERS;
    let coarse = sphere_rule(&shifted, radius, m, k);
    let fine = sphere_rule(&shifted, radius, 2 * m, 2 * k);
    let gap = (t * (fine - coarse)).abs();
    if gap > KIRCHHOFF_TOL * (t * fine).abs().max(1.0) {
        return Err(KernelError::NotConverged(format!(
            "sphere rule orders ({m}, {k}) and ({}, {}) differ by {gap:.3e}",
            2 * m,
            2 * k
        )));
    }
    Ok(t * fine)
}
