use std::convert::Infallible;
use std::fmt::Display;

use log::{debug, warn};

use super::kronrod::try_integrate_finite;
use super::{wynn_epsilon, QuadError, QuadratureResult, QuadratureSpec};
use crate::bessel::{j_tilde_unchecked, j_unchecked, BesselZeros, Order};

// consecutive accelerated estimates that must agree before stopping
const AGREEMENT_RUN: usize = 3;
// consecutive negligible panels that end the sum outright
const NEGLIGIBLE_RUN: usize = 3;
const DIVERGENCE_WINDOW: usize = 20;

/// `∫_0^∞ g(s) J̃_ν(ωs) ds` for a fallible `g`.
pub fn try_integrate_bessel_halfline<F, E>(
    g: F,
    order: Order,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: Display,
{
    integrate_between_zeros(g, order, omega, spec, j_tilde_unchecked)
}

/// `∫_0^∞ g(s) J̃_ν(ωs) ds`, split at the zeros of `J_ν` and accelerated.
pub fn integrate_bessel_halfline<F>(
    g: F,
    order: Order,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    try_integrate_bessel_halfline(|s| Ok::<f64, Infallible>(g(s)), order, omega, spec)
}

/// `∫_0^∞ g(s) J_ν(ωs) ds` for a fallible `g`.
pub fn try_integrate_bessel_j_halfline<F, E>(
    g: F,
    order: Order,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: Display,
{
    integrate_between_zeros(g, order, omega, spec, j_unchecked)
}

/// `∫_0^∞ g(s) J_ν(ωs) ds` with the ordinary Bessel kernel.
pub fn integrate_bessel_j_halfline<F>(
    g: F,
    order: Order,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    try_integrate_bessel_j_halfline(|s| Ok::<f64, Infallible>(g(s)), order, omega, spec)
}

fn integrate_between_zeros<F, E>(
    mut g: F,
    order: Order,
    omega: f64,
    spec: &QuadratureSpec,
    kernel: fn(i32, f64) -> f64,
) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: Display,
{
    spec.validate()?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(QuadError::InvalidSpec(format!("omega must be positive, got {omega}")));
    }
    let twice_nu = order.twice_nu();
    let mut integrand = |s: f64| g(s).map(|v| v * kernel(twice_nu, omega * s));
    let mut zeros = BesselZeros::new(order);

    let first = zeros.next_zero()? / omega;
    let head = try_integrate_finite(&mut integrand, 0.0, first, spec)?;
    let mut sum = head.value;
    let mut panel_error = head.error_estimate;
    let mut evaluations = head.evaluations;
    let mut panels_converged = head.converged;

    let mut sums = vec![sum];
    let mut terms: Vec<f64> = Vec::new();
    let mut estimates: Vec<f64> = Vec::new();
    let mut negligible = 0usize;
    let mut left = first;
    let window = 2 * spec.accelerator_depth + 1;

    let finish = |value: f64, extra: f64, evaluations: usize, converged: bool, panel_error: f64| QuadratureResult {
        value,
        error_estimate: panel_error + extra,
        evaluations,
        converged,
    };

    for k in 1..=spec.max_oscillations {
        let right = zeros.next_zero()? / omega;
        let panel_spec = QuadratureSpec {
            abs_tol: spec.abs_tol.max(1e-3 * spec.tolerance(sum)),
            ..*spec
        };
        let panel = match try_integrate_finite(&mut integrand, left, right, &panel_spec) {
            Ok(p) => p,
            Err(e @ (QuadError::Integrand { .. } | QuadError::PoisonedEvaluation { .. }))
                if negligible_tail(&terms, spec.abs_tol) =>
            {
                warn!("truncating Bessel tail at s = {left}: {e}");
                return Ok(finish(sum, tail_bound(&terms), evaluations, panels_converged, panel_error));
            }
            Err(e) => return Err(e),
        };
        evaluations += panel.evaluations;
        panel_error += panel.error_estimate;
        panels_converged &= panel.converged;
        sum += panel.value;
        terms.push(panel.value);
        sums.push(sum);
        left = right;

        let tol = spec.tolerance(sum);
        if panel.value.abs() <= 0.1 * tol {
            negligible += 1;
        } else {
            negligible = 0;
        }
        if negligible >= NEGLIGIBLE_RUN {
            debug!("Bessel sum settled after {k} panels");
            return Ok(finish(sum, tail_bound(&terms), evaluations, panels_converged, panel_error));
        }

        if sums.len() >= 5 {
            let start = sums.len().saturating_sub(window);
            if let Some((estimate, _)) = wynn_epsilon(&sums[start..]) {
                estimates.push(estimate);
            }
            if estimates.len() >= AGREEMENT_RUN && shrinking(&terms) {
                let recent = &estimates[estimates.len() - AGREEMENT_RUN..];
                let spread: f64 = recent.windows(2).map(|p| (p[1] - p[0]).abs()).sum();
                if spread <= spec.tolerance(recent[AGREEMENT_RUN - 1]) {
                    debug!("epsilon estimates agree after {k} panels");
                    return Ok(finish(recent[AGREEMENT_RUN - 1], spread, evaluations, panels_converged, panel_error));
                }
            }
        }

        if k >= 2 * DIVERGENCE_WINDOW && k % DIVERGENCE_WINDOW == 0 && !decreasing(&terms) {
            warn!("Bessel tail terms are not decreasing after {k} panels");
            let (best, spread) = best_estimate(&estimates, sum);
            return Ok(finish(best, spread, evaluations, false, panel_error));
        }
    }
    let (best, spread) = best_estimate(&estimates, sum);
    warn!("Bessel sum not converged within {} oscillations", spec.max_oscillations);
    Ok(finish(best, spread, evaluations, false, panel_error))
}

fn negligible_tail(terms: &[f64], abs_tol: f64) -> bool {
    terms.len() >= NEGLIGIBLE_RUN && terms[terms.len() - NEGLIGIBLE_RUN..].iter().all(|t| t.abs() < abs_tol)
}

// epsilon also "sums" divergent alternating series, so require shrinking terms
fn shrinking(terms: &[f64]) -> bool {
    let n = terms.len();
    if n < 6 {
        return false;
    }
    let mean = |slice: &[f64]| slice.iter().map(|t| t.abs()).sum::<f64>();
    mean(&terms[n - 3..]) < mean(&terms[n - 6..n - 3])
}

fn tail_bound(terms: &[f64]) -> f64 {
    terms.last().map_or(0.0, |t| t.abs())
}

fn decreasing(terms: &[f64]) -> bool {
    let n = terms.len();
    let mean = |slice: &[f64]| slice.iter().map(|t| t.abs()).sum::<f64>() / slice.len() as f64;
    let recent = mean(&terms[n - DIVERGENCE_WINDOW..]);
    let before = mean(&terms[n - 2 * DIVERGENCE_WINDOW..n - DIVERGENCE_WINDOW]);
    recent < before
}

fn best_estimate(estimates: &[f64], sum: f64) -> (f64, f64) {
    match estimates {
        [.., a, b] => (*b, (b - a).abs()),
        [b] => (*b, (b - sum).abs()),
        [] => (sum, f64::INFINITY),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn laplace_transform_of_cosine() {
        let order = Order::new(-1).unwrap();
        let r = integrate_bessel_halfline(|s| (-s).exp(), order, 1.0, &QuadratureSpec::default()).unwrap();
        let exact = (2.0 / PI).sqrt() * 0.5;
        assert!((r.value - exact).abs() < 1e-10, "{r:?}");
        assert!(r.converged);
    }

    #[test]
    fn gaussian_weighted_j0_against_trapezoid() {
        let order = Order::new(0).unwrap();
        let r = integrate_bessel_halfline(|s| s * (-s * s).exp(), order, 1.0, &QuadratureSpec::default()).unwrap();
        // brute-force trapezoid oracle on [0, 30], 10^6 points
        let n = 1_000_000;
        let h = 30.0 / n as f64;
        let f = |s: f64| s * (-s * s).exp() * j_unchecked(0, s.max(1e-300));
        let mut trap = 0.5 * (f(0.0) + f(30.0));
        for i in 1..n {
            trap += f(i as f64 * h);
        }
        trap *= h;
        assert!((r.value - trap).abs() < 1e-9, "{} vs {trap}", r.value);
        // closed form e^{-1/4}/2
        assert!((r.value - 0.5 * (-0.25f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn slowly_decaying_alternating_tail() {
        // ∫ J_0(s) ds = 1
        let order = Order::new(0).unwrap();
        let r = integrate_bessel_halfline(|_| 1.0, order, 1.0, &QuadratureSpec::default()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - 1.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn growing_integrand_is_not_converged() {
        let order = Order::new(0).unwrap();
        let r = integrate_bessel_halfline(|s| s, order, 1.0, &QuadratureSpec::default()).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn tail_failure_after_negligible_terms_truncates() {
        let order = Order::new(-1).unwrap();
        let r = try_integrate_bessel_halfline(
            |s| if s > 60.0 { Err("overflow") } else { Ok((-s).exp()) },
            order,
            1.0,
            &QuadratureSpec::default().with_rel_tol(1e-15).with_abs_tol(1e-20),
        );
        // terms near s = 60 are ~1e-26, below abs_tol
        let r = r.unwrap();
        assert!((r.value - (2.0 / PI).sqrt() * 0.5).abs() < 1e-12);
    }

    #[test]
    fn tail_failure_with_live_terms_is_an_error() {
        let order = Order::new(-1).unwrap();
        let r = try_integrate_bessel_halfline(
            |s| if s > 3.0 { Err("overflow") } else { Ok((-s).exp()) },
            order,
            1.0,
            &QuadratureSpec::default(),
        );
        assert!(matches!(r, Err(QuadError::Integrand { .. })));
    }

    #[test]
    fn rejects_nonpositive_frequency() {
        let order = Order::new(0).unwrap();
        assert!(integrate_bessel_halfline(|s| (-s).exp(), order, 0.0, &QuadratureSpec::default()).is_err());
    }
}
