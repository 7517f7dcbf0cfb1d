use std::f64::consts::PI;

use super::{Dimension, TransformError};
use crate::quad::gauss_legendre;

const CIRCLE_POINTS: usize = 64;
const COLATITUDE_ORDER: usize = 24;
const LONGITUDE_POINTS: usize = 48;

/// Mean of `F` over the sphere of radius `r` in `R^n`, `n ≤ 3`.
///
/// For `n = 1` this is the even part `(F(r) + F(-r)) / 2`. The product rules
/// for `n = 2, 3` integrate polynomials of degree well beyond 12 exactly.
pub fn spherical_mean<F>(f: F, n: Dimension, r: f64) -> Result<f64, TransformError>
where
    F: Fn(&[f64]) -> f64,
{
    if !(r >= 0.0 && r.is_finite()) {
        return Err(TransformError::InvalidRadius(r));
    }
    match n.get() {
        1 => Ok(0.5 * (f(&[r]) + f(&[-r]))),
        2 => {
            let h = 2.0 * PI / CIRCLE_POINTS as f64;
            let sum: f64 = (0..CIRCLE_POINTS)
                .map(|k| {
                    let t = k as f64 * h;
                    f(&[r * t.cos(), r * t.sin()])
                })
                .sum();
            Ok(sum / CIRCLE_POINTS as f64)
        }
        3 => Ok(sphere_rule(&f, r, COLATITUDE_ORDER, LONGITUDE_POINTS)),
        other => Err(TransformError::Unsupported(format!(
            "spherical means are implemented for n ≤ 3, got {other}"
        ))),
    }
}

/// Gauss-Legendre in `cos θ` times the periodic trapezoid in longitude.
pub(crate) fn sphere_rule<F>(f: &F, r: f64, colatitude: usize, longitude: usize) -> f64
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let (nodes, weights) = gauss_legendre(colatitude);
    let h = 2.0 * PI / longitude as f64;
    let mut total = 0.0;
    for (&z, &w) in nodes.iter().zip(&weights) {
        let rho = (1.0 - z * z).sqrt();
        let mut ring = 0.0;
        for k in 0..longitude {
            let t = k as f64 * h;
            ring += f(&[r * rho * t.cos(), r * rho * t.sin(), r * z]);
        }
        total += w * ring / longitude as f64;
    }
    0.5 * total
}
