use num_complex::Complex64;

use super::KernelError;
use crate::expr::Expression;
use crate::quad::{integrate_finite, try_integrate_finite, QuadratureSpec};

const EVEN_TOL: f64 = 1e-12;
const EVEN_PROBES: [f64; 10] = [0.1, 0.35, 0.6, 0.95, 1.3, 1.7, 2.2, 2.8, 3.5, 4.3];

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `4^{-k} · 2k · C(2k, k)`, the weight of the Taylor remainder integral.
fn remainder_weight(k: u64) -> f64 {
    2.0 * 4f64.powi(-(k as i32)) * k as f64 * binomial(2 * k, k)
}

fn real(e: &Expression, s: f64) -> Result<f64, KernelError> {
    let v = e.eval(Complex64::new(s, 0.0))?;
    Ok(v.re)
}

/// `g^{(k)}(t)` for the function `g` with `f(x) = g(x²)`, from
///
/// ```text
/// g^{(k)}(t) / k! = 4^{-k} 2k C(2k,k) ∫_0^1 (1 - s²)^{k-1} f^{(2k)}(s√t) / (2k)! ds.
/// ```
pub fn even_to_squared(f: &Expression, k: u32, t: f64, spec: &QuadratureSpec) -> Result<f64, KernelError> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(KernelError::InvalidParameter(format!("t must be nonnegative, got {t}")));
    }
    for s in EVEN_PROBES {
        let gap = (real(f, s)? - real(f, -s)?).abs();
        if gap > EVEN_TOL {
            return Err(KernelError::NotEven { at: s, gap });
        }
    }
    let root = t.sqrt();
    if k == 0 {
        return real(f, root);
    }
    let k = k as u64;
    let d = f.nth_derivative(2 * k as usize);
    let power = k as i32 - 1;
    let q = try_integrate_finite(
        |s| real(&d, s * root).map(|v| (1.0 - s * s).powi(power) * v),
        0.0,
        1.0,
        spec,
    )?;
    Ok(factorial(k) * remainder_weight(k) * q.value / factorial(2 * k))
}

/// The constant `C(k)` in `|g^{(k)}(t)| ≤ C(k) sup_{0≤s≤√t} |f^{(2k)}(s)|`,
/// with the remainder integral `∫_0^1 (1 - s²)^{k-1} ds` evaluated by quadrature.
pub fn derivative_bound_constant(k: u32, spec: &QuadratureSpec) -> Result<f64, KernelError> {
    if k == 0 {
        return Ok(1.0);
    }
    let k = k as u64;
    let power = k as i32 - 1;
    let q = integrate_finite(|s| (1.0 - s * s).powi(power), 0.0, 1.0, spec)?;
    Ok(factorial(k) * remainder_weight(k) * q.value / factorial(2 * k))
}
