use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radialft::expr::{parse, Expression};
use radialft::kernels::{
    dalembert, derivative_bound_constant, even_to_squared, heat_kernel, kernel_of_multiplier, kirchhoff,
    projection_kernel, projection_profile, resolvent_kernel, resolvent_profile, sech_kernel, KernelError,
};
use radialft::lift::{lift_once, lift_once_fn, DerivativeEngine};
use radialft::quad::{integrate_halfline, QuadratureSpec};
use radialft::transform::{sphere_surface, Dimension, RadialProfile};

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

/// `G_n` written as an expression in `s` for a fixed `z`.
fn resolvent_expression(n: u32, z: Complex64) -> Expression {
    let c = (-z).sqrt();
    let h = resolvent_profile(n).unwrap();
    Expression::constant(c.powi(n as i32 - 2)) * h.substitute(&(Expression::constant(c) * Expression::var()))
}

fn projection_expression(n: u32, e: f64) -> Expression {
    let a = e.sqrt();
    Expression::real(a.powi(n as i32)) * projection_profile(n).unwrap().substitute(&(Expression::real(a) * Expression::var()))
}

#[test]
fn seven_dimensional_resolvent_against_numeric_lift() {
    let z = Complex64::new(-1.0, 0.0);
    let g5 = |r: f64| resolvent_kernel(dim(5), z, r);
    let lifted = lift_once_fn(g5, 1.0, DerivativeEngine::chebyshev(32, 0.8, 1.2)).unwrap();
    let g7 = resolvent_kernel(dim(7), z, 1.0).unwrap();
    assert!((lifted.value - g7).norm() < 1e-8, "{} vs {g7}", lifted.value);
}

#[test]
fn projection_three_from_one() {
    let f = RadialProfile::parse("sin(2*s)/(pi*s)").unwrap();
    for r in [0.3, 1.0, 2.7] {
        let lifted = lift_once(&f, r, DerivativeEngine::Analytic).unwrap().value.re;
        assert!((lifted - projection_kernel(dim(3), 4.0, r).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn catalog_is_closed_under_the_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let r: f64 = rng.gen_range(0.1..5.0);
        for z in [Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 1.0), Complex64::new(-0.5, -3.0)] {
            for n in [1, 3, 5, 7] {
                let f = RadialProfile::Analytic(resolvent_expression(n, z));
                let lifted = lift_once(&f, r, DerivativeEngine::Analytic).unwrap().value;
                let next = resolvent_kernel(dim(n + 2), z, r).unwrap();
                assert!((lifted - next).norm() <= 1e-10 * next.norm().max(1.0), "n={n} z={z} r={r}");
            }
        }
        let e: f64 = rng.gen_range(0.2..4.0);
        for n in [1, 3, 5] {
            let f = RadialProfile::Analytic(projection_expression(n, e));
            let lifted = lift_once(&f, r, DerivativeEngine::Analytic).unwrap().value.re;
            let next = projection_kernel(dim(n + 2), e, r).unwrap();
            assert!((lifted - next).abs() <= 1e-10 * next.abs().max(1.0), "n={n} E={e} r={r}");
        }
        let sech1 = RadialProfile::parse("sech(pi*s)").unwrap();
        let lifted = lift_once(&sech1, r, DerivativeEngine::Analytic).unwrap().value.re;
        assert!((lifted - sech_kernel(dim(3), r).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn multiplier_examples() {
    let heat = kernel_of_multiplier(&parse("exp(-s)").unwrap(), dim(3), 1.0, &spec()).unwrap();
    assert!((heat.value.re - (4.0 * PI).powf(-1.5) * (-0.25f64).exp()).abs() < 1e-7);
    assert!((heat.value.re - heat_kernel(dim(3), 1.0, 1.0).unwrap()).abs() < 1e-7);
    let g3 = kernel_of_multiplier(&parse("1/(s+1)").unwrap(), dim(3), 1.0, &spec()).unwrap();
    assert!((g3.value.re - (-1f64).exp() / (4.0 * PI)).abs() < 1e-7, "{g3:?}");
    let g1 = kernel_of_multiplier(&parse("1/(s+1)").unwrap(), dim(1), 2.0, &spec()).unwrap();
    assert!((g1.value.re - 0.5 * (-2f64).exp()).abs() < 1e-7, "{g1:?}");
}

#[test]
fn multiplier_matches_resolvent_catalog() {
    for (zt, z) in [("1", Complex64::new(-1.0, 0.0)), ("2 - i", Complex64::new(-2.0, 1.0))] {
        let f = parse(&format!("1/(s + {zt})")).unwrap();
        for n in [1, 3] {
            for r in [0.5, 1.0, 2.0] {
                let k = kernel_of_multiplier(&f, dim(n), r, &spec()).unwrap().value;
                let g = resolvent_kernel(dim(n), z, r).unwrap();
                assert!((k - g).norm() <= 1e-6, "n={n} z={z} r={r}: {k} vs {g}");
            }
        }
    }
}

#[test]
fn heat_kernel_has_unit_mass() {
    for n in [1, 3] {
        let p = n as i32 - 1;
        let q = integrate_halfline(|r| heat_kernel(dim(n), 0.7, r).unwrap() * r.powi(p), 0.0, &spec()).unwrap();
        assert!((sphere_surface(dim(n)) * q.value - 1.0).abs() < 1e-8);
    }
}

fn erf_series(x: f64) -> f64 {
    // Maclaurin series 2/√π Σ (-1)^k x^{2k+1} / (k! (2k+1))
    let mut term = x;
    let mut sum = x;
    for k in 1..60 {
        term *= -x * x / k as f64;
        sum += term / (2 * k + 1) as f64;
    }
    2.0 / PI.sqrt() * sum
}

#[test]
fn dalembert_examples() {
    assert!((dalembert(|_| 1.0, 2.0, 0.0, &spec()).unwrap() - 2.0).abs() < 1e-14);
    assert!(dalembert(|y| y, 1.7, 0.0, &spec()).unwrap().abs() < 1e-14);
    let g = dalembert(|y| (-y * y).exp(), 1.0, 0.0, &spec()).unwrap();
    assert!((g - 0.5 * PI.sqrt() * erf_series(1.0)).abs() < 1e-10);
    assert_eq!(dalembert(|y| y * y, -1.0, 0.3, &spec()).unwrap(), -dalembert(|y| y * y, 1.0, 0.3, &spec()).unwrap());
}

fn gaussian(y: [f64; 3]) -> f64 {
    (-(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])).exp()
}

#[test]
fn kirchhoff_examples() {
    for t in [0.3, 1.0, 2.5] {
        let u = kirchhoff(gaussian, t, [0.0; 3]).unwrap();
        assert!((u - t * (-t * t).exp()).abs() < 1e-9);
        assert!((kirchhoff(|_| 1.0, t, [0.4, -1.0, 2.0]).unwrap() - t).abs() < 1e-12);
    }
}

#[test]
fn kirchhoff_solves_the_wave_equation() {
    let h = 1e-2;
    let u = |t: f64, x: [f64; 3]| kirchhoff(gaussian, t, x).unwrap();
    let d2 = |f: &dyn Fn(f64) -> f64| (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h);
    let t = 0.5;
    let utt = d2(&|d| u(t + d, [0.0; 3]));
    let mut laplacian = 0.0;
    for axis in 0..3 {
        laplacian += d2(&|d| {
            let mut x = [0.0; 3];
            x[axis] = d;
            u(t, x)
        });
    }
    assert!((utt - laplacian).abs() <= 1e-4, "u_tt = {utt}, Δu = {laplacian}");
}

#[test]
fn kirchhoff_reports_unresolved_data() {
    let rough = |y: [f64; 3]| (60.0 * y[0] + 1.0).cos() * (57.0 * y[2]).cos() + 2.0;
    assert!(matches!(kirchhoff(rough, 3.0, [0.0; 3]), Err(KernelError::NotConverged(_))));
}

#[test]
fn even_to_squared_examples() {
    let cos = parse("cos(s)").unwrap();
    assert!((even_to_squared(&cos, 1, 0.0, &spec()).unwrap() + 0.5).abs() < 1e-15);
    assert!((even_to_squared(&cos, 0, PI * PI, &spec()).unwrap() + 1.0).abs() < 1e-15);
    let gauss = parse("exp(-s^2)").unwrap();
    for k in 1..=3 {
        let g = even_to_squared(&gauss, k, 1.0, &spec()).unwrap();
        let expected = if k % 2 == 0 { 1.0 } else { -1.0 } * (-1f64).exp();
        assert!((g - expected).abs() < 1e-9, "k={k}: {g}");
    }
    assert!(matches!(
        even_to_squared(&parse("exp(s)").unwrap(), 1, 1.0, &spec()),
        Err(KernelError::NotEven { .. })
    ));
}

#[test]
fn taylor_coefficients_at_origin() {
    for text in ["cos(s)", "sech(s)"] {
        let f = parse(text).unwrap();
        let mut kfact = 1.0;
        for k in 1..=4u32 {
            kfact *= k as f64;
            let g = even_to_squared(&f, k, 0.0, &spec()).unwrap() / kfact;
            let twok_fact: f64 = (1..=2 * k).map(|i| i as f64).product();
            let d = f.nth_derivative(2 * k as usize).eval_real(0.0).unwrap() / twok_fact;
            assert!((g - d).abs() < 1e-10, "{text} k={k}: {g} vs {d}");
        }
    }
}

#[test]
fn derivative_bound_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for text in ["exp(-s^2)", "cos(s)", "sech(s)", "cos(s^2)*exp(-s^2)"] {
        let f = parse(text).unwrap();
        for k in 1..=4u32 {
            let c = derivative_bound_constant(k, &spec()).unwrap();
            let d = f.nth_derivative(2 * k as usize);
            for _ in 0..5 {
                let t: f64 = rng.gen_range(0.0..4.0);
                let sup = (0..=400)
                    .map(|i| d.eval_real(t.sqrt() * i as f64 / 400.0).unwrap().abs())
                    .fold(0.0, f64::max);
                let g = even_to_squared(&f, k, t, &spec()).unwrap();
                assert!(g.abs() <= c * sup * (1.0 + 1e-9), "{text} k={k} t={t}");
            }
        }
    }
}
