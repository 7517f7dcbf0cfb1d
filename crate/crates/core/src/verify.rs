//! Self-check batteries behind `radialft verify`.
//!
//! Every random point comes from a ChaCha stream seeded by the caller, so a
//! report is reproducible from its seed.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bessel::{bessel_j, bessel_j_tilde, bessel_zeros, Order};
use crate::expr::{parse, Expression, Func};
use crate::kernels::{kirchhoff, projection_kernel, resolvent_kernel, resolvent_profile, sech_kernel};
use crate::lift::{corollary_coefficients, iterate_operator_symbolic, lift_once, lift_once_fn, DerivativeEngine};
use crate::quad::{integrate_bessel_j_halfline, integrate_finite, integrate_halfline, QuadratureSpec};
use crate::transform::{radial_fourier, radial_fourier_fn, Dimension, RadialProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Expr,
    Bessel,
    Quad,
    Transform,
    Recursion,
    Coefficients,
    Kernels,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Expr,
        Suite::Bessel,
        Suite::Quad,
        Suite::Transform,
        Suite::Recursion,
        Suite::Coefficients,
        Suite::Kernels,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Expr => "expr",
            Suite::Bessel => "bessel",
            Suite::Quad => "quad",
            Suite::Transform => "transform",
            Suite::Recursion => "recursion",
            Suite::Coefficients => "coefficients",
            Suite::Kernels => "kernels",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Worst observed discrepancy, or the error that stopped the check.
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}/{}: {}", self.suite, self.name, self.detail)
    }
}

type Outcome = Result<f64, String>;

fn check(suite: Suite, name: &str, tol: f64, worst: Outcome) -> Check {
    match worst {
        Ok(w) => Check {
            suite,
            name: name.to_string(),
            passed: w <= tol,
            detail: format!("worst {w:.3e} (tol {tol:.0e})"),
        },
        Err(e) => Check {
            suite,
            name: name.to_string(),
            passed: false,
            detail: e,
        },
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn dim(n: u32) -> Dimension {
    Dimension::new(n).expect("positive dimension")
}

/// Runs one suite with random points drawn from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    match suite {
        Suite::Expr => expr_suite(&mut rng),
        Suite::Bessel => bessel_suite(&mut rng),
        Suite::Quad => quad_suite(),
        Suite::Transform => transform_suite(),
        Suite::Recursion => recursion_suite(&mut rng),
        Suite::Coefficients => coefficient_suite(),
        Suite::Kernels => kernel_suite(&mut rng),
    }
}

pub fn run_all(seed: u64) -> Vec<Check> {
    Suite::ALL.iter().flat_map(|&s| run_suite(s, seed)).collect()
}

const PROFILES: [&str; 6] = [
    "exp(-s^2)*(1 - 2*s^2)",
    "sech(pi*s)*tanh(s)",
    "sqrt(1 + s^2)/cosh(s)",
    "log(2 + s)*sin(3*s)",
    "s^3 - 2*s + sinh(s/2)",
    "(s + 1)^(-2)*cos(s^2)",
];

fn expr_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let exprs: Result<Vec<Expression>, _> = PROFILES.iter().map(|t| parse(t)).collect();
    let exprs = match exprs {
        Ok(e) => e,
        Err(e) => return vec![check(Suite::Expr, "parse", 0.0, Err(err(e)))],
    };
    let points: Vec<f64> = (0..20).map(|_| rng.gen_range(0.1..3.0)).collect();
    let sweep = |f: &dyn Fn(&Expression, f64) -> Outcome| -> Outcome {
        let mut worst: f64 = 0.0;
        for e in &exprs {
            for &s in &points {
                worst = worst.max(f(e, s)?);
            }
        }
        Ok(worst)
    };
    let derivative = sweep(&|e, s| {
        let d = e.differentiate().eval_real(s).map_err(err)?;
        let h = 1e-4;
        let fd = |h: f64| -> Outcome { Ok((e.eval_real(s + h).map_err(err)? - e.eval_real(s - h).map_err(err)?) / (2.0 * h)) };
        let rich = (4.0 * fd(h / 2.0)? - fd(h)?) / 3.0;
        Ok((d - rich).abs() / d.abs().max(1.0))
    });
    let round_trip = sweep(&|e, s| {
        let back = parse(&e.to_string()).map_err(err)?;
        let (a, b) = (e.eval_real(s).map_err(err)?, back.eval_real(s).map_err(err)?);
        Ok((a - b).abs() / a.abs().max(1e-300))
    });
    let simplify = sweep(&|e, s| {
        let (a, b) = (e.eval_real(s).map_err(err)?, e.simplify().eval_real(s).map_err(err)?);
        Ok((a - b).abs() / (1.0 + a.abs()))
    });
    vec![
        check(Suite::Expr, "derivative-vs-finite-difference", 1e-6, derivative),
        check(Suite::Expr, "print-parse-round-trip", 1e-14, round_trip),
        check(Suite::Expr, "simplify-preserves-values", 1e-14, simplify),
    ]
}

fn bessel_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let identity = (|| -> Outcome {
        let mut worst: f64 = 0.0;
        for twice_nu in -1..=4 {
            let order = Order::new(twice_nu).map_err(err)?;
            for _ in 0..20 {
                let x: f64 = rng.gen_range(0.1..30.0);
                let h = 1e-5 * x.max(1.0);
                let fd = (bessel_j_tilde(order, x + h).map_err(err)? - bessel_j_tilde(order, x - h).map_err(err)?) / (2.0 * h);
                let exact = -x * bessel_j_tilde(order.next(), x).map_err(err)?;
                worst = worst.max((fd - exact).abs() / exact.abs().max(1e-3));
            }
        }
        Ok(worst)
    })();
    let half = (|| -> Outcome {
        let order = Order::new(1).map_err(err)?;
        let mut worst: f64 = 0.0;
        for i in 1..=60 {
            let x = i as f64 * 0.5;
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            worst = worst.max((bessel_j(order, x).map_err(err)? - exact).abs());
        }
        Ok(worst)
    })();
    let zeros = (|| -> Outcome {
        let order = Order::new(0).map_err(err)?;
        let z = bessel_zeros(order, 30).map_err(err)?;
        let mut worst: f64 = 0.0;
        for x in z {
            worst = worst.max(bessel_j(order, x).map_err(err)?.abs());
        }
        Ok(worst)
    })();
    vec![
        check(Suite::Bessel, "derivative-identity", 1e-6, identity),
        check(Suite::Bessel, "half-order-closed-form", 1e-13, half),
        check(Suite::Bessel, "zeros-are-roots", 1e-13, zeros),
    ]
}

fn quad_suite() -> Vec<Check> {
    let spec = QuadratureSpec::default();
    let finite = integrate_finite(f64::sin, 0.0, PI, &spec).map(|q| (q.value - 2.0).abs()).map_err(err);
    let halfline = integrate_halfline(|s| (-s).exp() * s * s, 0.0, &spec).map(|q| (q.value - 2.0).abs()).map_err(err);
    let order = Order::new(0).expect("order zero");
    // ∫ e^{-s} J_0(s) s ds = 1/(2√2)
    let bessel = integrate_bessel_j_halfline(|s| (-s).exp() * s, order, 1.0, &spec)
        .map(|q| (q.value - 0.5 / 2f64.sqrt()).abs())
        .map_err(err);
    // ∫ J_0(s) ds = 1 needs the accelerator
    let alternating = integrate_bessel_j_halfline(|_| 1.0, order, 1.0, &spec)
        .map(|q| (q.value - 1.0).abs())
        .map_err(err);
    vec![
        check(Suite::Quad, "finite-interval", 1e-12, finite),
        check(Suite::Quad, "half-line", 1e-10, halfline),
        check(Suite::Quad, "bessel-damped", 1e-9, bessel),
        check(Suite::Quad, "bessel-accelerated", 1e-8, alternating),
    ]
}

fn transform_suite() -> Vec<Check> {
    let spec = QuadratureSpec::default();
    let gaussian = (|| -> Outcome {
        let f = RadialProfile::parse("exp(-pi*s^2)").map_err(err)?;
        let mut worst: f64 = 0.0;
        for n in 1..=6 {
            for r in [0.5, 1.0, 2.0] {
                let v = radial_fourier(&f, dim(n), r, &spec).map_err(err)?;
                worst = worst.max((v.value - Complex64::from((-PI * r * r).exp())).norm());
            }
        }
        Ok(worst)
    })();
    let sech = (|| -> Outcome {
        let f = RadialProfile::parse("sech(pi*s)").map_err(err)?;
        let mut worst: f64 = 0.0;
        for r in [0.25, 0.5, 1.0, 2.0] {
            let v = radial_fourier(&f, dim(3), r, &spec).map_err(err)?;
            worst = worst.max((v.value.re - sech_kernel(dim(3), r).map_err(err)?).abs());
        }
        Ok(worst)
    })();
    vec![
        check(Suite::Transform, "gaussian-fixed-point", 1e-8, gaussian),
        check(Suite::Transform, "sech-three-dimensions", 1e-7, sech),
    ]
}

fn recursion_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let sech = (|| -> Outcome {
        let f = RadialProfile::parse("sech(pi*s)").map_err(err)?;
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let r: f64 = rng.gen_range(0.05..5.0);
            let v = lift_once(&f, r, DerivativeEngine::Analytic).map_err(err)?;
            worst = worst.max((v.value.re - sech_kernel(dim(3), r).map_err(err)?).abs());
        }
        Ok(worst)
    })();
    let tight = QuadratureSpec::default().with_rel_tol(1e-13).with_abs_tol(1e-16);
    let numeric = (|| -> Outcome {
        let mut worst: f64 = 0.0;
        for text in ["exp(-s^2)", "exp(-s)"] {
            let f = RadialProfile::parse(text).map_err(err)?;
            for n in 1..=3 {
                for r in [0.5, 1.0] {
                    let transform = |rho: f64| radial_fourier_fn(|s| f.eval(s), dim(n), rho, &tight).map(|t| t.value);
                    let engine = DerivativeEngine::chebyshev(24, 0.75 * r, 1.25 * r);
                    let lifted = lift_once_fn(transform, r, engine).map_err(err)?;
                    let direct = radial_fourier(&f, dim(n + 2), r, &tight).map_err(err)?;
                    worst = worst.max((lifted.value - direct.value).norm());
                }
            }
        }
        Ok(worst)
    })();
    vec![
        check(Suite::Recursion, "sech-lift-closed-form", 1e-12, sech),
        check(Suite::Recursion, "lift-vs-direct-transform", 1e-6, numeric),
    ]
}

fn coefficient_suite() -> Vec<Check> {
    let mismatched: Vec<usize> = (1..=10)
        .filter(|&k| corollary_coefficients(k) != iterate_operator_symbolic(k))
        .collect();
    let equal = Check {
        suite: Suite::Coefficients,
        name: "closed-form-vs-operator-iteration".into(),
        passed: mismatched.is_empty(),
        detail: if mismatched.is_empty() {
            "k = 1..10 agree exactly".into()
        } else {
            format!("tables differ for k = {mismatched:?}")
        },
    };
    vec![equal]
}

fn kernel_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let resolvent = (|| -> Outcome {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let r: f64 = rng.gen_range(0.1..5.0);
            let z = Complex64::new(rng.gen_range(-3.0..-0.1), rng.gen_range(-3.0..3.0));
            let c = (-z).sqrt();
            for n in [1, 3, 5, 7] {
                let h = resolvent_profile(n).ok_or("missing catalog rung")?;
                let g = Expression::constant(c.powi(n as i32 - 2)) * h.substitute(&(Expression::constant(c) * Expression::var()));
                let lifted = lift_once(&RadialProfile::Analytic(g), r, DerivativeEngine::Analytic).map_err(err)?;
                let next = resolvent_kernel(dim(n + 2), z, r).map_err(err)?;
                worst = worst.max((lifted.value - next).norm() / next.norm().max(1.0));
            }
        }
        Ok(worst)
    })();
    let projection = (|| -> Outcome {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let r: f64 = rng.gen_range(0.1..5.0);
            let e: f64 = rng.gen_range(0.2..4.0);
            let a = e.sqrt();
            let p1 = RadialProfile::Analytic(Expression::apply(Func::Sin, Expression::real(a) * Expression::var()) / (PI * Expression::var()));
            let lifted = lift_once(&p1, r, DerivativeEngine::Analytic).map_err(err)?;
            worst = worst.max((lifted.value.re - projection_kernel(dim(3), e, r).map_err(err)?).abs());
        }
        Ok(worst)
    })();
    let wave = (|| -> Outcome {
        let gaussian = |y: [f64; 3]| (-(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])).exp();
        let mut worst: f64 = 0.0;
        for t in [0.25, 0.5, 1.0, 2.0] {
            let u = kirchhoff(gaussian, t, [0.0; 3]).map_err(err)?;
            worst = worst.max((u - t * (-t * t).exp()).abs());
        }
        Ok(worst)
    })();
    vec![
        check(Suite::Kernels, "resolvent-ladder", 1e-10, resolvent),
        check(Suite::Kernels, "projection-ladder", 1e-12, projection),
        check(Suite::Kernels, "kirchhoff-radial-datum", 1e-9, wave),
    ]
}
