//! Acceptance battery. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radialft::bessel::{bessel_j_tilde, Order};
use radialft::expr::{parse, Expression, Func};
use radialft::kernels::{even_to_squared, kirchhoff};
use radialft::lift::{
    corollary_coefficients, iterate_operator_symbolic, lift_once, lift_once_fn, lift_prediff, lift_symbolic,
    DerivativeEngine,
};
use radialft::quad::{integrate_finite, integrate_halfline, QuadratureSpec};
use radialft::transform::{radial_fourier, radial_fourier_fn, sphere_surface, Dimension, RadialProfile};

type Outcome = Result<String, String>;

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

/// The closed form of `F_3(sech(π·))`.
fn sech3(r: f64) -> f64 {
    sech(PI * r) * (PI * r).tanh() / (2.0 * r)
}

fn profile(text: &str) -> RadialProfile {
    RadialProfile::parse(text).unwrap()
}

fn tight() -> QuadratureSpec {
    QuadratureSpec::default().with_rel_tol(1e-13).with_abs_tol(1e-16)
}

fn within(worst: f64, tol: f64) -> Outcome {
    let line = format!("worst {worst:.3e} (tol {tol:.0e})");
    if worst <= tol {
        Ok(line)
    } else {
        Err(line)
    }
}

fn timed(budget: Duration, body: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = body();
    let elapsed = start.elapsed();
    let out = out.map(|s| format!("{s}, {:.2} s", elapsed.as_secs_f64()));
    match out {
        Ok(s) if elapsed > budget => Err(format!("{s} exceeds {} s", budget.as_secs())),
        other => other,
    }
}

fn sech_lift() -> Outcome {
    timed(Duration::from_secs(1), || {
        let f = profile("sech(pi*s)");
        let mut worst: f64 = 0.0;
        for i in 0..50 {
            let r = 0.05 + 4.95 * (i as f64 + 0.5) / 50.0;
            let v = lift_once(&f, r, DerivativeEngine::Analytic).map_err(|e| e.to_string())?;
            worst = worst.max((v.value.re - sech3(r)).abs());
        }
        within(worst, 1e-12)
    })
}

fn sech_direct() -> Outcome {
    timed(Duration::from_secs(30), || {
        let f = profile("sech(pi*s)");
        let mut worst: f64 = 0.0;
        for r in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let v = radial_fourier(&f, dim(3), r, &QuadratureSpec::default()).map_err(|e| e.to_string())?;
            worst = worst.max((v.value.re - sech3(r)).abs());
        }
        within(worst, 1e-7)
    })
}

fn resolvent_ladder() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let zs = [Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 1.0), Complex64::new(-0.5, -3.0)];
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let z = zs[i % 3];
        let r: f64 = rng.gen_range(0.1..5.0);
        let c = (-z).sqrt();
        // e^{-cs}/(2c)
        let g1 = Expression::apply(Func::Exp, Expression::constant(-c) * Expression::var()) / Expression::constant(2.0 * c);
        let g3 = lift_symbolic(&g1);
        let g5 = lift_symbolic(&g3);
        let e = (-c * r).exp();
        let printed3 = e / (4.0 * PI * r);
        let printed5 = (1.0 + c * r) * e / (8.0 * PI * PI * r.powi(3));
        for (lifted, printed) in [(&g3, printed3), (&g5, printed5)] {
            let v = lifted.eval(Complex64::new(r, 0.0)).map_err(|e| e.to_string())?;
            worst = worst.max((v - printed).norm() / printed.norm().max(1.0));
        }
    }
    within(worst, 1e-12)
}

fn projection_ladder() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let e: f64 = rng.gen_range(0.1..9.0);
        let r: f64 = rng.gen_range(0.1..5.0);
        let a = e.sqrt();
        let p1 = profile(&format!("sin({a:e}*s)/(pi*s)"));
        let v = lift_once(&p1, r, DerivativeEngine::Analytic).map_err(|e| e.to_string())?.value.re;
        let p3 = ((a * r).sin() - a * r * (a * r).cos()) / (2.0 * PI * PI * r.powi(3));
        worst = worst.max((v - p3).abs() / p3.abs().max(1.0));
    }
    within(worst, 1e-12)
}

fn coefficients() -> Outcome {
    for k in 1..=10 {
        if corollary_coefficients(k) != iterate_operator_symbolic(k) {
            return Err(format!("tables differ at k = {k}"));
        }
    }
    let spot = |k: usize| -> Vec<String> { corollary_coefficients(k).iter().map(|(_, c)| c.to_string()).collect() };
    for (k, want) in [(1, vec!["-1"]), (2, vec!["-1", "1"]), (3, vec!["-3", "3", "-1"])] {
        if spot(k) != want {
            return Err(format!("k = {k}: {:?}", spot(k)));
        }
    }
    Ok("k = 1..10 exact, spot values match".into())
}

const RECURSION_PROFILES: [&str; 2] = ["exp(-s^2)", "exp(-s)"];
const RECURSION_RADII: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

/// `-(1/2πr) d/dr F_n(f)` with `F_n` by quadrature and the derivative by Chebyshev collocation.
fn lifted_numeric(f: &RadialProfile, n: u32, r: f64) -> Result<Complex64, String> {
    let transform = |rho: f64| radial_fourier_fn(|s| f.eval(s), dim(n), rho, &tight()).map(|t| t.value);
    let engine = DerivativeEngine::chebyshev(24, 0.75 * r, 1.25 * r);
    lift_once_fn(transform, r, engine).map(|v| v.value).map_err(|e| e.to_string())
}

fn recursion() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut worst: f64 = 0.0;
        for text in RECURSION_PROFILES {
            let f = profile(text);
            for n in 1..=3 {
                for r in RECURSION_RADII {
                    let lifted = lifted_numeric(&f, n, r)?;
                    let direct = radial_fourier(&f, dim(n + 2), r, &tight()).map_err(|e| e.to_string())?;
                    worst = worst.max((lifted - direct.value).norm());
                }
            }
        }
        within(worst, 1e-6)
    })
}

fn prediff() -> Outcome {
    let mut worst: f64 = 0.0;
    for text in RECURSION_PROFILES {
        let f = profile(text);
        for n in 1..=3 {
            for r in RECURSION_RADII {
                let first = lifted_numeric(&f, n, r)?;
                let second = lift_prediff(&f, dim(n), r, &tight()).map_err(|e| e.to_string())?;
                worst = worst.max((first - second.value).norm());
            }
        }
    }
    within(worst, 1e-6)
}

fn gaussian_fixed_point() -> Outcome {
    let f = profile("exp(-pi*s^2)");
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for r in [0.5, 1.0, 2.0] {
            let v = radial_fourier(&f, dim(n), r, &QuadratureSpec::default()).map_err(|e| e.to_string())?;
            worst = worst.max((v.value - Complex64::from((-PI * r * r).exp())).norm());
        }
    }
    within(worst, 1e-8)
}

fn bessel_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for twice_nu in -1..=4 {
        let order = Order::new(twice_nu).map_err(|e| e.to_string())?;
        for i in 1..=60 {
            let x = 0.5 * i as f64;
            let h = 1e-5 * x.max(1.0);
            let j = |x: f64| bessel_j_tilde(order, x).unwrap();
            let fd = (j(x - 2.0 * h) - 8.0 * j(x - h) + 8.0 * j(x + h) - j(x + 2.0 * h)) / (12.0 * h);
            let exact = -x * bessel_j_tilde(order.next(), x).map_err(|e| e.to_string())?;
            if exact.abs() > 1e-6 {
                worst = worst.max((fd - exact).abs() / exact.abs());
            }
        }
    }
    within(worst, 1e-6)
}

fn plancherel() -> Outcome {
    let mut worst: f64 = 0.0;
    for text in ["exp(-s^2)", "sech(pi*s)"] {
        let f = profile(text);
        for n in 1..=3 {
            let p = n as i32 - 1;
            let spec = QuadratureSpec::default();
            let transformed = integrate_halfline(
                |r| radial_fourier(&f, dim(n), r, &spec).unwrap().value.norm_sqr() * r.powi(p),
                0.0,
                &spec.with_rel_tol(1e-8),
            )
            .map_err(|e| e.to_string())?;
            let original = integrate_halfline(|s| f.eval(s).unwrap().norm_sqr() * s.powi(p), 0.0, &spec).map_err(|e| e.to_string())?;
            let w = sphere_surface(dim(n));
            worst = worst.max((w * transformed.value - w * original.value).abs() / (w * original.value));
        }
    }
    within(worst, 1e-5)
}

fn kirchhoff_checks() -> Outcome {
    let radial = |rho: f64| 1.0 / (1.0 + rho * rho);
    let phi = |y: [f64; 3]| radial((y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt());
    let gaussian = |y: [f64; 3]| (-(y[0] * y[0] + y[1] * y[1] + y[2] * y[2])).exp();
    let mut worst: f64 = 0.0;
    for t in [0.3, 1.0, 2.2] {
        let u = kirchhoff(phi, t, [0.0; 3]).map_err(|e| e.to_string())?;
        worst = worst.max((u - t * radial(t)).abs());
        // off the origin: mean of a radial function over a sphere centred at distance d
        let x = [0.6, 0.0, 0.8];
        let d = 1.0;
        let mean = integrate_finite(|rho| radial(rho) * rho, (d - t).abs(), d + t, &QuadratureSpec::default())
            .map_err(|e| e.to_string())?
            .value
            / (2.0 * d * t);
        worst = worst.max((kirchhoff(phi, t, x).map_err(|e| e.to_string())? - t * mean).abs());
    }
    let radial_worst = within(worst, 1e-9)?;

    let h = 1e-2;
    let u = |t: f64, x: [f64; 3]| kirchhoff(gaussian, t, x).unwrap();
    let d2 = |f: &dyn Fn(f64) -> f64| (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h);
    let (t, x0) = (0.5, [0.0; 3]);
    let utt = d2(&|dt| u(t + dt, x0));
    let lap: f64 = (0..3)
        .map(|axis| {
            d2(&|dx| {
                let mut x = x0;
                x[axis] += dx;
                u(t, x)
            })
        })
        .sum();
    let residual = within((utt - lap).abs(), 1e-4)?;
    Ok(format!("mean {radial_worst}; residual {residual}"))
}

fn squared_variable() -> Outcome {
    let spec = QuadratureSpec::default();
    let gauss = parse("exp(-s^2)").unwrap();
    let mut worst: f64 = 0.0;
    for k in 1..=3u32 {
        for t in [0.0, 0.5, 1.0, 2.0] {
            let g = even_to_squared(&gauss, k, t, &spec).map_err(|e| e.to_string())?;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((g - sign * (-t).exp()).abs());
        }
    }
    let derivatives = within(worst, 1e-9)?;

    // Taylor coefficients at 0: cos gives (-1)^k/(2k)!, sech gives E_{2k}/(2k)! with Euler numbers E_{2k}
    let euler = [1.0, -1.0, 5.0, -61.0, 1385.0];
    let mut worst: f64 = 0.0;
    let mut kfact = 1.0;
    let mut twok_fact = 1.0;
    for k in 1..=4u32 {
        kfact *= k as f64;
        twok_fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for (text, coefficient) in [("cos(s)", sign / twok_fact), ("sech(s)", euler[k as usize] / twok_fact)] {
            let g = even_to_squared(&parse(text).unwrap(), k, 0.0, &spec).map_err(|e| e.to_string())?;
            worst = worst.max((g / kfact - coefficient).abs());
        }
    }
    let origin = within(worst, 1e-10)?;
    Ok(format!("g^(k) {derivatives}; g^(k)(0)/k! {origin}"))
}

fn radialft(args: &[&str]) -> Result<(Vec<u8>, f64), String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_radialft"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.status.code() != Some(0) {
        return Err(format!("{args:?} exited {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return Err(format!("{args:?} differs between runs"));
    }
    let text = String::from_utf8_lossy(&a.stdout).into_owned();
    let row = text.lines().nth(1).ok_or("no data row")?;
    let value: f64 = row.split(',').nth(1).ok_or("no value column")?.parse().map_err(|_| "bad value")?;
    Ok((a.stdout, value))
}

fn cli_examples() -> Outcome {
    let cases: [(&[&str], f64, f64); 4] = [
        (&["transform", "--profile", "sech(3.14159265358979*s)", "--dim", "1", "--grid", "1:1:1"], sech(PI), 1e-8),
        (&["lift", "--profile", "sech(pi*s)", "--from", "1", "--to", "3", "--grid", "1:1:1"], 0.5 * sech(PI) * PI.tanh(), 1e-12),
        (&["kernel", "--resolvent", "-1", "--dim", "5", "--grid", "1:1:1"], (-1f64).exp() / (4.0 * PI * PI), 1e-12),
        // the grid point is π to six figures; compare relatively
        (&["kernel", "--projection", "1", "--dim", "3", "--grid", "3.14159:3.14159:1"], 1.0 / (2.0 * PI.powi(4)), 1e-5 / (2.0 * PI.powi(4))),
    ];
    let mut worst: f64 = 0.0;
    for (args, expected, tol) in cases {
        let (_, v) = radialft(args)?;
        if (v - expected).abs() > tol {
            return Err(format!("{} gave {v}, expected {expected}", args[0]));
        }
        worst = worst.max((v - expected).abs() / tol);
    }
    Ok(format!("all examples within tolerance (worst {worst:.2} of tol), identical across two runs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("sech lift closed form", sech_lift),
        ("sech direct transform n=3", sech_direct),
        ("resolvent ladder G1 -> G3 -> G5", resolvent_ladder),
        ("projection ladder P1 -> P3", projection_ladder),
        ("lift coefficient tables", coefficients),
        ("recursion consistency", recursion),
        ("pre-differentiated lift", prediff),
        ("gaussian fixed point n=1..6", gaussian_fixed_point),
        ("bessel derivative identity", bessel_identity),
        ("plancherel", plancherel),
        ("kirchhoff formula", kirchhoff_checks),
        ("even function in the squared variable", squared_variable),
        ("cli examples", cli_examples),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
