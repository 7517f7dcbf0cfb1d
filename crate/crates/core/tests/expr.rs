use num_complex::Complex64;
use proptest::prelude::*;
use radialft::expr::{parse, Expression, Func, Node};

fn leaf() -> impl Strategy<Value = Expression> {
    prop_oneof![
        Just(Expression::var()),
        (-3.0f64..3.0).prop_map(Expression::real),
        (1i32..9, 1i32..7).prop_map(|(p, q)| Expression::real(p as f64 / q as f64)),
    ]
}

/// Random trees of depth at most 6.
fn expression() -> impl Strategy<Value = Expression> {
    leaf().prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), -3i32..5).prop_map(|(a, k)| a.powi(k)),
            (inner.clone(), 0.5f64..2.5).prop_map(|(a, p)| Expression::new(Node::Pow(a, Expression::real(p)))),
            (inner, 0..Func::ALL.len()).prop_map(|(a, i)| Expression::apply(Func::ALL[i], a)),
        ]
    })
}

fn points() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..3.0, 10)
}

fn at(e: &Expression, s: f64) -> Option<Complex64> {
    e.eval(Complex64::new(s, 0.0)).ok().filter(|v| v.re.is_finite() && v.im.is_finite() && v.norm() < 1e8)
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn derivative_matches_finite_differences(e in expression(), xs in points()) {
        let d = e.differentiate();
        for s in xs {
            let h = 1e-4;
            let fd = |h: f64| Some((at(&e, s + h)? - at(&e, s - h)?) / (2.0 * h));
            let (Some(coarse), Some(fine), Some(exact)) = (fd(h), fd(h / 2.0), at(&d, s)) else { continue };
            let extrapolated = (4.0 * fine - coarse) / 3.0;
            // skip points near singularities, where the stencil itself is unresolved
            if !close(fine, coarse, 1e-5) || !close((4.0 * fd(h / 4.0).unwrap_or(extrapolated) - fine) / 3.0, extrapolated, 1e-8) {
                continue;
            }
            // or where the stencil's rounding noise is above the tolerance
            let noise = f64::EPSILON * at(&e, s).map_or(f64::INFINITY, |v| v.norm()) / h;
            if noise > 1e-7 * exact.norm().max(1.0) {
                continue;
            }
            prop_assert!(close(exact, extrapolated, 1e-6), "{e} at {s}: {exact} vs {extrapolated}");
        }
    }

    #[test]
    fn print_parse_round_trip(e in expression(), xs in points()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        for s in xs {
            let a = e.eval(Complex64::new(s, 0.0));
            let b = back.eval(Complex64::new(s, 0.0));
            match (a, b) {
                (Ok(a), Ok(b)) if a.re.is_finite() && a.im.is_finite() => {
                    prop_assert!((a - b).norm() <= 1e-14 * a.norm().max(1e-300) || a == b, "{text} at {s}: {a} vs {b}");
                }
                _ => {}
            }
        }
    }

    #[test]
    fn simplify_preserves_values(e in expression(), xs in points()) {
        let simple = e.simplify();
        for s in xs {
            let (Some(a), Some(b)) = (at(&e, s), at(&simple, s)) else { continue };
            // rewrites move intermediate roundings by an ulp; ill-conditioned trees amplify that
            let amplified = match (at(&e, s * (1.0 + 1e-12)), at(&e, s * (1.0 - 1e-12))) {
                (Some(hi), Some(lo)) => (hi - lo).norm() / 2e-12 * 16.0 * f64::EPSILON,
                _ => continue,
            };
            prop_assert!((a - b).norm() <= 1e-14 * (1.0 + a.norm()) + amplified, "{e} -> {simple} at {s}: {a} vs {b}");
        }
    }
}

#[test]
fn examples() {
    let e = parse("exp(-s^2) * (1 - 2*s^2)").unwrap();
    assert_eq!(e.eval_real(0.0).unwrap(), 1.0);
    assert_eq!(parse("s^3 - 2*s").unwrap().eval_real(2.0).unwrap(), 4.0);
    assert_eq!(parse("sqrt(s)").unwrap().eval(Complex64::new(-1.0, 0.0)).unwrap(), Complex64::new(0.0, 1.0));
    let g = parse("exp(-s^2)").unwrap().differentiate();
    let fd = |s: f64| ((-(s + 1e-5f64).powi(2)).exp() - (-(s - 1e-5f64).powi(2)).exp()) / 2e-5;
    assert!((g.eval_real(1.0).unwrap() - fd(1.0)).abs() < 1e-8);
    assert!((g.eval_real(1.0).unwrap() + 2.0 * (-1f64).exp()).abs() < 1e-15);
    let pi = std::f64::consts::PI;
    let d = parse("sech(pi*s)").unwrap().differentiate().simplify();
    assert!((d.eval_real(1.0).unwrap() + pi / pi.cosh() * pi.tanh()).abs() < 1e-15);
}
