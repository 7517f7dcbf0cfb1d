//! Value-preserving local rewrites: constant folding, 0/1 identities and
//! merging of integer powers. Best effort; no canonical form is sought.

use num_complex::Complex64;

use super::{Expression, Func, Node};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn fold(node: Node) -> Expression {
    let e = Expression::new(node);
    match e.eval(ZERO) {
        Ok(v) if v.re.is_finite() && v.im.is_finite() => Expression::constant(v),
        _ => e,
    }
}

fn is(e: &Expression, value: Complex64) -> bool {
    e.as_const() == Some(value)
}

pub(crate) fn add(a: Expression, b: Expression) -> Expression {
    if a.as_const().is_some() && b.as_const().is_some() {
        return fold(Node::Add(a, b));
    }
    if is(&a, ZERO) {
        return b;
    }
    if is(&b, ZERO) {
        return a;
    }
    if let Node::Neg(inner) = b.node() {
        return sub(a, inner.clone());
    }
    Expression::new(Node::Add(a, b))
}

pub(crate) fn sub(a: Expression, b: Expression) -> Expression {
    if a.as_const().is_some() && b.as_const().is_some() {
        return fold(Node::Sub(a, b));
    }
    if is(&b, ZERO) {
        return a;
    }
    if is(&a, ZERO) {
        return neg(b);
    }
    if let Node::Neg(inner) = b.node() {
        return add(a, inner.clone());
    }
    Expression::new(Node::Sub(a, b))
}

/// Splits `x^k` into `(x, k)`; anything else is `(e, 1)`.
fn as_power(e: &Expression) -> (Expression, i32) {
    match e.node() {
        Node::Powi(base, k) => (base.clone(), *k),
        _ => (e.clone(), 1),
    }
}

pub(crate) fn mul(a: Expression, b: Expression) -> Expression {
    match (a.as_const(), b.as_const()) {
        (Some(_), Some(_)) => return fold(Node::Mul(a, b)),
        (Some(c), None) if c == ZERO => return a,
        (None, Some(c)) if c == ZERO => return b,
        (Some(c), None) if c == ONE => return b,
        (None, Some(c)) if c == ONE => return a,
        (Some(c), None) if c == -ONE => return neg(b),
        (None, Some(c)) if c == -ONE => return neg(a),
        (None, Some(_)) => return mul(b, a),
        (Some(c), None) => {
            if let Node::Mul(x, y) = b.node() {
                if let Some(d) = x.as_const() {
                    return mul(Expression::constant(c * d), y.clone());
                }
            }
        }
        (None, None) => {}
    }
    if let Node::Neg(x) = a.node() {
        return neg(mul(x.clone(), b));
    }
    if let Node::Neg(y) = b.node() {
        return neg(mul(a, y.clone()));
    }
    let (base_a, ka) = as_power(&a);
    let (base_b, kb) = as_power(&b);
    if base_a == base_b {
        if let Some(k) = ka.checked_add(kb) {
            return powi(base_a, k);
        }
    }
    Expression::new(Node::Mul(a, b))
}

pub(crate) fn div(a: Expression, b: Expression) -> Expression {
    if is(&b, ONE) {
        return a;
    }
    if let (Some(_), Some(d)) = (a.as_const(), b.as_const()) {
        if d != ZERO {
            return fold(Node::Div(a, b));
        }
    }
    if is(&a, ZERO) && !b.is_constant() {
        return a;
    }
    if let Node::Neg(x) = a.node() {
        return neg(div(x.clone(), b));
    }
    Expression::new(Node::Div(a, b))
}

pub(crate) fn neg(a: Expression) -> Expression {
    match a.node() {
        Node::Const(c) => Expression::constant(-*c),
        Node::Neg(inner) => inner.clone(),
        _ => Expression::new(Node::Neg(a)),
    }
}

pub(crate) fn powi(a: Expression, k: i32) -> Expression {
    if k == 0 {
        return Expression::constant(ONE);
    }
    if k == 1 {
        return a;
    }
    match a.node() {
        Node::Const(_) => fold(Node::Powi(a, k)),
        Node::Powi(base, m) => match m.checked_mul(k) {
            Some(mk) => powi(base.clone(), mk),
            None => Expression::new(Node::Powi(a, k)),
        },
        Node::Neg(inner) if k % 2 == 0 => powi(inner.clone(), k),
        _ => Expression::new(Node::Powi(a, k)),
    }
}

pub(crate) fn pow(a: Expression, b: Expression) -> Expression {
    if let Some(c) = b.as_const() {
        if c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() <= i32::MAX as f64 {
            return powi(a, c.re as i32);
        }
        if a.as_const().is_some() {
            return fold(Node::Pow(a, b));
        }
    }
    Expression::new(Node::Pow(a, b))
}

pub(crate) fn apply(func: Func, a: Expression) -> Expression {
    if a.as_const().is_some() {
        return fold(Node::Apply(func, a));
    }
    Expression::apply(func, a)
}

impl Expression {
    /// Rebuilds the tree bottom-up through the rewriting constructors.
    pub fn simplify(&self) -> Expression {
        match self.node() {
            Node::Const(_) | Node::Var => self.clone(),
            Node::Add(a, b) => add(a.simplify(), b.simplify()),
            Node::Sub(a, b) => sub(a.simplify(), b.simplify()),
            Node::Mul(a, b) => mul(a.simplify(), b.simplify()),
            Node::Div(a, b) => div(a.simplify(), b.simplify()),
            Node::Neg(a) => neg(a.simplify()),
            Node::Powi(a, k) => powi(a.simplify(), *k),
            Node::Pow(a, b) => pow(a.simplify(), b.simplify()),
            Node::Apply(f, a) => apply(*f, a.simplify()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn zero_times_anything_plus_y() {
        let e = parse("0*sin(s) + cos(s)").unwrap().simplify();
        assert_eq!(e, parse("cos(s)").unwrap());
    }

    #[test]
    fn first_power_is_the_base() {
        let e = Expression::var().pow(Expression::real(1.0)).simplify();
        assert_eq!(e, Expression::var());
        assert_eq!(parse("s^1").unwrap().simplify(), Expression::var());
    }

    #[test]
    fn power_flattening() {
        let e = parse("(s^2)^3 * s").unwrap().simplify();
        assert_eq!(e, parse("s^7").unwrap());
    }

    #[test]
    fn constants_fold() {
        let e = parse("2*3*s + (1 - 1)").unwrap().simplify();
        assert_eq!(e.to_string(), "6*s");
        assert_eq!(parse("sqrt(4)").unwrap().simplify().as_const(), Some(Complex64::new(2.0, 0.0)));
    }

    #[test]
    fn division_by_constant_zero_is_kept() {
        let e = parse("s/0").unwrap().simplify();
        assert!(e.eval_real(1.0).is_err());
    }

    #[test]
    fn sech_derivative_simplified() {
        let d = parse("sech(pi*s)").unwrap().differentiate().simplify();
        let pi = std::f64::consts::PI;
        let expected = -pi * (1.0 / pi.cosh()) * pi.tanh();
        let got = d.eval_real(1.0).unwrap();
        assert!((got - expected).abs() <= 1e-15 * expected.abs(), "{got} vs {expected}");
    }
}
