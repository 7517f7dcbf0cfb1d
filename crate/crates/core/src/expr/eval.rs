use num_complex::Complex64;
use thiserror::Error;

use super::{Expression, Func, Node};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error in `{node}` at input {input}: {reason}")]
pub struct EvalError {
    pub node: String,
    pub input: Complex64,
    pub reason: &'static str,
}

fn domain(node: &Expression, input: Complex64, reason: &'static str) -> EvalError {
    EvalError {
        node: node.to_string(),
        input,
        reason,
    }
}

impl Expression {
    /// Evaluates the tree at a complex point.
    pub fn eval(&self, s: Complex64) -> Result<Complex64, EvalError> {
        match self.node() {
            Node::Const(c) => Ok(*c),
            Node::Var => Ok(s),
            Node::Add(a, b) => Ok(a.eval(s)? + b.eval(s)?),
            Node::Sub(a, b) => Ok(a.eval(s)? - b.eval(s)?),
            Node::Mul(a, b) => Ok(a.eval(s)? * b.eval(s)?),
            Node::Div(a, b) => {
                let num = a.eval(s)?;
                let den = b.eval(s)?;
                if den == Complex64::new(0.0, 0.0) {
                    return Err(domain(self, s, "division by zero"));
                }
                if den.im == 0.0 && num.im == 0.0 {
                    Ok(Complex64::new(num.re / den.re, 0.0))
                } else {
                    Ok(num / den)
                }
            }
            Node::Neg(a) => Ok(-a.eval(s)?),
            Node::Powi(a, k) => {
                let base = a.eval(s)?;
                powi(base, *k).ok_or_else(|| domain(self, s, "negative power of zero"))
            }
            Node::Pow(a, b) => {
                let base = a.eval(s)?;
                let exponent = b.eval(s)?;
                if exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() <= i32::MAX as f64 {
                    return powi(base, exponent.re as i32)
                        .ok_or_else(|| domain(self, s, "negative power of zero"));
                }
                if base == Complex64::new(0.0, 0.0) {
                    return if exponent.re > 0.0 {
                        Ok(base)
                    } else {
                        Err(domain(self, s, "non-positive power of zero"))
                    };
                }
                if base.im == 0.0 && base.re > 0.0 && exponent.im == 0.0 {
                    return Ok(Complex64::new(base.re.powf(exponent.re), 0.0));
                }
                Ok((exponent * principal_ln(base)).exp())
            }
            Node::Apply(func, a) => {
                let x = a.eval(s)?;
                apply(*func, x).ok_or_else(|| domain(self, s, "logarithm of zero"))
            }
        }
    }

    /// Evaluates at a real point and returns the real part.
    pub fn eval_real(&self, s: f64) -> Result<f64, EvalError> {
        self.eval(Complex64::new(s, 0.0)).map(|z| z.re)
    }
}

fn powi(base: Complex64, k: i32) -> Option<Complex64> {
    if k < 0 && base == Complex64::new(0.0, 0.0) {
        return None;
    }
    if base.im == 0.0 {
        return Some(Complex64::new(base.re.powi(k), 0.0));
    }
    Some(base.powi(k))
}

fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        };
    }
    z.sqrt()
}

fn principal_ln(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return if z.re > 0.0 {
            Complex64::new(z.re.ln(), 0.0)
        } else {
            Complex64::new((-z.re).ln(), std::f64::consts::PI)
        };
    }
    z.ln()
}

fn complex_tanh(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -complex_tanh(-z);
    }
    let q = (-2.0 * z).exp();
    (1.0 - q) / (1.0 + q)
}

fn complex_sech(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return complex_sech(-z);
    }
    let e = (-z).exp();
    2.0 * e / (1.0 + e * e)
}

fn apply(func: Func, x: Complex64) -> Option<Complex64> {
    if x.im == 0.0 {
        let r = x.re;
        let real = |v: f64| Some(Complex64::new(v, 0.0));
        return match func {
            Func::Exp => real(r.exp()),
            Func::Sin => real(r.sin()),
            Func::Cos => real(r.cos()),
            Func::Sinh => real(r.sinh()),
            Func::Cosh => real(r.cosh()),
            Func::Tanh => real(r.tanh()),
            Func::Sech => real(1.0 / r.cosh()),
            Func::Sqrt => Some(principal_sqrt(x)),
            Func::Log if r == 0.0 => None,
            Func::Log => Some(principal_ln(x)),
        };
    }
    Some(match func {
        Func::Exp => x.exp(),
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Sinh => x.sinh(),
        Func::Cosh => x.cosh(),
        Func::Tanh => complex_tanh(x),
        Func::Sech => complex_sech(x),
        Func::Sqrt => principal_sqrt(x),
        Func::Log => principal_ln(x),
    })
}
