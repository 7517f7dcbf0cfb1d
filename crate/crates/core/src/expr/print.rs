//! Text form of an expression. The output re-parses to a tree that
//! evaluates bit-identically.

use std::fmt;

use num_complex::Complex64;

use super::{Expression, Node};

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn precedence(e: &Expression) -> u8 {
    match e.node() {
        Node::Add(..) | Node::Sub(..) => SUM,
        Node::Mul(..) | Node::Div(..) => PRODUCT,
        Node::Neg(_) => UNARY,
        Node::Powi(..) | Node::Pow(..) => POWER,
        Node::Const(c) if c.im != 0.0 => SUM,
        Node::Const(c) if c.re.is_sign_negative() => UNARY,
        Node::Const(_) | Node::Var | Node::Apply(..) => ATOM,
    }
}

struct Child<'a>(&'a Expression, u8);

impl fmt::Display for Child<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if precedence(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: Complex64) -> fmt::Result {
    if c.im == 0.0 {
        write!(f, "{}", c.re)
    } else {
        write!(f, "{} + {}*i", c.re, Child(&Expression::real(c.im), POWER))
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(c) => write_const(f, *c),
            Node::Var => write!(f, "s"),
            Node::Add(a, b) => write!(f, "{} + {}", Child(a, SUM), Child(b, UNARY)),
            Node::Sub(a, b) => write!(f, "{} - {}", Child(a, SUM), Child(b, PRODUCT)),
            Node::Mul(a, b) => write!(f, "{}*{}", Child(a, PRODUCT), Child(b, UNARY)),
            Node::Div(a, b) => write!(f, "{}/{}", Child(a, PRODUCT), Child(b, POWER)),
            Node::Neg(a) => write!(f, "-{}", Child(a, POWER)),
            Node::Powi(a, k) if *k < 0 => write!(f, "{}^({k})", Child(a, ATOM)),
            Node::Powi(a, k) => write!(f, "{}^{k}", Child(a, ATOM)),
            Node::Pow(a, b) => write!(f, "{}^{}", Child(a, ATOM), Child(b, ATOM)),
            Node::Apply(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
