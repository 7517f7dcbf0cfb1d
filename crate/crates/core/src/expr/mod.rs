//! Closed-form radial profiles.
//!
//! An [`Expression`] is a small tree over the single variable `s` with complex
//! constants. It can be parsed from text, printed back, evaluated at complex
//! points, differentiated exactly and simplified. Expressions are immutable;
//! every operation returns a new tree.

mod diff;
mod eval;
mod parse;
mod print;
mod simplify;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

pub use eval::EvalError;
pub use parse::{parse, ParseError};

/// Builtin unary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tanh,
    Sech,
    Sqrt,
    Log,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::Exp,
        Func::Sin,
        Func::Cos,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Sech,
        Func::Sqrt,
        Func::Log,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Sech => "sech",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// Expression node.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(Complex64),
    Var,
    Add(Expression, Expression),
    Sub(Expression, Expression),
    Mul(Expression, Expression),
    Div(Expression, Expression),
    Neg(Expression),
    /// Integer power; exact for negative real bases.
    Powi(Expression, i32),
    /// General power `base^exponent`, principal branch.
    Pow(Expression, Expression),
    Apply(Func, Expression),
}

/// Shared, immutable expression tree in the variable `s`.
#[derive(Clone, PartialEq)]
pub struct Expression(Arc<Node>);

impl Expression {
    pub fn new(node: Node) -> Self {
        Expression(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn var() -> Self {
        Self::new(Node::Var)
    }

    pub fn constant(value: impl Into<Complex64>) -> Self {
        Self::new(Node::Const(value.into()))
    }

    pub fn real(value: f64) -> Self {
        Self::constant(Complex64::new(value, 0.0))
    }

    pub fn apply(func: Func, arg: Expression) -> Self {
        Self::new(Node::Apply(func, arg))
    }

    pub fn powi(self, exponent: i32) -> Self {
        Self::new(Node::Powi(self, exponent))
    }

    pub fn pow(self, exponent: Expression) -> Self {
        Self::new(Node::Pow(self, exponent))
    }

    pub fn exp(self) -> Self {
        Self::apply(Func::Exp, self)
    }

    /// Constant value if the tree is a single constant node.
    pub fn as_const(&self) -> Option<Complex64> {
        match self.node() {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// True when the tree does not reference `s`.
    pub fn is_constant(&self) -> bool {
        match self.node() {
            Node::Const(_) => true,
            Node::Var => false,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) => {
                a.is_constant() && b.is_constant()
            }
            Node::Neg(a) | Node::Powi(a, _) | Node::Apply(_, a) => a.is_constant(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Const(_) | Node::Var => 1,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) => {
                1 + a.size() + b.size()
            }
            Node::Neg(a) | Node::Powi(a, _) | Node::Apply(_, a) => 1 + a.size(),
        }
    }

    /// Replaces every occurrence of `s` by `replacement`.
    pub fn substitute(&self, replacement: &Expression) -> Expression {
        let sub = |e: &Expression| e.substitute(replacement);
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::Var => replacement.clone(),
            Node::Add(a, b) => Self::new(Node::Add(sub(a), sub(b))),
            Node::Sub(a, b) => Self::new(Node::Sub(sub(a), sub(b))),
            Node::Mul(a, b) => Self::new(Node::Mul(sub(a), sub(b))),
            Node::Div(a, b) => Self::new(Node::Div(sub(a), sub(b))),
            Node::Pow(a, b) => Self::new(Node::Pow(sub(a), sub(b))),
            Node::Neg(a) => Self::new(Node::Neg(sub(a))),
            Node::Powi(a, k) => Self::new(Node::Powi(sub(a), *k)),
            Node::Apply(f, a) => Self::new(Node::Apply(*f, sub(a))),
        }
    }

    /// Differentiates `k` times, simplifying after each step.
    pub fn nth_derivative(&self, k: usize) -> Expression {
        let mut e = self.clone();
        for _ in 0..k {
            e = e.differentiate().simplify();
        }
        e
    }
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expression({self})")
    }
}

impl From<f64> for Expression {
    fn from(value: f64) -> Self {
        Expression::real(value)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl std::ops::$trait for Expression {
            type Output = Expression;
            fn $method(self, rhs: Expression) -> Expression {
                Expression::new(Node::$variant(self, rhs))
            }
        }
        impl std::ops::$trait<f64> for Expression {
            type Output = Expression;
            fn $method(self, rhs: f64) -> Expression {
                Expression::new(Node::$variant(self, Expression::real(rhs)))
            }
        }
        impl std::ops::$trait<Expression> for f64 {
            type Output = Expression;
            fn $method(self, rhs: Expression) -> Expression {
                Expression::new(Node::$variant(Expression::real(self), rhs))
            }
        }
    };
}

binary_op!(Add, add, Add);
binary_op!(Sub, sub, Sub);
binary_op!(Mul, mul, Mul);
binary_op!(Div, div, Div);

impl std::ops::Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression::new(Node::Neg(self))
    }
}
