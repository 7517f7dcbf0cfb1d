use super::simplify::{add, apply, div, mul, neg, pow, powi, sub};
use super::{Expression, Func, Node};

impl Expression {
    /// Exact derivative with respect to `s`.
    pub fn differentiate(&self) -> Expression {
        let zero = || Expression::real(0.0);
        match self.node() {
            Node::Const(_) => zero(),
            Node::Var => Expression::real(1.0),
            Node::Add(a, b) => add(a.differentiate(), b.differentiate()),
            Node::Sub(a, b) => sub(a.differentiate(), b.differentiate()),
            Node::Mul(a, b) => add(
                mul(a.differentiate(), b.clone()),
                mul(a.clone(), b.differentiate()),
            ),
            Node::Div(a, b) => {
                if b.is_constant() {
                    return div(a.differentiate(), b.clone());
                }
                div(
                    sub(
                        mul(a.differentiate(), b.clone()),
                        mul(a.clone(), b.differentiate()),
                    ),
                    powi(b.clone(), 2),
                )
            }
            Node::Neg(a) => neg(a.differentiate()),
            Node::Powi(a, k) => mul(
                mul(Expression::real(*k as f64), powi(a.clone(), k - 1)),
                a.differentiate(),
            ),
            Node::Pow(a, b) => {
                if b.is_constant() {
                    let lowered = pow(a.clone(), sub(b.clone(), Expression::real(1.0)));
                    return mul(mul(b.clone(), lowered), a.differentiate());
                }
                // a^b (b' log a + b a'/a)
                let inner = add(
                    mul(b.differentiate(), apply(Func::Log, a.clone())),
                    div(mul(b.clone(), a.differentiate()), a.clone()),
                );
                mul(self.clone(), inner)
            }
            Node::Apply(func, a) => {
                let da = a.differentiate();
                let outer = match func {
                    Func::Exp => self.clone(),
                    Func::Sin => apply(Func::Cos, a.clone()),
                    Func::Cos => neg(apply(Func::Sin, a.clone())),
                    Func::Sinh => apply(Func::Cosh, a.clone()),
                    Func::Cosh => apply(Func::Sinh, a.clone()),
                    Func::Tanh => powi(apply(Func::Sech, a.clone()), 2),
                    Func::Sech => neg(mul(self.clone(), apply(Func::Tanh, a.clone()))),
                    Func::Sqrt => return div(da, mul(Expression::real(2.0), self.clone())),
                    Func::Log => return div(da, a.clone()),
                };
                mul(outer, da)
            }
        }
    }
}
