use std::sync::OnceLock;

use crate::expr::{parse, Expression};
use crate::lift::lift_symbolic;

pub const MAX_RESOLVENT_DIM: u32 = 9;
pub const MAX_PROJECTION_DIM: u32 = 7;
pub const MAX_SECH_DIM: u32 = 9;

/// Dimensionless kernel profiles in odd dimensions, indexed by `(n - 1) / 2`.
///
/// Resolvent: `G_n(r) = c^{n-2} H_n(cr)` with `c = √(-z)`.
/// Projection: `P_n(r) = a^n Q_n(ar)` with `a = √E`.
/// Sech: the transform of `sech(πs)` itself.
pub(crate) struct Catalog {
    pub resolvent: Vec<Expression>,
    pub projection: Vec<Expression>,
    pub sech: Vec<Expression>,
}

fn ladder(printed: &[&str], max_dim: u32) -> Vec<Expression> {
    let mut rungs: Vec<Expression> = printed.iter().map(|t| parse(t).expect("catalog formula")).collect();
    while (2 * rungs.len() - 1) < max_dim as usize {
        let next = lift_symbolic(rungs.last().expect("nonempty ladder"));
        rungs.push(next);
    }
    rungs
}

pub(crate) fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog {
        resolvent: ladder(
            &["exp(-s)/2", "exp(-s)/(4*pi*s)", "(1 + s)*exp(-s)/(8*pi^2*s^3)"],
            MAX_RESOLVENT_DIM,
        ),
        projection: ladder(&["sin(s)/(pi*s)", "(sin(s) - s*cos(s))/(2*pi^2*s^3)"], MAX_PROJECTION_DIM),
        sech: ladder(&["sech(pi*s)", "sech(pi*s)*tanh(pi*s)/(2*s)"], MAX_SECH_DIM),
    })
}

/// `H_n` for odd `n ≤ 9`.
pub fn resolvent_profile(n: u32) -> Option<&'static Expression> {
    rung(&catalog().resolvent, n)
}

/// `Q_n` for odd `n ≤ 7`.
pub fn projection_profile(n: u32) -> Option<&'static Expression> {
    rung(&catalog().projection, n)
}

/// `F_n(sech(π·))` for odd `n ≤ 9`.
pub fn sech_profile(n: u32) -> Option<&'static Expression> {
    rung(&catalog().sech, n)
}

fn rung(ladder: &[Expression], n: u32) -> Option<&Expression> {
    if n % 2 == 0 {
        return None;
    }
    ladder.get((n as usize - 1) / 2)
}
