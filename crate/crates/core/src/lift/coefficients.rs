use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact coefficients `c_{k,ℓ}` of `(-(1/ρ) d/dρ)^k = Σ_ℓ c_{k,ℓ} ρ^{-(2k-ℓ)} D^ℓ`.
///
/// For `k = 0` the table is the identity, a single entry `c_{0,0} = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    k: usize,
    entries: Vec<BigRational>,
}

impl CoefficientTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `c_{k,ℓ}`, or `None` outside `1..=k` (`0..=0` when `k = 0`).
    pub fn get(&self, l: usize) -> Option<&BigRational> {
        let first = self.first_index();
        l.checked_sub(first).and_then(|i| self.entries.get(i))
    }

    /// Pairs `(ℓ, c_{k,ℓ})` in increasing `ℓ`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        let first = self.first_index();
        self.entries.iter().enumerate().map(move |(i, c)| (i + first, c))
    }

    pub fn to_f64(&self) -> Vec<(usize, f64)> {
        self.iter().map(|(l, c)| (l, rational_to_f64(c))).collect()
    }

    /// Power `m = 2k - ℓ` of `1/ρ` multiplying `D^ℓ`.
    pub fn rho_power(&self, l: usize) -> usize {
        2 * self.k - l
    }

    fn first_index(&self) -> usize {
        usize::from(self.k > 0)
    }
}

impl fmt::Display for CoefficientTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(l, c)| format!("{l}: {c}")).collect();
        write!(f, "k={} {{{}}}", self.k, parts.join(", "))
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators and denominators together
            let shift = c.numer().bits().max(c.denom().bits()).saturating_sub(1000);
            let n = (c.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (c.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Closed-form coefficients of the multi-step lift.
pub fn corollary_coefficients(k: usize) -> CoefficientTable {
    if k == 0 {
        return CoefficientTable {
            k,
            entries: vec![BigRational::one()],
        };
    }
    let entries = (1..=k)
        .map(|l| {
            let numer = factorial(2 * k - l - 1);
            let denom = (BigInt::one() << (k - l)) * factorial(k - l) * factorial(l - 1);
            let c = BigRational::new(numer, denom);
            if l % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    CoefficientTable { k, entries }
}

/// Applies `-(1/ρ) d/dρ` to the identity `k` times, term by term:
/// `ρ^{-m} D^ℓ ↦ m ρ^{-(m+2)} D^ℓ - ρ^{-(m+1)} D^{ℓ+1}`.
///
/// # Panics
///
/// If a term falls outside the `ρ^{-(2k-ℓ)} D^ℓ` basis, which the rewrite
/// cannot produce.
pub fn iterate_operator_symbolic(k: usize) -> CoefficientTable {
    let mut terms: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
    terms.insert((0, 0), BigRational::one());
    for _ in 0..k {
        let mut next: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for ((m, l), a) in terms {
            if m > 0 {
                *next.entry((m + 2, l)).or_insert_with(BigRational::zero) += &a * BigRational::from_integer(m.into());
            }
            *next.entry((m + 1, l + 1)).or_insert_with(BigRational::zero) -= &a;
        }
        next.retain(|_, a| !a.is_zero());
        terms = next;
    }
    let first = usize::from(k > 0);
    let mut entries = vec![BigRational::zero(); k + 1 - first];
    for ((m, l), a) in terms {
        assert_eq!(m + l, 2 * k, "term ρ^-{m} D^{l} outside the basis");
        entries[l - first] = a;
    }
    CoefficientTable { k, entries }
}
