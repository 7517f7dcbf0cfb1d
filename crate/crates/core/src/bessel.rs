//! Bessel functions of the first kind for integer and half-integer order.
//!
//! Orders are stored as `twice_nu = 2ν`, so the radial transform in
//! dimension `n` uses `twice_nu = n - 2`. Evaluation strategy:
//!
//! * `x < 1`: power series of the normalized function `x^{-ν} J_ν(x)`.
//! * half-integer orders: `J_{±1/2}` from their sine/cosine closed forms.
//! * integer orders: `J_0`, `J_1` by power series for `x <= 8`, by Miller
//!   recurrence normalized with `J_0 + 2 Σ J_{2k} = 1` up to `x = 20`, and by
//!   the Hankel asymptotic expansion above.
//! * higher orders: upward recurrence from the base pair when `x >= ν`,
//!   otherwise downward (Miller) recurrence seeded by the continued fraction
//!   for `J_ν / J_{ν-1}` and normalized against the base pair.

use std::f64::consts::{FRAC_2_PI, PI};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BesselError {
    #[error("Bessel argument must be positive, got {0}")]
    Domain(f64),
    #[error("unsupported Bessel order 2ν = {0} (need 2ν >= -1)")]
    UnsupportedOrder(i32),
    #[error("failed to locate Bessel zero number {index} of order {nu}")]
    ZeroNotFound { index: usize, nu: f64 },
}

/// Order ν = twice_nu / 2 of a Bessel function, ν >= -1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Order {
    twice_nu: i32,
}

impl Order {
    pub fn new(twice_nu: i32) -> Result<Self, BesselError> {
        if twice_nu < -1 {
            return Err(BesselError::UnsupportedOrder(twice_nu));
        }
        Ok(Order { twice_nu })
    }

    /// ν = n/2 - 1, the order attached to the radial transform in dimension `n`.
    pub fn for_dimension(n: u32) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Order {
            twice_nu: n as i32 - 2,
        }
    }

    pub fn twice_nu(self) -> i32 {
        self.twice_nu
    }

    pub fn nu(self) -> f64 {
        self.twice_nu as f64 / 2.0
    }

    pub fn is_half_integer(self) -> bool {
        self.twice_nu % 2 != 0
    }

    /// Order ν + 1.
    pub fn next(self) -> Order {
        Order {
            twice_nu: self.twice_nu + 2,
        }
    }
}

const SERIES_LIMIT: f64 = 1.0;
const SERIES_SWITCH: f64 = 8.0;
const ASYMPTOTIC_SWITCH: f64 = 20.0;

/// Γ(m/2) for integer m >= 1.
pub(crate) fn gamma_half(m: i32) -> f64 {
    debug_assert!(m >= 1);
    let (mut value, mut arg) = if m % 2 == 0 {
        (1.0, 1.0)
    } else {
        (PI.sqrt(), 0.5)
    };
    let target = m as f64 / 2.0;
    while arg < target {
        value *= arg;
        arg += 1.0;
    }
    value
}

/// Power series for `x^{-ν} J_ν(x)`; converges for all x, used for small x.
fn tilde_series(twice_nu: i32, x: f64) -> f64 {
    let nu = twice_nu as f64 / 2.0;
    let q = -0.25 * x * x;
    let mut term = 1.0 / (2f64.powf(nu) * gamma_half(twice_nu + 2));
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn series_j(twice_nu: i32, x: f64) -> f64 {
    tilde_series(twice_nu, x) * x.powf(twice_nu as f64 / 2.0)
}

/// Hankel asymptotic expansion of J_ν for large x, truncated at its smallest term.
fn hankel_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu - odd * odd) / (kf * 8.0 * x);
        if next.abs() >= last && k > 2 {
            break;
        }
        last = next.abs();
        term = next;
        // terms alternate between Q (odd k) and P (even k) with signs + - - + + ...
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (FRAC_2_PI / x).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Base pair (J_{b}, J_{b+1}) with b = -1/2 for half-integer and 0 for integer orders.
fn base_pair(half_integer: bool, x: f64) -> (f64, f64) {
    if half_integer {
        let scale = (FRAC_2_PI / x).sqrt();
        (scale * x.cos(), scale * x.sin())
    } else if x <= SERIES_SWITCH {
        (series_j(0, x), series_j(2, x))
    } else if x <= ASYMPTOTIC_SWITCH {
        miller_integer_pair(x)
    } else {
        (hankel_asymptotic(0.0, x), hankel_asymptotic(1.0, x))
    }
}

/// (J_0, J_1) by downward recurrence normalized with J_0 + 2 Σ_k J_{2k} = 1.
fn miller_integer_pair(x: f64) -> (f64, f64) {
    let start = 2 * ((x + 30.0 + 3.0 * x.sqrt()) / 2.0).ceil() as usize;
    let mut above = 0.0;
    let mut current = 1e-30;
    let mut sum = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let below = 2.0 * k as f64 / x * current - above;
        above = current;
        current = below;
        // current now holds the order k - 1 value
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            sum += 2.0 * current;
        }
        if k - 1 == 1 {
            j1 = current;
        }
        if current.abs() > 1e200 {
            above /= 1e200;
            current /= 1e200;
            sum /= 1e200;
            j1 /= 1e200;
        }
    }
    sum += current;
    (current / sum, j1 / sum)
}

/// Continued fraction for J_ν / J_{ν-1} (modified Lentz).
fn ratio_continued_fraction(nu: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0;
    for m in 0..100_000 {
        let b = 2.0 * (nu + m as f64) / x;
        let a = if m == 0 { 1.0 } else { -1.0 };
        d = b + a * d;
        if d == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    f
}

pub(crate) fn j_unchecked(twice_nu: i32, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        return series_j(twice_nu, x);
    }
    let half_integer = twice_nu % 2 != 0;
    let base = if half_integer { -1 } else { 0 };
    let (j0, j1) = base_pair(half_integer, x);
    if twice_nu == base {
        return j0;
    }
    if twice_nu == base + 2 {
        return j1;
    }
    let nu = twice_nu as f64 / 2.0;
    let base_nu = base as f64 / 2.0;
    if x >= nu {
        let (mut prev, mut cur) = (j0, j1);
        let mut order = base_nu + 1.0;
        while order < nu - 0.25 {
            let next = 2.0 * order / x * cur - prev;
            prev = cur;
            cur = next;
            order += 1.0;
        }
        return cur;
    }
    // Miller: run downward from (J_ν, J_{ν-1}) ∝ (ratio, 1) to the base pair.
    let ratio = ratio_continued_fraction(nu, x);
    let mut upper = ratio;
    let mut lower = 1.0;
    let mut order = nu - 1.0;
    let mut scale = 1.0;
    while order > base_nu + 1.0 + 0.25 {
        let next = 2.0 * order / x * lower - upper;
        upper = lower;
        lower = next;
        order -= 1.0;
        if lower.abs() > 1e250 {
            upper /= 1e250;
            lower /= 1e250;
            scale /= 1e250;
        }
    }
    // now lower ∝ J_{base+1}, upper ∝ J_{base+2}
    let computed_j1 = lower;
    let computed_j0 = 2.0 * (base_nu + 1.0) / x * lower - upper;
    let norm = if j0.abs() > j1.abs() {
        j0 / computed_j0
    } else {
        j1 / computed_j1
    };
    ratio * scale * norm
}

pub(crate) fn j_tilde_unchecked(twice_nu: i32, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        return tilde_series(twice_nu, x);
    }
    let nu = twice_nu as f64 / 2.0;
    j_unchecked(twice_nu, x) * x.powf(-nu)
}

/// J_ν(x) for x > 0.
pub fn bessel_j(order: Order, x: f64) -> Result<f64, BesselError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(BesselError::Domain(x));
    }
    Ok(j_unchecked(order.twice_nu, x))
}

/// The normalized function x^{-ν} J_ν(x), extended continuously to x = 0.
pub fn bessel_j_tilde(order: Order, x: f64) -> Result<f64, BesselError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(BesselError::Domain(x));
    }
    Ok(j_tilde_unchecked(order.twice_nu, x))
}

/// Value of x^{-ν} J_ν(x) at the origin, 1 / (2^ν Γ(ν + 1)).
pub fn bessel_j_tilde_at_zero(order: Order) -> f64 {
    1.0 / (2f64.powf(order.nu()) * gamma_half(order.twice_nu + 2))
}

fn j_derivative(twice_nu: i32, x: f64) -> f64 {
    twice_nu as f64 / (2.0 * x) * j_unchecked(twice_nu, x) - j_unchecked(twice_nu + 2, x)
}

fn mcmahon(nu: f64, k: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// Lazily generated positive zeros of J_ν in increasing order.
#[derive(Debug, Clone)]
pub struct BesselZeros {
    twice_nu: i32,
    index: usize,
    previous: f64,
}

impl BesselZeros {
    pub fn new(order: Order) -> Self {
        BesselZeros {
            twice_nu: order.twice_nu,
            index: 0,
            previous: 0.0,
        }
    }

    fn value(&self, x: f64) -> f64 {
        j_unchecked(self.twice_nu, x)
    }

    fn bracket(&self, guess: f64) -> Option<(f64, f64)> {
        let floor = self.previous + 1e-3;
        let lo = (guess - 1.2).max(floor);
        let hi = (guess + 1.2).max(lo + 0.5);
        if self.value(lo) * self.value(hi) < 0.0 {
            return Some((lo, hi));
        }
        // scan forward from the previous zero; consecutive zeros are more than 3 apart
        let mut a = floor;
        let mut fa = self.value(a);
        for _ in 0..400 {
            let b = a + 0.5;
            let fb = self.value(b);
            if fa * fb < 0.0 {
                return Some((a, b));
            }
            if fb == 0.0 {
                return Some((b - 1e-9, b + 1e-9));
            }
            a = b;
            fa = fb;
        }
        None
    }

    fn polish(&self, mut lo: f64, mut hi: f64) -> f64 {
        let mut flo = self.value(lo);
        while hi - lo > 1e-3 {
            let mid = 0.5 * (lo + hi);
            let fm = self.value(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm < 0.0) == (flo < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..100 {
            let fx = self.value(x);
            if fx == 0.0 {
                return x;
            }
            if (fx < 0.0) == (flo < 0.0) {
                lo = x;
            } else {
                hi = x;
            }
            let newton = x - fx / j_derivative(self.twice_nu, x);
            if (lo..=hi).contains(&newton) {
                if (newton - x).abs() <= 4.0 * f64::EPSILON * x {
                    return newton;
                }
                x = newton;
            } else {
                x = 0.5 * (lo + hi);
                if hi - lo <= 4.0 * f64::EPSILON * x {
                    return x;
                }
            }
        }
        x
    }

    /// Next zero, or an error naming the index that could not be located.
    pub fn next_zero(&mut self) -> Result<f64, BesselError> {
        let k = self.index + 1;
        let nu = self.twice_nu as f64 / 2.0;
        let guess = mcmahon(nu, k);
        let (lo, hi) = self
            .bracket(guess)
            .ok_or(BesselError::ZeroNotFound { index: k, nu })?;
        let root = self.polish(lo, hi);
        if !(root > self.previous) {
            return Err(BesselError::ZeroNotFound { index: k, nu });
        }
        self.index = k;
        self.previous = root;
        Ok(root)
    }
}

impl Iterator for BesselZeros {
    type Item = Result<f64, BesselError>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_zero())
    }
}

/// The first `count` positive zeros of J_ν.
pub fn bessel_zeros(order: Order, count: usize) -> Result<Vec<f64>, BesselError> {
    BesselZeros::new(order).take(count).collect()
}
