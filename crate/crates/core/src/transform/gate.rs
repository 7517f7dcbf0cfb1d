use std::fmt;

use super::{Dimension, RadialProfile};
use crate::quad::{try_integrate_finite, QuadratureSpec};

const TAIL_CUTOFF: f64 = 1e4;
const TREND_START: f64 = 1e3;
const TREND_BLOCKS: usize = 4;
const SAMPLES_PER_BLOCK: usize = 240;
// slack on the power-law exponents read off the sampled envelope
const TREND_MARGIN: f64 = 0.05;

/// Which of the two integrability pieces failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    NearOrigin,
    Tail,
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::NearOrigin => write!(f, "near-origin piece ∫_0^(1/r) |f(s)| s^(n+1) ds"),
            Piece::Tail => write!(f, "tail piece ∫_(1/r)^∞ |f(s)| s^((n+1)/2) ds"),
        }
    }
}

/// Outcome of the integrability probe.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrabilityReport {
    pub passed: bool,
    /// `∫_0^{1/r} |f| s^{n+1} ds`.
    pub near_origin: f64,
    /// `∫_{1/r}^{∞} |f| s^{(n+1)/2} ds`: quadrature to the cutoff plus a power-law tail.
    pub tail: f64,
    /// Fitted exponent `p` of the envelope `|f(s)| s^{(n+1)/2} ~ s^p` on `[1e3, 1e4]`.
    pub tail_exponent: f64,
    /// Whether `|f(s)| s^{(n-1)/2}` decays, so the oscillatory integral still
    /// converges as an alternating sum.
    pub summable: bool,
    pub failed: Option<Piece>,
    pub diagnostics: Vec<String>,
}

impl fmt::Display for IntegrabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (near origin {:.6e}, tail {:.6e}, tail exponent {:.3})",
            if self.passed { "integrable" } else { "not integrable" },
            self.near_origin,
            self.tail,
            self.tail_exponent
        )?;
        for d in &self.diagnostics {
            write!(f, "; {d}")?;
        }
        Ok(())
    }
}

/// Probes the absolute-integrability condition behind the lift for `f` in dimension `n`.
pub fn integrability_check(f: &RadialProfile, n: Dimension, r: f64) -> IntegrabilityReport {
    let n = n.get() as f64;
    let split = 1.0 / r;
    let cutoff = TAIL_CUTOFF.max(10.0 * split);
    let spec = QuadratureSpec::default().with_rel_tol(1e-6).with_abs_tol(1e-300);
    let mut diagnostics = Vec::new();
    let abs_at = |s: f64| f.eval(s).map(|v| v.norm());

    let near = match try_integrate_finite(|s| abs_at(s).map(|v| v * s.powf(n + 1.0)), 0.0, split, &spec) {
        Ok(q) if q.converged => Some(q.value),
        Ok(q) => {
            diagnostics.push(format!("near-origin quadrature did not settle ({:.3e})", q.value));
            None
        }
        Err(e) => {
            diagnostics.push(format!("near-origin quadrature failed: {e}"));
            None
        }
    };

    let half = 0.5 * (n + 1.0);
    let envelope = |s: f64| abs_at(s).map(|v| v * s.powf(half));
    let exponent = match envelope_exponent(&envelope, cutoff) {
        Ok(p) => p,
        Err(msg) => {
            diagnostics.push(msg);
            f64::INFINITY
        }
    };
    let tail_converges = exponent < -1.0 - TREND_MARGIN;
    let summable = exponent - 1.0 < -TREND_MARGIN;

    let tail = match try_integrate_finite(envelope, split, cutoff, &spec) {
        Ok(q) => {
            let beyond = if tail_converges {
                envelope(cutoff).map_or(f64::INFINITY, |h| h * cutoff / (-exponent - 1.0))
            } else {
                f64::INFINITY
            };
            q.value + beyond
        }
        Err(e) => {
            diagnostics.push(format!("tail quadrature failed: {e}"));
            f64::INFINITY
        }
    };

    let failed = if near.is_none() {
        Some(Piece::NearOrigin)
    } else if !tail_converges || !tail.is_finite() {
        diagnostics.push(format!("tail envelope decays like s^{exponent:.3}, needs s^p with p < -1"));
        Some(Piece::Tail)
    } else {
        None
    };
    IntegrabilityReport {
        passed: failed.is_none(),
        near_origin: near.unwrap_or(f64::INFINITY),
        tail,
        tail_exponent: exponent,
        summable: near.is_some() && summable,
        failed,
        diagnostics,
    }
}

/// Least-squares slope of `log max h` against `log s` over log-spaced blocks
/// ending at `cutoff`; `-∞` when the envelope has already vanished.
fn envelope_exponent<H, E>(h: &H, cutoff: f64) -> Result<f64, String>
where
    H: Fn(f64) -> Result<f64, E>,
    E: fmt::Display,
{
    let start = TREND_START.max(cutoff / 10.0);
    let ratio = (cutoff / start).ln() / TREND_BLOCKS as f64;
    let mut points = Vec::with_capacity(TREND_BLOCKS);
    let mut vanished = false;
    for b in 0..TREND_BLOCKS {
        let lo = start * (ratio * b as f64).exp();
        let hi = start * (ratio * (b + 1) as f64).exp();
        let mut peak: f64 = 0.0;
        for j in 0..SAMPLES_PER_BLOCK {
            // golden-ratio offsets avoid locking onto a periodic zero pattern
            let u = (j as f64 * 0.618_033_988_749_894_9).fract();
            let s = lo + (hi - lo) * u;
            let v = h(s).map_err(|e| format!("profile failed at s = {s}: {e}"))?;
            if !v.is_finite() {
                return Err(format!("profile is not finite at s = {s}"));
            }
            peak = peak.max(v);
        }
        if peak == 0.0 {
            vanished = true;
            continue;
        }
        points.push(((lo * hi).sqrt().ln(), peak.ln()));
    }
    if points.len() < 2 || vanished && points.len() < TREND_BLOCKS {
        return Ok(f64::NEG_INFINITY);
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
