use std::fmt;

use num_complex::Complex64;

use super::TransformError;
use crate::expr::{parse, Expression};
use crate::lift::DerivativeEngine;

pub const MIN_SAMPLES: usize = 8;
const MAX_BLEND_DEGREE: usize = 8;

/// A radial function of `s ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialProfile {
    Analytic(Expression),
    Sampled(SampledProfile),
}

impl RadialProfile {
    pub fn analytic(expr: Expression) -> Self {
        RadialProfile::Analytic(expr)
    }

    /// Parses a formula in `s`.
    pub fn parse(text: &str) -> Result<Self, TransformError> {
        Ok(RadialProfile::Analytic(parse(text)?))
    }

    pub fn sampled(grid: Vec<f64>, values: Vec<f64>, engine: DerivativeEngine) -> Result<Self, TransformError> {
        SampledProfile::new(grid, values, engine).map(RadialProfile::Sampled)
    }

    pub fn expression(&self) -> Option<&Expression> {
        match self {
            RadialProfile::Analytic(e) => Some(e),
            RadialProfile::Sampled(_) => None,
        }
    }

    /// The engine a lift uses when none is requested.
    pub fn default_engine(&self) -> DerivativeEngine {
        match self {
            RadialProfile::Analytic(_) => DerivativeEngine::Analytic,
            RadialProfile::Sampled(p) => p.engine,
        }
    }

    pub fn eval(&self, s: f64) -> Result<Complex64, TransformError> {
        match self {
            RadialProfile::Analytic(e) => Ok(e.eval(Complex64::new(s, 0.0))?),
            RadialProfile::Sampled(p) => Ok(Complex64::new(p.eval(s), 0.0)),
        }
    }

    /// Largest `s` at which the profile carries information, if bounded.
    pub fn support_end(&self) -> Option<f64> {
        match self {
            RadialProfile::Analytic(_) => None,
            RadialProfile::Sampled(p) => Some(p.end()),
        }
    }
}

impl From<Expression> for RadialProfile {
    fn from(e: Expression) -> Self {
        RadialProfile::Analytic(e)
    }
}

impl fmt::Display for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialProfile::Analytic(e) => write!(f, "{e}"),
            RadialProfile::Sampled(p) => write!(f, "samples[{} on [{}, {}]]", p.len(), p.grid[0], p.end()),
        }
    }
}

/// Samples on a strictly increasing positive grid.
///
/// Between nodes (and on `[0, s_0)`) the profile is the Floater-Hormann
/// rational interpolant of blending degree `min(N - 1, 8)`; past the last
/// node it is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
    weights: Vec<f64>,
    engine: DerivativeEngine,
}

impl SampledProfile {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, engine: DerivativeEngine) -> Result<Self, TransformError> {
        let bad = |msg: String| Err(TransformError::InvalidProfile(msg));
        if grid.len() != values.len() {
            return bad(format!("{} grid points but {} values", grid.len(), values.len()));
        }
        if grid.len() < MIN_SAMPLES {
            return bad(format!("need at least {MIN_SAMPLES} samples, got {}", grid.len()));
        }
        if !(grid[0] > 0.0) || grid.windows(2).any(|w| !(w[0] < w[1])) || !grid.iter().all(|x| x.is_finite()) {
            return bad("grid must be strictly increasing, positive and finite".into());
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return bad(format!("sample {i} is not finite"));
        }
        if engine == DerivativeEngine::Analytic {
            return bad("sampled profiles need a numerical derivative engine".into());
        }
        engine.validate().map_err(TransformError::InvalidProfile)?;
        let weights = floater_hormann_weights(&grid, MAX_BLEND_DEGREE.min(grid.len() - 1));
        Ok(SampledProfile {
            grid,
            values,
            weights,
            engine,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn engine(&self) -> DerivativeEngine {
        self.engine
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn end(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn eval(&self, s: f64) -> f64 {
        if s > self.end() {
            return 0.0;
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&x, &v), &w) in self.grid.iter().zip(&self.values).zip(&self.weights) {
            let d = s - x;
            if d == 0.0 {
                return v;
            }
            let t = w / d;
            num += t * v;
            den += t;
        }
        num / den
    }
}

fn floater_hormann_weights(x: &[f64], d: usize) -> Vec<f64> {
    let n = x.len() - 1;
    (0..=n)
        .map(|k| {
            let lo = k.saturating_sub(d);
            let hi = k.min(n - d);
            let mut total = 0.0;
            for i in lo..=hi {
                let mut prod = 1.0;
                for j in i..=i + d {
                    if j != k {
                        prod /= (x[k] - x[j]).abs();
                    }
                }
                total += prod;
            }
            if (k + d) % 2 == 0 {
                total
            } else {
                -total
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> DerivativeEngine {
        DerivativeEngine::central_fd(1e-3, 2)
    }

    #[test]
    fn reproduces_nodes_and_smooth_functions() {
        let grid: Vec<f64> = (1..=60).map(|i| i as f64 * 0.1).collect();
        let values: Vec<f64> = grid.iter().map(|s| (-s * s).exp()).collect();
        let p = SampledProfile::new(grid.clone(), values.clone(), engine()).unwrap();
        assert_eq!(p.eval(grid[7]), values[7]);
        for s in [0.55, 1.234, 3.01, 5.9] {
            assert!((p.eval(s) - (-s * s).exp()).abs() < 1e-7, "{s}");
        }
        assert_eq!(p.eval(6.5), 0.0);
        // extrapolation to the origin stays close
        assert!((p.eval(0.0) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_grids() {
        let short = SampledProfile::new(vec![1.0, 2.0], vec![0.0, 0.0], engine());
        assert!(matches!(short, Err(TransformError::InvalidProfile(_))));
        let grid: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert!(SampledProfile::new(grid, vec![1.0; 10], engine()).is_err());
        let grid: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let mut values = vec![1.0; 10];
        values[3] = f64::NAN;
        assert!(SampledProfile::new(grid.clone(), values, engine()).is_err());
        assert!(SampledProfile::new(grid, vec![1.0; 10], DerivativeEngine::Analytic).is_err());
    }
}
