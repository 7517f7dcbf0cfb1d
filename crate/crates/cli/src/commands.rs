use log::warn;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use radialft::expr::{parse, ParseError};
use radialft::kernels::{KernelError, KernelFamily, KernelSpec};
use radialft::lift::{corollary_coefficients, lift_to_dimension, DerivativeEngine, LiftError};
use radialft::quad::QuadratureSpec;
use radialft::transform::{radial_fourier, radial_fourier_unchecked, Dimension, RadialProfile, TransformError};

use crate::grid::Grid;
use crate::record::{Method, OutputRecord, RecordError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid profile: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("{0}")]
    Usage(String),
}

/// Records in grid order, plus whether every quadrature converged.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub records: Vec<OutputRecord>,
    pub converged: bool,
}

impl Table {
    fn from_rows(rows: Vec<(OutputRecord, bool)>) -> Self {
        let converged = rows.iter().all(|r| r.1);
        Table {
            records: rows.into_iter().map(|r| r.0).collect(),
            converged,
        }
    }
}

fn record(r: f64, value: Complex64, error_estimate: f64, method: Method) -> OutputRecord {
    OutputRecord {
        r,
        value_re: value.re,
        value_im: value.im,
        error_estimate,
        method,
    }
}

fn dimension(n: u32) -> Result<Dimension, CliError> {
    Ok(Dimension::new(n)?)
}

/// `F_n(f)` on a grid. `force` skips a failed integrability gate with a warning.
pub fn transform(profile: &str, n: u32, grid: &Grid, spec: &QuadratureSpec, force: bool) -> Result<Table, CliError> {
    let f = RadialProfile::Analytic(parse(profile)?);
    let n = dimension(n)?;
    let rows: Result<Vec<_>, CliError> = grid
        .points()
        .into_par_iter()
        .map(|r| {
            let t = match radial_fourier(&f, n, r, spec) {
                Err(TransformError::NotIntegrable { piece, .. }) if force => {
                    warn!("--force: computing r = {r} although the {piece} failed");
                    radial_fourier_unchecked(&f, n, r, spec)?
                }
                other => other?,
            };
            Ok((record(r, t.value, t.error_estimate, Method::Direct), t.converged))
        })
        .collect();
    Ok(Table::from_rows(rows?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EngineChoice {
    Analytic,
    Chebyshev,
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftOptions {
    pub engine: EngineChoice,
    pub degree: usize,
    /// Chebyshev interval `[r(1 - w), r(1 + w)]` around each grid point.
    pub width: f64,
    pub step: f64,
    pub levels: usize,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            engine: EngineChoice::Analytic,
            degree: 24,
            width: 0.25,
            step: 1e-3,
            levels: 3,
        }
    }
}

impl LiftOptions {
    fn engine_at(&self, r: f64) -> DerivativeEngine {
        match self.engine {
            EngineChoice::Analytic => DerivativeEngine::Analytic,
            EngineChoice::Chebyshev => DerivativeEngine::chebyshev(self.degree, r * (1.0 - self.width), r * (1.0 + self.width)),
            EngineChoice::Fd => DerivativeEngine::central_fd(self.step, self.levels),
        }
    }

    fn method(&self, steps: u32) -> Method {
        if steps >= 2 {
            return Method::Corollary;
        }
        match self.engine {
            EngineChoice::Analytic => Method::LiftAnalytic,
            EngineChoice::Chebyshev => Method::LiftChebyshev,
            EngineChoice::Fd => Method::LiftFd,
        }
    }
}

/// Lifts a profile `F_from` (a formula in `s`) to `F_to` on a grid.
pub fn lift(profile: &str, from: u32, to: u32, grid: &Grid, opts: &LiftOptions) -> Result<Table, CliError> {
    if !(1..=2).contains(&from) {
        return Err(CliError::Usage(format!("--from must be 1 or 2, got {from}")));
    }
    if to < from || (to - from) % 2 != 0 {
        return Err(LiftError::Parity { base: from, target: to }.into());
    }
    let f = RadialProfile::Analytic(parse(profile)?);
    let (base, target) = (dimension(from)?, dimension(to)?);
    let method = opts.method((to - from) / 2);
    let rows: Result<Vec<_>, CliError> = grid
        .points()
        .into_par_iter()
        .map(|r| {
            let v = lift_to_dimension(&f, base, target, r, opts.engine_at(r))?;
            Ok((record(r, v.value, v.error_estimate, method), true))
        })
        .collect();
    Ok(Table::from_rows(rows?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelChoice {
    Resolvent(Complex64),
    Projection(f64),
    Heat(f64),
}

/// A closed-form kernel on a grid.
pub fn kernel(choice: KernelChoice, n: u32, grid: &Grid) -> Result<Table, CliError> {
    let family = match choice {
        KernelChoice::Resolvent(z) => KernelFamily::Resolvent(z),
        KernelChoice::Projection(e) => KernelFamily::Projection(e),
        KernelChoice::Heat(t) => KernelFamily::Heat(t),
    };
    let spec = KernelSpec::new(family, dimension(n)?)?;
    let rows: Result<Vec<_>, CliError> = grid
        .points()
        .into_par_iter()
        .map(|r| {
            let v = spec.eval(r)?;
            // closed forms: only rounding in the evaluation
            Ok((record(r, v, 8.0 * f64::EPSILON * v.norm(), Method::Catalog), true))
        })
        .collect();
    Ok(Table::from_rows(rows?))
}

/// A complex number written as a constant formula, e.g. `-1`, `-2+i`, `0.5-3*i`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let e = parse(text)?.simplify();
    e.as_const()
        .filter(|z| z.re.is_finite() && z.im.is_finite())
        .ok_or_else(|| CliError::Usage(format!("`{text}` is not a constant")))
}

/// `c_{k,1}, ..., c_{k,k}` as exact rationals.
pub fn coeffs(k: usize) -> String {
    corollary_coefficients(k)
        .iter()
        .map(|(_, c)| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("-1").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(parse_complex("-2+i").unwrap(), Complex64::new(-2.0, 1.0));
        assert_eq!(parse_complex("-0.5-3*i").unwrap(), Complex64::new(-0.5, -3.0));
        assert!(parse_complex("s").is_err());
    }

    #[test]
    fn coefficient_rows() {
        assert_eq!(coeffs(1), "-1");
        assert_eq!(coeffs(2), "-1, 1");
        assert_eq!(coeffs(3), "-3, 3, -1");
    }
}
