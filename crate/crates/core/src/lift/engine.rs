use std::fmt;

/// How derivatives of a radial profile are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DerivativeEngine {
    /// Exact symbolic differentiation; expression profiles only.
    #[default]
    Analytic,
    /// Differentiate the Chebyshev interpolant of the given degree on `[a, b]`, `0 < a < b`.
    Chebyshev { degree: usize, a: f64, b: f64 },
    /// Central differences with step `step`, refined by `levels` Richardson halvings.
    CentralFd { step: f64, levels: usize },
}

impl DerivativeEngine {
    pub fn chebyshev(degree: usize, a: f64, b: f64) -> Self {
        DerivativeEngine::Chebyshev { degree, a, b }
    }

    pub fn central_fd(step: f64, levels: usize) -> Self {
        DerivativeEngine::CentralFd { step, levels }
    }

    pub fn validate(&self) -> Result<(), String> {
        match *self {
            DerivativeEngine::Analytic => Ok(()),
            DerivativeEngine::Chebyshev { degree, a, b } => {
                if !(a > 0.0 && a < b && b.is_finite()) {
                    return Err(format!("Chebyshev interval [{a}, {b}] must satisfy 0 < a < b"));
                }
                if !(4..=512).contains(&degree) {
                    return Err(format!("Chebyshev degree {degree} outside 4..=512"));
                }
                Ok(())
            }
            DerivativeEngine::CentralFd { step, levels } => {
                if !(step > 0.0 && step.is_finite()) {
                    return Err(format!("finite-difference step {step} must be positive"));
                }
                if levels > 8 {
                    return Err(format!("{levels} Richardson levels exceeds 8"));
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DerivativeEngine::Analytic => "analytic",
            DerivativeEngine::Chebyshev { .. } => "chebyshev",
            DerivativeEngine::CentralFd { .. } => "fd",
        }
    }
}

impl fmt::Display for DerivativeEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeEngine::Analytic => write!(f, "analytic"),
            DerivativeEngine::Chebyshev { degree, a, b } => write!(f, "chebyshev(degree {degree} on [{a}, {b}])"),
            DerivativeEngine::CentralFd { step, levels } => write!(f, "fd(step {step}, {levels} Richardson levels)"),
        }
    }
}
