use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: left has degree {left}, right has degree {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("root count deficit: found {found} of {expected} roots after {refinements} grid refinements")]
    RootCountDeficit {
        found: usize,
        expected: usize,
        refinements: usize,
    },

    #[error("direct coefficient form unavailable (magnitudes exceed f64 range); use the log form")]
    CoeffsUnavailable,

    #[error("degree {0} exceeds the direct expansion cap of {1}; use the factored evaluation pathway")]
    DegreeCap(usize, usize),

    #[error("solver did not converge: {context} (residual {residual:.3e} after {iterations} iterations)")]
    NonConvergence {
        context: String,
        residual: f64,
        iterations: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("series not invertible: first-moment coefficient {c1_abs:.3e} too small (measure outside M_T*)")]
    NotInvertible { c1_abs: f64 },

    #[error("quadrature did not reach tolerance {requested:.3e}; achieved {achieved:.3e}")]
    Quadrature { requested: f64, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
