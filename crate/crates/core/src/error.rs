use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("iterative eigen-reduction did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("resonant construction requires delta1 = delta2 = 0 (got {delta1}, {delta2})")]
    ResonanceRequired { delta1: f64, delta2: f64 },

    #[error("two eigen-energies coincide within {tolerance:e}; eigenvector phases are ambiguous")]
    DegenerateSpectrum { tolerance: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integration step {dt} exceeds stability bound {bound}")]
    StepTooLarge { dt: f64, bound: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
