use thiserror::Error;

/// Errors raised by graph construction, the numerical kernels and the
/// selection engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph order {n}: {reason}")]
    InvalidOrder { n: usize, reason: &'static str },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid port set: {0}")]
    InvalidPortSet(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("random graph generation failed after {attempts} attempts")]
    GenerationFailure { attempts: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{routine} did not converge after {iterations} iterations")]
    NonConvergence { routine: &'static str, iterations: usize },

    #[error("matrix is not stable: largest eigenvalue {lambda_max:e}")]
    Unstable { lambda_max: f64 },

    #[error("ill-posed Riccati problem: Hamiltonian eigenvalue {distance:e} from the imaginary axis")]
    IllPosed { distance: f64 },

    #[error("singular matrix")]
    Singular,

    #[error("assumption violated: {0}")]
    Assumption(String),

    #[error("heuristic undefined: {0}")]
    UndefinedHeuristic(String),

    #[error("degenerate spectrum: eigenvalue gap {gap:e} below threshold")]
    Degenerate { gap: f64 },

    #[error("enumeration of {count} subsets exceeds the cap of {cap}")]
    SizeCap { count: u128, cap: u128 },

    #[error("root finding did not converge from guess {guess}")]
    RootFinding { guess: f64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors caused by caller input rather than by numerics.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidOrder { .. }
                | Error::InvalidParameter { .. }
                | Error::InvalidPortSet(_)
                | Error::IndexOutOfRange { .. }
                | Error::Parse { .. }
                | Error::Shape(_)
                | Error::Assumption(_)
                | Error::SizeCap { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
