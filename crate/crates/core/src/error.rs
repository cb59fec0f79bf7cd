use thiserror::Error;

/// Errors raised by the algebraic and numerical routines.
///
/// Variants split into domain errors (a precondition on the input does not
/// hold) and numerical failures (an iterative method did not converge);
/// see [`Error::is_numerical`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("composition undefined: inner series has nonzero constant term {constant:e}")]
    CompositionUndefined { constant: f64 },

    #[error("series has no compositional inverse: {0}")]
    NotInvertible(String),

    #[error("rescaling factor must be nonzero")]
    ZeroScale,

    #[error("truncation overflow: substituted monomial reaches x-degree {degree}, table holds {capacity}")]
    TruncationOverflow { degree: usize, capacity: usize },

    #[error("not divisible by x^{k}: coefficient of x^{x_power} t^{t_power} is {magnitude:e}")]
    NotDivisible {
        k: usize,
        x_power: usize,
        t_power: usize,
        magnitude: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a normalized involution: {0}")]
    NotInvolution(String),

    #[error("degenerate critical point: second-order coefficient {0:e} vanishes")]
    DegenerateCritical(f64),

    #[error("exceptional divisor is invariant")]
    DivisorInvariant,

    #[error("singular point on the exceptional divisor at t = {re} + {im}i")]
    SingularOnDivisor { re: f64, im: f64 },

    #[error("not in T1 after blow-up: {0}")]
    NotT1(String),

    #[error("frame mismatch: expected {expected}, found {found}")]
    FrameMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("root finding failed: {message} (max residual {residual:e})")]
    RootFinding { message: String, residual: f64 },

    #[error("path continuation failed on segment {segment}: {message}")]
    Continuation { segment: usize, message: String },

    #[error("branch solving failed: {0}")]
    BranchSolving(String),

    #[error("search budget of {budget} samples exhausted without a certificate (seed {seed})")]
    BudgetExhausted { budget: usize, seed: u64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures of an iterative numerical method, false for
    /// violated preconditions.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RootFinding { .. }
                | Error::Continuation { .. }
                | Error::BranchSolving(_)
                | Error::BudgetExhausted { .. }
                | Error::Numerical(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
