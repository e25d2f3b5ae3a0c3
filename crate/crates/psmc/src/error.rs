use std::fmt;

/// Errors shared across the solver stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Instance construction or deserialization rejected the data.
    InvalidInstance(String),
    /// A solver parameter is outside its legal range.
    InvalidParameter(String),
    /// The covering target cannot be met by any sub-collection.
    Infeasible(String),
    /// An exhaustive oracle refused to run: too many sets or out of time.
    BudgetExceeded(String),
    /// A density subroutine returned a pick that fully covers nothing new.
    SolverStalled,
    /// Column generation did not converge within the round cap.
    IterationLimit(usize),
    /// A verification inequality failed; the message names which one.
    BoundViolation(String),
    /// The bucket partition found no usable bucket on a large instance,
    /// which points at a broken fractional solution upstream.
    DegenerateY(String),
    /// The random generator could not establish coverability.
    RetryExhausted(String),
    /// Numerical trouble inside the LP machinery.
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            Error::BudgetExceeded(msg) => write!(f, "budget exceeded: {msg}"),
            Error::SolverStalled => write!(f, "subroutine made no coverage progress"),
            Error::IterationLimit(n) => write!(f, "column generation hit the round cap ({n})"),
            Error::BoundViolation(msg) => write!(f, "bound violation: {msg}"),
            Error::DegenerateY(msg) => write!(f, "degenerate fractional cover: {msg}"),
            Error::RetryExhausted(msg) => write!(f, "retry budget exhausted: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
