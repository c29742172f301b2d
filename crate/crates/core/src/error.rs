use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by the zero series")]
    DivisionByZeroSeries,

    #[error("quotient of exact series does not terminate; give the divisor a finite order")]
    UnboundedQuotient,

    #[error("input {re}{im:+}i is not finite")]
    NonFinite { re: f64, im: f64 },

    #[error("w = {re}{im:+}i lies on the branch cut (-inf, 0] of the principal logarithm")]
    BranchCut { re: f64, im: f64 },

    #[error("w = 1 is excluded: z = 0 becomes a zero of e^z - w")]
    UnitExcluded,

    #[error("x = {0}i is a pole of the corollary closed form")]
    Pole(f64),

    #[error("{terms} terms are too few for a rigorous tail bound at this input (need more than {needed})")]
    InsufficientTerms { terms: u64, needed: u64 },
}
