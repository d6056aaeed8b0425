use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition error: {0}")]
    Composition(String),
    /// A bounded search ran out of budget before reaching a verdict.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("head undefined: {0}")]
    HeadUndefined(String),
    #[error("not a divisor of the Garside element: {0}")]
    NotADivisor(String),
    #[error("no common multiple")]
    NoCommonMultiple,
    #[error("node budget of {budget} exceeded")]
    ExplosionGuard { budget: usize },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("presentation is not complemented: {0}")]
    NotComplemented(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}
