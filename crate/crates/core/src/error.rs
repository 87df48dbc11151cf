use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller broke a documented precondition (dimension mismatch, bad family parameters, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A form with all coefficients zero. Fields are 0-based; messages count from 1.
    #[error("form {} is the zero vector", index + 1)]
    ZeroForm { index: usize },

    /// Two forms are rational multiples of each other. Fields are 0-based; messages count from 1.
    #[error("forms {} and {} are proportional", first + 1, second + 1)]
    ProportionalForms { first: usize, second: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("generic arrangement needs n >= l (got n = {n}, l = {dim})")]
    NotGeneric { n: usize, dim: usize },

    /// The oracle refused a computation whose matrix would exceed the entry budget.
    #[error("oracle matrix estimate {estimate} entries exceeds budget {budget}")]
    TooLarge { estimate: u128, budget: u128 },

    /// The decomposition system has a nontrivial nullspace.
    #[error("decomposition is not unique: nullspace dimension {nullity}")]
    AmbiguousDecomposition { nullity: usize },

    /// The target could not be written over the nbc basis at all.
    #[error("target is not in the span of the nbc operator basis")]
    Inconsistent,
}

pub type Result<T> = std::result::Result<T, Error>;
