use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("probabilities sum to {sum}, expected 1")]
    ProbSumMismatch { sum: Rational },
    #[error("negative value {0}")]
    NegativeValue(Rational),
    #[error("negative probability {0}")]
    NegativeProb(Rational),
    #[error("marginal has an empty support")]
    EmptySupport,
    #[error("instance has no items")]
    EmptyInstance,
    #[error("duplicate item name {0:?}")]
    DuplicateName(String),
    #[error("quantile {0} outside the allowed range")]
    QOutOfRange(Rational),
    #[error("pricing has {got} entries but the instance has {expected} items")]
    PricingLength { expected: usize, got: usize },
    #[error("negative price {0}")]
    NegativePrice(Rational),
    #[error("coupling is incompatible with the marginals: {0}")]
    IncompatibleCoupling(String),
    #[error("no chain is rooted at the requested item-2 utility index {0}")]
    RootNotFound(usize),
    #[error("common multiset size {d} exceeds the cap {cap}")]
    DTooLarge { d: String, cap: usize },
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("vertex count {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
