use thiserror::Error;

/// Errors raised by the exact kernels and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table or state set grew past its distinct-key ceiling.
    #[error("budget exceeded: {reached} distinct entries (limit {limit})")]
    BudgetExceeded { limit: usize, reached: usize },

    #[error("generating set is not symmetric under negation")]
    AsymmetricGeneratingSet,

    #[error("the eigenvalue of the given pair is zero")]
    ZeroEigenvalue,

    #[error("0 is not an eigenvalue of T^{d}_{n}")]
    ZeroNotEigenvalue { n: u64, d: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A nonzero eigenvalue of T^2_N with multiplicity above 24.
    #[error("multiplicity {multiplicity} > 24 for a nonzero eigenvalue of T^2_{n}")]
    Bound24Violated { n: u64, multiplicity: u64 },

    /// A rational vanishing cosine quadruple outside every listed family.
    #[error("vanishing quadruple matches no listed family: {0}")]
    UnclassifiedVanishing(String),

    #[error("coefficient overflow in fixed-width cyclotomic arithmetic")]
    CoefficientOverflow,

    #[error("elements live in different cyclotomic rings (N = {left} vs N = {right})")]
    ModulusMismatch { left: u64, right: u64 },

    /// Σ counts ≠ N^d after a convolution; an internal consistency failure.
    #[error("conservation violated: total count {total} != {expected}")]
    ConservationViolated { total: String, expected: String },

    #[error("high-precision arithmetic failed: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
