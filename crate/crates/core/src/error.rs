use thiserror::Error;

/// Errors raised by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("interior product requires grade >= 1")]
    GradeZeroContraction,

    #[error("degenerate span: extra vector lies in the rational span of the sublattice")]
    DegenerateSpan,

    #[error("two-form matrix is not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("sublattice inclusion K ⊆ K' fails: generator {index} of K is not in K'")]
    NotASubgroup { index: usize },

    #[error("two-form does not vanish on the exponent sublattice; specialisation undefined")]
    SpecialisationUndefined,

    #[error("Laurent polynomial is not divisible by (t - t^-1)^{power}")]
    NotDivisible { power: usize },

    #[error("degree must have at least {min} entries, got {got}")]
    DegreeTooSmall { min: usize, got: usize },

    #[error("degree entries do not sum to zero")]
    Unbalanced,

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("constraint coranks sum to {got}, expected {expected}")]
    DimensionBalance { expected: usize, got: usize },

    #[error("refined multiplicity undefined: ω vanishes on a vertex bivector outside K")]
    SignUndefined,

    #[error("non-generic instance: {0}")]
    NonGeneric(String),

    #[error("non-generic instances exhausted after {0} resampling attempts")]
    NonGenericExhausted(usize),

    #[error("invariance violated: {0}")]
    InvarianceViolation(String),

    #[error("compatibility hypothesis violated on combinatorial type {0}")]
    HypothesisViolation(String),

    #[error("wall identity failed on wall {0}")]
    WallIdentity(String),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
