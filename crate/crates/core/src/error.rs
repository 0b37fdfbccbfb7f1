use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exponent matrix does not have full column rank; the diagonal kernel is infinite")]
    InfiniteKernel,
    #[error("polynomial is not quasihomogeneous for any positive weight system")]
    NotQuasihomogeneous,
    #[error("support does not determine the weights uniquely (affine span has dimension {span} < {needed})")]
    WeightsNotUnique { span: usize, needed: usize },
    #[error("weight system has a non-positive weight")]
    NonPositiveWeight,
    #[error("polynomial has no terms")]
    EmptyPolynomial,
    #[error(
        "restriction to coordinates {0:?} is not an isolated singularity; supply a chi override"
    )]
    UnsupportedRestriction(Vec<usize>),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("the monodromy element is not contained in the chosen group")]
    MonodromyNotInGroup,
    #[error("element {0} is not a symmetry of the polynomial")]
    NotASymmetry(String),
    #[error("non-integral Burnside coefficient {num}/{den} for isotropy {subgroup}")]
    NonIntegralCoefficient {
        num: i64,
        den: i64,
        subgroup: String,
    },
    #[error("elements live over different ambient groups")]
    AmbientMismatch,
    #[error("{0} is not a subgroup of the ambient group")]
    NotASubgroup(String),
    #[error("ambient group is not cyclic")]
    NotCyclic,
    #[error("series has constant term {0}, expected 1")]
    MalformedConstantTerm(i64),
    #[error("character of C*-degree {0} is not negative")]
    NonNegativeCharacter(i64),
    #[error("character is incompatible with the monodromy element")]
    IncompatibleCharacter,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
