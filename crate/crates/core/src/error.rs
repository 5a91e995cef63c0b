use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor classes live in different lattices")]
    LatticeMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix of the curve set is not negative definite")]
    NotNegativeDefinite,
    #[error("class is not nef")]
    NotNef,
    #[error("class is not big")]
    NotBig,
    #[error("class is not pseudo-effective in this model")]
    NotPseudoEffective,
    #[error("class is not ample in this model")]
    NotAmple,
    #[error("divisor lies on a chamber boundary; its stable base locus is not determined by the model")]
    InstableDivisor,
    #[error("support {0:?} is not realizable as the null set of a nef class")]
    UnrealizableSupport(Vec<String>),
    #[error("constructed nef class has null set {got:?}, expected {expected:?}")]
    NullMismatch { expected: Vec<String>, got: Vec<String> },
    #[error("value {0} out of range")]
    OutOfRange(String),
    #[error("value {0} outside the domain of definition")]
    OutOfDomain(String),
    #[error("model has no canonical class")]
    MissingCanonical,
    #[error("reflection vector must have square -2, found {0}")]
    NotMinusTwoClass(String),
    #[error("orbit exceeded the cap of {0} elements")]
    OrbitTooLarge(usize),
    #[error("rank {rank} is above the group enumeration cap {cap}")]
    RankTooLargeForEnumeration { rank: usize, cap: usize },
    #[error("chamber enumeration supports at most 63 curves, model has {0}")]
    TooManyCurves(usize),
    #[error("dimension must be non-negative")]
    NegativeDimension,
    #[error("need at least {needed} distinct samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("unknown curve label {0:?}")]
    UnknownCurve(String),
    #[error("invalid lattice: {0}")]
    Lattice(String),
    #[error("signature {found:?} is not hyperbolic (1, {expected_minus}, 0)")]
    Signature { found: (usize, usize, usize), expected_minus: usize },
    #[error("ample witness rejected: {0}")]
    AmpleWitness(String),
    #[error("curve data rejected: {0}")]
    CurvePairing(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
