use crate::field::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial does not have integer coefficients")]
    NonIntegerCoefficients,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("bad indices ({0}, {1}) for dimension {2}")]
    BadIndices(usize, usize, usize),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("invariant factors do not form a divisibility chain")]
    BrokenChain,
    #[error("factorization unavailable: {0}")]
    FactorizationUnavailable(String),
    #[error("dimension {0} is too small (need n >= 3)")]
    DimensionTooSmall(usize),
    #[error("matrix is central (scalar)")]
    CentralMatrix,
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("matrix is not in the transvection class")]
    NotInT,
    #[error("characteristic polynomial has no root at the given point")]
    NoRoot,
    #[error("an invariant factor has degree one")]
    HasDegreeOneFactor,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("synthesis failed: {0}")]
    SynthesisFailed(String),
    #[error("unreachable over this field: {0}")]
    Unreachable(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("matrices are not similar")]
    NotSimilar,
    #[error("matrix does not have the antidiagonal-plus-corner shape")]
    ShapeMismatch,
    #[error("enumeration too large: {size} exceeds cap {cap}")]
    TooLarge { size: u64, cap: u64 },
    #[error("stable element is central")]
    CentralElement,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::FieldMismatch(..) => "E_FIELD_MISMATCH",
            Error::DivisionByZero => "E_DIV_ZERO",
            Error::DivisionByZeroPoly => "E_DIV_ZERO_POLY",
            Error::BothZero => "E_BOTH_ZERO",
            Error::ZeroConstantTerm => "E_ZERO_CONSTANT_TERM",
            Error::ZeroPolynomial => "E_ZERO_POLY",
            Error::NotMonic => "E_NOT_MONIC",
            Error::ConstantPolynomial => "E_CONSTANT_POLY",
            Error::NonIntegerCoefficients => "E_NON_INTEGER",
            Error::Singular => "E_SINGULAR",
            Error::DimensionMismatch(..) => "E_DIMENSION_MISMATCH",
            Error::BadIndices(..) => "E_BAD_INDICES",
            Error::ZeroParameter => "E_ZERO_PARAMETER",
            Error::BrokenChain => "E_BROKEN_CHAIN",
            Error::FactorizationUnavailable(_) => "E_FACTORIZATION_UNAVAILABLE",
            Error::DimensionTooSmall(_) => "E_DIMENSION_TOO_SMALL",
            Error::CentralMatrix => "E_CENTRAL",
            Error::WrongDimension { .. } => "E_WRONG_DIMENSION",
            Error::NotInT => "E_NOT_IN_T",
            Error::NoRoot => "E_NO_ROOT",
            Error::HasDegreeOneFactor => "E_DEGREE_ONE_FACTOR",
            Error::PreconditionViolated(_) => "E_PRECONDITION",
            Error::SynthesisFailed(_) => "E_SYNTHESIS_FAILED",
            Error::Unreachable(_) => "E_UNREACHABLE",
            Error::VerificationFailed(_) => "E_VERIFICATION_FAILED",
            Error::NotSimilar => "E_NOT_SIMILAR",
            Error::ShapeMismatch => "E_SHAPE_MISMATCH",
            Error::TooLarge { .. } => "E_TOO_LARGE",
            Error::CentralElement => "E_CENTRAL_ELEMENT",
            Error::Parse(_) => "E_PARSE",
        }
    }
}
