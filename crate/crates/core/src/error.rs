use thiserror::Error;

/// Errors produced by the library layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplicity of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(i64),
    #[error("point {x} lies outside the support of the family")]
    OutOfSupport { x: i64 },
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("no closed form available: {0}")]
    NoClosedForm(String),
    #[error("operation requires a finite support")]
    InfiniteSupport,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("all coefficients are zero")]
    AllZero,
    #[error("coefficient a_{index} is nonzero but {index} is not in the family support")]
    SupportViolation { index: i64 },
    #[error("basis has no explicit polynomial form")]
    NotPolynomialBasis,
    #[error("stated multiplicity {stated} is not in 1..={actual}")]
    MultiplicityTooSmall { stated: usize, actual: usize },
    #[error("expansion does not vanish at the distinguished point")]
    NoZero,
    #[error("a_0 must be nonzero for this bound")]
    ZeroLeadCoefficient,
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),
    #[error("search instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("distance distribution describes an empty code")]
    EmptyCode,
    #[error("B_{index} is nonzero but the stated distance requires it to vanish")]
    DistancePreconditionViolated { index: usize },
    #[error("tail sum vanishes, bound is degenerate")]
    DegenerateTail,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DuplicateAbscissa(_) => "DuplicateAbscissa",
            Error::OutOfSupport { .. } => "OutOfSupport",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::NoClosedForm(_) => "NoClosedForm",
            Error::InfiniteSupport => "InfiniteSupport",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::AllZero => "AllZero",
            Error::SupportViolation { .. } => "SupportViolation",
            Error::NotPolynomialBasis => "NotPolynomialBasis",
            Error::MultiplicityTooSmall { .. } => "MultiplicityTooSmall",
            Error::NoZero => "NoZero",
            Error::ZeroLeadCoefficient => "ZeroLeadCoefficient",
            Error::ParameterDomain(_) => "ParameterDomain",
            Error::InstanceTooLarge(_) => "InstanceTooLarge",
            Error::EmptyCode => "EmptyCode",
            Error::DistancePreconditionViolated { .. } => "DistancePreconditionViolated",
            Error::DegenerateTail => "DegenerateTail",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
