use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is not a monic irreducible polynomial of degree {degree} over GF({p})")]
    ReducibleModulus { p: u64, degree: usize },
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not monic of positive degree")]
    NotMonic,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("element {0} appears in more than one class")]
    OverlappingClasses(u64),
    #[error("element {element} is out of range for Z_{v}")]
    ElementOutOfRange { element: i64, v: u64 },
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("need at least two words, got {0}")]
    TooFewWords(usize),
    #[error("permutation does not normalize the cyclic shift group")]
    NotInNormalizer,
    #[error("family does not partition Z_{0}")]
    NotPartitionType(u64),
    #[error("feedback tap c_0 is zero")]
    DegenerateTaps,
    #[error("polynomial is not primitive")]
    NotPrimitive,
    #[error("window parameter k = {k} outside 1..={max}")]
    BadK { k: usize, max: usize },
    #[error("projectivity does not act regularly on the affine points (orbit length {orbit}, expected {expected})")]
    NotTransitive { orbit: u64, expected: u64 },
    #[error("base point must be affine and different from the fixed point")]
    BadBasePoint,
    #[error("projectivity does not fix the hyperplane x_n = 0 and the point (0,...,0,1)")]
    DoesNotFixInfinity,
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: u64, modulus: u64 },
    #[error("parameters too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::ReducibleModulus { .. } => "ReducibleModulus",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::NotMonic => "NotMonic",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::OverlappingClasses(_) => "OverlappingClasses",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::EmptyClass(_) => "EmptyClass",
            Error::LengthMismatch(_) => "LengthMismatch",
            Error::TooFewWords(_) => "TooFewWords",
            Error::NotInNormalizer => "NotInNormalizer",
            Error::NotPartitionType(_) => "NotPartitionType",
            Error::DegenerateTaps => "DegenerateTaps",
            Error::NotPrimitive => "NotPrimitive",
            Error::BadK { .. } => "BadK",
            Error::NotTransitive { .. } => "NotTransitive",
            Error::BadBasePoint => "BadBasePoint",
            Error::DoesNotFixInfinity => "DoesNotFixInfinity",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::TooLarge(_) => "TooLarge",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
