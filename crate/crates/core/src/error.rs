use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Typed errors shared by every module. The name printed by `Display` is the
/// stable error identifier the CLI reports on stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A named element does not exist in the poset it was used with.
    UnknownElement(String),
    /// Element names repeat within one poset.
    DuplicateElement(String),
    /// Transitive closure of the ingested relation produced a cycle.
    NotAntisymmetric(String),
    /// The assignment violates x <= y implies f(x) <= f(y).
    NotMonotone(String),
    /// A set that must be an upset is not one.
    NotAnUpset(String),
    /// Formula evaluation hit a variable without an assigned upset.
    UnboundVariable(String),
    /// An enumeration or construction would exceed the configured cap.
    SizeLimitExceeded(String),
    /// Two maps that must share a (co)domain do not, or a triangle fails to commute.
    IncompatibleMaps(String),
    /// A map required to be a p-morphism is not.
    NotPMorphism(String),
    /// A map required to satisfy the relative-openness condition does not.
    NotGOpen(String),
    /// A required element is absent from a layer (filtered out or internal bug).
    MissingElement(String),
    /// A direct image fell outside the target layer.
    ImageNotInLayer(String),
    /// The input poset must be prelinear.
    NotPrelinear(String),
    /// The input poset must be discrete.
    NotDiscrete(String),
    /// A stabilization certificate failed; indicates an implementation bug.
    StabilizationFailure(String),
    /// The complex does not reach deep enough for the requested lookahead.
    InsufficientDepth(String),
    /// Formula text failed to parse; byte position of the failure.
    ParseError { position: usize, message: String },
    /// An internal consistency assertion failed.
    InternalInvariant(String),
}

impl Error {
    /// Stable identifier, used for CLI stderr reporting and exit codes.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UnknownElement(_) => "UnknownElement",
            Error::DuplicateElement(_) => "DuplicateElement",
            Error::NotAntisymmetric(_) => "NotAntisymmetric",
            Error::NotMonotone(_) => "NotMonotone",
            Error::NotAnUpset(_) => "NotAnUpset",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::SizeLimitExceeded(_) => "SizeLimitExceeded",
            Error::IncompatibleMaps(_) => "IncompatibleMaps",
            Error::NotPMorphism(_) => "NotPMorphism",
            Error::NotGOpen(_) => "NotGOpen",
            Error::MissingElement(_) => "MissingElement",
            Error::ImageNotInLayer(_) => "ImageNotInLayer",
            Error::NotPrelinear(_) => "NotPrelinear",
            Error::NotDiscrete(_) => "NotDiscrete",
            Error::StabilizationFailure(_) => "StabilizationFailure",
            Error::InsufficientDepth(_) => "InsufficientDepth",
            Error::ParseError { .. } => "ParseError",
            Error::InternalInvariant(_) => "InternalInvariant",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParseError { position, message } => {
                write!(f, "ParseError at byte {position}: {message}")
            }
            Error::UnknownElement(s)
            | Error::DuplicateElement(s)
            | Error::NotAntisymmetric(s)
            | Error::NotMonotone(s)
            | Error::NotAnUpset(s)
            | Error::UnboundVariable(s)
            | Error::SizeLimitExceeded(s)
            | Error::IncompatibleMaps(s)
            | Error::NotPMorphism(s)
            | Error::NotGOpen(s)
            | Error::MissingElement(s)
            | Error::ImageNotInLayer(s)
            | Error::NotPrelinear(s)
            | Error::NotDiscrete(s)
            | Error::StabilizationFailure(s)
            | Error::InsufficientDepth(s)
            | Error::InternalInvariant(s) => write!(f, "{}: {}", self.name(), s),
        }
    }
}

impl core::error::Error for Error {}
