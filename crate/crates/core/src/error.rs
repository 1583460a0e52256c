use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot evaluate at zero: t is invertible")]
    EvaluationAtZero,
    #[error("infinite free rank exceeds window: {0}")]
    NotFinitelyGenerated(String),
    #[error("polynomial is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("constant coefficient {0} is not a unit, t is not invertible")]
    ConstantNotUnit(String),
    #[error("ring is not an integral domain")]
    NonDomain,
    #[error("order is not maximal (discriminant {0})")]
    NonMaximal(String),
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("class group search exceeded the exponent bound {0}")]
    ExponentBoundExceeded(usize),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ideal is not S-fractional")]
    NotSFractional,
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("generators do not lie in the ambient module: {0}")]
    NotContained(String),
    #[error("torsion module rejected: {0}")]
    Torsion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
