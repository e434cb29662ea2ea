use alloc::boxed::Box;
use alloc::string::String;

use crate::scalar::Scalar;
use crate::verify::Witness;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {input:?}: {reason}")]
    ParseScalar { input: String, reason: &'static str },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix must have rational entries")]
    NonRationalMatrix,
    #[error("matrix must have real entries")]
    NonRealMatrix,
    #[error("H is not hermitian: {0}")]
    NotHermitian(Box<Witness>),
    #[error("A is not H-selfadjoint: {0}")]
    NotSelfadjoint(Box<Witness>),
    #[error("eigenvalues outside Q(i): factor {factor} has no roots there")]
    IrrationalSpectrum { factor: String },
    #[error("normalizing a Jordan chain needs the square root of {value}, which is not in Q(i, sqrt 2)")]
    NonconstructibleScaling { value: Box<Scalar> },
    #[error("bad sip signature: {0}")]
    BadSignature(String),
    #[error("gamma must be nonzero")]
    BadGamma,
    #[error("invalid Jordan specification: {0}")]
    InvalidSpec(String),
    #[error("no invertible transformation found after {attempts} draws")]
    GeneratorExhausted { attempts: usize },
    #[error("internal structure mismatch: {0}")]
    InternalStructureMismatch(String),
}

impl Error {
    /// Stable variant name, used by the command line for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ParseScalar { .. } => "ParseScalar",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Singular { .. } => "Singular",
            Error::Inconsistent => "Inconsistent",
            Error::NonRationalMatrix => "NonRationalMatrix",
            Error::NonRealMatrix => "NonRealMatrix",
            Error::NotHermitian(_) => "NotHermitian",
            Error::NotSelfadjoint(_) => "NotSelfadjoint",
            Error::IrrationalSpectrum { .. } => "IrrationalSpectrum",
            Error::NonconstructibleScaling { .. } => "NonconstructibleScaling",
            Error::BadSignature(_) => "BadSignature",
            Error::BadGamma => "BadGamma",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::GeneratorExhausted { .. } => "GeneratorExhausted",
            Error::InternalStructureMismatch(_) => "InternalStructureMismatch",
        }
    }
}
