use thiserror::Error;

use crate::walls::ext2::Counterexample;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("malformed character {0:?}: {1}")]
    ParseCharacter(String, String),

    #[error("invalid surface lattice: {0}")]
    InvalidLattice(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the zero vector has no point in the projective plane")]
    ZeroCharacter,

    #[error("points coincide projectively")]
    IdenticalPoints,

    #[error("a point at infinity was given where an affine point is required")]
    PointAtInfinity,

    #[error("the line at infinity is not allowed here")]
    LineAtInfinity,

    #[error("cannot combine radicals sqrt({0}) and sqrt({1}) in one quadratic field")]
    MixedRadicals(String, String),

    #[error("quadratic number division by zero")]
    DivisionByZero,

    #[error("(s, q) = ({s}, {q}) does not satisfy q > s^2/2")]
    InvalidStabPoint { s: String, q: String },

    #[error("central charge vanishes")]
    ZeroCharge,

    #[error("charge {re} + {im}i is not in the upper half plane or on the negative real axis")]
    NotInHeart { re: String, im: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(i64),

    #[error("Ext^2 certificate failed: {}", .0.reason)]
    CertificateFailure(Box<Counterexample>),
}

impl Error {
    /// Input was well formed but violates a mathematical precondition.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::InvalidStabPoint { .. }
                | Error::ZeroCharge
                | Error::NotInHeart { .. }
                | Error::Precondition(_)
                | Error::Degenerate(_)
                | Error::IdenticalPoints
                | Error::ZeroCharacter
                | Error::PointAtInfinity
                | Error::LineAtInfinity
                | Error::MixedRadicals(..)
                | Error::DivisionByZero
                | Error::NotAComplex(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::ParseRational(_) => "parse_rational",
            Error::ParseCharacter(..) => "parse_character",
            Error::InvalidLattice(_) => "invalid_lattice",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroCharacter => "zero_character",
            Error::IdenticalPoints => "identical_points",
            Error::PointAtInfinity => "point_at_infinity",
            Error::LineAtInfinity => "line_at_infinity",
            Error::MixedRadicals(..) => "mixed_radicals",
            Error::DivisionByZero => "division_by_zero",
            Error::InvalidStabPoint { .. } => "invalid_stability_point",
            Error::ZeroCharge => "zero_charge",
            Error::NotInHeart { .. } => "not_in_heart",
            Error::Precondition(_) => "precondition",
            Error::Degenerate(_) => "degenerate",
            Error::Shape(_) => "shape",
            Error::NotAComplex(_) => "not_a_complex",
            Error::CertificateFailure(_) => "certificate_failure",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
