use thiserror::Error;

use crate::entity::{Kind, Representation};

/// Errors raised by the algebra kernel and the geometric layers above it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaError {
    #[error("operands live in different signatures ({left} vs {right})")]
    SignatureMismatch { left: String, right: String },

    #[error("dimension {0} is outside the supported range")]
    DimensionOutOfRange(usize),

    #[error("gram matrix is not supported: {0}")]
    UnsupportedMetric(String),

    #[error("unknown basis blade `{0}`")]
    UnknownBlade(String),

    #[error("expected a Euclidean vector (grade 1, no e0 or ni components)")]
    NotEuclidean,

    #[error("expected a conformal point (null grade-1 vector)")]
    NotAPoint,

    #[error("point lies at infinity (P.ni = 0)")]
    PointAtInfinity,

    #[error("degenerate span: the given points do not span a {0:?}")]
    DegenerateSpan(Kind),

    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),

    #[error("rotation axis is not normalised (axis^2 = {0}, expected -1)")]
    UnnormalizedAxis(f64),

    #[error("ideal line has no Euclidean part and cannot be normalised")]
    IdealLine,

    #[error("value is not a versor: V~V is not a nonzero scalar")]
    NotAVersor,

    #[error("value contains ni and is not a PGA element")]
    NotInCga0,

    #[error("entity has {found:?} representation, expected {expected:?}")]
    RepresentationMismatch {
        expected: Representation,
        found: Representation,
    },

    #[error("{kind:?} in {repr:?} representation cannot have grades {grades:?}")]
    GradeMismatch {
        kind: Kind,
        repr: Representation,
        grades: Vec<u32>,
    },

    #[error("operation requires a conformal (CGA) signature")]
    NotConformal,

    #[error("unknown check suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = GaError> = std::result::Result<T, E>;
