use thiserror::Error;

/// Errors raised by the geometry, lattice and cut-generation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polyhedron is unbounded and no search box was supplied")]
    UnboundedWithoutBox,

    #[error("row {row} does not define a facet")]
    NotAFacet { row: usize },

    #[error("row index {row} out of range ({rows} rows)")]
    RowOutOfRange { row: usize, rows: usize },

    #[error("anchor point is integral; a fractional point is required")]
    IntegralAnchor,

    #[error("anchor point does not lie in the polyhedron Q")]
    AnchorOutsideQ,

    #[error("anchor point is not in the interior of the body")]
    AnchorNotInterior,

    #[error("body has no inequalities (the whole space is never S-free)")]
    EmptyRowList,

    #[error("gauge row {row} is the zero vector")]
    DegenerateRow { row: usize },

    #[error("body is not S-free: {witness:?} lies in its interior")]
    NotSFree { witness: Vec<i64> },

    #[error("direction is not a recession direction of both the body and Q")]
    NotARecessionDirection,

    #[error("recession directions of the body intersected with Q are not contained in its lineality space; extend the lineality first")]
    UnresolvedRecession,

    #[error("no point of S inside the search box")]
    EmptyS,

    #[error("bodies use different anchor points")]
    AnchorMismatch,

    #[error("instance has no rays")]
    NoRays,

    #[error("invalid search box: {0}")]
    InvalidBox(String),

    #[error("{0}")]
    Invalid(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
