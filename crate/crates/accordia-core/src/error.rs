use crate::polygon::Diag;
use thiserror::Error;

/// Errors shared across the library. Variants carry enough context to
/// reconstruct what was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("diagonals {0} and {1} cross")]
    CrossingPair(Diag, Diag),
    #[error("bad label or polygon data: {0}")]
    BadLabel(String),
    #[error("{0} is a boundary edge, expected an internal diagonal")]
    BoundaryInput(Diag),
    #[error("dissection is not a maximal accordion dissection of the reference")]
    NotMaximal,
    #[error("{0} is not a member of the dissection")]
    NotMember(Diag),
    #[error("{0} is not an accordion diagonal of the reference dissection")]
    NotAccordion(Diag),
    #[error("every cell has at most one boundary edge, nothing to decompose")]
    NoDecomposition,
    #[error("flip graph has a directed cycle")]
    CyclicGraph,
    #[error("ray family is linearly dependent")]
    RankDeficient,
    #[error("dissections are not nested")]
    NotNested,
    #[error("d-vector fan unavailable: reference has an even interior cell")]
    DfanUnavailable,
    #[error("accordiohedron of the empty dissection is zero-dimensional")]
    EmptyReference,
    #[error("halfspace intersection is unbounded")]
    Unbounded,
    #[error("symmetry does not preserve the dissection")]
    NotInvariant,
    #[error("symmetry must be a rotation")]
    NotRotation,
    #[error("rendering needs exactly 3 reference diagonals, got {0}")]
    WrongDimension(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
