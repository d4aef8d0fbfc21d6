use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Infeasibility is never an error: solvers report it through
/// [`crate::solvers::SolveOutcome`] and graphicality tests through their
/// return values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("matrix is not square")]
    NonSquareMatrix,
    #[error("matrix is not symmetric at ({i}, {j})")]
    AsymmetricMatrix { i: usize, j: usize },
    #[error("matrix has a negative entry at ({i}, {j})")]
    NegativeEntry { i: usize, j: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("instance violates the gadget separation conditions; rescale first")]
    NeedsRescale,
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("profile mismatch at position {position}")]
    ProfileMismatch { position: usize },
    #[error("cannot identify gadget roles: {0}")]
    RoleIdentification(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generation failed: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
