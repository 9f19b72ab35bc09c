//! Error types shared across the crate.

use thiserror::Error;

/// Structural problems with a plane graph or with a surgery applied to one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0:?} is declared twice")]
    DuplicateVertex(String),
    #[error("vertex name {0:?} is empty or contains whitespace")]
    InvalidName(String),
    #[error("rotation of {0} references {1}, which is not a declared vertex")]
    UndeclaredVertex(String, String),
    #[error("loop edge at {0}")]
    LoopEdge(String),
    #[error("parallel edge {0} {1}")]
    ParallelEdge(String, String),
    #[error("rotation lists {0} -> {1} but not {1} -> {0}")]
    AsymmetricRotation(String, String),
    #[error("component containing {0} violates Euler's formula (V={1}, E={2}, F={3})")]
    EulerViolation(String, usize, usize, usize),
    #[error("anchor {0} {1} is not a directed edge of the graph")]
    InvalidAnchor(String, String),
    #[error("component containing {0} has more than one outer anchor")]
    DuplicateAnchor(String),
    #[error("component containing {0} has no outer anchor")]
    MissingAnchor(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("outer boundary walk is not a simple cycle")]
    NotSimpleBoundary,
    #[error("edge {0} {1} is not a chord of the boundary cycle")]
    NotAChord(String, String),
    #[error("edge {0} {1} does not lie on either side of the chord")]
    EdgeOnChordSide(String, String),
    #[error("boundary cycle has a chord {0} {1}")]
    HasChord(String, String),
    #[error("edge {0} {1} is not on the outer boundary")]
    EdgeNotOnBoundary(String, String),
    #[error("edge {0} {1} is not in the graph")]
    EdgeAbsent(String, String),
    #[error("vertex {0} is not in the graph")]
    VertexAbsent(String),
    #[error("boundary has fewer than three vertices")]
    BoundaryTooShort,
}

/// Problems raised by coefficient queries and polynomial searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget exceeded after {0} candidate evaluations")]
    SearchBudgetExceeded(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Failures of the certificate construction.
///
/// `InternalProofViolation` signals that an intermediate quantity the
/// construction is entitled to rely on (a coefficient that must be nonzero,
/// a cap that must hold) failed to hold. It always indicates a bug, never
/// bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("internal proof violation: {0}")]
    InternalProofViolation(String),
}

/// Problems raised by the verification oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget exceeded after {0} states")]
    SearchBudgetExceeded(usize),
    #[error("internal proof violation: {0}")]
    InternalProofViolation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Problems parsing the textual graph, certificate, or list formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("certificate digest {found} does not match graph digest {expected}")]
    DigestMismatch { expected: String, found: String },
}
