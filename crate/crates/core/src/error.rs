use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("duplicate leg label {0}")]
    DuplicateLegLabel(u32),
    #[error("leg labels must be exactly 1..=n, got {0:?}")]
    BadLegLabels(Vec<u32>),
    #[error("graph is not connected")]
    Disconnected,
    #[error("negative weight {weight} on vertex {vertex}")]
    NegativeWeight { vertex: String, weight: i64 },
    #[error("endpoint `{0}` is not a declared vertex")]
    DanglingEndpoint(String),
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),
    #[error("unknown edge id {0}")]
    UnknownEdge(u32),
    #[error("graph is not stable")]
    NotStable,
    #[error("degenerate signature: 2g-2+n = {0} < 1")]
    DegenerateSignature(i64),
    #[error("graph is not 3-regular with zero weights")]
    NotTrivalent,
    #[error("graphs do not share the same (genus, legs) signature")]
    SignatureMismatch,
    #[error("no zig-zag path found; this indicates an enumeration completeness bug")]
    NoPath,
    #[error("marked point {label} lies on undeclared component `{component}`")]
    BadMarking { label: u32, component: String },
    #[error("expected {expected} edge lengths, got {got}")]
    WrongLengthCount { expected: usize, got: usize },
    #[error("edge length must be positive")]
    NonPositiveLength,
    #[error("infinite length only allowed on extended curves or leaf edges")]
    UnexpectedInfiniteLength,
    #[error("edge adjacent to a 1-valent weight-0 vertex must have infinite length")]
    ExpectedInfiniteLength,
    #[error("coordinate must be nonnegative")]
    NegativeCoordinate,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
