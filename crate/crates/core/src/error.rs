use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("weights are not symmetric: w[{x}][{y}] = {wxy} but w[{y}][{x}] = {wyx}")]
    AsymmetricWeights { x: String, y: String, wxy: f64, wyx: f64 },
    #[error("vertex {vertex} has non-positive or non-finite measure {mu}")]
    NonpositiveMeasure { vertex: String, mu: f64 },
    #[error("vertex {vertex} has a self-loop")]
    SelfLoop { vertex: String },
    #[error("invalid weight {w} on edge {x}-{y}")]
    InvalidWeight { x: String, y: String, w: f64 },
    #[error("edge {x}-{y} listed more than once")]
    DuplicateEdge { x: String, y: String },
    #[error("graph is disconnected: no positive-weight path from {from} to {to}")]
    Disconnected { from: String, to: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("missing value for vertex {vertex} in {field}")]
    MissingValue { field: String, vertex: String },
    #[error("dimension mismatch: expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value at vertex index {0}")]
    NonFinite(usize),
    #[error("exponential overflow guard tripped: |u| = {0} exceeds 700")]
    Overflow(f64),
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph has a single vertex")]
    SingleVertex,

    #[error("Jacobian is singular")]
    SingularJacobian,
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("iterate diverged")]
    Diverged,
    #[error("lower bound is not a subsolution at vertex {vertex} (residual {residual:e})")]
    NotSubsolution { vertex: usize, residual: f64 },
    #[error("upper bound is not a supersolution at vertex {vertex} (residual {residual:e})")]
    NotSupersolution { vertex: usize, residual: f64 },
    #[error("empty box: lower > upper at vertex {0}")]
    BoxEmpty(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("constant {value} failed the subsolution check at vertex {vertex}")]
    NotSubsolutionAfterAll { value: f64, vertex: usize },
    #[error("continuation branch lost after t = {last_t}")]
    BranchLost { last_t: f64 },
    #[error("problem does not live on a two-vertex graph")]
    NotTwoVertex,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("h_plus and h_minus both vanish identically; the degree is undefined")]
    BothZero,
    #[error("h vanishes identically; the degree is undefined")]
    ZeroH,
    #[error("radius selection did not stabilise")]
    RadiusUnstable,
    #[error("vertex subset is empty")]
    EmptyV0,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("boundary value system is singular")]
    SingularSystem,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
