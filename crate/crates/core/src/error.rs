use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}`: {msg}")]
    BadParams { family: String, msg: String },
    #[error("lexicographic product needs nonempty factors")]
    EmptyFactor,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color} outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: u32, k: u32 },
    #[error("coloring is improper: edge ({0}, {1}) is monochromatic")]
    Improper(usize, usize),
    #[error("color {0} has a b-vertex and cannot be eliminated")]
    HasBVertex(u32),
    #[error("palette of {0} colors exceeds the supported maximum of 64")]
    PaletteTooLarge(usize),
    #[error("malformed coloring text: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("inconsistent precoloring: {0}")]
    InconsistentPrecoloring(String),
    #[error("k must be at least 1")]
    ZeroColors,
    #[error("palette of {0} colors exceeds the supported maximum of 64")]
    PaletteTooLarge(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomError {
    #[error("map has {got} entries but the source graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("image {image} of vertex {vertex} outside target of {n} vertices")]
    ImageOutOfRange { vertex: usize, image: usize, n: usize },
    #[error("middle graphs differ (target {left:#x} vs source {right:#x})")]
    MiddleMismatch { left: u64, right: u64 },
    #[error("graph fingerprint {got:#x} does not match map endpoint {expected:#x}")]
    GraphMismatch { expected: u64, got: u64 },
    #[error("input map is not a b-homomorphism: {0}")]
    NotBHom(String),
    #[error("target graph is not complete")]
    TargetNotComplete,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescentError {
    #[error("graph is not P4-sparse; vertices {0:?} induce two P4s")]
    NotP4Sparse(Vec<usize>),
    #[error("graph is not chordal; chordless cycle {0:?}")]
    NotChordal(Vec<usize>),
    #[error("input coloring is not a b-coloring: {0}")]
    NotBColoring(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant breached at step {step}: {msg}")]
    InvariantBreach { step: usize, msg: String },
    #[error("trace does not match the graph: {0}")]
    TraceMismatch(String),
    #[error("search budget exhausted: {0}")]
    Unknown(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}
