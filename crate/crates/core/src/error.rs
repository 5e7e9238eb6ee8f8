use thiserror::Error;

/// Errors raised while reading or validating diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid tangle json: {0}")]
    Json(String),
    #[error("endpoint arcs must differ")]
    EndpointsEqual,
    #[error("arc `{arc}` appears {count} times (expected exactly 2 across crossings and endpoints)")]
    ArcMultiplicity { arc: String, count: usize },
    #[error("tangle is disconnected: traversal from the first endpoint misses {missed} arc(s)")]
    Disconnected { missed: usize },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("ray data names unknown arc `{0}`")]
    UnknownArc(String),
    #[error("ray data is inconsistent with the planar embedding")]
    InconsistentRay,
    #[error("diagram is not planar: {0}")]
    NotPlanar(String),
    #[error("vertex has {got} coordinates but the diagram has {expected} crossings")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tangle has no unwrappable region at the axis")]
    NotUnwrappable,
    #[error("involution data is inconsistent: {0}")]
    Involution(String),
    #[error("diagram has {0} crossings; at most 63 are supported")]
    TooLarge(usize),
}

/// Errors raised by the linear algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("input vector is not a cycle mod 2")]
    NotACycle,
}

/// Errors raised by chain-level constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("d∘d ≠ 0 (first offending generator {0})")]
    NotAComplex(usize),
    #[error("differential entry {from} -> {to} violates the declared grading shift")]
    Grading { from: usize, to: usize },
    #[error("map fails to commute with the differentials (first offending generator {0})")]
    NotAChainMap(usize),
    #[error("map entry {from} -> {to} violates the declared shift")]
    MapGrading { from: usize, to: usize },
    #[error("filtration violated by differential entry {from} -> {to}")]
    Filtration { from: usize, to: usize },
    #[error("input vector is not a cycle mod 2")]
    NotACycle,
    #[error("ring mismatch: {0}")]
    Ring(String),
    #[error("integer overflow during reduction")]
    Overflow,
    #[error("truncated spectral sequence still changes at window {0}")]
    Unstable(usize),
    #[error("missing basepoint")]
    MissingBasepoint,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
