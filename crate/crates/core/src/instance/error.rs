use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("an instance needs at least 3 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("grid_max must be at least 2, got {0}")]
    GridTooSmall(u64),
    #[error("matrix row {row} has {found} entries, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },
    #[error("distance {from} -> {to} must be finite and non-negative")]
    InvalidDistance { from: usize, to: usize },
    #[error("{found} coordinates for {expected} nodes")]
    CoordCount { expected: usize, found: usize },
    #[error("distance {from} -> {to} does not match the coordinates")]
    CoordMismatch { from: usize, to: usize },

    #[error("line {line}: malformed entry {text:?}")]
    MalformedKey { line: usize, text: String },
    #[error("line {line}: missing required key {key}")]
    MissingKey { line: usize, key: &'static str },
    #[error("line {line}: expected {expected} values, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: non-numeric token {token:?}")]
    NonNumeric { line: usize, token: String },
    #[error("line {line}: unsupported {what} {value:?}")]
    Unsupported { line: usize, what: &'static str, value: String },
    #[error("line {line}: node id {id} out of range 1..={n} or repeated")]
    BadNodeId { line: usize, id: usize, n: usize },
    #[error("instance has no coordinates to write")]
    NoCoordinates,

    #[error("route {route} must start and end at the depot")]
    RouteEndpoints { route: usize },
    #[error("route {route} visits the depot in its interior")]
    DepotInsideRoute { route: usize },
    #[error("node {node} is not in 1..={n}")]
    UnknownNode { node: usize, n: usize },
    #[error("node {node} is visited more than once")]
    DuplicateNode { node: usize },
    #[error("node {node} is not visited")]
    MissingNode { node: usize },
}
