use thiserror::Error;

/// Errors raised while building or loading a [`Graph`](crate::Graph).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("graph contains a negative-weight cycle: {}", .0.join(" -> "))]
    NegativeCycle(Vec<String>),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("edge references unknown node `{0}`")]
    UnknownNode(String),
    #[error("node `{0}` is declared more than once")]
    DuplicateNode(String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("node `{0}` has a negative valuation")]
    NegativeValue(String),
    #[error("graph has {0} nodes besides the seller; at most {max} are supported", max = crate::nodeset::MAX_NODES - 1)]
    TooManyNodes(usize),
}

/// Errors raised by reported-profile validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("node `{node}` diffuses to `{target}`, which is not one of its neighbors")]
    InventedLink { node: String, target: String },
    #[error("profile covers {found} slots but the graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("node `{0}` reports a negative bid")]
    NegativeBid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalError {
    #[error("node `{0}` is not informed under the reported profile")]
    TargetUninformed(String),
    #[error("position {0} is the last element of the critical sequence")]
    LastPosition(usize),
    #[error("position {position} is out of range for a sequence of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MechanismError {
    #[error("no informed node submitted a bid")]
    EmptyMarket,
    #[error("the critical diffusion mechanism requires all edge weights to be zero")]
    WeightedGraph,
    #[error("node `{0}` is unreachable in the restricted profile")]
    Unreachable(String),
    #[error(transparent)]
    Critical(#[from] CriticalError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("node `{node}` has degree {degree}, above the deviation-space cap of {cap}")]
    DegreeTooLarge { node: String, degree: usize, cap: usize },
    #[error("{informed} informed nodes exceed the brute-force cap of {cap}")]
    TooLarge { informed: usize, cap: usize },
    #[error(transparent)]
    Mechanism(#[from] MechanismError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("gave up after {0} attempts to draw negative weights without a negative cycle")]
    RejectionExhausted(u32),
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
