use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {node} out of range for n={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("ports at node {node} are not a permutation of 0..{degree}")]
    BadPorts { node: usize, degree: usize },
    #[error("snapshot has n={found}, schedule expects n={expected}")]
    NodeCountMismatch { expected: usize, found: usize },
    #[error("window [{start}, {end}] exceeds trace of {rounds} rounds")]
    OutOfRange { start: usize, end: usize, rounds: usize },
    #[error("window length must be at least 1")]
    ZeroWindow,
    #[error("T={t} exceeds trace length {rounds}")]
    InsufficientTrace { t: usize, rounds: usize },
    #[error("schedule file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error)]
pub enum AdversaryError {
    #[error("invalid adversary parameters: {0}")]
    Parameters(String),
    #[error("configuration violates the construction's precondition: {0}")]
    Precondition(String),
    #[error("this adversary needs an algorithm oracle")]
    OracleRequired,
    #[error("oracle evaluation failed: {0}")]
    Oracle(#[source] Box<EngineError>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("max_rounds must be positive")]
    ZeroBudget,
    #[error("placement has {agents} agents on {n} nodes")]
    BadPlacement { agents: usize, n: usize },
    #[error("round {round}: agent {agent} chose port {port} at a node of degree {degree}")]
    InvalidPort {
        round: usize,
        agent: u32,
        port: usize,
        degree: usize,
    },
    #[error("inconsistent broadcasts: {0}")]
    Integrity(String),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("scenario precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("trace line {line}: {msg}")]
    Corrupt { line: usize, msg: String },
}
