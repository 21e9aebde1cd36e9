use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("vertex set must not be empty")]
    EmptyVertexSet,

    #[error("vertex {0} appears more than once")]
    DuplicateVertex(usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("graph order must be at least 1")]
    EmptyGraph,

    #[error("invalid bijection: {0}")]
    InvalidBijection(String),

    #[error("bijection covers {bijection} vertices but graph has order {order}")]
    DomainMismatch { bijection: usize, order: usize },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("pattern order {pattern} exceeds host order {host}")]
    PatternTooLarge { pattern: usize, host: usize },

    #[error("graph order {order} exceeds automorphism cap {cap}")]
    AutCapExceeded { order: usize, cap: usize },

    #[error("configuration space {configs} exceeds oracle cap {cap}")]
    OracleCapExceeded { configs: u128, cap: u128 },

    #[error("search exceeded node budget {0}")]
    SearchBudgetExceeded(u64),

    #[error("observed graphs have zero probability under the model")]
    ZeroEvidence,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Process exit code for this error: 1 domain, 2 I/O or input format, 3 cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Csv(_) | Error::Parse { .. } => 2,
            Error::AutCapExceeded { .. }
            | Error::OracleCapExceeded { .. }
            | Error::SearchBudgetExceeded(_) => 3,
            _ => 1,
        }
    }

    /// True for the resource-cap family of errors.
    pub fn is_cap(&self) -> bool {
        self.exit_code() == 3
    }
}
