use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),

    #[error("oracle limit exceeded ({0} nodes)")]
    OracleLimit(u64),

    #[error("{what} exceeds the limit of {limit}")]
    SizeLimit { what: &'static str, limit: usize },

    #[error("kernel too large: {0}")]
    KernelTooLarge(String),

    #[error("invalid twin cover: {0}")]
    InvalidCover(String),

    #[error("invalid c-expression: {0}")]
    InvalidExpression(String),

    #[error("expression does not match instance: {0}")]
    ExpressionMismatch(String),

    #[error("redundant expression: eta node #{node} re-adds an existing edge")]
    RedundantExpression { node: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed model: {0}")]
    MalformedModel(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
