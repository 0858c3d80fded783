use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-edge {0}-{0} is not allowed; loops are stored separately")]
    SelfEdge(usize),

    #[error("operation requires a loopless graph, but vertex {0} carries a loop")]
    LoopsNotAllowed(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed structured input: {0}")]
    Structured(String),

    #[error("{what} of size {size} exceeds the cap of {cap} (raise it with {flag})")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
        flag: &'static str,
    },

    #[error("map does not belong to the exponential context: {0}")]
    ContextMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown graph '{0}' (catalog: heawood, petersen, w5, grotzsch; families: K<n>, C<n>, P<n>, E<n>)")]
    UnknownCatalog(String),

    #[error(
        "unknown suite '{0}' (known: shitov, exponential, arc-shift, products, fractional, all)"
    )]
    UnknownSuite(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
