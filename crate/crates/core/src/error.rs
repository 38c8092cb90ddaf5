use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("not a tournament: {0}")]
    NotATournament(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed solution: {0}")]
    MalformedSolution(String),
    #[error("invalid tree decomposition: {0}")]
    Decomposition(String),
    #[error("vertex {0} has no incident edge, no edge cover exists")]
    NoCover(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("wrong engine: {0}")]
    WrongEngine(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    /// Resource errors are distinct from "no solution": the question was not answered.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
