use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by the command line to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Numerical,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edges[{index}] references unknown vertex `{id}`")]
    UnknownVertex { index: usize, id: String },
    #[error("port `{port}`: {reason}")]
    InvalidPort { port: String, reason: String },
    #[error("vertex `{vertex}`: {reason}")]
    InvalidCoin { vertex: String, reason: String },
    #[error("unknown port `{0}`")]
    UnknownPort(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("interpolation nodes {0} and {1} coincide")]
    DuplicateNodes(usize, usize),
    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("U0 - zI is singular at z = {0}")]
    Singular(Complex64),
    #[error("z = {0} is within pole tolerance of the scattering function")]
    Pole(Complex64),
    #[error("all interpolation nodes are singular")]
    AllNodesSingular,
    #[error("eigenvalue tracks are ambiguous near alpha = {0}")]
    TrackAmbiguity(Complex64),
    #[error("delay exponent {delay} exceeds the zero-root multiplicity {s}; the response is not causal")]
    NonCausal { delay: i32, s: usize },
    #[error("runway of length {len} is too short for {steps} steps (need {need})")]
    RunwayTooShort { len: usize, steps: usize, need: usize },
    #[error("two-sided evaluations around a removable point disagree by {0:e}")]
    NotRemovable(f64),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{context}, line {line}: {reason}")]
    Csv {
        context: String,
        line: usize,
        reason: String,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DuplicateVertex(_)
            | Error::UnknownVertex { .. }
            | Error::InvalidPort { .. }
            | Error::InvalidCoin { .. }
            | Error::UnknownPort(_)
            | Error::InvalidGraph(_)
            | Error::InvalidArgument(_)
            | Error::Unsupported(_)
            | Error::Json { .. }
            | Error::NonCausal { .. }
            | Error::RunwayTooShort { .. }
            | Error::Csv { .. } => ErrorKind::Validation,
            Error::Io { .. } => ErrorKind::Io,
            _ => ErrorKind::Numerical,
        }
    }
}
