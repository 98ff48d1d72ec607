use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed descriptor. `pos` is a 0-based character offset into `input`.
    #[error("{msg} at position {pos} in '{input}'")]
    Parse { input: String, pos: usize, msg: String },
    #[error("invalid rank {rank} for series {series}: {bound}")]
    InvalidRank { series: char, rank: usize, bound: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("guard exceeded in {what}: reached {partial} (limit {limit})")]
    Guard { what: String, partial: u64, limit: u64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("no long root delta0 found for node {0}")]
    NoLongRoot(usize),
    #[error("node {0} is an exposed short root; use the exposed planes catalog")]
    ExposedShort(usize),
    #[error("not covered: {0}")]
    Uncovered(String),
    #[error("empty shadow: {0}")]
    EmptyShadow(String),
    #[error("k = {k} out of range (max {max})")]
    KOutOfRange { k: usize, max: usize },
    #[error("reconstruction stuck: factor {0} is exposed short")]
    RecipeStuck(String),
    #[error("weight {0} is not dominant")]
    NonDominant(String),
    #[error("no unique common constituent: {0}")]
    NonUniqueConstituent(String),
    #[error("octonion is not imaginary")]
    NotImaginary,
    #[error("matrix is not a point of the model: {0}")]
    NotAPoint(String),
}

impl Error {
    pub fn parse(input: &str, pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), pos, msg: msg.into() }
    }

    pub fn guard(what: &str, partial: u64, limit: u64) -> Self {
        Error::Guard { what: what.to_string(), partial, limit }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvalidRank { .. } | Error::Invalid(_) => 2,
            Error::Uncovered(_) | Error::ExposedShort(_) => 3,
            Error::Guard { .. } => 4,
            _ => 1,
        }
    }
}
