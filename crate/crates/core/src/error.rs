use thiserror::Error;

/// Errors produced by graph construction, mechanism runs, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown operator id {0}")]
    UnknownOperator(usize),

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid bid ladder at operator {operator} base station {bs}: {reason}")]
    InvalidLadder {
        operator: usize,
        bs: usize,
        reason: String,
    },

    #[error("allocation of {allocated} channels exceeds declared demand {demand} at operator {operator} base station {bs}")]
    AllocationExceedsDemand {
        operator: usize,
        bs: usize,
        allocated: u32,
        demand: u32,
    },

    #[error("instance too large for exhaustive winner determination: {size} base stations exceeds cap {cap}")]
    InstanceTooLarge { size: usize, cap: usize },

    #[error("price arithmetic overflow while {0}")]
    Arithmetic(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("deviation plan {plan} is not applicable to mechanism {mechanism}")]
    IncompatibleDeviation { plan: String, mechanism: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("document parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
