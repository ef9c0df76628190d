use std::path::PathBuf;

use thiserror::Error;

use crate::model::Bundle;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("allocation is infeasible: {0}")]
    Infeasible(String),

    #[error("{items} items exceeds the supported maximum of {max}")]
    TooManyItems { items: u32, max: u32 },

    #[error("instance too large for exact search: {items} items, {agents} agents")]
    InstanceTooLarge { items: u32, agents: usize },

    #[error("invalid partition {a} / {b} of {items} items")]
    InvalidPartition { a: Bundle, b: Bundle, items: u32 },

    #[error("decision for agent {agent} on {set} is not monotone in the bid ({detail})")]
    NonMonotone {
        agent: usize,
        set: Bundle,
        detail: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {message}")]
    Validation { path: PathBuf, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
