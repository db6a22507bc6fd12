//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown group id {0}")]
    UnknownGroup(usize),

    #[error("empty input")]
    EmptyInput,

    #[error("group {group} has {size} observations, below the estimation floor of {floor}")]
    GroupBelowFloor {
        group: usize,
        size: usize,
        floor: usize,
    },

    #[error("bandwidth is zero: all observations are identical")]
    ZeroBandwidth,

    #[error("value-to-cost ratio is undefined at lfdr == alpha; rank with the bounded statistic instead")]
    VcrAtAlpha,

    #[error("non-null density is zero; likelihood ratio undefined")]
    ZeroNonNullDensity,

    #[error("ground-truth states are required for realized metrics but absent from the batch")]
    MissingTruth,

    #[error("batch file: {0}")]
    BatchFormat(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("replication {replication} at sweep value {sweep_value}: {source}")]
    Replication {
        replication: usize,
        sweep_value: f64,
        #[source]
        source: Box<Error>,
    },
}
