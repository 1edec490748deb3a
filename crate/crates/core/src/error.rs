use std::path::PathBuf;

use thiserror::Error;

use crate::engine::Position;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty choice set")]
    EmptyChoiceSet,

    #[error("trace order violation: tick {got} does not follow tick {last}")]
    TraceOrder { last: u64, got: u64 },

    /// Invalid model or run parameters. `key` names the offending setting.
    #[error("configuration error in `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("no resident at {0}")]
    NoResident(Position),

    #[error("metric undefined: {0}")]
    MetricUndefined(&'static str),

    #[error("malformed grid snapshot: {0}")]
    Snapshot(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad input rather than the environment.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config { .. })
    }
}
