use thiserror::Error;

use crate::config::ConfigError;
use crate::format::ParseError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] bilevel_core::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
