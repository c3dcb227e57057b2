//! Library side of the `latcalc` command: configuration, dispatch, reports
//! and the full property suite.

pub mod config;
pub mod report;
pub mod run;
pub mod suite;

pub use config::{ConfigError, Entry, Op, RunConfig};
pub use report::{Record, Report, Verdict};
pub use run::run;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] latcalc_core::Error),
    #[error("{0}")]
    Parse(#[from] latcalc_core::ParseError),
}
