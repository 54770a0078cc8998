//! Command-line front end: point-set documents, deterministic JSON reports,
//! CSV field grids, and the command implementations behind `carleson-cli`.

pub mod commands;
pub mod config;
pub mod document;
pub mod error;
pub mod json;

pub use config::RunConfig;
pub use document::{PointRecord, PointSetDocument};
pub use error::{CliError, CliResult};
