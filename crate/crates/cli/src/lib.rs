//! File formats, reports and the command-line front end for `influence-core`.

pub mod canonical;
pub mod commands;
pub mod document;
pub mod error;
pub mod run;
pub mod svg;
pub mod table;

pub use document::{load, save, PosetDocument};
pub use error::{CliError, ExitKind};
pub use run::{Artifacts, Emit, Outcome, RunConfig};
