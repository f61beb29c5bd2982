use std::path::PathBuf;

use influence_core::checkerboard::CheckerboardError;
use influence_core::kinematics::KinematicsError;
use influence_core::quantify::QuantifyError;
use influence_core::PosetError;

use crate::document::DocumentError;

/// Exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Success = 0,
    Domain = 1,
    Input = 2,
    Cap = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn kind(&self) -> ExitKind {
        match self {
            CliError::Domain(_) => ExitKind::Domain,
            CliError::Input(_) | CliError::Write { .. } => ExitKind::Input,
            CliError::Cap(_) => ExitKind::Cap,
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.kind() as u8
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<QuantifyError> for CliError {
    fn from(e: QuantifyError) -> Self {
        match e {
            QuantifyError::Poset(p) => p.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<KinematicsError> for CliError {
    fn from(e: KinematicsError) -> Self {
        match e {
            KinematicsError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            KinematicsError::InvalidMove(_) => CliError::Input(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<CheckerboardError> for CliError {
    fn from(e: CheckerboardError) -> Self {
        match e {
            CheckerboardError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            CheckerboardError::Kinematics(k) => k.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}
