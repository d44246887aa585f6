//! Library half of `opsctl`: question-bank interchange, bootstrap and demo
//! seeding on a data directory, and the load simulator.

pub mod bank;
pub mod bootstrap;
pub mod demo;
pub mod simulate;

use mockboard_client::ClientError;
use mockboard_server::ConfigError;
use mockboard_store::StoreError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INTEGRITY: u8 = 2;

#[derive(Debug, Error)]
pub enum OpsError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error(transparent)]
    Bank(#[from] bank::BankError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

impl OpsError {
    pub fn exit_code(&self) -> u8 {
        match self {
            OpsError::Integrity(_) => EXIT_INTEGRITY,
            _ => EXIT_FAILURE,
        }
    }
}
