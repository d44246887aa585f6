use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use chrono::FixedOffset;
use mockboard_core::Percent;
use mockboard_store::StoreConfig;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing {path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("{var}: {message}")]
    Env { var: &'static str, message: String },
    #[error("{0}")]
    Invalid(String),
}

/// Service settings. Loaded from an optional TOML file, then overridden by
/// `MOCKBOARD_*` environment variables.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServerConfig {
    pub listen: SocketAddr,
    pub data_dir: PathBuf,
    /// Overall rating needed to pass the whole mock board.
    pub passing_threshold: Percent,
    pub grace_seconds: u32,
    /// Offset of the exam centre's local time, for exam-date comparisons.
    pub utc_offset_minutes: i32,
    pub session_hours: u32,
    pub snapshot_every: u64,
    pub fsync: bool,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig {
            listen: SocketAddr::from(([0, 0, 0, 0], 8080)),
            data_dir: PathBuf::from("mockboard-data"),
            passing_threshold: Percent::whole(75),
            grace_seconds: 30,
            utc_offset_minutes: 0,
            session_hours: 8,
            snapshot_every: 10_000,
            fsync: true,
        }
    }
}

fn env_value<T: std::str::FromStr>(
    lookup: &impl Fn(&str) -> Option<String>,
    var: &'static str,
) -> Result<Option<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    match lookup(var) {
        None => Ok(None),
        Some(raw) => raw
            .trim()
            .parse()
            .map(Some)
            .map_err(|e: T::Err| ConfigError::Env {
                var,
                message: e.to_string(),
            }),
    }
}

impl ServerConfig {
    /// Reads `path` if given. A missing file yields the defaults plus a
    /// warning message instead of an error.
    pub fn load(path: Option<&Path>) -> Result<(Self, Vec<String>), ConfigError> {
        Self::load_with(path, |var| std::env::var(var).ok())
    }

    pub fn load_with(
        path: Option<&Path>,
        lookup: impl Fn(&str) -> Option<String>,
    ) -> Result<(Self, Vec<String>), ConfigError> {
        let mut warnings = Vec::new();
        let mut config = match path {
            None => ServerConfig::default(),
            Some(path) => match std::fs::read_to_string(path) {
                Ok(text) => toml::from_str(&text).map_err(|source| ConfigError::Parse {
                    path: path.to_path_buf(),
                    source,
                })?,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                    warnings.push(format!(
                        "config file {} not found; using defaults",
                        path.display()
                    ));
                    ServerConfig::default()
                }
                Err(source) => {
                    return Err(ConfigError::Read {
                        path: path.to_path_buf(),
                        source,
                    })
                }
            },
        };
        if let Some(v) = env_value(&lookup, "MOCKBOARD_LISTEN")? {
            config.listen = v;
        }
        if let Some(v) = env_value::<PathBuf>(&lookup, "MOCKBOARD_DATA_DIR")? {
            config.data_dir = v;
        }
        if let Some(v) = env_value(&lookup, "MOCKBOARD_PASSING_THRESHOLD")? {
            config.passing_threshold = v;
        }
        if let Some(v) = env_value(&lookup, "MOCKBOARD_GRACE_SECONDS")? {
            config.grace_seconds = v;
        }
        if let Some(v) = env_value(&lookup, "MOCKBOARD_UTC_OFFSET_MINUTES")? {
            config.utc_offset_minutes = v;
        }
        config.validate()?;
        Ok((config, warnings))
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.utc_offset().is_none() {
            return Err(ConfigError::Invalid(format!(
                "utc_offset_minutes {} is out of range",
                self.utc_offset_minutes
            )));
        }
        if self.session_hours == 0 {
            return Err(ConfigError::Invalid(
                "session_hours must be positive".into(),
            ));
        }
        Ok(())
    }

    fn utc_offset(&self) -> Option<FixedOffset> {
        FixedOffset::east_opt(self.utc_offset_minutes.checked_mul(60)?)
    }

    pub fn store_config(&self) -> StoreConfig {
        StoreConfig {
            grace: chrono::Duration::seconds(self.grace_seconds.into()),
            utc_offset: self
                .utc_offset()
                .unwrap_or(FixedOffset::east_opt(0).expect("zero offset")),
            snapshot_every: self.snapshot_every,
            fsync: self.fsync,
        }
    }
}
