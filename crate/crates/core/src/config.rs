//! Run configuration for the command-line tool, stored as TOML.
//!
//! ```toml
//! q = [2, 3, 5]
//! format = "text"
//!
//! [suite]
//! seed = 2024
//! samples = 200
//! ```
//!
//! Every key is optional. Only the `[suite]` table enters the config hash
//! printed in reports; the other keys do not change any result.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::theorems::SuiteConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    /// One JSON record per line.
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" | "structured" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown format {s:?} (expected text or json)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Exponents used by `report` and by suites that need one when `--q` is absent.
    pub q: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    /// Worker threads; absent means one per core.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    pub suite: SuiteConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            q: vec![2, 3, 5],
            cache_dir: None,
            format: OutputFormat::Text,
            jobs: None,
            suite: SuiteConfig::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn round_trip() {
        let c = Config {
            q: vec![4, 9],
            cache_dir: Some("/tmp/lattices".into()),
            format: OutputFormat::Json,
            jobs: Some(3),
            suite: SuiteConfig {
                seed: 7,
                derived_layers: vec![2],
                ..SuiteConfig::default()
            },
        };
        let text = c.to_toml();
        assert_eq!(Config::from_toml(&text).unwrap(), c);
        assert_eq!(Config::from_toml(&Config::default().to_toml()).unwrap(), Config::default());
    }

    #[test]
    fn partial_suite_table() {
        let c = Config::from_toml("q = [7]\n[suite]\nsamples = 10\n").unwrap();
        assert_eq!(c.q, vec![7]);
        assert_eq!(c.suite.samples, 10);
        assert_eq!(c.suite.seed, SuiteConfig::default().seed);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Config::from_toml("qq = [2]").is_err());
        assert!(Config::from_toml("[suite]\nsed = 1").is_err());
    }
}
