//! Flat `key=value` config files.
//!
//! Keys are the long names of the global flags; values are the same
//! strings the flags would accept. `#` starts a comment, blank lines are
//! skipped. Flags override config values, config values override
//! defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

/// Global flag names a config file may set.
pub const CONFIG_KEYS: [&str; 18] = [
    "input",
    "out",
    "tau",
    "alpha",
    "epsilon",
    "boot",
    "seed",
    "format",
    "workers",
    "categories",
    "mode",
    "pre-normalized",
    "weights",
    "tau-grid",
    "alpha-grid",
    "min-overlap",
    "theta1",
    "theta2",
];

pub fn load_config(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or(ConfigError::BadLine { line })?;
        let (key, value) = (key.trim(), value.trim());
        if !CONFIG_KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            });
        }
        if map.insert(key.to_string(), value.to_string()).is_some() {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
    }
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    Io { path: String, message: String },
    BadLine { line: usize },
    UnknownKey { line: usize, key: String },
    DuplicateKey { line: usize, key: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, message } => write!(f, "config {path}: {message}"),
            ConfigError::BadLine { line } => {
                write!(f, "config line {line}: expected `key = value`")
            }
            ConfigError::UnknownKey { line, key } => {
                write!(f, "config line {line}: unknown key `{key}`")
            }
            ConfigError::DuplicateKey { line, key } => {
                write!(f, "config line {line}: duplicate key `{key}`")
            }
        }
    }
}

impl std::error::Error for ConfigError {}
