//! Flat `key = value` configuration files. Blank lines and lines starting
//! with `#` are ignored. Command-line flags take precedence.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, Result};

pub const WORKERS_ENV: &str = "DJKM_WORKERS";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", i + 1)))?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| v.parse().map_err(|e| CliError::usage(format!("config key {key}: {e}"))))
            .transpose()
    }

    /// Comma-separated list value.
    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|e| CliError::usage(format!("config key {key}: {e}")))
                    })
                    .collect()
            })
            .transpose()
    }
}

/// Worker count: flag (or `DJKM_WORKERS`, which clap folds into the flag),
/// then config, then 1.
pub fn resolve_workers(flag: Option<usize>, config: &Config) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => config.get_parsed("workers")?.unwrap_or(1),
    };
    if n == 0 {
        return Err(CliError::usage("worker count must be positive"));
    }
    Ok(n)
}
