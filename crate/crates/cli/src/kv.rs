//! Flat `key = value` config files. Unknown keys are rejected so typos
//! fail fast; flags always override file values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::{CliError, CliResult};

const KNOWN_KEYS: [&str; 14] = [
    "fixture",
    "topology",
    "profiles",
    "mechanism",
    "mechanisms",
    "regime",
    "sizes",
    "k",
    "replicates",
    "seed",
    "trials",
    "operators",
    "degree-max",
    "vcg-cap",
];

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let body = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read config {}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in body.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "{}:{}: expected `key = value`, got {raw:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) && key != "out" {
                return Err(CliError::usage(format!(
                    "{}:{}: unknown config key {key:?}",
                    path.display(),
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    pub fn get_path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(PathBuf::from)
    }

    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e| {
                CliError::usage(format!("config key {key} = {raw:?} is invalid: {e}"))
            }),
        }
    }
}

/// Parses a size list: `lo:hi`, `lo:hi:step`, or `a,b,c`.
pub fn parse_sizes(spec: &str) -> CliResult<Vec<usize>> {
    let bad = |reason: &str| CliError::usage(format!("invalid --sizes {spec:?}: {reason}"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(bad("expected lo:hi or lo:hi:step"));
        }
        let lo: usize = parts[0].parse().map_err(|_| bad("lo is not a number"))?;
        let hi: usize = parts[1].parse().map_err(|_| bad("hi is not a number"))?;
        let step: usize = if parts.len() == 3 {
            parts[2].parse().map_err(|_| bad("step is not a number"))?
        } else {
            1
        };
        if step == 0 {
            return Err(bad("step must be positive"));
        }
        if hi < lo {
            return Err(bad("hi is below lo"));
        }
        Ok((lo..=hi).step_by(step).collect())
    } else {
        spec.split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(&format!("{s:?} is not a number")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges_and_lists() {
        assert_eq!(parse_sizes("6:9").unwrap(), vec![6, 7, 8, 9]);
        assert_eq!(parse_sizes("30:90:30").unwrap(), vec![30, 60, 90]);
        assert_eq!(parse_sizes("5,12, 7").unwrap(), vec![5, 12, 7]);
        assert!(parse_sizes("9:6").is_err());
        assert!(parse_sizes("6:9:0").is_err());
        assert!(parse_sizes("abc").is_err());
    }
}
