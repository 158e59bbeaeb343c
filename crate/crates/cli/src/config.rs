//! `key = value` configuration files. Later sources override earlier ones:
//! built-in defaults, the config file, `WPCURVE_WORKERS`, command-line flags.

use std::str::FromStr;

use clap::ValueEnum;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_group_order_cap: u64,
    pub max_witness_degree: usize,
    pub worker_count: usize,
    pub output_format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_group_order_cap: wpcurve::perm::DEFAULT_CAP,
            max_witness_degree: 24,
            worker_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
            output_format: Format::Text,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    Malformed { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value `{value}` for `{key}`")]
    BadValue { line: usize, key: String, value: String },
}

fn positive<T: FromStr + PartialOrd + From<u8>>(v: &str) -> Option<T> {
    v.parse().ok().filter(|x| *x >= T::from(1))
}

impl Config {
    /// Applies the assignments in `text` on top of `self`. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn merge_file(mut self, text: &str) -> Result<Self, ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or(ConfigError::Malformed { line })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || ConfigError::BadValue {
                line,
                key: key.to_string(),
                value: value.to_string(),
            };
            match key {
                "max_group_order_cap" => self.max_group_order_cap = positive(value).ok_or_else(bad)?,
                "max_witness_degree" => {
                    self.max_witness_degree = positive::<u32>(value).ok_or_else(bad)? as usize
                }
                "worker_count" => self.worker_count = positive::<u32>(value).ok_or_else(bad)? as usize,
                "output_format" => self.output_format = value.parse().map_err(|_| bad())?,
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c = Config::default()
            .merge_file("# caps\nmax_group_order_cap = 500\n\nmax_witness_degree=12\nworker_count = 3\noutput_format = json\n")
            .unwrap();
        assert_eq!(c.max_group_order_cap, 500);
        assert_eq!(c.max_witness_degree, 12);
        assert_eq!(c.worker_count, 3);
        assert_eq!(c.output_format, Format::Json);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert_eq!(
            Config::default().merge_file("colour = red").unwrap_err(),
            ConfigError::UnknownKey {
                line: 1,
                key: "colour".into()
            }
        );
        assert!(matches!(
            Config::default().merge_file("max_group_order_cap = 0"),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            Config::default().merge_file("\nworker_count"),
            Err(ConfigError::Malformed { line: 2 })
        ));
    }
}
