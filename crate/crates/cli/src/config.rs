//! `pnt.conf`: `[constants]` mirrors the constant slot names, `[run]` holds
//! `capacity`, `segment_len`, `cache_dir` and `format`.

use std::path::{Path, PathBuf};

use pnt_core::ConstantsConfig;

use crate::error::{CliError, CliResult};

pub const DEFAULT_CONFIG: &str = "pnt.conf";
pub const MIN_CAPACITY: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

impl Format {
    pub fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub constants: ConstantsConfig,
    pub capacity: u64,
    pub segment_len: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub precision_report: bool,
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            constants: ConstantsConfig::default(),
            capacity: 1_000_000_000,
            segment_len: 1 << 18,
            cache_dir: None,
            format: Format::Csv,
            precision_report: false,
            strict: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.capacity < MIN_CAPACITY {
            return Err(CliError::Usage(format!("capacity must be at least {MIN_CAPACITY}, got {}", self.capacity)));
        }
        if self.segment_len == 0 {
            return Err(CliError::Usage("segment_len must be positive".into()));
        }
        Ok(())
    }
}

pub fn load_config(path: &Path, into: &mut RunConfig) -> CliResult<()> {
    let text = std::fs::read_to_string(path)?;
    apply_config(&text, &path.display().to_string(), into)
}

/// Dotted keys such as `brumley_c.1.2` parse as nested tables and are flattened
/// back; `brumley_c.default` names the fallback value.
pub fn apply_config(text: &str, source: &str, into: &mut RunConfig) -> CliResult<()> {
    let bad = |msg: String| CliError::Data(pnt_core::PntError::InvariantViolation {
        location: None,
        msg: format!("{source}: {msg}"),
    });
    let doc: toml::Table = text.parse().map_err(|e: toml::de::Error| bad(e.message().to_string()))?;
    for (section, body) in doc {
        let toml::Value::Table(body) = body else {
            return Err(bad(format!("`{section}` must be a [section]")));
        };
        match section.as_str() {
            "constants" => {
                let mut flat = Vec::new();
                flatten("", &body, &mut flat);
                for (key, value) in flat {
                    let v = number(&value).ok_or_else(|| bad(format!("constant `{key}` must be a number")))?;
                    let name = key.strip_suffix(".default").unwrap_or(&key);
                    into.constants.set(name, v).map_err(|e| bad(e.to_string()))?;
                }
            }
            "run" => {
                for (key, value) in body {
                    match key.as_str() {
                        "capacity" | "segment_len" => {
                            let v = number(&value)
                                .filter(|v| *v >= 1.0 && v.fract() == 0.0 && *v <= u64::MAX as f64)
                                .ok_or_else(|| bad(format!("`{key}` must be a positive integer")))?;
                            if key == "capacity" {
                                into.capacity = v as u64;
                            } else {
                                into.segment_len = v as u64;
                            }
                        }
                        "cache_dir" => {
                            let s = value.as_str().ok_or_else(|| bad("`cache_dir` must be a string".into()))?;
                            into.cache_dir = Some(PathBuf::from(s));
                        }
                        "format" => {
                            into.format = match value.as_str() {
                                Some("csv") => Format::Csv,
                                Some("tsv") => Format::Tsv,
                                _ => return Err(bad("`format` must be \"csv\" or \"tsv\"".into())),
                            };
                        }
                        other => return Err(bad(format!("unknown [run] key `{other}`"))),
                    }
                }
            }
            other => return Err(bad(format!("unknown section [{other}]"))),
        }
    }
    Ok(())
}

fn flatten(prefix: &str, table: &toml::Table, out: &mut Vec<(String, toml::Value)>) {
    for (k, v) in table {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            toml::Value::Table(inner) => flatten(&key, inner, out),
            other => out.push((key, other.clone())),
        }
    }
}

fn number(v: &toml::Value) -> Option<f64> {
    match v {
        toml::Value::Float(f) => Some(*f),
        toml::Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}
