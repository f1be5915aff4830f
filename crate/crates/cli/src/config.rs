//! Effective run configuration: command-line flags override an optional
//! config file pointed at by `SIGNSTITCH_CONFIG`.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

pub const CONFIG_ENV: &str = "SIGNSTITCH_CONFIG";

/// Optional defaults loaded from the config file. Every field can be
/// overridden by the matching command-line flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub skeleton: Option<PathBuf>,
    pub signs: Option<PathBuf>,
    pub faces: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    pub script: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub alpha_crop: Option<f64>,
    pub similarity_floor: Option<f64>,
    pub grid_step_hz: Option<f64>,
    pub literal_set_difference: Option<bool>,
}

impl FileConfig {
    /// Loads the file named by `SIGNSTITCH_CONFIG`, or an empty config when
    /// the variable is unset.
    pub fn from_env() -> Result<FileConfig> {
        match std::env::var_os(CONFIG_ENV) {
            None => Ok(FileConfig::default()),
            Some(path) => {
                let path = PathBuf::from(path);
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading config file {}", path.display()))?;
                serde_json::from_str(&text)
                    .with_context(|| format!("parsing config file {}", path.display()))
            }
        }
    }
}

/// Flag value, then config-file value, then error naming the flag.
pub fn require_path(
    flag: Option<PathBuf>,
    fallback: Option<&PathBuf>,
    name: &str,
) -> Result<PathBuf> {
    flag.or_else(|| fallback.cloned())
        .with_context(|| format!("missing required path --{name} (no config default either)"))
}

/// Numeric parameter resolution: flag, config, built-in default.
pub fn resolve<T: Copy>(flag: Option<T>, fallback: Option<T>, default: T) -> T {
    flag.or(fallback).unwrap_or(default)
}

/// Replaces filesystem-hostile characters in a sequence id.
pub fn sanitize_id(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Writes a file atomically: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path)
        .with_context(|| format!("renaming {} into place", tmp.display()))?;
    Ok(())
}
