use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

/// Optional defaults read from a TOML file. Keys mirror the long flags
/// with dashes replaced by underscores; flags given on the command line
/// take precedence.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub eps: Option<String>,
    pub m: Option<usize>,
    pub cap: Option<usize>,
    pub strategy: Option<String>,
    #[serde(rename = "ref")]
    pub reference: Option<PathBuf>,
    pub right: Option<PathBuf>,
    pub right_ref: Option<PathBuf>,
    pub size: Option<usize>,
    pub sizes: Option<String>,
    pub noise_rank: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::parse(&path.display().to_string(), e))
    }
}
