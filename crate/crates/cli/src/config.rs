use std::path::Path;

use fpal_core::algebra::Limits;
use fpal_core::cpo_model::{DEFAULT_EXHAUSTIVE_THRESHOLD, DEFAULT_SAMPLES, DEFAULT_SEED};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

/// Settings read from the file named by `FPAL_CONFIG`; every field is
/// optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub monoid_cap: usize,
    pub subgroup_cap: usize,
    pub exhaustive_threshold: u64,
    pub sample_count: u64,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        let limits = Limits::default();
        Config {
            monoid_cap: limits.monoid_cap,
            subgroup_cap: limits.subgroup_cap,
            exhaustive_threshold: DEFAULT_EXHAUSTIVE_THRESHOLD,
            sample_count: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            output_format: OutputFormat::Json,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::new("config", format!("{}: {e}", path.display())))?;
        let config: Config =
            serde_json::from_str(&text).map_err(|e| CliError::new("config", format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os("FPAL_CONFIG") {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.monoid_cap == 0 || self.subgroup_cap == 0 {
            return Err(CliError::new("config", "caps must be positive"));
        }
        if self.sample_count == 0 {
            return Err(CliError::new("config", "sample_count must be positive"));
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits {
            monoid_cap: self.monoid_cap,
            subgroup_cap: self.subgroup_cap,
        }
    }
}
