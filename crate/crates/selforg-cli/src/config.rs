use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

/// Optional TOML defaults for every flag, keyed by the long flag name
/// (`list-size = 5`, `cost-model = "partial"`, ...). Explicit command-line
/// flags override anything set here. `classes` and `algos` are the array
/// forms used by `bench`; the singular keys also work there.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub list_size: Option<usize>,
    pub list_file: Option<PathBuf>,
    pub seq: Option<String>,
    pub seq_file: Option<PathBuf>,
    pub class: Option<String>,
    pub classes: Option<Vec<String>>,
    pub algo: Option<String>,
    pub algos: Option<Vec<String>>,
    pub cost_model: Option<String>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub n: Option<usize>,
    pub count: Option<u64>,
    pub line: Option<usize>,
    pub theorem: Option<String>,
    pub l_min: Option<usize>,
    pub l_max: Option<usize>,
    pub n_max: Option<usize>,
    pub trials: Option<u64>,
    pub k_max: Option<u64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<FileConfig> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config file {}", path.display()))
    }
}
