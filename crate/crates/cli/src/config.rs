use rascal_core::identity::{Grid, LhsMode};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// The grids `verify` uses when no `--n-max` is given.
pub const DEFAULT_GRID_CONFIG: &str = include_str!("../config/verify_grids.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub version: u32,
    /// Word-length cap for oracle runs unless `--max-word-len` is given.
    pub max_word_len: usize,
    pub runs: Vec<GridRun>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRun {
    pub identity: String,
    pub mode: LhsMode,
    pub grid: String,
}

impl GridConfig {
    pub fn load_default() -> Result<Self, serde_json::Error> {
        serde_json::from_str(DEFAULT_GRID_CONFIG)
    }

    pub(crate) fn parsed_runs(&self) -> Result<Vec<(String, LhsMode, Grid)>, CliError> {
        self.runs
            .iter()
            .map(|r| Ok((r.identity.clone(), r.mode, r.grid.parse()?)))
            .collect()
    }
}
