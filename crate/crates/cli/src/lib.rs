//! Command implementations behind the `cellfree-af` binary.

pub mod analyze;
pub mod config;
pub mod csv;
pub mod validate;

use std::io::Write;

use cellfree_af::sweep::SweepResult;
use cellfree_af::Warning;

pub use config::{SweepConfig, SweepOverrides};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] cellfree_af::Error),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{0}")]
    Parse(String),
    #[error("invalid JSON config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
}

/// Counts of each warning kind seen during a sweep.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WarningSummary {
    pub outside_validity: usize,
    pub truncation_tail: usize,
    pub worst_tail_ratio: f64,
}

impl WarningSummary {
    pub fn collect(result: &SweepResult) -> Self {
        let mut s = Self::default();
        for w in result.rows.iter().flatten().flat_map(|v| &v.warnings) {
            match w {
                Warning::OutsideValidityDomain { .. } => s.outside_validity += 1,
                Warning::TruncationTail { ratio } => {
                    s.truncation_tail += 1;
                    s.worst_tail_ratio = s.worst_tail_ratio.max(*ratio);
                }
            }
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.outside_validity == 0 && self.truncation_tail == 0
    }
}

/// Runs the sweep and writes the CSV table to `out`.
pub fn run_sweep<W: Write>(config: &SweepConfig, out: W) -> Result<(SweepResult, WarningSummary), CliError> {
    let result = config.spec()?.run()?;
    csv::write_sweep(out, &config.rw_list, &result).map_err(|e| CliError::Io("output".into(), e))?;
    let warnings = WarningSummary::collect(&result);
    Ok((result, warnings))
}
