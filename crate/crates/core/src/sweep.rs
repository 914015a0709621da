//! Radial sweeps of the normalized AF for several waveforms at a fixed
//! displacement angle.
//!
//! Grid points are independent. With the `parallel` feature they run on the
//! rayon pool; results are collected in grid order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::af::{evaluate, AFValue, Evaluator, Truncation};
use crate::model::{ArrayConfig, Displacement, Waveform};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub array: ArrayConfig,
    pub evaluator: Evaluator,
    pub waveforms: Vec<Waveform>,
    pub theta_ss: f64,
    pub r_max: f64,
    pub grid_points: usize,
    pub truncation: Truncation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub radii: Vec<f64>,
    pub waveforms: Vec<Waveform>,
    /// `rows[i][w]` is the value at `radii[i]` for `waveforms[w]`.
    pub rows: Vec<Vec<AFValue>>,
}

impl SweepResult {
    /// Normalized dB column for waveform index `w`.
    pub fn column_db(&self, w: usize) -> Vec<f64> {
        self.rows.iter().map(|row| row[w].normalized_db).collect()
    }
}

/// `grid_points` evenly spaced radii on `[0, r_max]`, both ends included.
pub fn radial_grid(r_max: f64, grid_points: usize) -> Vec<f64> {
    let last = (grid_points - 1) as f64;
    (0..grid_points).map(|i| r_max * i as f64 / last).collect()
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::invalid("grid_points", "must be >= 2"));
        }
        if !(self.r_max.is_finite() && self.r_max > 0.0) {
            return Err(Error::invalid("r_max", "must be finite and > 0"));
        }
        if !self.evaluator.supports(self.array.antennas()) {
            return Err(Error::AntennaMismatch {
                evaluator: self.evaluator.name(),
                expected: if self.evaluator.needs_finite() {
                    "finite"
                } else {
                    "continuous"
                },
            });
        }
        if self.waveforms.is_empty() {
            return Err(Error::invalid("waveforms", "at least one waveform is required"));
        }
        Ok(())
    }

    fn row(&self, r: f64) -> Result<Vec<AFValue>> {
        let d = Displacement::new(r, self.theta_ss)?;
        self.waveforms
            .iter()
            .map(|wf| evaluate(self.evaluator, &self.array, wf, &d, &self.truncation))
            .collect()
    }

    pub fn run(&self) -> Result<SweepResult> {
        self.validate()?;
        let radii = radial_grid(self.r_max, self.grid_points);
        #[cfg(feature = "parallel")]
        let rows = radii.par_iter().map(|&r| self.row(r)).collect::<Result<Vec<_>>>()?;
        #[cfg(not(feature = "parallel"))]
        let rows = radii.iter().map(|&r| self.row(r)).collect::<Result<Vec<_>>>()?;
        Ok(SweepResult {
            radii,
            waveforms: self.waveforms.clone(),
            rows,
        })
    }
}
