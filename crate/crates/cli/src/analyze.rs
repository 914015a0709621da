//! Design metrics: resolution, alias radius and the antenna-count bound.

use cellfree_af::analysis::{alias_radius, first_j0_zero, min_antennas, resolution, satisfies_sampling_bound};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub wavelength: f64,
    pub first_j0_zero: f64,
    pub resolution_lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_antennas: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias_radius_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_s_max_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_antennas: Option<u64>,
    /// Present when both `N` and `R_s,max` are given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_satisfied: Option<bool>,
}

pub fn analyze(n_antennas: Option<usize>, r_s_max: Option<f64>) -> Result<AnalysisReport, CliError> {
    let alias = n_antennas.map(alias_radius).transpose()?;
    let min_n = r_s_max.map(min_antennas).transpose()?;
    let bound = match (n_antennas, r_s_max) {
        (Some(n), Some(r)) => Some(satisfies_sampling_bound(n as u64, r)),
        _ => None,
    };
    Ok(AnalysisReport {
        wavelength: 1.0,
        first_j0_zero: first_j0_zero(),
        resolution_lambda: resolution(1.0),
        n_antennas,
        alias_radius_lambda: alias,
        r_s_max_lambda: r_s_max,
        min_antennas: min_n,
        bound_satisfied: bound,
    })
}

impl AnalysisReport {
    /// `key = value` lines.
    pub fn render(&self) -> String {
        let mut s = format!(
            "wavelength = 1\nfirst_j0_zero = {:.10}\nresolution_lambda = {:.8}\n",
            self.first_j0_zero, self.resolution_lambda
        );
        if let Some(n) = self.n_antennas {
            s += &format!("n_antennas = {n}\n");
        }
        if let Some(a) = self.alias_radius_lambda {
            s += &format!("alias_radius_lambda = {a:.4}\n");
        }
        if let Some(r) = self.r_s_max_lambda {
            s += &format!("r_s_max_lambda = {r}\n");
        }
        if let Some(m) = self.min_antennas {
            s += &format!("min_antennas = {m}\n");
        }
        if let Some(b) = self.bound_satisfied {
            s += &format!("bound_satisfied = {b}\n");
            if !b {
                s += "warning = N <= 4*pi*R_s,max: users beyond N/(4*pi) wavelengths see alias lobes\n";
            }
        }
        s
    }
}
