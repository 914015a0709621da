//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Three operations: a radial AF curve, the design metrics of a ring, and a
//! 2D MRT gain map around a target user. Antenna count `0` means a continuous
//! ring; a non-finite or non-positive `R_W` means a narrowband pulse.

use cellfree_af::af::{array_gain_mrt, Evaluator, Truncation};
use cellfree_af::analysis::{alias_radius, min_antennas, resolution, satisfies_sampling_bound};
use cellfree_af::sweep::SweepSpec;
use cellfree_af::{ArrayConfig, Antennas, UserPosition, Waveform};
use wasm_bindgen::prelude::*;

/// Ring radius for the demo; far enough that users near the center stay in
/// the far-field regime.
const DEMO_RING_RADIUS: f64 = 1.0e4;

/// Largest number of AF evaluations a single call may request.
const MAX_EVALUATIONS: usize = 4_000_000;

fn array(n_antennas: u32) -> Result<ArrayConfig, String> {
    let antennas = match n_antennas {
        0 => Antennas::Continuous,
        n => Antennas::Finite(n as usize),
    };
    ArrayConfig::new(DEMO_RING_RADIUS, antennas).map_err(|e| e.to_string())
}

fn waveform(rw: f64) -> Result<Waveform, String> {
    if !rw.is_finite() || rw <= 0.0 {
        return Ok(Waveform::Narrowband);
    }
    Waveform::wideband(rw).map_err(|e| e.to_string())
}

fn evaluator(array: &ArrayConfig) -> Evaluator {
    match array.antennas() {
        Antennas::Continuous => Evaluator::Series,
        Antennas::Finite(_) => Evaluator::Direct,
    }
}

fn check_budget(points: usize, n_antennas: u32) -> Result<(), String> {
    let cost = points.saturating_mul(n_antennas.max(1) as usize);
    if cost > MAX_EVALUATIONS {
        return Err(format!("request too large: {points} points x {n_antennas} antennas"));
    }
    Ok(())
}

/// Normalized AF in dB at `points` radii on `[0, r_max]`.
pub fn af_curve(n_antennas: u32, rw: f64, theta_ss: f64, r_max: f64, points: usize) -> Result<Vec<f64>, String> {
    check_budget(points, n_antennas)?;
    let array = array(n_antennas)?;
    let spec = SweepSpec {
        evaluator: evaluator(&array),
        array,
        waveforms: vec![waveform(rw)?],
        theta_ss,
        r_max,
        grid_points: points,
        truncation: Truncation::default(),
    };
    let result = spec.run().map_err(|e| e.to_string())?;
    Ok(result.column_db(0))
}

#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// First AF null for a narrowband pulse, in wavelengths.
    pub resolution: f64,
    /// `Nλ/2π`; NaN for a continuous ring.
    pub alias_radius: f64,
    /// Smallest `N` covering `r_s_max` without aliasing.
    pub min_antennas: f64,
    pub bound_satisfied: bool,
}

pub fn metrics(n_antennas: u32, r_s_max: f64) -> Result<Metrics, String> {
    let alias = match n_antennas {
        0 => f64::NAN,
        n => alias_radius(n as usize).map_err(|e| e.to_string())?,
    };
    let min_n = min_antennas(r_s_max).map_err(|e| e.to_string())?;
    Ok(Metrics {
        resolution: resolution(1.0),
        alias_radius: alias,
        min_antennas: min_n as f64,
        bound_satisfied: n_antennas == 0 || satisfies_sampling_bound(n_antennas as u64, r_s_max),
    })
}

/// MRT gain (dB, relative to the peak at the target) on a `size x size`
/// grid covering `[-half_width, half_width]²`, row-major from the top row.
pub fn gain_map(
    n_antennas: u32,
    rw: f64,
    target_x: f64,
    target_y: f64,
    half_width: f64,
    size: usize,
) -> Result<Vec<f64>, String> {
    if size < 2 {
        return Err("size must be >= 2".into());
    }
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err("half_width must be > 0".into());
    }
    check_budget(size * size, n_antennas)?;
    let array = array(n_antennas)?;
    let wf = waveform(rw)?;
    let ev = evaluator(&array);
    let target = UserPosition::from_cartesian(target_x, target_y);
    let t = Truncation::default();
    let step = 2.0 * half_width / (size - 1) as f64;
    let mut out = Vec::with_capacity(size * size);
    for row in 0..size {
        let y = half_width - row as f64 * step;
        for col in 0..size {
            let victim = UserPosition::from_cartesian(-half_width + col as f64 * step, y);
            let v = array_gain_mrt(&array, &wf, &target, &victim, ev, &t).map_err(|e| e.to_string())?;
            out.push(v.normalized_db);
        }
    }
    Ok(out)
}

#[wasm_bindgen(js_name = afCurve)]
pub fn af_curve_js(n_antennas: u32, rw: f64, theta_ss: f64, r_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    af_curve(n_antennas, rw, theta_ss, r_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = designMetrics)]
pub fn metrics_js(n_antennas: u32, r_s_max: f64) -> Result<Metrics, JsError> {
    metrics(n_antennas, r_s_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = gainMap)]
pub fn gain_map_js(
    n_antennas: u32,
    rw: f64,
    target_x: f64,
    target_y: f64,
    half_width: f64,
    size: usize,
) -> Result<Vec<f64>, JsError> {
    gain_map(n_antennas, rw, target_x, target_y, half_width, size).map_err(|e| JsError::new(&e))
}
