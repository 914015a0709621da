//! Ambiguity-function evaluators.
//!
//! The AF of a displacement `(R_ss, θ_ss)` is the ring integral (or antenna
//! sum) of the residual space-dispersive signal
//!
//! ```text
//! r(θ) = exp(−j k R_ss cos(θ − θ_ss)) · sinc(R_ss cos(θ − θ_ss) / R_W)
//! ```
//!
//! left after a combiner matched to one user is fed with another user's
//! signal. It is also the MRT array gain toward a victim user and the MRC
//! output for an uplink interferer, so [`array_gain_mrt`] delegates here.
//!
//! Continuous ring, `2πR` at the origin:
//! * [`af_continuous_quadrature`]: trapezoidal ring integral.
//! * [`af_continuous_series`]: `2πR Σ_n J_n(−kR_ss) L_n(R_ss/R_W)`.
//!
//! Finite ring of `N` antennas at `θ_i = 2πi/N`, `N` at the origin:
//! * [`af_discrete_direct`]: the antenna sum itself (ground truth).
//! * [`af_discrete_series`]:
//!   `N Σ_n Σ_p e^{jpN(π/2 − θ_ss)} J_{n+pN}(−kR_ss) L_n(R_ss/R_W)`,
//!   where the `p ≠ 0` images are the spatial aliases.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::model::{displacement, Antennas, ArrayConfig, Displacement, UserPosition, Warning, Waveform};
use crate::special::{bessel_j, bessel_margin, sinc, sinc_fourier_coeffs, BesselTable, QuadratureSpec};
use crate::{Error, Result};

/// Lower clamp for normalized magnitudes in dB.
pub const DB_FLOOR: f64 = -200.0;

/// Retained-term threshold that triggers [`Warning::TruncationTail`].
const TAIL_RATIO: f64 = 1e-10;

/// Summation ranges for the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Largest Bessel order `|n + pN|` retained. `None` uses
    /// `⌈kR_ss⌉ + 30 + ⌈10 (kR_ss)^{1/3}⌉` at each evaluation point.
    pub n_max: Option<usize>,
    /// Minimum sinc-coefficient range `|l| ≤ l_max`. The range grows to
    /// `⌈πρ⌉ + 30 + ⌈10 (πρ)^{1/3}⌉` when `L_l(ρ)` is still significant beyond
    /// `l_max`.
    pub l_max: usize,
    /// Alias images `|p| ≤ p_max` in the finite-ring series.
    pub p_max: usize,
    /// Sampling for the sinc coefficients and the quadrature evaluator.
    pub quad: QuadratureSpec,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            n_max: None,
            l_max: 20,
            p_max: 5,
            quad: QuadratureSpec::default(),
        }
    }
}

impl Truncation {
    pub fn bessel_bound(&self, x: f64) -> usize {
        self.n_max.unwrap_or_else(|| x.abs().ceil() as usize + bessel_margin(x))
    }

    pub fn sinc_bound(&self, rho: f64) -> usize {
        if rho == 0.0 {
            return 0;
        }
        self.l_max.max((PI * rho).ceil() as usize + bessel_margin(PI * rho))
    }

    fn sinc_coeffs(&self, rho: f64, bound: usize) -> Result<Vec<f64>> {
        let quad = self
            .quad
            .max(QuadratureSpec::at_least(QuadratureSpec::required_for(bound, rho)));
        sinc_fourier_coeffs(rho, bound, quad)
    }
}

/// Evaluator output.
#[derive(Debug, Clone, PartialEq)]
pub struct AFValue {
    /// Un-normalized evaluator output.
    pub raw: Complex64,
    /// `20 log10(|raw| / reference)`, clamped at [`DB_FLOOR`].
    pub normalized_db: f64,
    /// Value of the same evaluator at zero displacement (`2πR` or `N`).
    pub reference: f64,
    pub warnings: Vec<Warning>,
}

impl AFValue {
    pub fn new(raw: Complex64, reference: f64) -> Self {
        Self {
            raw,
            normalized_db: to_db(raw.norm() / reference),
            reference,
            warnings: Vec::new(),
        }
    }

    fn with_tail(mut self, tail: f64) -> Self {
        let sum = self.raw.norm() / self.reference;
        if tail > TAIL_RATIO * sum {
            self.warnings.push(Warning::TruncationTail {
                ratio: if sum > 0.0 { tail / sum } else { f64::INFINITY },
            });
        }
        self
    }

    /// `raw / reference`.
    pub fn normalized(&self) -> Complex64 {
        self.raw / self.reference
    }
}

pub fn to_db(ratio: f64) -> f64 {
    if ratio > 0.0 {
        (20.0 * ratio.log10()).max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Evaluator {
    Quadrature,
    Series,
    Direct,
    AliasedSeries,
}

impl Evaluator {
    pub const ALL: [Evaluator; 4] = [
        Evaluator::Quadrature,
        Evaluator::Series,
        Evaluator::Direct,
        Evaluator::AliasedSeries,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Evaluator::Quadrature => "quadrature",
            Evaluator::Series => "series",
            Evaluator::Direct => "direct",
            Evaluator::AliasedSeries => "aliased-series",
        }
    }

    pub fn needs_finite(&self) -> bool {
        matches!(self, Evaluator::Direct | Evaluator::AliasedSeries)
    }

    pub fn supports(&self, antennas: Antennas) -> bool {
        self.needs_finite() == matches!(antennas, Antennas::Finite(_))
    }
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Evaluator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Evaluator::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::invalid("evaluator", format!("unknown evaluator `{s}`")))
    }
}

fn require_continuous(array: &ArrayConfig, evaluator: &'static str) -> Result<()> {
    match array.antennas() {
        Antennas::Continuous => Ok(()),
        Antennas::Finite(_) => Err(Error::AntennaMismatch {
            evaluator,
            expected: "continuous",
        }),
    }
}

fn require_finite(array: &ArrayConfig, evaluator: &'static str) -> Result<usize> {
    match array.antennas() {
        Antennas::Finite(n) => Ok(n),
        Antennas::Continuous => Err(Error::AntennaMismatch {
            evaluator,
            expected: "finite",
        }),
    }
}

/// Residual signal at ring angle offset `phi = θ − θ_ss`.
#[inline]
fn residual(x: f64, rho: f64, cos_phi: f64) -> Complex64 {
    let envelope = if rho == 0.0 { 1.0 } else { sinc(rho * cos_phi) };
    Complex64::from_polar(envelope, -x * cos_phi)
}

/// Sample count the quadrature evaluator needs at this displacement.
pub fn quadrature_requirement(array: &ArrayConfig, wf: &Waveform, d: &Displacement) -> usize {
    let x = array.wavenumber() * d.radius();
    QuadratureSpec::required_for(x.ceil() as usize, wf.rho(d.radius()))
}

/// Trapezoidal rule for the ring integral over `z ∈ [0, 2πR)`.
pub fn af_continuous_quadrature(
    array: &ArrayConfig,
    wf: &Waveform,
    d: &Displacement,
    quad: QuadratureSpec,
) -> Result<AFValue> {
    require_continuous(array, "quadrature")?;
    let required = quadrature_requirement(array, wf, d);
    let m = quad.sample_count();
    if m < required {
        return Err(Error::QuadratureUnderResolved { samples: m, required });
    }
    let x = array.wavenumber() * d.radius();
    let rho = wf.rho(d.radius());
    let sum: Complex64 = (0..m)
        .map(|i| residual(x, rho, (TAU * i as f64 / m as f64 - d.angle()).cos()))
        .sum();
    let reference = array.circumference();
    Ok(AFValue::new(sum / m as f64 * reference, reference))
}

pub fn af_continuous_series(array: &ArrayConfig, wf: &Waveform, d: &Displacement, t: &Truncation) -> Result<AFValue> {
    continuous_series(array, wf, d, t, -1.0)
}

fn continuous_series(
    array: &ArrayConfig,
    wf: &Waveform,
    d: &Displacement,
    t: &Truncation,
    arg_sign: f64,
) -> Result<AFValue> {
    require_continuous(array, "series")?;
    let reference = array.circumference();
    let x = array.wavenumber() * d.radius();
    let rho = wf.rho(d.radius());
    if rho == 0.0 {
        // L_n = δ_n0
        let j0 = bessel_j(0, arg_sign * x)?;
        return Ok(AFValue::new(Complex64::new(reference * j0, 0.0), reference));
    }

    let bound = t.bessel_bound(x).min(t.sinc_bound(rho));
    let l = t.sinc_coeffs(rho, bound)?;
    let j = BesselTable::new(arg_sign * x, bound)?;
    let mut sum = j.get(0) * l[0];
    for (n, ln) in l.iter().enumerate().take(bound + 1).skip(1) {
        let ni = n as i64;
        sum += (j.get(ni) + j.get(-ni)) * ln;
    }
    // odd L_n vanish, so the last two orders bound the tail
    let tail = (bound.saturating_sub(1)..=bound)
        .map(|n| j.get(n as i64).abs().max(j.get(-(n as i64)).abs()) * l[n].abs())
        .fold(0.0, f64::max);
    Ok(AFValue::new(Complex64::new(reference * sum, 0.0), reference).with_tail(tail))
}

/// Exact sum over the `N` antennas; no truncation.
pub fn af_discrete_direct(array: &ArrayConfig, wf: &Waveform, d: &Displacement) -> Result<AFValue> {
    let n = require_finite(array, "direct")?;
    let x = array.wavenumber() * d.radius();
    let rho = wf.rho(d.radius());
    let sum: Complex64 = (0..n)
        .map(|i| residual(x, rho, (TAU * i as f64 / n as f64 - d.angle()).cos()))
        .sum();
    Ok(AFValue::new(sum, n as f64))
}

pub fn af_discrete_series(array: &ArrayConfig, wf: &Waveform, d: &Displacement, t: &Truncation) -> Result<AFValue> {
    discrete_series(array, wf, d, t, -1.0)
}

fn discrete_series(
    array: &ArrayConfig,
    wf: &Waveform,
    d: &Displacement,
    t: &Truncation,
    arg_sign: f64,
) -> Result<AFValue> {
    let count = require_finite(array, "aliased-series")?;
    let x = array.wavenumber() * d.radius();
    let rho = wf.rho(d.radius());

    let l_bound = t.sinc_bound(rho);
    let l = if rho == 0.0 {
        vec![1.0]
    } else {
        t.sinc_coeffs(rho, l_bound)?
    };
    let j = BesselTable::new(arg_sign * x, t.bessel_bound(x))?;

    let big_n = count as i64;
    let p_max = t.p_max as i64;
    let lb = l_bound as i64;
    let alpha = FRAC_PI_2 - d.angle();

    let mut sum = Complex64::new(0.0, 0.0);
    let mut tail = 0.0f64;
    for p in -p_max..=p_max {
        let mut inner = 0.0;
        for n in -lb..=lb {
            let term = j.get(n + p * big_n) * l[n.unsigned_abs() as usize];
            inner += term;
            if n.abs() >= lb - 1 && lb > 0 {
                tail = tail.max(term.abs());
            }
        }
        if p.abs() == p_max && p_max > 0 {
            tail = tail.max(inner.abs());
        }
        let phase = ((p * big_n) as f64 * alpha).rem_euclid(TAU);
        sum += Complex64::from_polar(inner, phase);
    }
    let reference = count as f64;
    Ok(AFValue::new(sum * reference, reference).with_tail(tail))
}

/// Dispatches to the chosen evaluator. The quadrature evaluator gets at least
/// the sample count it needs at this displacement.
pub fn evaluate(
    evaluator: Evaluator,
    array: &ArrayConfig,
    wf: &Waveform,
    d: &Displacement,
    t: &Truncation,
) -> Result<AFValue> {
    match evaluator {
        Evaluator::Quadrature => {
            let quad = t
                .quad
                .max(QuadratureSpec::at_least(quadrature_requirement(array, wf, d)));
            af_continuous_quadrature(array, wf, d, quad)
        }
        Evaluator::Series => af_continuous_series(array, wf, d, t),
        Evaluator::Direct => af_discrete_direct(array, wf, d),
        Evaluator::AliasedSeries => af_discrete_series(array, wf, d, t),
    }
}

/// Series evaluators with the Bessel argument sign flipped to `J(+kR_ss)`.
/// Only meant for mutation checks of the validation suites.
#[doc(hidden)]
pub fn evaluate_with_flipped_bessel_sign(
    evaluator: Evaluator,
    array: &ArrayConfig,
    wf: &Waveform,
    d: &Displacement,
    t: &Truncation,
) -> Result<AFValue> {
    match evaluator {
        Evaluator::Series => continuous_series(array, wf, d, t, 1.0),
        Evaluator::AliasedSeries => discrete_series(array, wf, d, t, 1.0),
        other => evaluate(other, array, wf, d, t),
    }
}

/// Interference gain at `victim` when the network beampoints to `target`
/// with MRT.
///
/// The precoder pre-compensates the target's delay and phase on every AP, so
/// the victim receives the same residual signal a target-matched combiner
/// outputs for a victim transmitter. The uplink MRC output for an interferer
/// is therefore the same number.
pub fn array_gain_mrt(
    array: &ArrayConfig,
    wf: &Waveform,
    target: &UserPosition,
    victim: &UserPosition,
    evaluator: Evaluator,
    t: &Truncation,
) -> Result<AFValue> {
    let d = displacement(target, victim);
    let mut value = evaluate(evaluator, array, wf, &d, t)?;
    for user in [target, victim] {
        if let Some(w) = user.validity_warning(array, crate::model::DEFAULT_VALIDITY_RATIO) {
            value.warnings.push(w);
        }
    }
    Ok(value)
}

/// Uplink MRC output for an interferer; identical to [`array_gain_mrt`].
pub fn mrc_output(
    array: &ArrayConfig,
    wf: &Waveform,
    target: &UserPosition,
    interferer: &UserPosition,
    evaluator: Evaluator,
    t: &Truncation,
) -> Result<AFValue> {
    array_gain_mrt(array, wf, target, interferer, evaluator, t)
}
