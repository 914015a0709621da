//! Bessel functions of the first kind (integer order) and the Fourier
//! coefficients of `sinc(ρ sin θ)`.
//!
//! Both are Fourier coefficients of smooth `2π`-periodic functions:
//!
//! ```text
//! e^{jx sin θ}     = Σ_n J_n(x) e^{jnθ}
//! sinc(ρ sin θ)    = Σ_l L_l(ρ) e^{jlθ}
//! ```
//!
//! and are computed with the periodic trapezoidal rule, which is exact up to
//! the aliased coefficients `c_{n ± M}` for `M` samples. Sample counts are
//! chosen so those aliases fall deep in the super-exponentially decaying tail.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::{Error, Result};

/// `|x|` must stay below this for [`bessel_j`].
pub const BESSEL_ARG_LIMIT: f64 = 1e7;

/// Largest imaginary residual tolerated in a sinc coefficient.
const IMAG_TOLERANCE: f64 = 1e-10;

/// `sin(πx)/(πx)`.
pub fn sinc(x: f64) -> f64 {
    let px = PI * x;
    if px.abs() < 1e-8 {
        1.0 - px * px / 6.0
    } else {
        px.sin() / px
    }
}

/// Orders beyond `|x| + bessel_margin(|x|)` hold values below double
/// precision. The cube-root term follows the width of the Airy transition
/// region around `n ≈ x`.
pub(crate) fn bessel_margin(x: f64) -> usize {
    30 + (10.0 * x.abs().cbrt()).ceil() as usize
}

/// Uniform sampling of `[0, 2π)` used for the sinc coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadratureSpec {
    sample_count: usize,
}

impl QuadratureSpec {
    pub const MIN_SAMPLES: usize = 64;
    pub const DEFAULT_SAMPLES: usize = 4096;

    pub fn new(sample_count: usize) -> Result<Self> {
        if sample_count < Self::MIN_SAMPLES || !sample_count.is_power_of_two() {
            return Err(Error::invalid(
                "sample_count",
                format!("must be a power of two >= 64, got {sample_count}"),
            ));
        }
        Ok(Self { sample_count })
    }

    /// Smallest valid spec with at least `required` samples.
    pub fn at_least(required: usize) -> Self {
        Self {
            sample_count: required.max(Self::MIN_SAMPLES).next_power_of_two(),
        }
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    /// Minimum sample count accepted for `l_max` harmonics at sinc scale `rho`.
    pub fn required_for(l_max: usize, rho: f64) -> usize {
        8 * (l_max + rho.ceil() as usize)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            sample_count: Self::DEFAULT_SAMPLES,
        }
    }
}

/// `J_n(x)` for integer `n`.
///
/// Evaluated from `J_n(x) = (1/π)∫₀^π cos(nθ − x sin θ) dθ` with the
/// trapezoidal rule on `M ≥ n + x + margin` full-period nodes. The rule's
/// only error is `Σ_{m≠0} J_{n+mM}(x)`, so the result is accurate to a few
/// ulps in absolute terms for any order. Small values (deep below the
/// turning point `n > x`) come back as rounding noise near `1e-16`.
pub fn bessel_j(order: i64, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() >= BESSEL_ARG_LIMIT {
        return Err(Error::BesselDomain(x));
    }
    let n = order.unsigned_abs();
    let odd = n % 2 == 1;
    // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
    let flip = odd && ((order < 0) != (x < 0.0));
    let x = x.abs();
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }

    let full = n as f64 + x + bessel_margin(x) as f64;
    let half = ((full / 2.0).ceil() as u64).max(8);
    let period = 2 * half;
    let step = PI / half as f64;
    let phase = |k: u64| {
        // nθ_k reduced exactly: nθ_k = 2π (n k mod 2K) / 2K
        let reduced = ((n % period) * k) % period;
        (reduced as f64) * step - x * (k as f64 * step).sin()
    };
    let mut acc = 0.5 * (phase(0).cos() + phase(half).cos());
    for k in 1..half {
        acc += phase(k).cos();
    }
    let value = acc / half as f64;
    Ok(if flip { -value } else { value })
}

/// `J_m(x)` for every `|m| ≤ max_order` from a single FFT of `e^{jx sin θ}`.
#[derive(Debug, Clone)]
pub struct BesselTable {
    argument: f64,
    computed: usize,
    values: Vec<f64>,
}

impl BesselTable {
    pub fn new(x: f64, max_order: usize) -> Result<Self> {
        if x.is_nan() || x.abs() >= BESSEL_ARG_LIMIT {
            return Err(Error::BesselDomain(x));
        }
        // orders past the tail margin are zero to double precision
        let computed = max_order.min(x.abs().ceil() as usize + bessel_margin(x));
        let size = (2 * computed + 2)
            .max(computed + x.abs().ceil() as usize + bessel_margin(x))
            .max(64)
            .next_power_of_two();

        let mut buf: Vec<Complex64> = (0..size)
            .map(|k| {
                let theta = TAU * k as f64 / size as f64;
                Complex64::from_polar(1.0, x * theta.sin())
            })
            .collect();
        FftPlanner::new().plan_fft_forward(size).process(&mut buf);

        let scale = 1.0 / size as f64;
        let values = (-(computed as i64)..=computed as i64)
            .map(|m| buf[m.rem_euclid(size as i64) as usize].re * scale)
            .collect();
        Ok(Self {
            argument: x,
            computed,
            values,
        })
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    /// `J_order(x)`; zero outside the computed range.
    pub fn get(&self, order: i64) -> f64 {
        if order.unsigned_abs() as usize > self.computed {
            return 0.0;
        }
        self.values[(order + self.computed as i64) as usize]
    }
}

/// `L_l(ρ) = (1/2π)∫₀^{2π} sinc(ρ sin θ) e^{−jlθ} dθ` for `l = 0..=l_max`.
///
/// The coefficients are real and even in `l`, and vanish for odd `l`.
pub fn sinc_fourier_coeffs(rho: f64, l_max: usize, quad: QuadratureSpec) -> Result<Vec<f64>> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::invalid("rho", format!("must be finite and >= 0, got {rho}")));
    }
    if rho == 0.0 {
        let mut out = vec![0.0; l_max + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    let required = QuadratureSpec::required_for(l_max, rho);
    let size = quad.sample_count();
    if size < required {
        return Err(Error::QuadratureUnderResolved {
            samples: size,
            required,
        });
    }

    let mut buf: Vec<Complex64> = (0..size)
        .map(|k| {
            let theta = TAU * k as f64 / size as f64;
            Complex64::new(sinc(rho * theta.sin()), 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);

    let scale = 1.0 / size as f64;
    (0..=l_max)
        .map(|l| {
            let c = buf[l] * scale;
            if c.im.abs() > IMAG_TOLERANCE {
                Err(Error::ImaginaryResidual { index: l, value: c.im })
            } else {
                Ok(c.re)
            }
        })
        .collect()
}
