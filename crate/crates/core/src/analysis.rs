//! Design metrics derived from the evaluators: resolution, Nyquist antenna
//! count, alias radius and bandwidth-driven alias attenuation.

use std::f64::consts::{PI, TAU};

use crate::af::{evaluate, Evaluator, Truncation};
use crate::model::{Antennas, ArrayConfig, Displacement, Waveform};
use crate::special::bessel_j;
use crate::{Error, Result};

/// Half-width of the alias-peak search window, in wavelengths.
pub const ALIAS_HALF_WINDOW: f64 = 2.0;
/// Grid step of the alias-peak search, in wavelengths.
pub const ALIAS_STEP: f64 = 0.05;

/// First positive zero of `J_0`, refined by bisection on [`bessel_j`].
pub fn first_j0_zero() -> f64 {
    let f = |x: f64| bessel_j(0, x).expect("argument in range");
    let (mut lo, mut hi) = (2.0, 3.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Displacement of the first narrowband AF null, `j₀,₁ λ / 2π`.
pub fn resolution(wavelength: f64) -> f64 {
    first_j0_zero() * wavelength / TAU
}

/// Smallest `N` with `N > 4π R_s,max / λ` (`λ = 1`).
pub fn min_antennas(r_s_max: f64) -> Result<u64> {
    if !(r_s_max.is_finite() && r_s_max > 0.0) {
        return Err(Error::invalid("r_s_max", format!("must be > 0, got {r_s_max}")));
    }
    let bound = 4.0 * PI * r_s_max;
    let nearest = bound.round();
    // a bound within rounding of an integer counts as that integer
    let floor = if (bound - nearest).abs() <= 4.0 * f64::EPSILON * bound {
        nearest
    } else {
        bound.floor()
    };
    Ok(floor as u64 + 1)
}

/// Displacement `Nλ/2π` around which a ring of `N` antennas aliases.
pub fn alias_radius(n_antennas: usize) -> Result<f64> {
    if n_antennas == 0 {
        return Err(Error::invalid("n_antennas", "must be >= 1"));
    }
    Ok(n_antennas as f64 / TAU)
}

/// Whether `n_antennas` covers users within `r_s_max` without aliasing.
pub fn satisfies_sampling_bound(n_antennas: u64, r_s_max: f64) -> bool {
    n_antennas as f64 > 4.0 * PI * r_s_max
}

#[derive(Debug, Clone, PartialEq)]
pub struct AliasReport {
    pub alias_radius: f64,
    /// Largest normalized AF (dB) within `±2λ` of the alias radius.
    pub alias_peak_db: f64,
    /// Displacement where the peak was found.
    pub peak_radius: f64,
    pub mainlobe_reference_db: f64,
    pub attenuation_db: f64,
}

/// Peak of the normalized AF around the alias radius of a finite ring.
///
/// `window` is the sweep range `(lo, hi)` in wavelengths and must contain
/// the alias radius; the search covers its intersection with
/// `alias_radius ± 2λ` at a `0.05λ` step.
pub fn alias_attenuation(
    array: &ArrayConfig,
    wf: &Waveform,
    theta_ss: f64,
    window: (f64, f64),
    evaluator: Evaluator,
    t: &Truncation,
) -> Result<AliasReport> {
    let n = match array.antennas() {
        Antennas::Finite(n) => n,
        Antennas::Continuous => {
            return Err(Error::AntennaMismatch {
                evaluator: "alias attenuation",
                expected: "finite",
            })
        }
    };
    if !evaluator.needs_finite() {
        return Err(Error::AntennaMismatch {
            evaluator: evaluator.name(),
            expected: "continuous",
        });
    }
    let alias = alias_radius(n)?;
    let (lo, hi) = window;
    if !(lo <= alias && alias <= hi) {
        return Err(Error::WindowMiss {
            lo,
            hi,
            alias_radius: alias,
        });
    }

    let start = alias - ALIAS_HALF_WINDOW;
    let steps = (2.0 * ALIAS_HALF_WINDOW / ALIAS_STEP).round() as usize;
    let mut best = (f64::NEG_INFINITY, alias);
    for i in 0..=steps {
        let r = start + i as f64 * ALIAS_STEP;
        if r < lo || r > hi || r < 0.0 {
            continue;
        }
        let v = evaluate(evaluator, array, wf, &Displacement::new(r, theta_ss)?, t)?;
        if v.normalized_db > best.0 {
            best = (v.normalized_db, r);
        }
    }
    let (peak, peak_radius) = best;
    Ok(AliasReport {
        alias_radius: alias,
        alias_peak_db: peak,
        peak_radius,
        mainlobe_reference_db: 0.0,
        attenuation_db: (-peak).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::af_continuous_series;

    #[test]
    fn resolution_values() {
        let r = resolution(1.0);
        assert!((r - 0.3827).abs() < 1e-4);
        // 2.404825557695773 / 2π
        assert!((r - 0.38273987).abs() < 1e-8);
        assert_eq!(resolution(2.0), 2.0 * r);
    }

    #[test]
    fn resolution_is_an_af_null() {
        let array = ArrayConfig::continuous(30.0).unwrap();
        let d = Displacement::new(resolution(1.0), 0.3).unwrap();
        let v = af_continuous_series(&array, &Waveform::Narrowband, &d, &Truncation::default()).unwrap();
        assert!(v.raw.norm() < 1e-6 * array.circumference());
    }

    #[test]
    fn min_antennas_examples() {
        assert_eq!(min_antennas(100.0).unwrap(), 1257);
        assert_eq!(min_antennas(1.0 / (4.0 * PI)).unwrap(), 2);
        assert!(min_antennas(0.0).is_err());
        assert!(!satisfies_sampling_bound(1256, 100.0));
        assert!(satisfies_sampling_bound(1257, 100.0));
    }

    #[test]
    fn alias_radius_examples() {
        assert!((alias_radius(4096).unwrap() - 651.8986).abs() < 1e-3);
        assert!((alias_radius(256).unwrap() - 40.7437).abs() < 1e-3);
        assert!((alias_radius(6).unwrap() - 0.95493).abs() < 1e-4);
        assert!(alias_radius(0).is_err());
    }

    #[test]
    fn sampling_margin_consistency() {
        for i in 1..400 {
            let r = 0.037 * i as f64 * i as f64;
            let n = min_antennas(r).unwrap();
            assert!(alias_radius(n as usize).unwrap() > 2.0 * r);
            assert!(alias_radius(n as usize).unwrap() / 2.0 >= r);
        }
    }

    #[test]
    fn window_must_bracket_alias() {
        let array = ArrayConfig::finite(1000.0, 256).unwrap();
        let err = alias_attenuation(
            &array,
            &Waveform::Narrowband,
            0.0,
            (0.0, 30.0),
            Evaluator::Direct,
            &Truncation::default(),
        );
        assert!(matches!(err, Err(Error::WindowMiss { .. })));
        let cont = ArrayConfig::continuous(1000.0).unwrap();
        assert!(alias_attenuation(
            &cont,
            &Waveform::Narrowband,
            0.0,
            (0.0, 100.0),
            Evaluator::Direct,
            &Truncation::default()
        )
        .is_err());
    }

    #[test]
    fn alias_report_is_well_formed() {
        let array = ArrayConfig::finite(1000.0, 256).unwrap();
        let theta = 3.0 * PI / 37.0;
        let t = Truncation::default();
        let report = alias_attenuation(
            &array,
            &Waveform::Narrowband,
            theta,
            (0.5, 100.0),
            Evaluator::Direct,
            &t,
        )
        .unwrap();
        assert!(report.attenuation_db >= 0.0);
        assert_eq!(report.mainlobe_reference_db, 0.0);
        assert!((report.peak_radius - report.alias_radius).abs() <= ALIAS_HALF_WINDOW + 1e-9);
        let wide = Waveform::wideband(1.5).unwrap();
        let wide_report = alias_attenuation(&array, &wide, theta, (0.5, 100.0), Evaluator::Direct, &t).unwrap();
        assert!(wide_report.attenuation_db > report.attenuation_db + 10.0);
    }

    #[test]
    fn attenuation_grows_with_bandwidth() {
        let array = ArrayConfig::finite(1000.0, 256).unwrap();
        let theta = 3.0 * PI / 37.0;
        let t = Truncation::default();
        let att: Vec<f64> = [1.5, 11.5, 21.5]
            .iter()
            .map(|&rw| {
                let wf = Waveform::wideband(rw).unwrap();
                alias_attenuation(&array, &wf, theta, (0.0, 100.0), Evaluator::Direct, &t)
                    .unwrap()
                    .attenuation_db
            })
            .collect();
        assert!(att[0] + 0.5 >= att[1] && att[1] + 0.5 >= att[2], "{att:?}");
    }
}
