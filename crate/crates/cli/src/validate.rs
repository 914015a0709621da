//! Cross-evaluator validation suites.
//!
//! Each suite compares two independent routes to the same quantity and
//! reports the worst error. `Mutation::FlipBesselSign` swaps the series
//! evaluators for a deliberately wrong variant so the suites can be shown to
//! catch it.

use std::f64::consts::{PI, TAU};
use std::fmt;

use cellfree_af::af::{
    af_discrete_direct, evaluate, evaluate_with_flipped_bessel_sign, AFValue, Evaluator, Truncation,
};
use cellfree_af::special::bessel_j;
use cellfree_af::td::{closed_form_residual, matched_combine_residual, TimeGrid};
use cellfree_af::{ArrayConfig, Displacement, UserPosition, Waveform};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

pub const SERIES_TOLERANCE: f64 = 1e-6;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;
pub const TIME_DOMAIN_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mutation {
    None,
    BesselSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub worst_case: String,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<22} cases={:<5} max_err={:.3e} tol={:.0e} {}",
            self.name,
            self.cases,
            self.max_error,
            self.tolerance,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        if !self.worst_case.is_empty() {
            write!(f, " (worst: {})", self.worst_case)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub suites: Vec<SuiteReport>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn max_error(&self) -> f64 {
        self.suites.iter().map(|s| s.max_error).fold(0.0, f64::max)
    }
}

struct Tracker {
    report: SuiteReport,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            report: SuiteReport {
                name,
                cases: 0,
                max_error: 0.0,
                tolerance,
                worst_case: String::new(),
            },
        }
    }

    fn record(&mut self, err: f64, case: impl FnOnce() -> String) {
        self.report.cases += 1;
        // NaN counts as a failure
        if err.is_nan() || err > self.report.max_error {
            self.report.max_error = if err.is_nan() { f64::INFINITY } else { err };
            self.report.worst_case = case();
        }
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn series(
    mutation: Mutation,
    ev: Evaluator,
    array: &ArrayConfig,
    wf: &Waveform,
    d: &Displacement,
) -> Result<AFValue, CliError> {
    let t = Truncation::default();
    Ok(match mutation {
        Mutation::None => evaluate(ev, array, wf, d, &t)?,
        Mutation::BesselSign => evaluate_with_flipped_bessel_sign(ev, array, wf, d, &t)?,
    })
}

fn waveforms() -> Result<Vec<Waveform>, CliError> {
    Ok(vec![
        Waveform::wideband(1.5)?,
        Waveform::wideband(11.5)?,
        Waveform::Narrowband,
    ])
}

/// Narrowband series and quadrature against `2πR J0(kR_ss)`.
fn narrowband_closed_form(level: Level, mutation: Mutation) -> Result<SuiteReport, CliError> {
    let mut tr = Tracker::new("narrowband-closed-form", CLOSED_FORM_TOLERANCE);
    let array = ArrayConfig::continuous(250.0)?;
    let points = match level {
        Level::Fast => 200,
        Level::Full => 1000,
    };
    for i in 0..=points {
        let r = 100.0 * i as f64 / points as f64;
        let theta = 0.37 * i as f64;
        let d = Displacement::new(r, theta)?;
        let want = array.circumference() * bessel_j(0, array.wavenumber() * r)?;
        let routes = [
            (
                "series",
                series(mutation, Evaluator::Series, &array, &Waveform::Narrowband, &d)?.raw,
            ),
            (
                "quadrature",
                evaluate(
                    Evaluator::Quadrature,
                    &array,
                    &Waveform::Narrowband,
                    &d,
                    &Truncation::default(),
                )?
                .raw,
            ),
        ];
        for (route, got) in routes {
            // absolute error against the reference scale: J0 has zeros
            let err = (got - want).norm() / array.circumference();
            tr.record(err, || format!("{route} R_ss={r}"));
        }
    }
    Ok(tr.report)
}

/// Continuous series against direct quadrature.
fn parseval(level: Level, mutation: Mutation) -> Result<SuiteReport, CliError> {
    let mut tr = Tracker::new("series-vs-quadrature", SERIES_TOLERANCE);
    let array = ArrayConfig::continuous(250.0)?;
    let (radii, thetas): (&[f64], &[f64]) = match level {
        Level::Fast => (&[0.1, 1.0, 5.0, 20.0], &[0.0, 3.0 * PI / 37.0]),
        Level::Full => (
            &[0.1, 0.7, 1.0, 2.3, 5.0, 13.1, 20.0, 47.5, 100.0],
            &[0.0, 3.0 * PI / 37.0, 1.0, PI],
        ),
    };
    for wf in waveforms()? {
        for &r in radii {
            for &theta in thetas {
                let d = Displacement::new(r, theta)?;
                let s = series(mutation, Evaluator::Series, &array, &wf, &d)?.raw;
                let q = evaluate(Evaluator::Quadrature, &array, &wf, &d, &Truncation::default())?.raw;
                tr.record(rel(s, q), || {
                    format!("R_ss={r} theta={theta:.4} R_W={}", wf.spatial_resolution())
                });
            }
        }
    }
    Ok(tr.report)
}

/// Aliased series against the direct antenna sum. Odd counts are included
/// because they are the only ones that excite odd Bessel orders.
fn discrete(level: Level, mutation: Mutation) -> Result<SuiteReport, CliError> {
    let mut tr = Tracker::new("aliased-series-vs-sum", SERIES_TOLERANCE);
    let counts: &[usize] = match level {
        Level::Fast => &[15, 16, 64],
        Level::Full => &[15, 16, 63, 64, 255, 256],
    };
    let fractions: &[f64] = match level {
        Level::Fast => &[0.05, 0.4, 0.95],
        Level::Full => &[0.01, 0.1, 0.25, 0.5, 0.75, 0.99, 1.5],
    };
    for &n in counts {
        let array = ArrayConfig::finite(250.0, n)?;
        let alias = n as f64 / TAU;
        for wf in waveforms()? {
            for &frac in fractions {
                for theta in [0.0, 3.0 * PI / 37.0] {
                    let r = frac * alias;
                    let d = Displacement::new(r, theta)?;
                    let s = series(mutation, Evaluator::AliasedSeries, &array, &wf, &d)?.raw;
                    let g = af_discrete_direct(&array, &wf, &d)?.raw;
                    // relative to N: the direct sum can sit in a null
                    let err = (s - g).norm() / n as f64;
                    tr.record(err, || {
                        format!("N={n} R_ss={r:.3} theta={theta:.4} R_W={}", wf.spatial_resolution())
                    });
                }
            }
        }
    }
    Ok(tr.report)
}

/// Sampled matched filter at single APs against the closed-form residual.
fn time_domain(level: Level) -> Result<SuiteReport, CliError> {
    let mut tr = Tracker::new("time-domain", TIME_DOMAIN_TOLERANCE);
    let draws = match level {
        Level::Fast => 4,
        Level::Full => 25,
    };
    let array = ArrayConfig::continuous(200.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for rw in [1.5, 11.5] {
        let wf = Waveform::wideband(rw)?;
        let grid = TimeGrid::for_users(&wf, TimeGrid::MIN_OVERSAMPLING, 10.0)?;
        for _ in 0..draws {
            let t = UserPosition::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..TAU))?;
            let i = UserPosition::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..TAU))?;
            let ap = rng.gen_range(0.0..TAU);
            let got = matched_combine_residual(&array, &wf, &t, &i, ap, &grid)?;
            let want = closed_form_residual(&array, &wf, &t, &i, ap);
            tr.record((got - want).norm(), || {
                format!(
                    "R_W={rw} target=({:.2},{:.2}) interferer=({:.2},{:.2}) ap={ap:.3}",
                    t.x(),
                    t.y(),
                    i.x(),
                    i.y()
                )
            });
        }
    }
    Ok(tr.report)
}

pub fn run_validation(level: Level, mutation: Mutation) -> Result<ValidationReport, CliError> {
    Ok(ValidationReport {
        suites: vec![
            narrowband_closed_form(level, mutation)?,
            parseval(level, mutation)?,
            discrete(level, mutation)?,
            time_domain(level)?,
        ],
    })
}
