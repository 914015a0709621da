//! Time-domain check of the residual signal.
//!
//! Synthesizes the waveform an AP receives from a user, runs the
//! target-matched combiner (matched filter plus phase correction) on the
//! samples, and compares with the closed-form residual
//! `exp(−jkR_ss cos(θ − θ_ss)) sinc(R_ss cos(θ − θ_ss)/R_W)`.
//!
//! Units: lengths in `λ`, time in `λ/c`, so `W = 1/R_W` and a path length
//! difference is also a delay. The common delay `R/c` and phase `kR` are the
//! same for every user and cancel in the combiner; samples are expressed in
//! that reference frame (time origin at `R/c`, phase relative to `e^{−jkR}`).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::model::{displacement, Antennas, ArrayConfig, UserPosition, Waveform};
use crate::special::sinc;
use crate::{Error, Result};

/// Uniform sampling window centered on the common delay `R/c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    sample_rate: f64,
    duration: f64,
    bandwidth: f64,
    support_half: f64,
}

impl TimeGrid {
    pub const MIN_OVERSAMPLING: f64 = 8.0;
    pub const MIN_TIME_BANDWIDTH: f64 = 64.0;
    pub const DEFAULT_ENERGY_FRACTION: f64 = 0.9999;

    /// Grid sampling `wf` at `oversampling × W`, long enough to hold
    /// `energy_fraction` of a pulse delayed by up to `max_delay`.
    pub fn new(wf: &Waveform, oversampling: f64, energy_fraction: f64, max_delay: f64) -> Result<Self> {
        let bandwidth = wf.bandwidth();
        if bandwidth == 0.0 {
            return Err(Error::NarrowbandUnsupported);
        }
        if oversampling.is_nan() || oversampling < Self::MIN_OVERSAMPLING {
            return Err(Error::invalid(
                "oversampling",
                format!("must be >= 8, got {oversampling}"),
            ));
        }
        if !(energy_fraction > 0.0 && energy_fraction < 1.0) {
            return Err(Error::invalid("energy_fraction", "must lie in (0, 1)"));
        }
        if !(max_delay.is_finite() && max_delay >= 0.0) {
            return Err(Error::invalid("max_delay", "must be finite and >= 0"));
        }
        let support_half = support_half_width(bandwidth, energy_fraction);
        let duration = (2.0 * (max_delay + support_half)).max(Self::MIN_TIME_BANDWIDTH / bandwidth);
        Ok(Self {
            sample_rate: oversampling * bandwidth,
            duration,
            bandwidth,
            support_half,
        })
    }

    /// Grid with the default energy fraction covering every user within
    /// `max_user_radius` of the ring center.
    pub fn for_users(wf: &Waveform, oversampling: f64, max_user_radius: f64) -> Result<Self> {
        Self::new(wf, oversampling, Self::DEFAULT_ENERGY_FRACTION, max_user_radius)
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn step(&self) -> f64 {
        1.0 / self.sample_rate
    }

    fn half_count(&self) -> i64 {
        (0.5 * self.duration * self.sample_rate).ceil() as i64
    }

    pub fn len(&self) -> usize {
        (2 * self.half_count() + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.step();
        let k = self.half_count();
        (-k..=k).map(move |m| m as f64 * step)
    }

    fn check_delay(&self, delay: f64) -> Result<()> {
        let half_duration = 0.5 * self.duration;
        if delay.abs() + self.support_half > half_duration {
            return Err(Error::GridTooShort {
                delay,
                support: self.support_half,
                half_duration,
            });
        }
        Ok(())
    }
}

/// Half-width `a/W` outside which `√W sinc(Wt)` keeps at most
/// `1 − energy_fraction` of its energy, from the tail bound `2/(π² a)`.
fn support_half_width(bandwidth: f64, energy_fraction: f64) -> f64 {
    2.0 / (PI * PI * (1.0 - energy_fraction)) / bandwidth
}

/// `s(t) = √W sinc(W t)`.
pub fn pulse(bandwidth: f64, t: f64) -> f64 {
    bandwidth.sqrt() * sinc(bandwidth * t)
}

/// Received samples at the AP at `ap_angle` for a unit pulse sent by `tx`.
///
/// The path length is `R − R_s cos(θ − θ_s)`; only the user-dependent part
/// `−R_s cos(θ − θ_s)` appears in delay and phase.
pub fn synth_received(
    array: &ArrayConfig,
    wf: &Waveform,
    tx: &UserPosition,
    ap_angle: f64,
    grid: &TimeGrid,
) -> Result<Vec<Complex64>> {
    let bandwidth = wf.bandwidth();
    if bandwidth == 0.0 {
        return Err(Error::NarrowbandUnsupported);
    }
    let projection = tx.projection(ap_angle);
    let delay = -projection;
    grid.check_delay(delay)?;
    let phase = Complex64::from_polar(1.0, array.wavenumber() * projection);
    Ok(grid.times().map(|t| phase * pulse(bandwidth, t - delay)).collect())
}

/// Combiner output at one AP: matched filter on the target's delay, then the
/// target's phase correction, fed with the interferer's received samples.
///
/// The matched filter is a discrete correlation against the pulse evaluated
/// analytically at the target delay, so no resampling is involved.
pub fn matched_combine_residual(
    array: &ArrayConfig,
    wf: &Waveform,
    target: &UserPosition,
    interferer: &UserPosition,
    ap_angle: f64,
    grid: &TimeGrid,
) -> Result<Complex64> {
    let received = synth_received(array, wf, interferer, ap_angle, grid)?;
    let bandwidth = wf.bandwidth();
    let target_projection = target.projection(ap_angle);
    let target_delay = -target_projection;
    grid.check_delay(target_delay)?;

    let filtered: Complex64 = grid
        .times()
        .zip(&received)
        .map(|(t, r)| r * pulse(bandwidth, t - target_delay))
        .sum::<Complex64>()
        * grid.step();
    let correction = Complex64::from_polar(1.0, -array.wavenumber() * target_projection);
    Ok(correction * filtered)
}

/// Closed-form residual at `ap_angle` for the displacement `target − interferer`.
pub fn closed_form_residual(
    array: &ArrayConfig,
    wf: &Waveform,
    target: &UserPosition,
    interferer: &UserPosition,
    ap_angle: f64,
) -> Complex64 {
    let d = displacement(target, interferer);
    let c = d.radius() * (ap_angle - d.angle()).cos();
    let envelope = if wf.is_narrowband() {
        1.0
    } else {
        sinc(c / wf.spatial_resolution())
    };
    Complex64::from_polar(envelope, -array.wavenumber() * c)
}

/// Sum of [`matched_combine_residual`] over every antenna of a finite ring.
pub fn ring_combine(
    array: &ArrayConfig,
    wf: &Waveform,
    target: &UserPosition,
    interferer: &UserPosition,
    grid: &TimeGrid,
) -> Result<Complex64> {
    let n = match array.antennas() {
        Antennas::Finite(n) => n,
        Antennas::Continuous => {
            return Err(Error::AntennaMismatch {
                evaluator: "time-domain ring sum",
                expected: "finite",
            })
        }
    };
    (0..n)
        .map(|i| matched_combine_residual(array, wf, target, interferer, TAU * i as f64 / n as f64, grid))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::af_discrete_direct;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pos(r: f64, a: f64) -> UserPosition {
        UserPosition::new(r, a).unwrap()
    }

    fn array() -> ArrayConfig {
        ArrayConfig::continuous(200.0).unwrap()
    }

    #[test]
    fn grid_invariants() {
        let wf = Waveform::wideband(1.5).unwrap();
        assert!(TimeGrid::new(&wf, 4.0, 0.9999, 0.0).is_err());
        assert!(TimeGrid::new(&wf, 8.0, 1.0, 0.0).is_err());
        assert!(matches!(
            TimeGrid::new(&Waveform::Narrowband, 8.0, 0.9, 0.0),
            Err(Error::NarrowbandUnsupported)
        ));
        let g = TimeGrid::new(&wf, 8.0, 0.5, 0.0).unwrap();
        assert!(g.duration() * wf.bandwidth() >= 64.0 - 1e-9);
        assert!(g.sample_rate() >= 8.0 * wf.bandwidth());
    }

    #[test]
    fn center_user_is_angle_independent() {
        let wf = Waveform::wideband(1.5).unwrap();
        let grid = TimeGrid::for_users(&wf, 8.0, 5.0).unwrap();
        let tx = pos(0.0, 0.0);
        let a = synth_received(&array(), &wf, &tx, 0.0, &grid).unwrap();
        for angle in [0.3, 1.9, 4.4] {
            assert_eq!(synth_received(&array(), &wf, &tx, angle, &grid).unwrap(), a);
        }
    }

    #[test]
    fn peak_sits_at_path_delay() {
        let wf = Waveform::wideband(1.5).unwrap();
        let grid = TimeGrid::for_users(&wf, 8.0, 5.0).unwrap();
        let tx = pos(3.3, 0.4);
        let ap = 2.0;
        let samples = synth_received(&array(), &wf, &tx, ap, &grid).unwrap();
        let (idx, _) = samples
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap();
        let peak_time = grid.times().nth(idx).unwrap();
        let delay = -tx.projection(ap);
        assert!((peak_time - delay).abs() <= grid.step());
    }

    #[test]
    fn pulse_has_unit_energy() {
        let wf = Waveform::wideband(11.5).unwrap();
        let grid = TimeGrid::for_users(&wf, 8.0, 1.0).unwrap();
        let samples = synth_received(&array(), &wf, &pos(0.7, 1.0), 0.5, &grid).unwrap();
        let energy: f64 = samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * grid.step();
        assert!((energy - 1.0).abs() < 2e-4, "energy {energy}");
    }

    #[test]
    fn grid_too_short() {
        let wf = Waveform::wideband(1.5).unwrap();
        let grid = TimeGrid::for_users(&wf, 8.0, 1.0).unwrap();
        let far = pos(1.0 + grid.duration(), 0.0);
        assert!(matches!(
            synth_received(&array(), &wf, &far, 0.0, &grid),
            Err(Error::GridTooShort { .. })
        ));
    }

    #[test]
    fn matched_case_is_unity() {
        let wf = Waveform::wideband(1.5).unwrap();
        let grid = TimeGrid::for_users(&wf, 8.0, 5.0).unwrap();
        let u = pos(2.1, 0.8);
        let out = matched_combine_residual(&array(), &wf, &u, &u, 1.3, &grid).unwrap();
        assert!((out - Complex64::new(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn first_sinc_null() {
        // target − interferer = (R_W, 0), AP at θ = 0
        let wf = Waveform::wideband(1.5).unwrap();
        let grid = TimeGrid::for_users(&wf, 8.0, 5.0).unwrap();
        let out = matched_combine_residual(&array(), &wf, &pos(1.5, 0.0), &pos(0.0, 0.0), 0.0, &grid).unwrap();
        assert!(out.norm() < 1e-3);
    }

    #[test]
    fn random_pairs_match_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for rw in [1.5, 11.5] {
            let wf = Waveform::wideband(rw).unwrap();
            let grid = TimeGrid::for_users(&wf, 8.0, 10.0).unwrap();
            for _ in 0..10 {
                let t = pos(rng.gen_range(0.0..10.0), rng.gen_range(0.0..TAU));
                let i = pos(rng.gen_range(0.0..10.0), rng.gen_range(0.0..TAU));
                let ap = rng.gen_range(0.0..TAU);
                let got = matched_combine_residual(&array(), &wf, &t, &i, ap, &grid).unwrap();
                let want = closed_form_residual(&array(), &wf, &t, &i, ap);
                assert!((got - want).norm() < 1e-3, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn ring_sum_reproduces_direct_af() {
        let ring = ArrayConfig::finite(200.0, 32).unwrap();
        let wf = Waveform::wideband(1.5).unwrap();
        let grid = TimeGrid::for_users(&wf, 8.0, 4.0).unwrap();
        let (t, i) = (pos(1.2, 0.3), pos(2.0, 2.5));
        let td = ring_combine(&ring, &wf, &t, &i, &grid).unwrap();
        let af = af_discrete_direct(&ring, &wf, &displacement(&t, &i)).unwrap();
        assert!((td - af.raw).norm() < 1e-2 * 32.0);
    }

    #[test]
    fn error_shrinks_with_oversampling() {
        let wf = Waveform::wideband(1.5).unwrap();
        let base = TimeGrid::for_users(&wf, 8.0, 5.0).unwrap();
        let (t, i, ap) = (pos(1.9, 0.2), pos(0.4, 2.9), 0.6);
        let want = closed_form_residual(&array(), &wf, &t, &i, ap);
        let error = |oversampling: f64| {
            let grid = TimeGrid {
                sample_rate: oversampling * wf.bandwidth(),
                ..base
            };
            (matched_combine_residual(&array(), &wf, &t, &i, ap, &grid).unwrap() - want).norm()
        };
        let (under, nyquist, base_err, fine) = (error(0.6), error(1.25), error(8.0), error(16.0));
        assert!(under > 10.0 * base_err, "{under} vs {base_err}");
        assert!(under > nyquist);
        assert!(fine <= base_err + 1e-6);
    }
}
