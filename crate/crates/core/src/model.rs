//! Geometry and waveform types shared by every evaluator.
//!
//! Every length is in wavelengths. Time is measured in `λ/c`, so a
//! bandwidth `W` is `1/R_W` and a delay equals the path length it comes from.

use std::f64::consts::TAU;
use std::fmt;

use crate::{Error, Result};

/// Default ratio `R_s / R` above which the first-order distance expansion is
/// flagged as leaving its validity domain.
pub const DEFAULT_VALIDITY_RATIO: f64 = 0.1;

/// Structured, non-fatal diagnostics attached to results.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// User sits farther from the ring center than `limit`.
    OutsideValidityDomain { user_radius: f64, limit: f64 },
    /// Last retained series term is larger than `1e-10` of the partial sum.
    TruncationTail { ratio: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::OutsideValidityDomain { user_radius, limit } => write!(
                f,
                "user radius {user_radius}λ exceeds validity limit {limit}λ of the far-ring expansion"
            ),
            Warning::TruncationTail { ratio } => {
                write!(f, "series truncation tail ratio {ratio:.3e} exceeds 1e-10")
            }
        }
    }
}

/// Maps an angle onto `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Antennas {
    Continuous,
    Finite(usize),
}

/// Circular ring of single-antenna access points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    ring_radius: f64,
    antennas: Antennas,
    wavelength: f64,
}

impl ArrayConfig {
    pub fn new(ring_radius: f64, antennas: Antennas) -> Result<Self> {
        if !(ring_radius.is_finite() && ring_radius > 0.0) {
            return Err(Error::invalid("ring_radius", format!("must be > 0, got {ring_radius}")));
        }
        if antennas == Antennas::Finite(0) {
            return Err(Error::invalid("antennas", "finite count must be >= 1"));
        }
        Ok(Self {
            ring_radius,
            antennas,
            wavelength: 1.0,
        })
    }

    pub fn continuous(ring_radius: f64) -> Result<Self> {
        Self::new(ring_radius, Antennas::Continuous)
    }

    pub fn finite(ring_radius: f64, count: usize) -> Result<Self> {
        Self::new(ring_radius, Antennas::Finite(count))
    }

    pub fn ring_radius(&self) -> f64 {
        self.ring_radius
    }

    pub fn antennas(&self) -> Antennas {
        self.antennas
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn wavenumber(&self) -> f64 {
        TAU / self.wavelength
    }

    /// Ring circumference `2πR`, the matched output of a continuous ring.
    pub fn circumference(&self) -> f64 {
        TAU * self.ring_radius
    }

    /// Angular position of antenna `i` on a finite ring, `2πi/N`.
    pub fn antenna_angle(&self, index: usize) -> Option<f64> {
        match self.antennas {
            Antennas::Finite(n) if index < n => Some(TAU * index as f64 / n as f64),
            _ => None,
        }
    }
}

/// Transmit pulse `s(t) = √W sinc(W t)`, described by its spatial resolution
/// `R_W = c/W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Waveform {
    /// `W = 0`, `R_W = ∞`.
    Narrowband,
    Wideband {
        spatial_resolution: f64,
    },
}

impl Waveform {
    pub fn wideband(spatial_resolution: f64) -> Result<Self> {
        if spatial_resolution.is_nan() || spatial_resolution <= 0.0 {
            return Err(Error::invalid(
                "spatial_resolution",
                format!("must be > 0, got {spatial_resolution}"),
            ));
        }
        if spatial_resolution.is_infinite() {
            return Ok(Waveform::Narrowband);
        }
        Ok(Waveform::Wideband { spatial_resolution })
    }

    /// `R_W` in wavelengths; infinite for the narrowband pulse.
    pub fn spatial_resolution(&self) -> f64 {
        match *self {
            Waveform::Narrowband => f64::INFINITY,
            Waveform::Wideband { spatial_resolution } => spatial_resolution,
        }
    }

    /// `W = c/R_W` in units of `c/λ`.
    pub fn bandwidth(&self) -> f64 {
        match *self {
            Waveform::Narrowband => 0.0,
            Waveform::Wideband { spatial_resolution } => 1.0 / spatial_resolution,
        }
    }

    /// Sinc argument scale `ρ = R_ss / R_W`; zero for the narrowband pulse.
    pub fn rho(&self, r_ss: f64) -> f64 {
        match *self {
            Waveform::Narrowband => 0.0,
            Waveform::Wideband { spatial_resolution } => r_ss / spatial_resolution,
        }
    }

    pub fn is_narrowband(&self) -> bool {
        matches!(self, Waveform::Narrowband)
    }
}

/// Polar form `(R_ss, θ_ss)` of the difference between two user positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement {
    radius: f64,
    angle: f64,
}

impl Displacement {
    pub fn new(radius: f64, angle: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::invalid(
                "radius",
                format!("must be finite and >= 0, got {radius}"),
            ));
        }
        if !angle.is_finite() {
            return Err(Error::invalid("angle", "must be finite"));
        }
        Ok(Self {
            radius,
            angle: if radius == 0.0 { 0.0 } else { normalize_angle(angle) },
        })
    }

    pub fn from_cartesian(dx: f64, dy: f64) -> Self {
        let radius = dx.hypot(dy);
        let angle = if radius == 0.0 {
            0.0
        } else {
            normalize_angle(dy.atan2(dx))
        };
        Self { radius, angle }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserPosition {
    radius: f64,
    angle: f64,
}

impl UserPosition {
    pub fn new(radius: f64, angle: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::invalid(
                "radius",
                format!("must be finite and >= 0, got {radius}"),
            ));
        }
        if !angle.is_finite() {
            return Err(Error::invalid("angle", "must be finite"));
        }
        Ok(Self { radius, angle })
    }

    pub fn from_cartesian(x: f64, y: f64) -> Self {
        let radius = x.hypot(y);
        let angle = if radius == 0.0 { 0.0 } else { y.atan2(x) };
        Self { radius, angle }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn x(&self) -> f64 {
        self.radius * self.angle.cos()
    }

    pub fn y(&self) -> f64 {
        self.radius * self.angle.sin()
    }

    /// Projection of the position on the unit vector pointing at `ap_angle`.
    pub fn projection(&self, ap_angle: f64) -> f64 {
        self.radius * (ap_angle - self.angle).cos()
    }

    /// Warns when `R_s > ratio · R`; the distance expansion assumes `R ≫ R_s`.
    pub fn validity_warning(&self, array: &ArrayConfig, ratio: f64) -> Option<Warning> {
        let limit = array.ring_radius() * ratio;
        (self.radius > limit).then_some(Warning::OutsideValidityDomain {
            user_radius: self.radius,
            limit,
        })
    }
}

/// Polar form of `a − b`. Zero displacement has angle 0.
pub fn displacement(a: &UserPosition, b: &UserPosition) -> Displacement {
    Displacement::from_cartesian(a.x() - b.x(), a.y() - b.y())
}

/// First-order AP-to-user distance `R − R_s cos(θ − θ_s)`.
pub fn approx_distance(array: &ArrayConfig, ap_angle: f64, user: &UserPosition) -> f64 {
    if let Some(w) = user.validity_warning(array, DEFAULT_VALIDITY_RATIO) {
        log::warn!("{w}");
    }
    array.ring_radius() - user.projection(ap_angle)
}

/// Exact Euclidean AP-to-user distance, for checking [`approx_distance`].
pub fn exact_distance(array: &ArrayConfig, ap_angle: f64, user: &UserPosition) -> f64 {
    let r = array.ring_radius();
    (r * ap_angle.cos() - user.x()).hypot(r * ap_angle.sin() - user.y())
}
