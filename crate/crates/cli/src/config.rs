//! Sweep configuration: JSON schema, figure presets and flag overrides.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use cellfree_af::af::{Evaluator, Truncation};
use cellfree_af::special::QuadratureSpec;
use cellfree_af::sweep::SweepSpec;
use cellfree_af::{Antennas, ArrayConfig, Waveform};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Ring radius used for sweeps. Normalized output does not depend on it as
/// long as users stay near the center.
pub const SWEEP_RING_RADIUS: f64 = 1.0e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntennaSetting {
    Continuous,
    Count(usize),
}

impl AntennaSetting {
    fn antennas(self) -> Antennas {
        match self {
            AntennaSetting::Continuous => Antennas::Continuous,
            AntennaSetting::Count(n) => Antennas::Finite(n),
        }
    }
}

impl std::str::FromStr for AntennaSetting {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s.eq_ignore_ascii_case("continuous") {
            return Ok(AntennaSetting::Continuous);
        }
        s.parse::<usize>()
            .map(AntennaSetting::Count)
            .map_err(|_| CliError::Parse(format!("antenna count `{s}` is neither an integer nor `continuous`")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawAntennas {
    Count(usize),
    Text(String),
}

impl Serialize for AntennaSetting {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            AntennaSetting::Continuous => RawAntennas::Text("continuous".into()).serialize(s),
            AntennaSetting::Count(n) => RawAntennas::Count(n).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AntennaSetting {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawAntennas::deserialize(d)? {
            RawAntennas::Count(n) => Ok(AntennaSetting::Count(n)),
            RawAntennas::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `R_W` in wavelengths; `inf` is the narrowband pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialResolution(pub f64);

impl SpatialResolution {
    pub const INF: SpatialResolution = SpatialResolution(f64::INFINITY);

    pub fn waveform(self) -> Result<Waveform, CliError> {
        Ok(Waveform::wideband(self.0)?)
    }

    /// Column label, e.g. `rw_1.5` or `rw_inf`.
    pub fn label(self) -> String {
        format!("rw_{self}")
    }
}

impl fmt::Display for SpatialResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl std::str::FromStr for SpatialResolution {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Self::INF);
        }
        s.parse::<f64>()
            .map(SpatialResolution)
            .map_err(|_| CliError::Parse(format!("R_W value `{s}` is neither a number nor `inf`")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawResolution {
    Number(f64),
    Text(String),
}

impl Serialize for SpatialResolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            RawResolution::Text("inf".into()).serialize(s)
        } else {
            RawResolution::Number(self.0).serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for SpatialResolution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawResolution::deserialize(d)? {
            RawResolution::Number(v) => Ok(SpatialResolution(v)),
            RawResolution::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

mod evaluator_name {
    use cellfree_af::af::Evaluator;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(e: &Evaluator, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(e.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Evaluator, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_samples: Option<usize>,
}

impl TruncationOverrides {
    pub fn truncation(&self) -> Result<Truncation, CliError> {
        let mut t = Truncation::default();
        if self.n_max.is_some() {
            t.n_max = self.n_max;
        }
        if let Some(l) = self.l_max {
            t.l_max = l;
        }
        if let Some(p) = self.p_max {
            t.p_max = p;
        }
        if let Some(q) = self.quad_samples {
            t.quad = QuadratureSpec::new(q)?;
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n_antennas: AntennaSetting,
    pub rw_list: Vec<SpatialResolution>,
    pub theta_ss: f64,
    pub r_max: f64,
    pub grid_points: usize,
    #[serde(with = "evaluator_name")]
    pub evaluator: Evaluator,
    #[serde(default)]
    pub truncation: TruncationOverrides,
}

/// `R_W/λ` list shared by both figure presets.
pub fn preset_rw_list() -> Vec<SpatialResolution> {
    [1.5, 11.5, 21.5, 31.5, f64::INFINITY]
        .into_iter()
        .map(SpatialResolution)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// N = 4096, 0..1000λ at 0.1λ
    Fig1,
    /// N = 256, 0..100λ at 0.05λ
    Fig2,
}

impl SweepConfig {
    pub fn preset(preset: Preset) -> Self {
        let (n, r_max, grid_points) = match preset {
            Preset::Fig1 => (4096, 1000.0, 10_001),
            Preset::Fig2 => (256, 100.0, 2001),
        };
        Self {
            n_antennas: AntennaSetting::Count(n),
            rw_list: preset_rw_list(),
            theta_ss: 3.0 * PI / 37.0,
            r_max,
            grid_points,
            evaluator: Evaluator::Direct,
            truncation: TruncationOverrides::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn spec(&self) -> Result<SweepSpec, CliError> {
        if self.grid_points < 2 {
            return Err(CliError::Config("grid_points must be >= 2".into()));
        }
        if !(self.r_max.is_finite() && self.r_max > 0.0) {
            return Err(CliError::Config("r_max must be > 0".into()));
        }
        if self.rw_list.is_empty() {
            return Err(CliError::Config("rw_list must not be empty".into()));
        }
        let antennas = self.n_antennas.antennas();
        if !self.evaluator.supports(antennas) {
            let needs = if self.evaluator.needs_finite() {
                "a finite antenna count"
            } else {
                "n_antennas = \"continuous\""
            };
            return Err(CliError::Config(format!(
                "evaluator `{}` requires {needs}",
                self.evaluator
            )));
        }
        Ok(SweepSpec {
            array: ArrayConfig::new(SWEEP_RING_RADIUS, antennas)?,
            evaluator: self.evaluator,
            waveforms: self.rw_list.iter().map(|rw| rw.waveform()).collect::<Result<_, _>>()?,
            theta_ss: self.theta_ss,
            r_max: self.r_max,
            grid_points: self.grid_points,
            truncation: self.truncation.truncation()?,
        })
    }
}

/// Command-line overrides applied on top of a preset or config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOverrides {
    pub n_antennas: Option<AntennaSetting>,
    pub rw_list: Option<Vec<SpatialResolution>>,
    pub theta_ss: Option<f64>,
    pub r_max: Option<f64>,
    pub grid_points: Option<usize>,
    pub evaluator: Option<Evaluator>,
}

impl SweepOverrides {
    pub fn apply(&self, mut config: SweepConfig) -> SweepConfig {
        if let Some(n) = self.n_antennas {
            config.n_antennas = n;
        }
        if let Some(rw) = &self.rw_list {
            config.rw_list = rw.clone();
        }
        if let Some(t) = self.theta_ss {
            config.theta_ss = t;
        }
        if let Some(r) = self.r_max {
            config.r_max = r;
        }
        if let Some(p) = self.grid_points {
            config.grid_points = p;
        }
        if let Some(e) = self.evaluator {
            config.evaluator = e;
        }
        config
    }
}

/// Parses an angle in radians: a plain number or a multiple of pi such as
/// `3pi/37`, `-pi/2` or `2*pi`.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let s: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    let bad = || CliError::Parse(format!("cannot parse angle `{text}`"));
    let Some((coef, rest)) = s.split_once("pi") else {
        return s.parse().map_err(|_| bad());
    };
    let coef = coef.trim_end_matches('*');
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let den = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coef * PI / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_parsing() {
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert_eq!(parse_angle("3pi/37").unwrap(), 3.0 * PI / 37.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("PI").unwrap(), PI);
        assert!(parse_angle("pi*2").is_err());
        assert!(parse_angle("abc").is_err());
    }

    #[test]
    fn json_schema_round_trip() {
        let config = SweepConfig::preset(Preset::Fig2);
        let json = config.to_json();
        assert!(json.contains("\"n_antennas\": 256"));
        assert!(json.contains("\"inf\""));
        assert!(json.contains("\"evaluator\": \"direct\""));
        assert_eq!(SweepConfig::from_json(&json).unwrap(), config);
    }

    #[test]
    fn json_accepts_continuous_and_overrides() {
        let json = r#"{
            "n_antennas": "continuous",
            "rw_list": [1.5, "inf"],
            "theta_ss": 0.0,
            "r_max": 10.0,
            "grid_points": 11,
            "evaluator": "series",
            "truncation": {"l_max": 30, "quad_samples": 8192}
        }"#;
        let config = SweepConfig::from_json(json).unwrap();
        assert_eq!(config.n_antennas, AntennaSetting::Continuous);
        assert_eq!(config.rw_list[1], SpatialResolution::INF);
        let spec = config.spec().unwrap();
        assert_eq!(spec.truncation.l_max, 30);
        assert_eq!(spec.truncation.quad.sample_count(), 8192);
    }

    #[test]
    fn json_rejects_unknown_fields_and_bad_tokens() {
        let mut v: serde_json::Value = serde_json::from_str(&SweepConfig::preset(Preset::Fig2).to_json()).unwrap();
        v["extra"] = 1.into();
        assert!(SweepConfig::from_json(&v.to_string()).is_err());
        let bad = SweepConfig::preset(Preset::Fig2)
            .to_json()
            .replace("\"inf\"", "\"infinite\"");
        assert!(SweepConfig::from_json(&bad).is_err());
    }

    #[test]
    fn incompatible_evaluator() {
        let mut config = SweepConfig::preset(Preset::Fig2);
        config.evaluator = Evaluator::Quadrature;
        assert!(matches!(config.spec(), Err(CliError::Config(_))));
        config.n_antennas = AntennaSetting::Continuous;
        assert!(config.spec().is_ok());
        config.evaluator = Evaluator::AliasedSeries;
        assert!(config.spec().is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(SpatialResolution(1.5).label(), "rw_1.5");
        assert_eq!(SpatialResolution(2.0).label(), "rw_2");
        assert_eq!(SpatialResolution::INF.label(), "rw_inf");
    }
}
