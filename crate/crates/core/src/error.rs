use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("bessel argument {0} outside the guarded range |x| < 1e7")]
    BesselDomain(f64),

    #[error("quadrature under-resolved: {samples} samples, at least {required} needed")]
    QuadratureUnderResolved { samples: usize, required: usize },

    #[error("sinc coefficient l={index} has imaginary part {value:e}")]
    ImaginaryResidual { index: usize, value: f64 },

    #[error("{evaluator} evaluator requires a {expected} antenna ring")]
    AntennaMismatch {
        evaluator: &'static str,
        expected: &'static str,
    },

    #[error("time grid too short: delay {delay} plus pulse support {support} exceeds half-duration {half_duration}")]
    GridTooShort {
        delay: f64,
        support: f64,
        half_duration: f64,
    },

    #[error("waveform must have finite bandwidth for time-domain synthesis")]
    NarrowbandUnsupported,

    #[error("sweep window [{lo}, {hi}] does not contain alias radius {alias_radius}")]
    WindowMiss { lo: f64, hi: f64, alias_radius: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
