//! Ambiguity function and MRT/MRC array gain of a circular cell-free antenna
//! network.
//!
//! Single-antenna access points sit on a ring of radius `R` around users
//! close to the center. A correlator matched to one user position, fed with
//! the signal of a user at another position, outputs the ambiguity function
//! (AF) of the displacement between the two. The same quantity is the
//! interference gain seen by a victim user when the network beampoints to a
//! target with MRT, and the MRC output for an interfering uplink user.
//!
//! Four evaluators compute it and check each other:
//!
//! * [`af::af_continuous_quadrature`]: ring integral of the residual
//!   space-dispersive signal (continuous array).
//! * [`af::af_continuous_series`]: Bessel/sinc-coefficient series
//!   (continuous array).
//! * [`af::af_discrete_direct`]: sum over `N` antennas (finite array ground
//!   truth).
//! * [`af::af_discrete_series`]: aliased Bessel series (finite array).
//!
//! All lengths are expressed in wavelengths (`λ = 1`, `k = 2π`).

pub mod af;
pub mod analysis;
mod error;
pub mod model;
pub mod special;
pub mod sweep;
pub mod td;

pub use error::{Error, Result};
pub use model::{Antennas, ArrayConfig, Displacement, UserPosition, Warning, Waveform};
