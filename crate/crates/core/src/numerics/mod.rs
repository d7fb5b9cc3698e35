//! Quadrature infrastructure: adaptive integration, principal values and
//! wavepacket smearing of delta-normalized states.

mod pv;
mod quad;
mod smear;

pub use pv::{pv_integrate, pv_integrate_poles};
pub use quad::{integrate, integrate_estimate, integrate_oscillatory, integrate_pieces, integrate_real, Estimate, QuadratureSpec};
pub use smear::{gaussian_amplitude, smeared_envelope, smeared_overlap, WavepacketSpec};
