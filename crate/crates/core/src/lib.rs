//! Exact one- and two-photon scattering off a two-level emitter side-coupled
//! to a one-dimensional waveguide.
//!
//! The waveguide's right- and left-moving fields are recombined into an even
//! mode, which couples to the emitter, and an odd mode, which does not. The
//! `single_photon` and `bethe` modules solve the even mode; `two_mode` maps
//! the results back to transmitted and reflected photons.

pub mod bethe;
pub mod checks;
pub mod error;
pub mod export;
pub mod model;
pub mod numerics;
pub mod single_photon;
pub mod two_mode;

pub use error::{Error, Result};
pub use model::{make_params, momentum_views, ImpurityParams, MomentumPair, TwoPhotonAmplitude};
pub use num_complex::Complex64;
