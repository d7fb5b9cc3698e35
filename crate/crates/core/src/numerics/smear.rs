//! Gaussian wavepackets built from delta-normalized basis states.
//!
//! A packet of kind K centred on (E₀, Δ₀) is ∫dE dΔ g(E−E₀) g(Δ−Δ₀) |K_{E,Δ}⟩
//! with g² a normal density of standard deviation σ. Every basis kind
//! factorizes as e^{iEx_c} × (relative envelope), so the packet is a product
//! of a centre-of-mass profile and a relative profile. The B packet is
//! smeared in E only.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quad::{integrate, QuadratureSpec};
use crate::bethe::basis::{relative_envelope, BasisKind};
use crate::error::{Error, Result};
use crate::model::{ImpurityParams, MomentumPair};

const I: Complex64 = Complex64::new(0.0, 1.0);
const SUPPORT: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavepacketSpec {
    pub sigma: f64,
    pub center: MomentumPair,
    /// Half-width of the relative-coordinate box.
    pub box_halfwidth: f64,
}

impl WavepacketSpec {
    pub fn new(sigma: f64, center: MomentumPair, box_halfwidth: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("wavepacket width must be positive, got {sigma}")));
        }
        if !(box_halfwidth > 0.0) {
            return Err(Error::InvalidParameter(format!("box half-width must be positive, got {box_halfwidth}")));
        }
        Ok(Self { sigma, center, box_halfwidth })
    }

    /// σ = 0.05Γ, L = 40/Γ.
    pub fn standard(center: MomentumPair, params: &ImpurityParams) -> Self {
        Self {
            sigma: 0.05 * params.gamma(),
            center,
            box_halfwidth: 40.0 / params.gamma(),
        }
    }

    pub fn box_is_small(&self) -> bool {
        self.box_halfwidth < 10.0 / self.sigma
    }
}

/// Amplitude profile g(u) with ∫g² = 1 and Var(g²) = σ².
pub fn gaussian_amplitude(u: f64, sigma: f64) -> f64 {
    (2.0 * PI * sigma * sigma).powf(-0.25) * (-u * u / (4.0 * sigma * sigma)).exp()
}

/// Centre-of-mass profile ∫dE g(E−E₀)e^{iEx_c}.
fn energy_profile(x_c: f64, e0: f64, sigma: f64) -> Complex64 {
    (8.0 * PI * sigma * sigma).powf(0.25) * (I * e0 * x_c - sigma * sigma * x_c * x_c).exp()
}

/// Relative profile ∫dΔ g(Δ−Δ₀)·envelope_K(Δ, x).
pub fn smeared_envelope(kind: BasisKind, wp: &WavepacketSpec, x: f64, params: &ImpurityParams, spec: &QuadratureSpec) -> Result<Complex64> {
    if kind == BasisKind::BoundB {
        return Ok(relative_envelope(kind, 0.0, x, params));
    }
    let (d0, s) = (wp.center.delta(), wp.sigma);
    integrate(
        |d| gaussian_amplitude(d - d0, s) * relative_envelope(kind, d, x, params),
        d0 - SUPPORT * s,
        d0 + SUPPORT * s,
        spec,
    )
}

/// ⟨packet_a | packet_b⟩.
///
/// The relative coordinate is integrated over the box [−L, L] with L the
/// smaller of the two half-widths. The centre-of-mass factor is the same
/// Gaussian overlap for every kind and is integrated over the whole line.
pub fn smeared_overlap(
    a: BasisKind,
    b: BasisKind,
    wp_a: &WavepacketSpec,
    wp_b: &WavepacketSpec,
    params: &ImpurityParams,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if let Some(wp) = [wp_a, wp_b].into_iter().find(|w| w.box_is_small()) {
        log::warn!(
            "box half-width {} is below 10/sigma = {}; truncation error may be visible",
            wp.box_halfwidth,
            10.0 / wp.sigma
        );
    }
    let (ea, eb) = (wp_a.center.energy(), wp_b.center.energy());
    let com = integrate(
        |xc| energy_profile(xc, ea, wp_a.sigma).conj() * energy_profile(xc, eb, wp_b.sigma),
        f64::NEG_INFINITY,
        f64::INFINITY,
        spec,
    )?;
    let inner = QuadratureSpec { abs_tol: spec.abs_tol * 1e-2, ..*spec };
    let err = std::cell::Cell::new(None);
    let integrand = |x: f64| {
        let fa = smeared_envelope(a, wp_a, x, params, &inner);
        let fb = smeared_envelope(b, wp_b, x, params, &inner);
        match (fa, fb) {
            (Ok(fa), Ok(fb)) => fa.conj() * fb,
            (Err(e), _) | (_, Err(e)) => {
                err.set(Some(e));
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let l = wp_a.box_halfwidth.min(wp_b.box_halfwidth);
    let rel = integrate(&integrand, -l, 0.0, spec)? + integrate(&integrand, 0.0, l, spec)?;
    if let Some(e) = err.take() {
        return Err(e);
    }
    Ok(com * rel)
}
