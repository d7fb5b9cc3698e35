//! One-photon scattering: the even-mode phase t_k, the emitter amplitude e_k,
//! two-mode transmission/reflection, and the delta-barrier toy problem.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ImpurityParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// k − Ω + iΓ/2, the common resonant denominator.
pub(crate) fn resonant_denominator(k: f64, params: &ImpurityParams) -> Complex64 {
    Complex64::new(k - params.omega(), params.gamma() / 2.0)
}

/// Even-mode transmission phase t_k = (k−Ω−iΓ/2)/(k−Ω+iΓ/2).
pub fn one_mode_t(k: f64, params: &ImpurityParams) -> Complex64 {
    let d = resonant_denominator(k, params);
    d.conj() / d
}

/// e_k = V/(√(2π)(k−Ω+iΓ/2)).
pub fn excitation_amplitude(k: f64, params: &ImpurityParams) -> Complex64 {
    params.coupling() / ((2.0 * PI).sqrt() * resonant_denominator(k, params))
}

/// (t̄_k, r̄_k) for a right-moving photon.
pub fn two_mode_coeffs(k: f64, params: &ImpurityParams) -> (Complex64, Complex64) {
    let d = resonant_denominator(k, params);
    let t_bar = Complex64::new(k - params.omega(), 0.0) / d;
    let r_bar = Complex64::new(0.0, -params.gamma() / 2.0) / d;
    (t_bar, r_bar)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OnePhotonScatter {
    pub t: Complex64,
    pub t_bar: Complex64,
    pub r_bar: Complex64,
    pub e_k: Complex64,
}

impl OnePhotonScatter {
    pub fn new(k: f64, params: &ImpurityParams) -> Self {
        let (t_bar, r_bar) = two_mode_coeffs(k, params);
        Self {
            t: one_mode_t(k, params),
            t_bar,
            r_bar,
            e_k: excitation_amplitude(k, params),
        }
    }
}

/// Interacting one-photon eigenstate of the even mode,
/// e^{ikx}/√(2π)·(θ(−x) + t_k θ(x)); the jump at x = 0 is averaged.
pub fn eigenstate_wavefunction(k: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    let plane = (I * k * x).exp() / (2.0 * PI).sqrt();
    let t = one_mode_t(k, params);
    if x < 0.0 {
        plane
    } else if x > 0.0 {
        t * plane
    } else {
        0.5 * (1.0 + t) * plane
    }
}

/// Same state with the scattered part stripped: the free in-state and the
/// free out-state it connects to (read-off through the emitter amplitude).
pub fn eigenstate_in_out(k: f64, x: f64, params: &ImpurityParams) -> (Complex64, Complex64) {
    let phi = eigenstate_wavefunction(k, x, params);
    let src = I * (I * k * x).exp() * params.coupling() * excitation_amplitude(k, params);
    let theta = |s: f64| if s > 0.0 { 1.0 } else if s < 0.0 { 0.0 } else { 0.5 };
    let phi_in = phi + theta(x) * src;
    let phi_out = phi - theta(-x) * src;
    (phi_in, phi_out)
}

/// (r, t) for a particle of momentum k on the potential V₀δ(x).
pub fn delta_barrier(k: f64, v0: f64) -> Result<(Complex64, Complex64)> {
    if !k.is_finite() || !v0.is_finite() {
        return Err(Error::NonFinite("delta barrier input"));
    }
    if k == 0.0 && v0 == 0.0 {
        return Err(Error::InvalidParameter("k = 0 with V0 = 0 is degenerate".into()));
    }
    let d = Complex64::new(2.0 * k, v0);
    Ok((Complex64::new(0.0, -v0) / d, Complex64::new(2.0 * k, 0.0) / d))
}
