//! Even-mode two-photon S-matrix elements and the scattered relative wavefunction.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::basis::SYM_NORM;
use crate::error::Result;
use crate::model::{ImpurityParams, MomentumPair};
use crate::numerics::{integrate_oscillatory, QuadratureSpec};
use crate::single_photon::one_mode_t;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Distribution-valued matrix element ⟨out|S|in⟩:
/// direct·δ(k₁−k₂)δ(p₁−p₂) + exchange·δ(k₁−p₂)δ(k₂−p₁) + correlated·δ(E₁−E₂).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SMatrixElement {
    pub direct: Complex64,
    pub exchange: Complex64,
    pub correlated: Complex64,
}

/// E − 2Ω + iΓ.
pub(crate) fn pair_pole(e: f64, params: &ImpurityParams) -> Complex64 {
    Complex64::new(e - 2.0 * params.omega(), params.gamma())
}

/// Correlated (energy-conserving, momentum-redistributing) density B.
pub fn background_b(e: f64, d1: f64, d2: f64, params: &ImpurityParams) -> Complex64 {
    let g = params.gamma();
    let z = pair_pole(e, params);
    let z2 = z * z;
    Complex64::new(0.0, 16.0 * g * g / PI) * z / ((4.0 * d1 * d1 - z2) * (4.0 * d2 * d2 - z2))
}

pub fn s_ee_element(input: MomentumPair, output: MomentumPair, params: &ImpurityParams) -> SMatrixElement {
    let t = one_mode_t(input.k, params) * one_mode_t(input.p, params);
    SMatrixElement {
        direct: t,
        exchange: t,
        correlated: background_b(input.energy(), input.delta(), output.delta(), params),
    }
}

/// Coefficient and exponent of the bound part of the scattered relative wavefunction:
/// −4Γ²/(4Δ²−(E−2Ω+iΓ)²)·e^{i(E−2Ω+iΓ)|x|/2}.
pub fn bound_term(e: f64, d1: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    let g = params.gamma();
    let z = pair_pole(e, params);
    -4.0 * g * g / (4.0 * d1 * d1 - z * z) * (I * z * x.abs() / 2.0).exp()
}

/// Out-state in the relative coordinate for the incoming symmetric pair (E, Δ₁),
/// with the overall e^{iEx_c} dropped.
pub fn out_state_relative(e: f64, d1: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    let q = MomentumPair { k: e / 2.0 + d1, p: e / 2.0 - d1 };
    let t = one_mode_t(q.k, params) * one_mode_t(q.p, params);
    SYM_NORM * (t * (d1 * x).cos() + bound_term(e, d1, x, params))
}

/// ∫_{Δ₂≤0} dΔ₂ B(E,Δ₁,Δ₂) cos(Δ₂x) by quadrature; should reproduce [`bound_term`].
pub fn resum_background(e: f64, d1: f64, x: f64, params: &ImpurityParams, spec: &QuadratureSpec) -> Result<Complex64> {
    // B is even in Δ₂, so fold onto [0, ∞)
    integrate_oscillatory(|t| background_b(e, d1, t, params) * (t * x).cos(), 0.0, x, spec)
}
