//! Physical (right/left-moving) two-photon out-states and momentum
//! distributions for a pair incident from the left.
//!
//! All functions take the incident pair as total energy E and relative
//! momentum Δ₁. `t2` and `r2` are functions of (x_c, x) in the usual
//! roles. `rt(x₁, x₂)` is the amplitude for a transmitted photon at x₁ and a
//! reflected one at x₂; its phase runs with x = x₁ − x₂ and its envelope with
//! x_c = (x₁ + x₂)/2.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bethe::basis::{s_basis, SYM_NORM};
use crate::bethe::smatrix::{background_b, out_state_relative, pair_pole, SMatrixElement};
use crate::error::{Error, Result};
use crate::model::{to_pair, to_relative, ImpurityParams, MomentumPair, TwoPhotonAmplitude};
use crate::single_photon::{one_mode_t, two_mode_coeffs};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn pair_of(e: f64, d1: f64) -> MomentumPair {
    MomentumPair { k: e / 2.0 + d1, p: e / 2.0 - d1 }
}

/// Γ²/(4Δ²−(E−2Ω+iΓ)²)·e^{i(E−2Ω+iΓ)|s|·scale}.
fn correlated_part(e: f64, d1: f64, s: f64, scale: f64, params: &ImpurityParams) -> Complex64 {
    let g = params.gamma();
    let z = pair_pole(e, params);
    g * g / (4.0 * d1 * d1 - z * z) * (I * z * s.abs() * scale).exp()
}

pub fn t2(e: f64, d1: f64, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    let q = pair_of(e, d1);
    let (tk, _) = two_mode_coeffs(q.k, params);
    let (tp, _) = two_mode_coeffs(q.p, params);
    (I * e * x_c).exp() * SYM_NORM * (tk * tp * (d1 * x).cos() - correlated_part(e, d1, x, 0.5, params))
}

pub fn r2(e: f64, d1: f64, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    let q = pair_of(e, d1);
    let (_, rk) = two_mode_coeffs(q.k, params);
    let (_, rp) = two_mode_coeffs(q.p, params);
    (-I * e * x_c).exp() * SYM_NORM * (rk * rp * (d1 * x).cos() - correlated_part(e, d1, x, 0.5, params))
}

pub fn rt(e: f64, d1: f64, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    let q = pair_of(e, d1);
    let (tk, rk) = two_mode_coeffs(q.k, params);
    let (tp, rp) = two_mode_coeffs(q.p, params);
    let body = tk * rp * (2.0 * I * d1 * x_c).exp() + rk * tp * (-2.0 * I * d1 * x_c).exp()
        - 2.0 * correlated_part(e, d1, x_c, 1.0, params);
    (I * e * x / 2.0).exp() * body / (2.0 * PI)
}

/// The three out-state amplitudes for one incident pair.
#[derive(Debug, Clone)]
pub struct TwoModeOutState {
    pub t2: TwoPhotonAmplitude,
    pub r2: TwoPhotonAmplitude,
    pub rt: TwoPhotonAmplitude,
    pub energy: f64,
    pub delta: f64,
}

pub fn two_mode_out_state(e: f64, d1: f64, params: &ImpurityParams) -> TwoModeOutState {
    let p = *params;
    TwoModeOutState {
        t2: TwoPhotonAmplitude::new("t2", move |xc, x| t2(e, d1, xc, x, &p)),
        r2: TwoPhotonAmplitude::new("r2", move |xc, x| r2(e, d1, xc, x, &p)),
        rt: TwoPhotonAmplitude::new("rt", move |xc, x| rt(e, d1, xc, x, &p)),
        energy: e,
        delta: d1,
    }
}

/// Out-states rebuilt from the even/odd decomposition of the incident pair:
/// the even-even part scatters into φ_ee, the odd-odd part passes freely, and
/// the even-odd part picks up single-photon phases.
pub mod assembly {
    use super::*;

    fn phi_ee(e: f64, d1: f64, x1: f64, x2: f64, params: &ImpurityParams) -> Complex64 {
        let (xc, x) = to_relative(x1, x2);
        (I * e * xc).exp() * out_state_relative(e, d1, x, params)
    }

    fn s_at(e: f64, d1: f64, x1: f64, x2: f64) -> Complex64 {
        let (xc, x) = to_relative(x1, x2);
        s_basis(pair_of(e, d1), xc, x)
    }

    pub fn t2(e: f64, d1: f64, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
        let (x1, x2) = to_pair(x_c, x);
        let q = pair_of(e, d1);
        let (tk, tp) = (one_mode_t(q.k, params), one_mode_t(q.p, params));
        0.25 * (phi_ee(e, d1, x1, x2, params) + (1.0 + tk + tp) * s_at(e, d1, x1, x2))
    }

    pub fn r2(e: f64, d1: f64, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
        let (x1, x2) = to_pair(x_c, x);
        let q = pair_of(e, d1);
        let (tk, tp) = (one_mode_t(q.k, params), one_mode_t(q.p, params));
        0.25 * (phi_ee(e, d1, -x1, -x2, params) + (1.0 - tk - tp) * s_at(e, d1, -x1, -x2))
    }

    pub fn rt(e: f64, d1: f64, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
        let (x1, x2) = to_pair(x_c, x);
        let q = pair_of(e, d1);
        let (tk, tp) = (one_mode_t(q.k, params), one_mode_t(q.p, params));
        let eo = (tp - tk) * (SYM_NORM / 2.0)
            * ((I * (q.k * x1 - q.p * x2)).exp() - (I * (-q.k * x2 + q.p * x1)).exp());
        (phi_ee(e, d1, x1, -x2, params) - s_at(e, d1, x1, -x2) + eo) / (2.0 * 2f64.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    RR,
    LL,
    RL,
}

impl FromStr for Sector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "RR" => Ok(Sector::RR),
            "LL" => Ok(Sector::LL),
            "RL" => Ok(Sector::RL),
            _ => Err(Error::InvalidParameter(format!("unknown sector {s:?}"))),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sector::RR => "RR",
            Sector::LL => "LL",
            Sector::RL => "RL",
        };
        f.write_str(s)
    }
}

/// Energy and relative-momentum labels of an outgoing pair in a sector.
/// Left-movers carry negative momentum labels; their energy is −p.
pub fn out_labels(sector: Sector, out: MomentumPair) -> (f64, f64) {
    match sector {
        Sector::RR => (out.energy(), out.delta()),
        Sector::LL => (-out.energy(), -out.delta()),
        Sector::RL => (out.k - out.p, (out.k + out.p) / 2.0),
    }
}

pub fn momentum_distribution(sector: Sector, input: MomentumPair, out: MomentumPair, params: &ImpurityParams) -> SMatrixElement {
    let (tk, rk) = two_mode_coeffs(input.k, params);
    let (tp, rp) = two_mode_coeffs(input.p, params);
    let (direct, exchange) = match sector {
        Sector::RR => (tk * tp, tk * tp),
        Sector::LL => (rk * rp, rk * rp),
        Sector::RL => (tk * rp, rk * tp),
    };
    let (_, d2) = out_labels(sector, out);
    SMatrixElement {
        direct,
        exchange,
        correlated: 0.25 * background_b(input.energy(), input.delta(), d2, params),
    }
}
