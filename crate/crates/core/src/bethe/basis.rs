//! S, A, W and bound basis wavefunctions of the interacting (even) mode.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{sgn, ImpurityParams, MomentumPair, TwoPhotonAmplitude};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// √2/(2π), the plane-wave prefactor of the symmetric states.
pub const SYM_NORM: f64 = std::f64::consts::SQRT_2 / (2.0 * PI);

pub fn s_basis(pair: MomentumPair, x_c: f64, x: f64) -> Complex64 {
    (I * pair.energy() * x_c).exp() * (SYM_NORM * (pair.delta() * x).cos())
}

pub fn a_basis(pair: MomentumPair, x_c: f64, x: f64) -> Complex64 {
    (I * pair.energy() * x_c).exp() * I * (SYM_NORM * sgn(x) * (pair.delta() * x).sin())
}

/// Relative-coordinate part of W (everything but e^{iEx_c}).
pub fn w_envelope(delta: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    if delta == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let g = params.gamma();
    let n = (4.0 * delta * delta + g * g).sqrt();
    Complex64::new(
        SYM_NORM * (2.0 * delta * (delta * x).cos() - g * sgn(x) * (delta * x).sin()) / n,
        0.0,
    )
}

pub fn w_basis(pair: MomentumPair, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    (I * pair.energy() * x_c).exp() * w_envelope(pair.delta(), x, params)
}

pub fn bound_envelope(x: f64, params: &ImpurityParams) -> f64 {
    let g = params.gamma();
    (g / (4.0 * PI)).sqrt() * (-0.5 * g * x.abs()).exp()
}

pub fn bound_basis(e: f64, x_c: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    (I * e * x_c).exp() * bound_envelope(x, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    S,
    A,
    W,
    BoundB,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BasisLabel {
    Pair(MomentumPair),
    Energy(f64),
}

/// A single basis wavefunction with its label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisState {
    pub kind: BasisKind,
    pub label: BasisLabel,
    pub params: ImpurityParams,
}

impl BasisState {
    pub fn new(kind: BasisKind, pair: MomentumPair, params: ImpurityParams) -> Self {
        let label = match kind {
            BasisKind::BoundB => BasisLabel::Energy(pair.energy()),
            _ => BasisLabel::Pair(pair),
        };
        Self { kind, label, params }
    }

    pub fn bound(e: f64, params: ImpurityParams) -> Result<Self> {
        crate::error::finite(e, "E")?;
        Ok(Self {
            kind: BasisKind::BoundB,
            label: BasisLabel::Energy(e),
            params,
        })
    }

    pub fn energy(&self) -> f64 {
        match self.label {
            BasisLabel::Pair(p) => p.energy(),
            BasisLabel::Energy(e) => e,
        }
    }

    /// Δ label; the bound state carries none.
    pub fn delta(&self) -> Option<f64> {
        match self.label {
            BasisLabel::Pair(p) => Some(p.delta()),
            BasisLabel::Energy(_) => None,
        }
    }

    /// Degenerate W (k = p) is the zero function.
    pub fn is_zero(&self) -> bool {
        self.kind == BasisKind::W && self.delta() == Some(0.0)
    }

    pub fn eval(&self, x_c: f64, x: f64) -> Complex64 {
        (I * self.energy() * x_c).exp() * relative_envelope(self.kind, self.delta().unwrap_or(0.0), x, &self.params)
    }

    pub fn amplitude(&self) -> TwoPhotonAmplitude {
        let s = *self;
        TwoPhotonAmplitude::new(format!("{:?}", self.kind), move |xc, x| s.eval(xc, x))
    }
}

/// Factor multiplying e^{iEx_c} for a basis state of the given kind.
pub fn relative_envelope(kind: BasisKind, delta: f64, x: f64, params: &ImpurityParams) -> Complex64 {
    match kind {
        BasisKind::S => Complex64::new(SYM_NORM * (delta * x).cos(), 0.0),
        BasisKind::A => I * (SYM_NORM * sgn(x) * (delta * x).sin()),
        BasisKind::W => w_envelope(delta, x, params),
        BasisKind::BoundB => Complex64::new(bound_envelope(x, params), 0.0),
    }
}
