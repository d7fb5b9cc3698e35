//! Shared physical parameters, momentum labels and amplitude containers.
//!
//! Units: ħ = v_g = 1. Coordinates of a photon pair are written either as
//! (x₁, x₂) or as centre of mass `x_c = (x₁+x₂)/2` and separation `x = x₁−x₂`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};

/// Emitter configuration: transition energy Ω and width Γ = V².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImpurityParams {
    omega: f64,
    gamma: f64,
    coupling: f64,
}

impl ImpurityParams {
    pub fn new(omega: f64, gamma: f64) -> Result<Self> {
        finite(omega, "omega")?;
        finite(gamma, "gamma")?;
        if gamma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        Ok(Self {
            omega,
            gamma,
            coupling: gamma.sqrt(),
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// V = √Γ.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }
}

impl Default for ImpurityParams {
    fn default() -> Self {
        Self {
            omega: 0.0,
            gamma: 1.0,
            coupling: 1.0,
        }
    }
}

pub fn make_params(omega: f64, gamma: f64) -> Result<ImpurityParams> {
    ImpurityParams::new(omega, gamma)
}

/// Two-photon momentum label with both (k, p) and (E, Δ) views.
///
/// `E = k + p` is conjugate to `x_c`, `Δ = (k − p)/2` is conjugate to `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumPair {
    pub k: f64,
    pub p: f64,
}

impl MomentumPair {
    pub fn new(k: f64, p: f64) -> Result<Self> {
        finite(k, "k")?;
        finite(p, "p")?;
        Ok(Self { k, p })
    }

    pub fn from_energy(e: f64, delta: f64) -> Result<Self> {
        finite(e, "E")?;
        finite(delta, "Delta")?;
        Ok(Self {
            k: e / 2.0 + delta,
            p: e / 2.0 - delta,
        })
    }

    pub fn energy(&self) -> f64 {
        self.k + self.p
    }

    pub fn delta(&self) -> f64 {
        (self.k - self.p) / 2.0
    }

    /// True when the pair is in canonical order k ≤ p (Δ ≤ 0).
    pub fn is_canonical(&self) -> bool {
        self.k <= self.p
    }

    pub fn swapped(&self) -> Self {
        Self {
            k: self.p,
            p: self.k,
        }
    }
}

pub fn momentum_views(k: f64, p: f64) -> Result<MomentumPair> {
    MomentumPair::new(k, p)
}

/// sgn with sgn(0) = 0.
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn to_relative(x1: f64, x2: f64) -> (f64, f64) {
    ((x1 + x2) / 2.0, x1 - x2)
}

pub fn to_pair(x_c: f64, x: f64) -> (f64, f64) {
    (x_c + x / 2.0, x_c - x / 2.0)
}

type Evaluator = dyn Fn(f64, f64) -> Complex64 + Send + Sync;

/// Closed-form two-photon amplitude as a function of (x_c, x).
#[derive(Clone)]
pub struct TwoPhotonAmplitude {
    f: Arc<Evaluator>,
    pub tag: String,
}

impl TwoPhotonAmplitude {
    pub fn new(tag: impl Into<String>, f: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            tag: tag.into(),
        }
    }

    pub fn eval(&self, x_c: f64, x: f64) -> Complex64 {
        (self.f)(x_c, x)
    }

    pub fn eval_pair(&self, x1: f64, x2: f64) -> Complex64 {
        let (x_c, x) = to_relative(x1, x2);
        (self.f)(x_c, x)
    }

    /// Sample on a tensor grid; rows follow `xs_c`, columns follow `xs`.
    pub fn sample(&self, xs_c: &[f64], xs: &[f64]) -> Vec<Vec<Complex64>> {
        xs_c.iter()
            .map(|&xc| xs.iter().map(|&x| self.eval(xc, x)).collect())
            .collect()
    }
}

impl fmt::Debug for TwoPhotonAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoPhotonAmplitude").field("tag", &self.tag).finish()
    }
}

/// Finite sum Σ c_j e^{i q_j x} with complex wavenumbers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExpSum {
    pub terms: Vec<(Complex64, Complex64)>,
}

impl ExpSum {
    pub fn new(terms: Vec<(Complex64, Complex64)>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(c, q)| c * (Complex64::i() * q * x).exp())
            .sum()
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(c, q)| Complex64::i() * q * c * (Complex64::i() * q * x).exp())
            .sum()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, q)| (c * s, q)).collect(),
        }
    }
}

/// One-photon-plus-excited-emitter amplitude e(x), piecewise on x<0 and x>0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExcitationAmplitude {
    pub left: ExpSum,
    pub right: ExpSum,
}

impl ExcitationAmplitude {
    /// Value at x; at x = 0 the two-sided average.
    pub fn eval(&self, x: f64) -> Complex64 {
        if x < 0.0 {
            self.left.eval(x)
        } else if x > 0.0 {
            self.right.eval(x)
        } else {
            0.5 * (self.left.eval(0.0) + self.right.eval(0.0))
        }
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        if x < 0.0 {
            self.left.derivative(x)
        } else if x > 0.0 {
            self.right.derivative(x)
        } else {
            0.5 * (self.left.derivative(0.0) + self.right.derivative(0.0))
        }
    }

    /// e(0⁻) − e(0⁺).
    pub fn jump_at_zero(&self) -> Complex64 {
        self.left.eval(0.0) - self.right.eval(0.0)
    }

    pub fn is_continuous(&self, tol: f64) -> bool {
        self.jump_at_zero().norm() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn params_coupling() {
        let p = make_params(0.0, 1.0).unwrap();
        assert_eq!(p.coupling(), 1.0);
        let p = make_params(5.0, 4.0).unwrap();
        assert_eq!(p.coupling(), 2.0);
        assert!(make_params(0.0, -1.0).is_err());
        assert!(make_params(0.0, 0.0).is_err());
        assert!(make_params(f64::NAN, 1.0).is_err());
        assert!(make_params(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn momentum_examples() {
        let m = momentum_views(1.0, 1.0).unwrap();
        assert_eq!((m.energy(), m.delta()), (2.0, 0.0));
        let m = momentum_views(0.0, 2.0).unwrap();
        assert_eq!((m.energy(), m.delta()), (2.0, -1.0));
        assert!(m.is_canonical());
        let m = momentum_views(2.0, 0.0).unwrap();
        assert_eq!((m.energy(), m.delta()), (2.0, 1.0));
        assert_eq!(m.swapped().delta(), -1.0);
        assert!(momentum_views(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn sgn_zero() {
        assert_eq!(sgn(0.0), 0.0);
        assert_eq!(sgn(-0.0), 0.0);
        assert_eq!(sgn(-3.0), -1.0);
    }

    #[test]
    fn excitation_average_at_jump() {
        let e = ExcitationAmplitude {
            left: ExpSum::new(vec![(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))]),
            right: ExpSum::new(vec![(Complex64::new(3.0, 0.0), Complex64::new(0.0, 0.0))]),
        };
        assert_eq!(e.eval(0.0), Complex64::new(2.0, 0.0));
        assert_eq!(e.jump_at_zero(), Complex64::new(-2.0, 0.0));
        assert!(!e.is_continuous(1e-12));
    }

    proptest! {
        #[test]
        fn views_round_trip(k in -1e3f64..1e3, p in -1e3f64..1e3) {
            let m = momentum_views(k, p).unwrap();
            let s = momentum_views(p, k).unwrap();
            prop_assert_eq!(m.energy(), s.energy());
            prop_assert_eq!(m.delta(), -s.delta());
            let back = MomentumPair::from_energy(m.energy(), m.delta()).unwrap();
            prop_assert!((back.k - k).abs() <= 1e-12 * (1.0 + k.abs() + p.abs()));
            prop_assert!((back.p - p).abs() <= 1e-12 * (1.0 + k.abs() + p.abs()));
        }

        #[test]
        fn coupling_squared(omega in -10f64..10.0, gamma in 1e-6f64..1e6) {
            let p = make_params(omega, gamma).unwrap();
            prop_assert!((p.coupling() * p.coupling() - gamma).abs() <= 1e-14 * gamma);
        }

        #[test]
        fn exp_sum_derivative_matches_difference(c in -2f64..2.0, q in -3f64..3.0, qi in 0f64..1.0, x in -3f64..3.0) {
            let s = ExpSum::new(vec![(Complex64::new(c, 0.5), Complex64::new(q, qi))]);
            let h = 1e-5;
            let fd = (s.eval(x + h) - s.eval(x - h)) / (2.0 * h);
            prop_assert!((fd - s.derivative(x)).norm() <= 1e-7 * (1.0 + s.derivative(x).norm()));
        }
    }
}
