//! Interacting two-photon eigenstates of the even mode: the extended
//! Bethe-ansatz state and the bound state, with their emitter amplitudes.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::basis::SYM_NORM;
use crate::error::{finite, Result};
use crate::model::{to_relative, ExcitationAmplitude, ExpSum, ImpurityParams, MomentumPair, TwoPhotonAmplitude};
use crate::single_photon::{one_mode_t, resonant_denominator};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Region of the ordered half-plane x₁ < x₂ (the other three follow by symmetry).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// x₁ < x₂ < 0: both photons before the emitter.
    Before,
    /// x₁ < 0 < x₂.
    Straddle,
    /// 0 < x₁ < x₂.
    After,
}

impl Region {
    fn of(lo: f64, hi: f64) -> Self {
        if hi < 0.0 {
            Region::Before
        } else if lo < 0.0 {
            Region::Straddle
        } else {
            Region::After
        }
    }
}

/// Side of a coordinate axis, for one-sided limits at x = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// Common view of an interacting eigenstate used by the boundary checks
/// and the read-off of free in/out states.
pub trait Eigenstate {
    fn params(&self) -> &ImpurityParams;
    fn energy(&self) -> f64;
    fn excitation(&self) -> &ExcitationAmplitude;
    /// Photon amplitude g(x₁, x₂) with jump averaging on the axes.
    fn g(&self, x1: f64, x2: f64) -> Complex64;
    /// g(x, 0^side), equal to g(0^side, x) by boson symmetry.
    fn g_axis(&self, x: f64, side: Side) -> Complex64;

    /// Free in-state obtained by removing the emitter-sourced part that
    /// propagates away from the emitter (retarded read-off).
    fn read_off_in(&self, x1: f64, x2: f64) -> Complex64 {
        let s = self.source(x1, x2, |x| step(x));
        self.g(x1, x2) + s
    }

    /// Free out-state (advanced read-off).
    fn read_off_out(&self, x1: f64, x2: f64) -> Complex64 {
        let s = self.source(x1, x2, |x| step(-x));
        self.g(x1, x2) - s
    }

    #[doc(hidden)]
    fn source(&self, x1: f64, x2: f64, theta: impl Fn(f64) -> f64) -> Complex64 {
        let e = self.energy();
        let v = self.params().coupling();
        let ex = self.excitation();
        let a = theta(x1) * (I * e * x1).exp() * ex.eval(x2 - x1);
        let b = theta(x2) * (I * e * x2).exp() * ex.eval(x1 - x2);
        I * v / 2f64.sqrt() * (a + b)
    }
}

fn step(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Averages the limits of `region_value` around points on the axes.
fn piecewise_g(x1: f64, x2: f64, region_value: impl Fn(Region, f64, f64) -> Complex64) -> Complex64 {
    let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
    let on_lo = lo == 0.0;
    let on_hi = hi == 0.0;
    match (on_lo, on_hi) {
        (false, false) => region_value(Region::of(lo, hi), lo, hi),
        // hi on the axis, lo < 0
        (false, true) => 0.5 * (region_value(Region::Before, lo, 0.0) + region_value(Region::Straddle, lo, 0.0)),
        // lo on the axis, hi > 0
        (true, false) => 0.5 * (region_value(Region::Straddle, 0.0, hi) + region_value(Region::After, 0.0, hi)),
        (true, true) => {
            0.25 * (region_value(Region::Before, 0.0, 0.0)
                + 2.0 * region_value(Region::Straddle, 0.0, 0.0)
                + region_value(Region::After, 0.0, 0.0))
        }
    }
}

fn axis_region(x: f64, side: Side) -> (Region, f64, f64) {
    match (x < 0.0, side) {
        (true, Side::Minus) => (Region::Before, x, 0.0),
        (true, Side::Plus) => (Region::Straddle, x, 0.0),
        (false, Side::Minus) => (Region::Straddle, 0.0, x),
        (false, Side::Plus) => (Region::After, 0.0, x),
    }
}

/// Plane-wave coefficients of the extended state in the three ordered regions:
/// g = b·e^{i(k lo + p hi)} + a·e^{i(p lo + k hi)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetheCoefficients {
    pub a3: Complex64,
    pub b3: Complex64,
    pub a2: Complex64,
    pub b2: Complex64,
    pub a1: Complex64,
    pub b1: Complex64,
}

impl BetheCoefficients {
    fn region(&self, r: Region) -> (Complex64, Complex64) {
        match r {
            Region::Before => (self.b3, self.a3),
            Region::Straddle => (self.b2, self.a2),
            Region::After => (self.b1, self.a1),
        }
    }
}

/// Extended (Bethe-ansatz) eigenstate labelled by a momentum pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BetheState {
    pub pair: MomentumPair,
    pub params: ImpurityParams,
    pub coefficients: BetheCoefficients,
    pub e: ExcitationAmplitude,
    /// k = p: every amplitude vanishes identically.
    pub degenerate: bool,
}

/// Global prefactor making the incoming region equal to the normalized W state.
pub const BETHE_NORM: f64 = SYM_NORM / 2.0;

pub fn build_bethe_state(pair: MomentumPair, params: &ImpurityParams) -> BetheState {
    let (k, p) = (pair.k, pair.p);
    let g = params.gamma();
    let v = params.coupling();
    let d = (k - p).hypot(g);
    let a3 = BETHE_NORM * Complex64::new(k - p, g) / d;
    let b3 = BETHE_NORM * Complex64::new(k - p, -g) / d;
    let (tk, tp) = (one_mode_t(k, params), one_mode_t(p, params));
    let coefficients = BetheCoefficients {
        a3,
        b3,
        a2: tk * a3,
        b2: tp * b3,
        a1: tk * tp * a3,
        b1: tk * tp * b3,
    };
    let (dk, dp) = (resonant_denominator(k, params), resonant_denominator(p, params));
    let s = 2f64.sqrt() * v;
    let left = ExpSum::new(vec![(s * b3 / dp, Complex64::new(k, 0.0)), (s * a3 / dk, Complex64::new(p, 0.0))]);
    let right = ExpSum::new(vec![
        (s * tp * b3 / dk, Complex64::new(p, 0.0)),
        (s * tk * a3 / dp, Complex64::new(k, 0.0)),
    ]);
    BetheState {
        pair,
        params: *params,
        coefficients,
        e: ExcitationAmplitude { left, right },
        degenerate: k == p,
    }
}

impl BetheState {
    fn plane(&self, b: Complex64, a: Complex64, lo: f64, hi: f64) -> Complex64 {
        let (k, p) = (self.pair.k, self.pair.p);
        b * (I * (k * lo + p * hi)).exp() + a * (I * (p * lo + k * hi)).exp()
    }

    pub fn region_value(&self, r: Region, lo: f64, hi: f64) -> Complex64 {
        let (b, a) = self.coefficients.region(r);
        self.plane(b, a, lo, hi)
    }

    /// Incoming-region form continued over the whole plane.
    pub fn in_state(&self, x1: f64, x2: f64) -> Complex64 {
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        self.region_value(Region::Before, lo, hi)
    }

    /// Outgoing-region form continued over the whole plane.
    pub fn out_state(&self, x1: f64, x2: f64) -> Complex64 {
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        self.region_value(Region::After, lo, hi)
    }

    pub fn eigenvalue(&self) -> Complex64 {
        one_mode_t(self.pair.k, &self.params) * one_mode_t(self.pair.p, &self.params)
    }

    pub fn amplitude(&self) -> TwoPhotonAmplitude {
        let s = Arc::new(self.clone());
        TwoPhotonAmplitude::new("bethe", move |xc, x| {
            let (x1, x2) = crate::model::to_pair(xc, x);
            s.g(x1, x2)
        })
    }
}

impl Eigenstate for BetheState {
    fn params(&self) -> &ImpurityParams {
        &self.params
    }
    fn energy(&self) -> f64 {
        self.pair.energy()
    }
    fn excitation(&self) -> &ExcitationAmplitude {
        &self.e
    }
    fn g(&self, x1: f64, x2: f64) -> Complex64 {
        piecewise_g(x1, x2, |r, lo, hi| self.region_value(r, lo, hi))
    }
    fn g_axis(&self, x: f64, side: Side) -> Complex64 {
        let (r, lo, hi) = axis_region(x, side);
        self.region_value(r, lo, hi)
    }
}

/// Bound eigenstate of total energy E; its envelope decays as e^{−Γ|x|/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInteractingState {
    pub e_total: f64,
    pub params: ImpurityParams,
    /// Factor of the straddling region, (E−2Ω)/(E−2Ω+2iΓ).
    pub straddle_factor: Complex64,
    pub eigenvalue: Complex64,
    pub e: ExcitationAmplitude,
    norm: f64,
}

pub fn bound_eigenvalue(e: f64, params: &ImpurityParams) -> Complex64 {
    let d = Complex64::new(e - 2.0 * params.omega(), 2.0 * params.gamma());
    d.conj() / d
}

pub fn build_bound_state(e: f64, params: &ImpurityParams) -> Result<BoundInteractingState> {
    finite(e, "E")?;
    let g = params.gamma();
    let norm = (g / (4.0 * PI)).sqrt();
    let d = Complex64::new(e - 2.0 * params.omega(), 2.0 * g);
    let c = norm * 2.0 * 2f64.sqrt() * params.coupling() / d;
    let e_amp = ExcitationAmplitude {
        left: ExpSum::new(vec![(c, Complex64::new(e / 2.0, -g / 2.0))]),
        right: ExpSum::new(vec![(c, Complex64::new(e / 2.0, g / 2.0))]),
    };
    Ok(BoundInteractingState {
        e_total: e,
        params: *params,
        straddle_factor: (e - 2.0 * params.omega()) / d,
        eigenvalue: bound_eigenvalue(e, params),
        e: e_amp,
        norm,
    })
}

impl BoundInteractingState {
    pub fn region_value(&self, r: Region, lo: f64, hi: f64) -> Complex64 {
        let (xc, x) = to_relative(lo, hi);
        let f = match r {
            Region::Before => Complex64::new(1.0, 0.0),
            Region::Straddle => self.straddle_factor,
            Region::After => self.eigenvalue,
        };
        // x = lo − hi ≤ 0 so e^{Γx/2} = e^{−Γ|x|/2}
        self.norm * f * (I * self.e_total * xc + 0.5 * self.params.gamma() * x).exp()
    }

    pub fn in_state(&self, x1: f64, x2: f64) -> Complex64 {
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        self.region_value(Region::Before, lo, hi)
    }

    pub fn out_state(&self, x1: f64, x2: f64) -> Complex64 {
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        self.region_value(Region::After, lo, hi)
    }

    pub fn amplitude(&self) -> TwoPhotonAmplitude {
        let s = Arc::new(self.clone());
        TwoPhotonAmplitude::new("bound", move |xc, x| {
            let (x1, x2) = crate::model::to_pair(xc, x);
            s.g(x1, x2)
        })
    }
}

impl Eigenstate for BoundInteractingState {
    fn params(&self) -> &ImpurityParams {
        &self.params
    }
    fn energy(&self) -> f64 {
        self.e_total
    }
    fn excitation(&self) -> &ExcitationAmplitude {
        &self.e
    }
    fn g(&self, x1: f64, x2: f64) -> Complex64 {
        piecewise_g(x1, x2, |r, lo, hi| self.region_value(r, lo, hi))
    }
    fn g_axis(&self, x: f64, side: Side) -> Complex64 {
        let (r, lo, hi) = axis_region(x, side);
        self.region_value(r, lo, hi)
    }
}

/// Residuals of the two boundary conditions at the emitter, one point on each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryResiduals {
    /// −i(g(x,0⁺) − g(x,0⁻)) + (V/√2)e(x) at x < 0.
    pub jump_left: Complex64,
    /// (−i∂ − (E−Ω))e(x) + (V/√2)(g(x,0⁺) + g(x,0⁻)) at x < 0.
    pub motion_left: Complex64,
    pub jump_right: Complex64,
    pub motion_right: Complex64,
    /// e(0⁻) − e(0⁺).
    pub continuity: Complex64,
}

impl BoundaryResiduals {
    pub fn max_norm(&self) -> f64 {
        [self.jump_left, self.motion_left, self.jump_right, self.motion_right, self.continuity]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn jump_and_motion<S: Eigenstate + ?Sized>(s: &S, x: f64, de: Complex64) -> (Complex64, Complex64) {
    let p = s.params();
    let h = p.coupling() / 2f64.sqrt();
    let (gm, gp) = (s.g_axis(x, Side::Minus), s.g_axis(x, Side::Plus));
    let e = s.excitation().eval(x);
    let jump = -I * (gp - gm) + h * e;
    let motion = -I * de - (s.energy() - p.omega()) * e + h * (gp + gm);
    (jump, motion)
}

/// Boundary residuals with the exact derivative of e.
pub fn boundary_residuals<S: Eigenstate + ?Sized>(s: &S, x_left: f64, x_right: f64) -> BoundaryResiduals {
    debug_assert!(x_left < 0.0 && x_right > 0.0);
    let ex = s.excitation();
    let (jl, ml) = jump_and_motion(s, x_left, ex.derivative(x_left));
    let (jr, mr) = jump_and_motion(s, x_right, ex.derivative(x_right));
    BoundaryResiduals {
        jump_left: jl,
        motion_left: ml,
        jump_right: jr,
        motion_right: mr,
        continuity: ex.jump_at_zero(),
    }
}

/// Same residuals with a five-point finite-difference derivative of step `h`.
pub fn boundary_residuals_fd<S: Eigenstate + ?Sized>(s: &S, x_left: f64, x_right: f64, h: f64) -> BoundaryResiduals {
    let ex = s.excitation();
    let d = |x: f64| {
        (ex.eval(x - 2.0 * h) - 8.0 * ex.eval(x - h) + 8.0 * ex.eval(x + h) - ex.eval(x + 2.0 * h)) / (12.0 * h)
    };
    let (jl, ml) = jump_and_motion(s, x_left, d(x_left));
    let (jr, mr) = jump_and_motion(s, x_right, d(x_right));
    BoundaryResiduals {
        jump_left: jl,
        motion_left: ml,
        jump_right: jr,
        motion_right: mr,
        continuity: ex.jump_at_zero(),
    }
}

/// Eigenchannel of the two-photon even-mode S-matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScatteringChannel {
    Extended(MomentumPair),
    Bound(f64),
}

pub fn channel_eigenvalue(channel: ScatteringChannel, params: &ImpurityParams) -> Complex64 {
    match channel {
        ScatteringChannel::Extended(q) => one_mode_t(q.k, params) * one_mode_t(q.p, params),
        ScatteringChannel::Bound(e) => bound_eigenvalue(e, params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::basis::{bound_basis, w_basis};
    use crate::model::to_relative;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn ratio_example() {
        let p = ImpurityParams::new(0.0, 1.0).unwrap();
        let s = build_bethe_state(MomentumPair::new(1.5, 0.5).unwrap(), &p);
        let r = s.coefficients.b3 / s.coefficients.a3;
        assert_abs_diff_eq!((r - Complex64::new(0.0, -1.0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_pair_vanishes() {
        let p = ImpurityParams::new(0.3, 1.0).unwrap();
        let s = build_bethe_state(MomentumPair::new(0.8, 0.8).unwrap(), &p);
        assert!(s.degenerate);
        for (x1, x2) in [(-1.0, -2.0), (-1.0, 0.7), (0.4, 3.0)] {
            assert!(s.g(x1, x2).norm() < 1e-16);
        }
        assert!(s.e.eval(-0.5).norm() < 1e-16);
    }

    #[test]
    fn incoming_region_is_w() {
        let p = ImpurityParams::new(0.2, 0.9).unwrap();
        let q = MomentumPair::new(0.7, -0.4).unwrap();
        let s = build_bethe_state(q, &p);
        for (x1, x2) in [(-1.0, -3.0), (-0.2, -0.1), (2.0, 5.0), (-3.0, 4.0)] {
            let (xc, x) = to_relative(x1, x2);
            assert_abs_diff_eq!((s.in_state(x1, x2) - w_basis(q, xc, x, &p)).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn channel_examples() {
        let p = ImpurityParams::new(0.4, 1.0).unwrap();
        // t at Ω+Γ is (1−i/2)/(1+i/2) = 0.6−0.8i; the product is i only at Ω+Γ/2
        let w = channel_eigenvalue(ScatteringChannel::Extended(MomentumPair::new(0.4, 1.4).unwrap()), &p);
        assert_abs_diff_eq!((w - Complex64::new(-0.6, 0.8)).norm(), 0.0, epsilon = 1e-15);
        let w = channel_eigenvalue(ScatteringChannel::Extended(MomentumPair::new(0.4, 0.9).unwrap()), &p);
        assert_abs_diff_eq!((w - Complex64::new(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);
        let b = channel_eigenvalue(ScatteringChannel::Bound(0.8), &p);
        assert_abs_diff_eq!((b + 1.0).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn bound_incoming_is_basis_state() {
        let p = ImpurityParams::new(0.2, 1.3).unwrap();
        let b = build_bound_state(1.1, &p).unwrap();
        for (x1, x2) in [(-1.0, -3.0), (2.0, 5.0), (-3.0, 4.0)] {
            let (xc, x) = to_relative(x1, x2);
            assert_abs_diff_eq!((b.in_state(x1, x2) - bound_basis(1.1, xc, x, &p)).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn axis_averaging() {
        let p = ImpurityParams::new(0.0, 1.0).unwrap();
        let s = build_bethe_state(MomentumPair::new(0.3, -0.8).unwrap(), &p);
        let avg = 0.5 * (s.g_axis(-1.2, Side::Minus) + s.g_axis(-1.2, Side::Plus));
        assert_abs_diff_eq!((s.g(-1.2, 0.0) - avg).norm(), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!((s.g(0.0, -1.2) - avg).norm(), 0.0, epsilon = 1e-16);
    }

    fn arb_params() -> impl Strategy<Value = ImpurityParams> {
        (-2f64..2.0, 0.2f64..3.0).prop_map(|(o, g)| ImpurityParams::new(o, g).unwrap())
    }

    proptest! {
        #[test]
        fn bethe_invariants(pr in arb_params(), dk in -4f64..4.0, dp in -4f64..4.0,
                            xl in -6f64..-0.01, xr in 0.01f64..6.0, x1 in -6f64..6.0, x2 in -6f64..6.0) {
            let g = pr.gamma();
            let q = MomentumPair::new(pr.omega() + dk * g, pr.omega() + dp * g).unwrap();
            let s = build_bethe_state(q, &pr);
            let c = s.coefficients;
            let ratio = Complex64::new(q.k - q.p, -g) / Complex64::new(q.k - q.p, g);
            prop_assert!((c.b3 - ratio * c.a3).norm() < 1e-15);
            prop_assert!(s.boundary_check(xl, xr) < 1e-12);
            prop_assert!((s.g(x1, x2) - s.g(x2, x1)).norm() < 1e-16);
            prop_assert!((s.out_state(x1, x2) - s.eigenvalue() * s.in_state(x1, x2)).norm() < 1e-14);
            prop_assert!((s.read_off_out(x1, x2) - s.out_state(x1, x2)).norm() < 1e-13);
            prop_assert!((s.read_off_in(x1, x2) - s.in_state(x1, x2)).norm() < 1e-13);
        }

        #[test]
        fn bound_invariants(pr in arb_params(), de in -6f64..6.0, xl in -6f64..-0.01, xr in 0.01f64..6.0,
                            x1 in -6f64..6.0, x2 in -6f64..6.0) {
            let b = build_bound_state(2.0 * pr.omega() + de * pr.gamma(), &pr).unwrap();
            prop_assert!((b.eigenvalue.norm() - 1.0).abs() < 1e-14);
            prop_assert!(boundary_residuals(&b, xl, xr).max_norm() < 1e-13);
            prop_assert!((b.out_state(x1, x2) - b.eigenvalue * b.in_state(x1, x2)).norm() < 1e-15);
            prop_assert!((b.read_off_out(x1, x2) - b.out_state(x1, x2)).norm() < 1e-13);
            prop_assert!((b.read_off_in(x1, x2) - b.in_state(x1, x2)).norm() < 1e-13);
        }
    }

    impl BetheState {
        fn boundary_check(&self, xl: f64, xr: f64) -> f64 {
            let exact = boundary_residuals(self, xl, xr).max_norm();
            let fd = boundary_residuals_fd(self, xl, xr, 1e-3).max_norm();
            assert!(fd < 1e-8, "finite-difference residual {fd}");
            exact
        }
    }
}
