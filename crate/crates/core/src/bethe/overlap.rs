//! Overlaps between basis states as coefficients of distributions, and the
//! completeness residual the extended states leave behind.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::basis::{BasisKind, BasisState};
use crate::error::{Error, Result};
use crate::model::{ImpurityParams, MomentumPair};
use crate::numerics::{pv_integrate_poles, QuadratureSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// ⟨a|b⟩ = δ(E_a−E_b)·[delta_e + direct·δ(Δ_a−Δ_b) + exchange·δ(Δ_a+Δ_b) + pv·𝒫 1/(Δ_b²−Δ_a²)].
///
/// `direct` and `exchange` are evaluated on their supports (Δ_b = ±Δ_a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapDecomposition {
    pub delta_e: Complex64,
    pub direct: Complex64,
    pub exchange: Complex64,
    pub pv: Complex64,
}

impl OverlapDecomposition {
    fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { delta_e: z, direct: z, exchange: z, pv: z }
    }

    pub fn conj_swap(&self) -> Self {
        // swapping a ↔ b flips the sign of the pv denominator
        Self {
            delta_e: self.delta_e.conj(),
            direct: self.direct.conj(),
            exchange: self.exchange.conj(),
            pv: -self.pv.conj(),
        }
    }
}

/// Components of an extended state on (S, A) at relative momentum Δ.
fn sa_components(kind: BasisKind, delta: f64, gamma: f64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match kind {
        BasisKind::S => (one, zero),
        BasisKind::A => (zero, one),
        BasisKind::W => {
            if delta == 0.0 {
                (zero, zero)
            } else {
                let n = (4.0 * delta * delta + gamma * gamma).sqrt();
                (Complex64::new(2.0 * delta / n, 0.0), I * gamma / n)
            }
        }
        BasisKind::BoundB => unreachable!("bound state has no S/A components"),
    }
}

/// ⟨B_E | X⟩ for an extended X at relative momentum Δ.
fn bound_projection(kind: BasisKind, delta: f64, gamma: f64) -> Complex64 {
    let (cs, ca) = sa_components(kind, delta, gamma);
    let d = 4.0 * delta * delta + gamma * gamma;
    let pref = (gamma / (2.0 * PI)).sqrt();
    let onto_s = pref * 4.0 * gamma / d;
    let onto_a = I * pref * 8.0 * delta / d;
    cs * onto_s + ca * onto_a
}

pub fn overlap(a: &BasisState, b: &BasisState) -> Result<OverlapDecomposition> {
    if a.params != b.params {
        return Err(Error::Unsupported("overlap of states built with different parameters".into()));
    }
    let g = a.params.gamma();
    let mut out = OverlapDecomposition::zero();
    match (a.kind, b.kind) {
        (BasisKind::BoundB, BasisKind::BoundB) => {
            out.delta_e = Complex64::new(1.0, 0.0);
        }
        (BasisKind::BoundB, kb) => {
            out.delta_e = bound_projection(kb, b.delta().unwrap(), g);
        }
        (ka, BasisKind::BoundB) => {
            out.delta_e = bound_projection(ka, a.delta().unwrap(), g).conj();
        }
        (ka, kb) => {
            let da = a.delta().unwrap();
            let db = b.delta().unwrap();
            let (sa, aa) = sa_components(ka, da, g);
            // direct and exchange supports
            let (sd, ad) = sa_components(kb, da, g);
            let (sx, ax) = sa_components(kb, -da, g);
            out.direct = sa.conj() * sd + aa.conj() * ad;
            out.exchange = sa.conj() * sx - aa.conj() * ax;
            let (sb, ab) = sa_components(kb, db, g);
            // ⟨S_a|A_b⟩ → (i/π)2Δ_b, ⟨A_a|S_b⟩ → (i/π)2Δ_a
            out.pv = sa.conj() * ab * (I * 2.0 * db / PI) + aa.conj() * sb * (I * 2.0 * da / PI);
        }
    }
    Ok(out)
}

/// δ(E₁−E₂) coefficient of ⟨S₂|(1 − Σ_W |W⟩⟨W|)|S₁⟩, i.e. the weight the
/// extended states miss, (8Γ³/π)/((4Δ₁²+Γ²)(4Δ₂²+Γ²)).
pub fn completeness_residual(in_pair: MomentumPair, out_pair: MomentumPair, params: &ImpurityParams) -> Complex64 {
    let g = params.gamma();
    let (d1, d2) = (in_pair.delta(), out_pair.delta());
    Complex64::new(8.0 * g.powi(3) / PI / ((4.0 * d1 * d1 + g * g) * (4.0 * d2 * d2 + g * g)), 0.0)
}

/// The same residual assembled from the projection onto the W states.
///
/// The W sum runs over Δ ≤ 0 only; by parity it is written as ½∫ over the
/// whole line. After the products of principal values are reduced, three
/// pieces survive besides ⟨S|S⟩: two single principal values from the
/// cross terms (already integrated against their delta functions) and one
/// Δ-integral over products of principal values, done here by quadrature.
/// Needs |Δ₁| ≠ |Δ₂|; the combination is regular there but the pieces are not.
pub fn completeness_by_projection(d1: f64, d2: f64, params: &ImpurityParams, spec: &QuadratureSpec) -> Result<Complex64> {
    if (d1.abs() - d2.abs()).abs() <= 1e-9 * (1.0 + d1.abs() + d2.abs()) {
        return Err(Error::InvalidParameter("projection route needs |Δ1| != |Δ2|".into()));
    }
    let g = params.gamma();
    let weight = |d: f64| 4.0 * d * d / (4.0 * d * d + g * g);
    let split = 1.0 / (d1 * d1 - d2 * d2);
    let cross = -(g / PI) * weight(d1) * split - (g / PI) * weight(d2) * (-split);
    let pv_line = |di: f64| -> Result<Complex64> {
        let f = move |d: f64| Complex64::new(weight(d) / (d * d - di * di), 0.0);
        let poles: Vec<f64> = if di == 0.0 { vec![] } else { vec![-di.abs(), di.abs()] };
        pv_integrate_poles(f, &poles, f64::NEG_INFINITY, f64::INFINITY, spec)
    };
    let double = 0.5 * (g / PI).powi(2) * split * (pv_line(d1)? - pv_line(d2)?);
    Ok(-(cross + double))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn st(kind: BasisKind, k: f64, p: f64, params: ImpurityParams) -> BasisState {
        BasisState::new(kind, MomentumPair::new(k, p).unwrap(), params)
    }

    #[test]
    fn basic_structures() {
        let p = ImpurityParams::default();
        let s = st(BasisKind::S, 0.2, 0.9, p);
        let a = st(BasisKind::A, 0.2, 0.9, p);
        let o = overlap(&s, &s).unwrap();
        assert_eq!((o.direct.re, o.exchange.re), (1.0, 1.0));
        let o = overlap(&a, &a).unwrap();
        assert_eq!((o.direct.re, o.exchange.re), (1.0, -1.0));
        let o = overlap(&s, &a).unwrap();
        assert_eq!(o.direct, Complex64::new(0.0, 0.0));
        assert_abs_diff_eq!((o.pv - I * 2.0 * (-0.35) / PI).norm(), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn bound_onto_symmetric() {
        let p = ImpurityParams::new(0.1, 1.7).unwrap();
        let b = BasisState::bound(1.1, p).unwrap();
        let s = st(BasisKind::S, 0.9, 0.2, p);
        let d = s.delta().unwrap();
        let g = p.gamma();
        let expect = (g / (2.0 * PI)).sqrt() * 4.0 * g / (4.0 * d * d + g * g);
        let o = overlap(&b, &s).unwrap();
        assert_abs_diff_eq!((o.delta_e - expect).norm(), 0.0, epsilon = 1e-15);
        let w = st(BasisKind::W, 0.9, 0.2, p);
        assert!(overlap(&b, &w).unwrap().delta_e.norm() < 1e-15);
        assert_eq!(overlap(&b, &b).unwrap().delta_e, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn w_on_s_matches_closed_form() {
        let p = ImpurityParams::new(0.0, 1.3).unwrap();
        let w = st(BasisKind::W, 0.1, 0.8, p);
        let s = st(BasisKind::S, 0.6, 0.3, p);
        let (dw, g) = (w.delta().unwrap(), p.gamma());
        let n = (4.0 * dw * dw + g * g).sqrt();
        let o = overlap(&w, &s).unwrap();
        assert_abs_diff_eq!((o.direct - 2.0 * dw / n).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((o.exchange - 2.0 * dw / n).norm(), 0.0, epsilon = 1e-15);
        // −(Γ/π)𝒫 1/(Δ_W²−Δ_S²) written over Δ_S²−Δ_W²
        assert_abs_diff_eq!((o.pv - 2.0 * dw / n * g / PI).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn w_norm_structure() {
        let p = ImpurityParams::default();
        let w1 = st(BasisKind::W, -0.4, 0.5, p);
        let w2 = st(BasisKind::W, 0.3, 1.1, p);
        let o = overlap(&w1, &w2).unwrap();
        assert_abs_diff_eq!((o.direct - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((o.exchange + 1.0).norm(), 0.0, epsilon = 1e-15);
        assert!(o.pv.norm() < 1e-16, "principal parts cancel between W states");
    }

    #[test]
    fn mismatched_params_rejected() {
        let s1 = st(BasisKind::S, 0.2, 0.9, ImpurityParams::default());
        let s2 = st(BasisKind::S, 0.2, 0.9, ImpurityParams::new(0.0, 2.0).unwrap());
        assert!(overlap(&s1, &s2).is_err());
    }

    #[test]
    fn residual_examples() {
        for g in [0.5, 1.0, 3.0] {
            let p = ImpurityParams::new(0.0, g).unwrap();
            let q = MomentumPair::from_energy(0.4, 0.0).unwrap();
            assert_abs_diff_eq!(completeness_residual(q, q, &p).re, 8.0 / (PI * g), epsilon = 1e-14);
        }
    }

    #[test]
    fn projection_route_one_point() {
        let p = ImpurityParams::new(0.0, 1.0).unwrap();
        let v = completeness_by_projection(0.3, -0.8, &p, &QuadratureSpec::tight()).unwrap();
        let q1 = MomentumPair::from_energy(0.0, 0.3).unwrap();
        let q2 = MomentumPair::from_energy(0.0, -0.8).unwrap();
        let c = completeness_residual(q1, q2, &p);
        assert!((v - c).norm() < 1e-8 * c.norm(), "{v} vs {c}");
        assert!(completeness_by_projection(0.3, -0.3, &p, &QuadratureSpec::tight()).is_err());
    }

    proptest! {
        #[test]
        fn conj_symmetry(ka in -2f64..2.0, pa in -2f64..2.0, kb in -2f64..2.0, pb in -2f64..2.0,
                         ia in 0usize..4, ib in 0usize..4) {
            let kinds = [BasisKind::S, BasisKind::A, BasisKind::W, BasisKind::BoundB];
            let p = ImpurityParams::new(0.2, 0.8).unwrap();
            let a = st(kinds[ia], ka, pa, p);
            let b = st(kinds[ib], kb, pb, p);
            let ab = overlap(&a, &b).unwrap();
            let ba = overlap(&b, &a).unwrap().conj_swap();
            prop_assert!((ab.delta_e - ba.delta_e).norm() < 1e-14);
            prop_assert!((ab.pv - ba.pv).norm() < 1e-14);
            // direct/exchange are compared on shared supports only
            if a.kind != BasisKind::BoundB && b.kind != BasisKind::BoundB && kb == ka && pb == pa {
                prop_assert!((ab.direct - ba.direct).norm() < 1e-14);
            }
        }

        #[test]
        fn residual_is_bound_weight(d1 in -3f64..3.0, d2 in -3f64..3.0, g in 0.1f64..3.0) {
            let p = ImpurityParams::new(0.0, g).unwrap();
            let q1 = MomentumPair::from_energy(0.5, d1).unwrap();
            let q2 = MomentumPair::from_energy(0.5, d2).unwrap();
            let b = BasisState::bound(0.5, p).unwrap();
            let c1 = overlap(&b, &BasisState::new(BasisKind::S, q1, p)).unwrap().delta_e;
            let c2 = overlap(&b, &BasisState::new(BasisKind::S, q2, p)).unwrap().delta_e;
            let r = completeness_residual(q1, q2, &p);
            prop_assert!((r - c2.conj() * c1).norm() <= 1e-13 * r.norm());
            prop_assert!((r - completeness_residual(q2, q1, &p)).norm() <= 1e-15 * r.norm());
            prop_assert!(r.re > 0.0 && r.im == 0.0);
        }
    }
}
