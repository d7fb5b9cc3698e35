//! Spot values frozen from an independent 30-digit evaluation.

use num_complex::Complex64;
use twophoton::bethe::{
    background_b, bound_term, build_bethe_state, completeness_by_projection, resum_background, BasisKind, Eigenstate,
};
use twophoton::numerics::{pv_integrate_poles, smeared_overlap, QuadratureSpec, WavepacketSpec};
use twophoton::two_mode::{r2, rt, t2};
use twophoton::{ImpurityParams, MomentumPair};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(got: Complex64, want: Complex64, rel: f64) {
    let err = (got - want).norm() / want.norm();
    assert!(err <= rel, "got {got}, want {want}, rel err {err:.2e}");
}

fn params() -> ImpurityParams {
    ImpurityParams::new(0.2, 0.9).unwrap()
}

#[test]
fn background_value() {
    close(background_b(0.7, 0.3, -1.1, &params()), c(-0.56375527609811171862, -0.13719318079094224732), 1e-14);
}

#[test]
fn out_state_values() {
    let p = params();
    let (e, d, xc, x) = (0.9, -0.35, 1.3, -2.2);
    close(t2(e, d, xc, x, &p), c(0.028557263467036728103, -0.0053162113600082971994), 1e-13);
    close(r2(e, d, xc, x, &p), c(0.035954274518374157137, -0.046468894338989973923), 1e-13);
    close(rt(e, d, xc, x, &p), c(-0.14630703508479045474, 0.072008764300980483253), 1e-13);
}

#[test]
fn resummation_values() {
    let p = params();
    let spec = QuadratureSpec::tight();
    for (e, d1, x, want) in [
        (1.1, 0.4, 3.7, c(0.23231254504863176362, -0.30947778183465976282)),
        (-0.6, -1.3, -11.5, c(-0.0025957727156695634117, -0.00070660640318302838615)),
    ] {
        close(resum_background(e, d1, x, &p, &spec).unwrap(), want, 1e-8);
        close(bound_term(e, d1, x, &p), want, 1e-13);
    }
}

#[test]
fn completeness_values() {
    let p = ImpurityParams::default();
    let spec = QuadratureSpec::tight();
    close(completeness_by_projection(0.3, 1.1, &p, &spec).unwrap(), c(0.32061833821896723563, 0.0), 1e-10);
    close(completeness_by_projection(-2.0, 0.5, &p, &spec).unwrap(), c(0.074896443807950746244, 0.0), 1e-10);
}

#[test]
fn principal_value_partial_fractions() {
    // at Γ = 2 the partial fractions give −π/8
    let f = |d: f64| c(1.0 / ((d - 1.0) * (4.0 * d * d + 4.0)), 0.0);
    let v = pv_integrate_poles(f, &[1.0], f64::NEG_INFINITY, f64::INFINITY, &QuadratureSpec::tight()).unwrap();
    close(v, c(-std::f64::consts::PI / 8.0, 0.0), 1e-8);
}

#[test]
fn smeared_norms() {
    let p = ImpurityParams::default();
    let wp = WavepacketSpec::standard(MomentumPair::from_energy(0.0, -0.25).unwrap(), &p);
    let spec = QuadratureSpec::default();
    let ss = smeared_overlap(BasisKind::S, BasisKind::S, &wp, &wp, &p, &spec).unwrap();
    close(ss, c(0.99995869196037098973, 0.0), 1e-7);
    let aa = smeared_overlap(BasisKind::A, BasisKind::A, &wp, &wp, &p, &spec).unwrap();
    close(aa, c(0.99991462307229653058, 0.0), 1e-7);
}

#[test]
fn bethe_region_values() {
    let s = build_bethe_state(MomentumPair::new(0.7, -0.4).unwrap(), &params());
    close(s.g(-1.2, -0.3), c(0.08342908690175445291, -0.019094863150734278361), 1e-13);
    close(s.g(0.8, -1.2), c(0.20417991397793523551, -0.030715522368288974609), 1e-13);
    close(s.g(2.5, 0.5), c(-0.046248547618049442235, -0.012868001710681430564), 1e-13);
}
