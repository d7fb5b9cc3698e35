//! Cauchy principal values of integrands with simple poles on the real line.

use num_complex::Complex64;

use super::quad::{integrate, QuadratureSpec};
use crate::error::{Error, Result};

const LEVELS: usize = 24;

/// 𝒫∫_a^b f for a single simple pole of `f` at `pole` ∈ (a, b).
///
/// A window of half-width ε₀ around the pole is excised; the excised
/// strip is restored ring by ring (ε₀/2ʲ) with the two mirror pieces folded
/// together, and the sequence I(ε) is Richardson-extrapolated to ε → 0.
/// The excision error is odd in ε, so the table eliminates ε, ε³, ε⁵, ...
pub fn pv_integrate<F>(f: F, pole: f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !pole.is_finite() {
        return Err(Error::NonFinite("pole"));
    }
    if !(a < pole && pole < b) {
        return Err(Error::InvalidParameter(format!("pole {pole} not inside ({a}, {b})")));
    }
    let mut eps0 = f64::INFINITY;
    if a.is_finite() {
        eps0 = eps0.min(0.5 * (pole - a));
    }
    if b.is_finite() {
        eps0 = eps0.min(0.5 * (b - pole));
    }
    if !eps0.is_finite() {
        eps0 = 1.0f64.max(0.5 * pole.abs());
    }
    let inner = QuadratureSpec {
        abs_tol: spec.abs_tol * 1e-2,
        rel_tol: spec.rel_tol * 1e-2,
        ..*spec
    };
    let outer = integrate(&f, a, pole - eps0, &inner)? + integrate(&f, pole + eps0, b, &inner)?;
    let fold = |t: f64| f(pole + t) + f(pole - t);

    // table[j][m]: m-th Richardson column at ring level j
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(LEVELS);
    let mut ring = Complex64::new(0.0, 0.0);
    let mut eps = eps0;
    let mut last_best: Option<Complex64> = None;
    let mut prev_gap = f64::INFINITY;
    let mut growth = 0;
    for j in 0..LEVELS {
        if j > 0 {
            let next = 0.5 * eps;
            ring += integrate(&fold, next, eps, &inner)?;
            eps = next;
        }
        let mut row = vec![outer + ring];
        for m in 1..=j.min(6) {
            let factor = 2f64.powi(2 * m as i32 - 1);
            let v = (factor * row[m - 1] - table[j - 1][m - 1]) / (factor - 1.0);
            row.push(v);
        }
        let best = *row.last().unwrap();
        table.push(row);
        if let Some(lb) = last_best {
            let gap = (best - lb).norm();
            if gap <= spec.target(best) && j >= 3 {
                return Ok(best);
            }
            if gap > prev_gap * 1.5 {
                growth += 1;
            } else {
                growth = 0;
            }
            if growth >= 3 {
                return Err(Error::PvDivergent { pole });
            }
            prev_gap = gap;
        }
        last_best = Some(best);
    }
    Err(Error::PvDivergent { pole })
}

/// 𝒫∫_a^b f where `f` has simple poles at each entry of `poles`.
///
/// The range is cut halfway between neighbouring poles and each piece
/// handled by [`pv_integrate`].
pub fn pv_integrate_poles<F>(f: F, poles: &[f64], a: f64, b: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut ps: Vec<f64> = poles.to_vec();
    ps.sort_by(f64::total_cmp);
    ps.dedup();
    if ps.is_empty() {
        return integrate(f, a, b, spec);
    }
    if ps.iter().any(|&p| !(a < p && p < b)) {
        return Err(Error::InvalidParameter("pole outside integration range".into()));
    }
    let mut cuts = vec![a];
    for w in ps.windows(2) {
        cuts.push(0.5 * (w[0] + w[1]));
    }
    cuts.push(b);
    let mut total = Complex64::new(0.0, 0.0);
    for (i, &p) in ps.iter().enumerate() {
        total += pv_integrate(&f, p, cuts[i], cuts[i + 1], spec)?;
    }
    Ok(total)
}
