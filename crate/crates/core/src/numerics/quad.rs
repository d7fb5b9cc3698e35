//! Adaptive Gauss–Kronrod (7/15) integration of complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    /// Envelope ratio below which a tail may be dropped.
    pub tail_cutoff: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_depth: 40,
            tail_cutoff: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32, tail_cutoff: f64) -> Result<Self> {
        let s = Self {
            abs_tol,
            rel_tol,
            max_depth,
            tail_cutoff,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn tight() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.tail_cutoff > 0.0
            && self.max_depth >= 1
            && self.abs_tol.is_finite()
            && self.rel_tol.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("bad quadrature spec {self:?}")))
        }
    }

    pub(crate) fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

// Kronrod abscissae on [0,1]; odd indices are the Gauss points.
const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod estimate plus ∫|f| on the piece, the scale of its rounding error.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Estimate, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.norm() * WK[7];
    for j in 0..7 {
        let dx = h * XK[j];
        let (fl, fr) = (f(c - dx), f(c + dx));
        let s = fl + fr;
        k += s * WK[j];
        abs += (fl.norm() + fr.norm()) * WK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    let est = Estimate {
        value: k * h,
        error: ((k - g) * h).norm(),
    };
    (est, abs * h.abs())
}

struct Piece {
    a: f64,
    b: f64,
    depth: u32,
    est: Estimate,
    abs: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.est.error == o.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.est.error.total_cmp(&o.est.error)
    }
}

const MAX_PIECES: usize = 200_000;
const ROUNDOFF: f64 = 50.0 * f64::EPSILON;

fn adapt_finite<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let (first, abs) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    let mut total = first;
    heap.push(Piece { a, b, depth: 0, est: first, abs });
    loop {
        if total.error <= spec.target(total.value) {
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        if worst.est.error <= ROUNDOFF * worst.abs {
            // the largest remaining error is rounding noise; splitting cannot help
            heap.push(worst);
            break;
        }
        let m = 0.5 * (worst.a + worst.b);
        if worst.depth >= spec.max_depth || heap.len() >= MAX_PIECES || m <= worst.a || m >= worst.b {
            return Err(Error::NoConvergence {
                a,
                b,
                estimate: total.value.norm(),
                error: total.error,
            });
        }
        let (l, la) = gk15(f, worst.a, m);
        let (r, ra) = gk15(f, m, worst.b);
        total.value += l.value + r.value - worst.est.value;
        total.error += l.error + r.error - worst.est.error;
        heap.push(Piece { a: worst.a, b: m, depth: worst.depth + 1, est: l, abs: la });
        heap.push(Piece { a: m, b: worst.b, depth: worst.depth + 1, est: r, abs: ra });
    }
    // resum to shed drift from incremental updates
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for p in heap.iter() {
        value += p.est.value;
        error += p.est.error;
    }
    Ok(Estimate { value, error })
}

/// ∫_a^b f with error estimate; infinite endpoints are mapped onto finite ones.
pub fn integrate_estimate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if a.is_nan() || b.is_nan() {
        return Err(Error::NonFinite("integration bound"));
    }
    if a == b {
        return Ok(Estimate { value: Complex64::new(0.0, 0.0), error: 0.0 });
    }
    if a > b {
        return Err(Error::InvalidParameter(format!("integration bounds out of order: {a} > {b}")));
    }
    let zero = Complex64::new(0.0, 0.0);
    let guard = |x: f64, v: Complex64| if x.is_finite() && v.is_finite() { v } else { zero };
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adapt_finite(&f, a, b, spec),
        (true, false) => {
            // x = a + t/(1−t)
            let g = |t: f64| {
                let s = 1.0 - t;
                let x = a + t / s;
                guard(x, f(x) / (s * s))
            };
            adapt_finite(&g, 0.0, 1.0, spec)
        }
        (false, true) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                let x = b - t / s;
                guard(x, f(x) / (s * s))
            };
            adapt_finite(&g, 0.0, 1.0, spec)
        }
        (false, false) => {
            // x = t/(1−t²)
            let g = |t: f64| {
                let s = 1.0 - t * t;
                let x = t / s;
                guard(x, f(x) * (1.0 + t * t) / (s * s))
            };
            adapt_finite(&g, -1.0, 1.0, spec)
        }
    }
}

pub fn integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    integrate_estimate(f, a, b, spec).map(|e| e.value)
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate(|x| Complex64::new(f(x), 0.0), a, b, spec).map(|v| v.re)
}

/// ∫_a^b over consecutive breakpoints, each piece adaptive.
pub fn integrate_pieces<F>(f: F, breaks: &[f64], spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut total = Complex64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        total += integrate(&f, w[0], w[1], spec)?;
    }
    Ok(total)
}

/// Wynn's epsilon extrapolation of a partial-sum sequence.
fn wynn(sums: &[Complex64]) -> Complex64 {
    let n = sums.len();
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Complex64> = sums.to_vec();
    let mut best = sums[n - 1];
    let mut order = 0;
    while cur.len() > 1 {
        let next: Vec<Complex64> = (0..cur.len() - 1)
            .map(|j| {
                let d = cur[j + 1] - cur[j];
                if d.norm() == 0.0 {
                    Complex64::new(f64::INFINITY, 0.0)
                } else {
                    prev[j + 1] + 1.0 / d
                }
            })
            .collect();
        order += 1;
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        if order % 2 == 0 {
            best = next[next.len() - 1];
        }
        prev = cur;
        cur = next;
    }
    best
}

/// ∫_a^∞ f for an integrand oscillating at angular frequency `omega`,
/// summed over half-period panels with epsilon extrapolation of the partial sums.
pub fn integrate_oscillatory<F>(f: F, a: f64, omega: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !a.is_finite() || !omega.is_finite() {
        return Err(Error::NonFinite("oscillatory integral input"));
    }
    if omega == 0.0 {
        return integrate(f, a, f64::INFINITY, spec);
    }
    let h = std::f64::consts::PI / omega.abs();
    let inner = QuadratureSpec {
        abs_tol: spec.abs_tol * 1e-2,
        ..*spec
    };
    let mut sums: Vec<Complex64> = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut last: Option<Complex64> = None;
    let mut agree = 0;
    for n in 0..4000 {
        let lo = a + n as f64 * h;
        acc += integrate(&f, lo, lo + h, &inner)?;
        sums.push(acc);
        if sums.len() >= 6 {
            let window = &sums[sums.len().saturating_sub(40)..];
            let est = wynn(window);
            if let Some(l) = last {
                if (est - l).norm() <= spec.target(est) {
                    agree += 1;
                    if agree >= 2 {
                        return Ok(est);
                    }
                } else {
                    agree = 0;
                }
            }
            last = Some(est);
        }
    }
    Err(Error::NoConvergence {
        a,
        b: f64::INFINITY,
        estimate: acc.norm(),
        error: f64::NAN,
    })
}
