//! Tabulated observables and their CSV/JSON serializations.
//!
//! Every table is a header plus rows of reals; complex values are split into
//! `_re`/`_im` columns. Rows are computed in parallel but collected in grid
//! order, so output is identical from run to run.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bethe::background_b;
use crate::error::{Error, Result};
use crate::model::{ImpurityParams, MomentumPair};
use crate::single_photon::two_mode_coeffs;
use crate::two_mode::{momentum_distribution, r2, rt, t2, Sector};

/// Uniform grid of `points` values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidParameter(format!("grid needs at least 2 points, got {points}")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidParameter(format!("grid needs finite min < max, got {min}:{max}")));
        }
        Ok(Self { min, max, points })
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.max } else { self.min + h * i as f64 })
            .collect()
    }
}

impl std::str::FromStr for Grid {
    type Err = Error;

    /// Parses `min:max:points`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("grid must look like min:max:points, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let min = parts[0].trim().parse().map_err(|_| bad())?;
        let max = parts[1].trim().parse().map_err(|_| bad())?;
        let points = parts[2].trim().parse().map_err(|_| bad())?;
        Grid::new(min, max, points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub params: ImpurityParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?}"))),
        }
    }
}

impl Table {
    fn new(columns: &[&str], rows: Vec<Vec<f64>>, params: &ImpurityParams) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            params: *params,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|v| format!("{v:.16e}")))?;
        }
        out.flush()
    }

    pub fn write_json<W: Write>(&self, w: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(w, self).map_err(std::io::Error::other)
    }

    pub fn write<W: Write>(&self, w: W, format: Format) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }
}

fn push_complex(row: &mut Vec<f64>, z: Complex64) {
    row.push(z.re);
    row.push(z.im);
}

/// k, |t̄|², |r̄|² and the amplitudes themselves.
pub fn spectrum_table(grid: &Grid, params: &ImpurityParams) -> Table {
    let rows = grid
        .values()
        .par_iter()
        .map(|&k| {
            let (t, r) = two_mode_coeffs(k, params);
            vec![k, t.norm_sqr(), r.norm_sqr(), t.re, t.im, r.re, r.im]
        })
        .collect();
    Table::new(&["k", "t_abs2", "r_abs2", "t_re", "t_im", "r_re", "r_im"], rows, params)
}

/// Out-state profiles against x̄ = Γx/2 at detuning δE and relative momentum Δ.
///
/// t₂ and r₂ are sampled along the separation at x_c = 0; rt along the
/// centre of mass (x̄_c = Γx_c/2) at x = 0. Their moduli do not depend on the
/// other coordinate.
pub fn wavefunction_table(de: f64, delta: f64, grid: &Grid, params: &ImpurityParams) -> Table {
    let e = 2.0 * params.omega() + de;
    let scale = 2.0 / params.gamma();
    let rows = grid
        .values()
        .par_iter()
        .map(|&xb| {
            let (a, b, c) = (t2(e, delta, 0.0, xb * scale, params), r2(e, delta, 0.0, xb * scale, params), rt(e, delta, xb * scale, 0.0, params));
            let mut row = vec![xb, a.norm_sqr(), b.norm_sqr(), c.norm_sqr()];
            for z in [a, b, c] {
                push_complex(&mut row, z);
            }
            row
        })
        .collect();
    Table::new(
        &["xbar", "t2_abs2", "r2_abs2", "rt_abs2", "t2_re", "t2_im", "r2_re", "r2_im", "rt_re", "rt_im"],
        rows,
        params,
    )
}

/// B̄ = (Γ/2)B at Ē = (E−2Ω)/(Γ/2), with Δ̄ = Δ/(Γ/2) on both axes.
pub fn scaled_background(ebar: f64, d1bar: f64, d2bar: f64, params: &ImpurityParams) -> Complex64 {
    let h = params.gamma() / 2.0;
    h * background_b(2.0 * params.omega() + ebar * h, d1bar * h, d2bar * h, params)
}

/// |B̄|² on grid × grid, indexed [Δ̄₁][Δ̄₂].
pub fn fluorescence_surface(ebar: f64, grid: &Grid, params: &ImpurityParams) -> Vec<Vec<f64>> {
    let v = grid.values();
    v.par_iter()
        .map(|&d1| v.iter().map(|&d2| scaled_background(ebar, d1, d2, params).norm_sqr()).collect())
        .collect()
}

pub fn fluorescence_table(ebar: f64, grid: &Grid, params: &ImpurityParams) -> Table {
    let v = grid.values();
    let rows = v
        .par_iter()
        .flat_map_iter(|&d1| {
            v.iter().map(move |&d2| {
                let b = scaled_background(ebar, d1, d2, params);
                vec![d1, d2, b.norm_sqr(), b.re, b.im]
            })
        })
        .collect();
    Table::new(&["d1bar", "d2bar", "bbar_abs2", "bbar_re", "bbar_im"], rows, params)
}

/// Strict local maxima over the 8-neighbourhood, interior and boundary
/// points alike (missing neighbours are ignored).
pub fn local_maxima(surface: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let n = surface.len();
    let mut out = Vec::new();
    for i in 0..n {
        let m = surface[i].len();
        for j in 0..m {
            let v = surface[i][j];
            let mut is_max = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || b < 0 || a as usize >= n || b as usize >= surface[a as usize].len() {
                        continue;
                    }
                    if surface[a as usize][b as usize] >= v {
                        is_max = false;
                    }
                }
            }
            if is_max {
                out.push((i, j));
            }
        }
    }
    out
}

/// Outgoing pair in a sector carrying energy `e` and relative label `d2`.
pub fn sector_out_pair(sector: Sector, e: f64, d2: f64) -> MomentumPair {
    match sector {
        Sector::RR => MomentumPair { k: e / 2.0 + d2, p: e / 2.0 - d2 },
        Sector::LL => MomentumPair { k: -(e / 2.0 + d2), p: -(e / 2.0 - d2) },
        Sector::RL => MomentumPair { k: e / 2.0 + d2, p: d2 - e / 2.0 },
    }
}

/// Momentum-space S-matrix coefficients in all three sectors against the
/// outgoing relative label Δ₂, for an incident pair (2Ω+δE, Δ₁).
pub fn momentum_table(de: f64, d1: f64, grid: &Grid, params: &ImpurityParams) -> Table {
    let e = 2.0 * params.omega() + de;
    let input = MomentumPair { k: e / 2.0 + d1, p: e / 2.0 - d1 };
    let sectors = [Sector::RR, Sector::LL, Sector::RL];
    let rows = grid
        .values()
        .par_iter()
        .map(|&d2| {
            let mut row = vec![d2];
            for s in sectors {
                let el = momentum_distribution(s, input, sector_out_pair(s, e, d2), params);
                for z in [el.direct, el.exchange, el.correlated] {
                    push_complex(&mut row, z);
                }
            }
            row
        })
        .collect();
    let mut cols = vec!["delta2".to_string()];
    for s in sectors {
        for part in ["direct", "exchange", "correlated"] {
            for c in ["re", "im"] {
                cols.push(format!("{}_{part}_{c}", s.to_string().to_lowercase()));
            }
        }
    }
    Table { columns: cols, rows, params: *params }
}
