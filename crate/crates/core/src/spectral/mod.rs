//! Distribution functions of diffraction measures on the unit torus.

mod series;
mod volterra;
mod wiener;

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::exact::CompensatedSum;

pub use series::{gtm_distribution_series, SeriesWeighting};
pub use volterra::volterra_tm_distribution;
pub use wiener::{wiener_sigma, WienerStatistic};

/// Tolerance below which a negative increment is treated as rounding.
pub const MONOTONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum Construction {
    Volterra { iterations: u32 },
    Series { k: u64, l: u64, terms: u64, weighting: SeriesWeighting },
    Samples,
}

/// Samples `F(x_i) = mu([0, x_i])` of a measure on `[0, 1)`.
///
/// Increments `F(x_{i+1}) - F(x_i)` are stored alongside the values: for
/// highly concentrated measures they stay resolvable long after the values
/// themselves have rounded to a constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFunction {
    grid: Vec<f64>,
    values: Vec<f64>,
    increments: Vec<f64>,
    construction: Construction,
}

impl DistributionFunction {
    /// Validates a sorted grid in `[0, 1]` with non-decreasing values.
    pub fn from_samples(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let increments = values.windows(2).map(|w| w[1] - w[0]).collect();
        Self::build(grid, values, increments, Construction::Samples)
    }

    pub(crate) fn build(
        grid: Vec<f64>,
        values: Vec<f64>,
        increments: Vec<f64>,
        construction: Construction,
    ) -> Result<Self> {
        if grid.len() < 2 || grid.len() != values.len() || increments.len() + 1 != grid.len() {
            return param("distribution function needs at least two samples");
        }
        if grid.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::Numerical("non-finite distribution function sample".into()));
        }
        if grid[0] < 0.0 || grid[grid.len() - 1] > 1.0 || grid.windows(2).any(|w| w[1] <= w[0]) {
            return param("grid must be strictly increasing inside [0, 1]");
        }
        if let Some((i, d)) = increments.iter().enumerate().find(|(_, d)| **d < -MONOTONE_TOL) {
            return Err(Error::Numerical(format!(
                "distribution function decreases by {} after x = {}; refine the grid",
                -d, grid[i]
            )));
        }
        Ok(Self { grid, values, increments, construction })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.increments.iter().all(|&d| d > 0.0)
    }

    /// Piecewise-linear interpolation, `None` outside the grid.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let g = &self.grid;
        if !(g[0]..=g[g.len() - 1]).contains(&x) {
            return None;
        }
        let i = g.partition_point(|&t| t <= x).saturating_sub(1).min(g.len() - 2);
        let t = (x - g[i]) / (g[i + 1] - g[i]);
        Some(self.values[i] + t * self.increments[i])
    }

    /// CSV with header `x,F`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["x", "F"])?;
        for (x, f) in self.grid.iter().zip(&self.values) {
            w.write_record([crate::comb::format_f64(*x), crate::comb::format_f64(*f)])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `eta(m) = int e^{2 pi i m y} dmu(y)` as a Riemann-Stieltjes sum with
/// midpoint tags; `F(x_0)` counts as an atom at the left end.
pub fn herglotz_coefficient(f: &DistributionFunction, m: i64) -> Complex64 {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let atom = Complex64::from_polar(f.values[0], 2.0 * std::f64::consts::PI * m as f64 * f.grid[0]);
    re.add(atom.re);
    im.add(atom.im);
    for (i, d) in f.increments.iter().enumerate() {
        let y = 0.5 * (f.grid[i] + f.grid[i + 1]);
        let phase = 2.0 * std::f64::consts::PI * (m as f64 * y).rem_euclid(1.0);
        re.add(d * phase.cos());
        im.add(d * phase.sin());
    }
    Complex64::new(re.value(), im.value())
}

/// Cantor's function by the ternary-digit algorithm.
pub fn cantor_distribution(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return param(format!("Cantor function is defined on [0, 1], got {x}"));
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let (mut t, mut scale, mut acc) = (x, 0.5, 0.0);
    for _ in 0..64 {
        t *= 3.0;
        let d = t.floor();
        t -= d;
        if (1.0..2.0).contains(&d) {
            return Ok(acc + scale);
        }
        if d >= 2.0 {
            acc += scale;
        }
        scale *= 0.5;
        if t == 0.0 {
            break;
        }
    }
    Ok(acc)
}
