use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Construction, DistributionFunction};
use crate::error::{param, Result};
use crate::exact::{to_f64, CompensatedSum};
use crate::substitution::gtm_eta;

/// Weighting of the truncated sine series.
///
/// The plain partial sum overshoots near the steep parts of `F` and is not
/// monotone at moderate `M`; Fejér weights `1 - m/(M+1)` give a
/// non-decreasing approximant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SeriesWeighting {
    Plain,
    #[default]
    Fejer,
}

/// `F(x) = x + sum_{m=1}^{M} w_m eta(m)/(m pi) sin(2 pi m x)` on `x_i = i/G`
/// with exact `eta` of the `(k, l)` generalised Morse sequence.
pub fn gtm_distribution_series(
    k: u64,
    l: u64,
    terms: u64,
    grid_size: usize,
    weighting: SeriesWeighting,
) -> Result<DistributionFunction> {
    if terms == 0 {
        return param("series needs at least one term");
    }
    if grid_size < 2 {
        return param("series needs grid_size >= 2");
    }
    let g = grid_size;
    let coeff: Vec<f64> = (1..=terms)
        .map(|m| {
            let eta = to_f64(&gtm_eta(k, l, m as i64)?);
            let w = match weighting {
                SeriesWeighting::Plain => 1.0,
                SeriesWeighting::Fejer => 1.0 - m as f64 / (terms + 1) as f64,
            };
            Ok(w * eta / (m as f64 * PI))
        })
        .collect::<Result<_>>()?;
    // sin(2 pi j / G) with exact zeros and exact antisymmetry j <-> G - j.
    let mut table = vec![0.0; g];
    for j in 1..=(g - 1) / 2 {
        let s = (2.0 * PI * j as f64 / g as f64).sin();
        table[j] = s;
        table[g - j] = -s;
    }
    let values: Vec<f64> = (0..=g)
        .map(|i| {
            let mut acc = CompensatedSum::default();
            acc.add(i as f64 / g as f64);
            let mut phase = 0usize;
            for c in &coeff {
                phase = (phase + i) % g;
                acc.add(c * table[phase]);
            }
            acc.value()
        })
        .collect();
    let grid = (0..=g).map(|i| i as f64 / g as f64).collect();
    let increments = values.windows(2).map(|w| w[1] - w[0]).collect();
    DistributionFunction::build(
        grid,
        values,
        increments,
        Construction::Series { k, l, terms, weighting },
    )
}
