use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::exact::CompensatedSum;

/// `P(j/L) = |Σ_n w_n e^{-2πi n j / L}|² / L` for `j = 0..L`.
pub fn periodogram(weights: &[f64]) -> Vec<f64> {
    let n = weights.len();
    if n == 0 {
        return Vec::new();
    }
    let mut buf: Vec<Complex64> = weights.iter().map(|&w| Complex64::new(w, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter().map(|c| c.norm_sqr() / n as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodogramBin {
    /// Frequency of the first ordinate in the bin.
    pub k: f64,
    /// Mean periodogram over the bin: an estimate of the ac density there.
    pub value: f64,
}

/// Averages the periodogram over `bins` consecutive blocks of Fourier
/// frequencies covering `[0, 1)`. Bin `j` starts at the ordinate
/// `floor(j L / bins)` and is labelled by its frequency.
pub fn binned_periodogram(weights: &[f64], bins: usize) -> Result<Vec<PeriodogramBin>> {
    let n = weights.len();
    if bins == 0 || bins > n {
        return param(format!("need 1 <= bins <= {n}, got {bins}"));
    }
    let p = periodogram(weights);
    Ok((0..bins)
        .map(|j| {
            let a = j * n / bins;
            let b = (j + 1) * n / bins;
            let s: CompensatedSum = p[a..b].iter().copied().collect();
            PeriodogramBin {
                k: a as f64 / n as f64,
                value: s.value() / (b - a) as f64,
            }
        })
        .collect())
}

/// `|Σ_x e^{-2πikx}|² / length` for a finite point set, at each `k`.
pub fn point_periodogram(points: &[f64], length: f64, ks: &[f64]) -> Result<Vec<f64>> {
    if length.is_nan() || length <= 0.0 {
        return param("periodogram length must be positive");
    }
    Ok(ks
        .iter()
        .map(|&k| {
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            for &x in points {
                let (s, c) = (-2.0 * PI * k * x).sin_cos();
                re.add(c);
                im.add(s);
            }
            (re.value().powi(2) + im.value().powi(2)) / length
        })
        .collect())
}
