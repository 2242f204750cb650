//! Weighted Dirac combs, autocorrelation coefficients, lattices and the
//! Poisson-summation route to crystallographic diffraction.

mod io;
mod lattice;
mod output;

pub use lattice::{dual_lattice, lattice_comb_diffraction, LatticeSpec};
pub use output::{format_f64, BraggPeak, DensitySample, DiffractionOutput, Normalization, EXTINCTION_RELATIVE_TOL};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Finite list of support points in dimension 1 or 2 carrying complex weights.
///
/// For `dimension == 1` the second coordinate of every point is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedComb {
    dimension: usize,
    points: Vec<[f64; 2]>,
    weights: Vec<Complex64>,
}

impl WeightedComb {
    pub fn new(dimension: usize, points: Vec<Vec<f64>>, weights: Vec<Complex64>) -> Result<Self> {
        if !(1..=2).contains(&dimension) {
            return param(format!("comb dimension must be 1 or 2, got {dimension}"));
        }
        if points.len() != weights.len() {
            return param(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            ));
        }
        let mut pts = Vec::with_capacity(points.len());
        for p in &points {
            if p.len() != dimension {
                return param(format!("point {p:?} does not have dimension {dimension}"));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return param(format!("point {p:?} is not finite"));
            }
            let mut q = [0.0; 2];
            q[..dimension].copy_from_slice(p);
            pts.push(q);
        }
        if weights.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return param("comb weights must be finite");
        }
        let mut sorted: Vec<[f64; 2]> = pts.clone();
        sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!("duplicate comb point {:?}", w[0])));
        }
        Ok(Self {
            dimension,
            points: pts,
            weights,
        })
    }

    /// One-dimensional comb from `(position, real weight)` pairs.
    pub fn from_real_1d(entries: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            1,
            entries.iter().map(|&(x, _)| vec![x]).collect(),
            entries.iter().map(|&(_, w)| Complex64::new(w, 0.0)).collect(),
        )
    }

    /// Unit point mass at `x`.
    pub fn dirac(x: &[f64]) -> Result<Self> {
        Self::new(x.len(), vec![x.to_vec()], vec![Complex64::new(1.0, 0.0)])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i][..self.dimension]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.points.iter().map(move |p| &p[..self.dimension])
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Sum of the weight moduli; bounds `|fourier(k)|` for every `k`.
    pub fn total_variation(&self) -> f64 {
        self.weights.iter().map(|w| w.norm()).sum()
    }

    pub fn translated(&self, t: &[f64]) -> Result<Self> {
        if t.len() != self.dimension {
            return param("translation dimension mismatch");
        }
        let points = self
            .points()
            .map(|p| p.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        Self::new(self.dimension, points, self.weights.clone())
    }

    /// `sum_j w_j exp(-2 pi i k.x_j)`.
    pub fn fourier(&self, k: &[f64]) -> Complex64 {
        debug_assert_eq!(k.len(), self.dimension);
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, w) in self.points().zip(&self.weights) {
            let phase: f64 = p.iter().zip(k).map(|(x, q)| x * q).sum();
            acc += w * Complex64::from_polar(1.0, -2.0 * PI * phase);
        }
        acc
    }
}

/// Returns the Fourier transform `k -> mu_hat(k)` of a finite motif.
pub fn finite_fourier(motif: &WeightedComb) -> impl Fn(&[f64]) -> Complex64 + '_ {
    move |k| motif.fourier(k)
}

/// Autocorrelation coefficients indexed by integer lag vectors.
///
/// Construction enforces Hermitian symmetry and a real, non-negative
/// coefficient at the zero lag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutocorrelationSeries {
    dimension: usize,
    lags: Vec<[i64; 2]>,
    coefficients: Vec<Complex64>,
}

const HERMITIAN_TOL: f64 = 1e-12;

impl AutocorrelationSeries {
    pub fn new(dimension: usize, entries: Vec<(Vec<i64>, Complex64)>) -> Result<Self> {
        if !(1..=2).contains(&dimension) {
            return param(format!("series dimension must be 1 or 2, got {dimension}"));
        }
        let mut items: Vec<([i64; 2], Complex64)> = Vec::with_capacity(entries.len());
        for (lag, c) in entries {
            if lag.len() != dimension {
                return param(format!("lag {lag:?} does not have dimension {dimension}"));
            }
            let mut l = [0i64; 2];
            l[..dimension].copy_from_slice(&lag);
            items.push((l, c));
        }
        items.sort_by_key(|a| a.0);
        if items.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Validation("repeated lag in autocorrelation".into()));
        }
        let scale = items.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max).max(1.0);
        let lookup = |l: &[i64; 2]| items.binary_search_by(|e| e.0.cmp(l)).ok().map(|i| items[i].1);
        for (l, c) in &items {
            let neg = [-l[0], -l[1]];
            match lookup(&neg) {
                Some(d) if (d - c.conj()).norm() <= HERMITIAN_TOL * scale => {}
                Some(_) => {
                    return Err(Error::Validation(format!("lag {l:?} breaks Hermitian symmetry")))
                }
                None => return Err(Error::Validation(format!("lag {l:?} present without its negative"))),
            }
            if *l == [0, 0] && (c.im.abs() > HERMITIAN_TOL * scale || c.re < -HERMITIAN_TOL * scale) {
                return Err(Error::Validation("zero-lag coefficient must be real and non-negative".into()));
            }
        }
        let (lags, coefficients) = items.into_iter().unzip();
        Ok(Self {
            dimension,
            lags,
            coefficients,
        })
    }

    /// One-dimensional real series from coefficients at lags `0..=M`,
    /// extended to negative lags by symmetry.
    pub fn from_nonnegative_lags(values: &[f64]) -> Result<Self> {
        let mut entries = Vec::with_capacity(2 * values.len());
        for (m, &v) in values.iter().enumerate() {
            entries.push((vec![m as i64], Complex64::new(v, 0.0)));
            if m > 0 {
                entries.push((vec![-(m as i64)], Complex64::new(v, 0.0)));
            }
        }
        Self::new(1, entries)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.lags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lags.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], Complex64)> + '_ {
        self.lags
            .iter()
            .zip(&self.coefficients)
            .map(move |(l, c)| (&l[..self.dimension], *c))
    }

    pub fn get(&self, lag: &[i64]) -> Option<Complex64> {
        if lag.len() != self.dimension {
            return None;
        }
        let mut l = [0i64; 2];
        l[..self.dimension].copy_from_slice(lag);
        self.lags.binary_search(&l).ok().map(|i| self.coefficients[i])
    }

    /// Coefficient at a one-dimensional lag.
    pub fn at(&self, m: i64) -> Option<Complex64> {
        self.get(&[m])
    }

    pub fn max_abs_lag(&self) -> i64 {
        self.lags.iter().map(|l| l[0].abs().max(l[1].abs())).max().unwrap_or(0)
    }
}

/// Finite-window autocorrelation
/// `eta_N(m) = (1/L) sum_n w(n) conj(w(n-m))` for `|m| <= max_lag`.
///
/// The slice is the window itself (length `L = 2N+1` for a symmetric
/// window; other lengths are accepted and normalised by `L`). Terms reaching
/// outside the window count as zero, which biases `|eta|` downwards by
/// `O(m/L)`.
pub fn empirical_autocorrelation(weights: &[Complex64], max_lag: usize) -> Result<AutocorrelationSeries> {
    if weights.is_empty() {
        return param("empty weight sequence");
    }
    let half = (weights.len() - 1) / 2;
    if max_lag > half {
        return param(format!("max_lag {max_lag} exceeds half-window {half}"));
    }
    if weights.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
        return param("weights must be finite");
    }
    let norm = 1.0 / weights.len() as f64;
    let mut entries = Vec::with_capacity(2 * max_lag + 1);
    for m in 0..=max_lag {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in m..weights.len() {
            acc += weights[i] * weights[i - m].conj();
        }
        let eta = acc * norm;
        if m == 0 {
            entries.push((vec![0], Complex64::new(eta.re, 0.0)));
        } else {
            entries.push((vec![m as i64], eta));
            entries.push((vec![-(m as i64)], eta.conj()));
        }
    }
    AutocorrelationSeries::new(1, entries)
}

/// Real-valued fast path of [`empirical_autocorrelation`]: returns
/// `eta(0..=max_lag)`.
pub fn empirical_autocorrelation_real(weights: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return param("empty weight sequence");
    }
    let half = (weights.len() - 1) / 2;
    if max_lag > half {
        return param(format!("max_lag {max_lag} exceeds half-window {half}"));
    }
    let norm = 1.0 / weights.len() as f64;
    Ok((0..=max_lag)
        .map(|m| {
            let s: f64 = weights[m..].iter().zip(weights).map(|(a, b)| a * b).sum();
            s * norm
        })
        .collect())
}

/// Axis-aligned box or origin-centred ball, used for point and `k` regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { dimension: usize, radius: f64 },
}

impl Region {
    pub fn interval(lo: f64, hi: f64) -> Self {
        Region::Box {
            lo: vec![lo],
            hi: vec![hi],
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Region::Box { lo, .. } => lo.len(),
            Region::Ball { dimension, .. } => *dimension,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Region::Box { lo, hi } => {
                if lo.len() != hi.len() || lo.is_empty() {
                    return param("box bounds must have equal, non-zero length");
                }
                if lo.iter().zip(hi).any(|(a, b)| !(a.is_finite() && b.is_finite() && a <= b)) {
                    return param("box bounds must be finite with lo <= hi");
                }
            }
            Region::Ball { dimension, radius } => {
                if *dimension == 0 || !(radius.is_finite() && *radius >= 0.0) {
                    return param("ball needs positive dimension and finite radius");
                }
            }
        }
        Ok(())
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Region::Box { lo, hi } => (lo.clone(), hi.clone()),
            Region::Ball { dimension, radius } => (vec![-radius; *dimension], vec![*radius; *dimension]),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        const TOL: f64 = 1e-12;
        match self {
            Region::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(v, (a, b))| *v >= a - TOL && *v <= b + TOL),
            Region::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>().sqrt() <= radius + TOL,
        }
    }
}
