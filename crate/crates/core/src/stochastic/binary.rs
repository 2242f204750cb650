use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::SeedSpec;
use crate::comb::{AutocorrelationSeries, BraggPeak, DensitySample, DiffractionOutput, Normalization};
use crate::error::{param, Result};
use crate::exact::int;

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return param(format!("probability {p} outside [0, 1]"));
    }
    Ok(())
}

/// I.i.d. `±1` weights on `-N..=N` (index `i` of the result is site `i - N`)
/// with `P(+1) = p`.
pub fn sample_bernoulli(p: f64, n: usize, seed: SeedSpec) -> Result<Vec<f64>> {
    check_p(p)?;
    let mut rng = seed.rng();
    Ok((0..2 * n + 1).map(|_| if rng.random_bool(p) { 1.0 } else { -1.0 }).collect())
}

/// `η(m) = 1` at `m = 0` and `(2p - 1)²` otherwise.
pub fn theoretical_eta_bernoulli(p: &BigRational, m: i64) -> Result<BigRational> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return param(format!("probability {p} outside [0, 1]"));
    }
    if m == 0 {
        return Ok(BigRational::one());
    }
    let d = p * int(2) - int(1);
    Ok(&d * &d)
}

/// Metric entropy `-p ln p - (1-p) ln(1-p)` in nats.
pub fn bernoulli_entropy(p: f64) -> Result<f64> {
    check_p(p)?;
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.ln() };
    Ok(term(p) + term(1.0 - p))
}

fn grid_range(k_grid: &[f64]) -> Result<(f64, f64)> {
    if k_grid.is_empty() || k_grid.iter().any(|k| !k.is_finite()) {
        return param("k grid must be non-empty and finite");
    }
    let lo = k_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = k_grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// Peaks of intensity `weight` on `Z / step` inside the range of the grid.
pub(crate) fn lattice_peaks(step: f64, weight: f64, lo: f64, hi: f64) -> Vec<BraggPeak> {
    let first = (lo * step - 1e-9).ceil() as i64;
    let last = (hi * step + 1e-9).floor() as i64;
    (first..=last)
        .map(|j| BraggPeak {
            position: vec![j as f64 / step],
            intensity: weight,
            extinct: false,
            label: Some(vec![j]),
        })
        .collect()
}

/// `(2p-1)² δ_Z + 4p(1-p) λ`: peaks on the integers within the range of
/// `k_grid`, the constant density sampled at each grid point.
pub fn bernoulli_diffraction(p: f64, k_grid: &[f64]) -> Result<DiffractionOutput> {
    check_p(p)?;
    let (lo, hi) = grid_range(k_grid)?;
    let mut out = DiffractionOutput::empty(Normalization::PerUnitVolume);
    let pp = (2.0 * p - 1.0).powi(2);
    if pp > 0.0 {
        out.pure_point = lattice_peaks(1.0, pp, lo, hi);
    }
    let ac = 4.0 * p * (1.0 - p);
    out.ac_density = k_grid.iter().map(|&k| DensitySample { k: vec![k], value: ac }).collect();
    Ok(out)
}

/// Pointwise product `S_n W_n` with i.i.d. `W_n = ±1`, `P(+1) = p`.
pub fn bernoullise(base: &[f64], p: f64, seed: SeedSpec) -> Result<Vec<f64>> {
    check_p(p)?;
    let mut rng = seed.rng();
    Ok(base.iter().map(|s| if rng.random_bool(p) { *s } else { -*s }).collect())
}

/// `γ = (2p-1)² γ_S + 4p(1-p) δ_0`.
pub fn theoretical_gamma_bernoullise(gamma_s: &AutocorrelationSeries, p: f64) -> Result<AutocorrelationSeries> {
    check_p(p)?;
    let scale = (2.0 * p - 1.0).powi(2);
    let extra = 4.0 * p * (1.0 - p);
    let zero = vec![0i64; gamma_s.dimension()];
    let mut entries: Vec<(Vec<i64>, Complex64)> = gamma_s.iter().map(|(l, c)| (l.to_vec(), c * scale)).collect();
    match entries.iter_mut().find(|(l, _)| *l == zero) {
        Some((_, c)) => *c += extra,
        None => entries.push((zero, Complex64::new(extra, 0.0))),
    }
    AutocorrelationSeries::new(gamma_s.dimension(), entries)
}

/// Exact version of [`theoretical_gamma_bernoullise`] on a table of
/// one-dimensional coefficients.
pub fn theoretical_eta_bernoullise(
    eta_s: &BTreeMap<i64, BigRational>,
    p: &BigRational,
) -> Result<BTreeMap<i64, BigRational>> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return param(format!("probability {p} outside [0, 1]"));
    }
    let d = p * int(2) - int(1);
    let scale = &d * &d;
    let extra = p * (int(1) - p) * int(4);
    let mut out: BTreeMap<i64, BigRational> = eta_s.iter().map(|(m, v)| (*m, v * &scale)).collect();
    *out.entry(0).or_insert_with(BigRational::zero) += extra;
    Ok(out)
}

/// Random dimer configuration on `0..n`.
///
/// The partition parity is drawn once; each dimer is then `(+,-)` or
/// `(-,+)` with probability 1/2. When the parity puts site 0 at the end of
/// a dimer whose first site is outside the window, its sign is drawn alone.
pub fn sample_dimer(n: usize, seed: SeedSpec) -> Result<Vec<f64>> {
    if n == 0 {
        return param("dimer sample needs n >= 1");
    }
    let mut rng = seed.rng();
    let parity = usize::from(rng.random_bool(0.5));
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        if i % 2 == parity || i == 0 {
            w.push(if rng.random_bool(0.5) { 1.0 } else { -1.0 });
        } else {
            w.push(-w[i - 1]);
        }
    }
    Ok(w)
}

/// `γ = δ_0 - (δ_1 + δ_{-1}) / 2`.
pub fn dimer_autocorrelation() -> AutocorrelationSeries {
    AutocorrelationSeries::new(
        1,
        vec![
            (vec![-1], Complex64::new(-0.5, 0.0)),
            (vec![0], Complex64::new(1.0, 0.0)),
            (vec![1], Complex64::new(-0.5, 0.0)),
        ],
    )
    .expect("dimer series is Hermitian")
}

/// Density `1 - cos 2πk` of the purely absolutely continuous dimer diffraction.
pub fn dimer_density(k: f64) -> f64 {
    1.0 - (2.0 * PI * k).cos()
}

/// `u_i = -w_i w_{i+1}`.
pub fn dimer_block_image(w: &[f64]) -> Result<Vec<f64>> {
    if w.len() < 2 {
        return param("block image needs at least two symbols");
    }
    Ok(w.windows(2).map(|p| -p[0] * p[1]).collect())
}

/// `(1/4) δ_{Z/2} + (1/2) λ` restricted to the range of `k_grid`.
pub fn dimer_block_diffraction(k_grid: &[f64]) -> Result<DiffractionOutput> {
    let (lo, hi) = grid_range(k_grid)?;
    let mut out = DiffractionOutput::empty(Normalization::PerUnitVolume);
    out.pure_point = lattice_peaks(2.0, 0.25, lo, hi);
    out.ac_density = k_grid.iter().map(|&k| DensitySample { k: vec![k], value: 0.5 }).collect();
    Ok(out)
}

/// Rectangular patch of a Ledrappier configuration, row-major with row 0 at
/// the bottom. `e1` steps along a row, `e2` one row up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedrappierSample {
    rows: usize,
    cols: usize,
    data: Vec<i8>,
}

impl LedrappierSample {
    /// Forces rows upward from `bottom` via `w_{x+e2} = w_x w_{x+e1}`.
    /// `bottom` needs `cols + rows - 1` entries so that every kept site is
    /// determined.
    pub fn from_bottom_row(bottom: &[i8], rows: usize, cols: usize) -> Result<Self> {
        if rows < 2 || cols < 2 {
            return param("Ledrappier sample needs at least 2 rows and 2 columns");
        }
        if bottom.len() != cols + rows - 1 {
            return param(format!("bottom row needs {} entries, got {}", cols + rows - 1, bottom.len()));
        }
        if bottom.iter().any(|v| v.abs() != 1) {
            return param("bottom row entries must be +1 or -1");
        }
        let mut data = Vec::with_capacity(rows * cols);
        let mut row = bottom.to_vec();
        for _ in 0..rows {
            data.extend_from_slice(&row[..cols]);
            row = row.windows(2).map(|p| p[0] * p[1]).collect();
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.data[row * self.cols + col]
    }

    pub fn data(&self) -> &[i8] {
        &self.data
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&v| f64::from(v)).collect()
    }

    /// `w_x w_{x+e1} w_{x+e2} = 1` wherever both neighbours are in range.
    pub fn constraint_holds(&self) -> bool {
        (0..self.rows - 1)
            .all(|r| (0..self.cols - 1).all(|c| self.get(r, c) * self.get(r, c + 1) * self.get(r + 1, c) == 1))
    }
}

pub fn sample_ledrappier(rows: usize, cols: usize, seed: SeedSpec) -> Result<LedrappierSample> {
    if rows < 2 || cols < 2 {
        return param("Ledrappier sample needs at least 2 rows and 2 columns");
    }
    let mut rng = seed.rng();
    let bottom: Vec<i8> = (0..cols + rows - 1).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    LedrappierSample::from_bottom_row(&bottom, rows, cols)
}

/// Two-dimensional autocorrelation of a row-major `rows x cols` array for
/// lags `z = (z1, z2)` with `|z1|, |z2| <= max_lag`, `z1` along a row.
///
/// Each coefficient averages `w_x w_{x+z}` over the pairs that fit in the
/// array.
pub fn empirical_auto_2d(values: &[f64], rows: usize, cols: usize, max_lag: usize) -> Result<AutocorrelationSeries> {
    if values.len() != rows * cols || rows == 0 || cols == 0 {
        return param("array shape does not match its length");
    }
    if max_lag >= rows.min(cols) {
        return param(format!("max_lag {max_lag} must be below both array sides"));
    }
    let m = max_lag as i64;
    let mut entries = Vec::new();
    for z2 in -m..=m {
        for z1 in -m..=m {
            // The pair set for -z is the pair set for z with roles swapped,
            // so the accumulated products coincide exactly.
            let (r0, r1) = (0.max(-z2), rows as i64 - 0.max(z2));
            let (c0, c1) = (0.max(-z1), cols as i64 - 0.max(z1));
            let mut acc = 0.0;
            for r in r0..r1 {
                let base = (r * cols as i64) as usize;
                let shifted = ((r + z2) * cols as i64) as usize;
                for c in c0..c1 {
                    acc += values[base + c as usize] * values[shifted + (c + z1) as usize];
                }
            }
            let count = ((r1 - r0) * (c1 - c0)) as f64;
            entries.push((vec![z1, z2], Complex64::new(acc / count, 0.0)));
        }
    }
    AutocorrelationSeries::new(2, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn bernoulli_limits() {
        let s = sample_bernoulli(1.0, 50, SeedSpec::new(3)).unwrap();
        assert_eq!(s.len(), 101);
        assert!(s.iter().all(|&v| v == 1.0));
        assert!(sample_bernoulli(1.5, 5, SeedSpec::new(0)).is_err());
        assert_eq!(theoretical_eta_bernoulli(&rat(4, 5), 5).unwrap(), rat(9, 25));
        assert_eq!(theoretical_eta_bernoulli(&rat(1, 2), 3).unwrap(), rat(0, 1));
        assert_eq!(theoretical_eta_bernoulli(&rat(1, 2), 0).unwrap(), rat(1, 1));
    }

    #[test]
    fn entropy_endpoints() {
        assert_eq!(bernoulli_entropy(0.0).unwrap(), 0.0);
        assert_eq!(bernoulli_entropy(1.0).unwrap(), 0.0);
        assert!((bernoulli_entropy(0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn fair_coin_has_no_peaks() {
        let d = bernoulli_diffraction(0.5, &[-2.0, 0.0, 2.0]).unwrap();
        assert!(d.pure_point.is_empty());
        assert!(d.ac_density.iter().all(|s| s.value == 1.0));
        let d = bernoulli_diffraction(0.8, &[-1.5, 1.5]).unwrap();
        assert_eq!(d.pure_point.len(), 3);
    }

    #[test]
    fn bernoullise_identity_at_p_one() {
        let base = [1.0, -1.0, -1.0, 1.0];
        assert_eq!(bernoullise(&base, 1.0, SeedSpec::new(1)).unwrap(), base);
    }

    #[test]
    fn bernoullised_delta_stays_delta() {
        let delta = AutocorrelationSeries::new(1, vec![(vec![0], Complex64::new(1.0, 0.0))]).unwrap();
        for p in [0.0, 0.3, 0.7] {
            let g = theoretical_gamma_bernoullise(&delta, p).unwrap();
            assert!((g.at(0).unwrap().re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn dimer_parity_constraint() {
        for seed in 0..20 {
            let w = sample_dimer(501, SeedSpec::new(seed)).unwrap();
            let parities: Vec<usize> = (0..w.len() - 1).filter(|&i| w[i] == w[i + 1]).map(|i| i % 2).collect();
            assert!(parities.windows(2).all(|p| p[0] == p[1]));
        }
    }

    #[test]
    fn dimer_theory() {
        assert_eq!(dimer_density(0.0), 0.0);
        assert_eq!(dimer_density(0.5), 2.0);
        assert_eq!(dimer_autocorrelation().len(), 3);
        let u = dimer_block_image(&[1.0, -1.0, 1.0, -1.0]).unwrap();
        assert_eq!(u, vec![1.0; 3]);
        let d = dimer_block_diffraction(&[-0.6, 1.1]).unwrap();
        let pos: Vec<f64> = d.pure_point.iter().map(|p| p.position[0]).collect();
        assert_eq!(pos, vec![-0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn ledrappier_forcing() {
        let ones = LedrappierSample::from_bottom_row(&[1; 7], 4, 4).unwrap();
        assert!(ones.data().iter().all(|&v| v == 1));
        assert!(ones.constraint_holds());
        for seed in 0..5 {
            let s = sample_ledrappier(12, 9, SeedSpec::new(seed)).unwrap();
            assert!(s.constraint_holds());
        }
    }

    #[test]
    fn auto_2d_of_constant_array() {
        let a = vec![1.0; 30];
        let g = empirical_auto_2d(&a, 5, 6, 2).unwrap();
        assert_eq!(g.len(), 25);
        assert!(g.iter().all(|(_, c)| c.re == 1.0));
    }
}
