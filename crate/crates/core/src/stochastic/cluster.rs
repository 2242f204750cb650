use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::comb::{DensitySample, DiffractionOutput, EXTINCTION_RELATIVE_TOL};
use crate::error::{param, Error, Result};

const PROBABILITY_TOL: f64 = 1e-12;

/// Weighted points `(offset, weight)` making up one cluster.
pub type Cluster = Vec<(Vec<f64>, Complex64)>;

/// Law of the i.i.d. random measure `Ω` placed at every point of a base
/// structure. Only finite-support laws and the Gaussian displacement are
/// offered, so all second moments are finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterLaw {
    /// `Ω = W δ_0` with `W` taking each value with its probability.
    RandomWeight { values: Vec<(Complex64, f64)> },
    /// `Ω = δ_X` with `X` taking each offset with its probability.
    RandomDisplacement { offsets: Vec<(Vec<f64>, f64)> },
    /// `Ω = δ_X`, `X` centred normal with covariance `σ² I`.
    GaussianDisplacement { sigma: f64 },
    /// `Ω` is one of finitely many weighted point clusters.
    FiniteCluster {
        alternatives: Vec<(Cluster, f64)>,
    },
}

fn check_probabilities<'a>(ps: impl Iterator<Item = &'a f64>) -> Result<()> {
    let mut total = 0.0;
    let mut count = 0;
    for &p in ps {
        if !(p.is_finite() && p > 0.0) {
            return param(format!("probability {p} must be positive"));
        }
        total += p;
        count += 1;
    }
    if count == 0 {
        return param("cluster law needs at least one alternative");
    }
    if (total - 1.0).abs() > PROBABILITY_TOL {
        return param(format!("probabilities sum to {total}, not 1"));
    }
    Ok(())
}

fn phase(k: &[f64], x: &[f64]) -> Complex64 {
    let dot: f64 = k.iter().zip(x).map(|(a, b)| a * b).sum();
    Complex64::from_polar(1.0, -2.0 * PI * dot)
}

impl ClusterLaw {
    /// Fair `±1` weights.
    pub fn fair_sign() -> Self {
        ClusterLaw::RandomWeight {
            values: vec![(Complex64::new(1.0, 0.0), 0.5), (Complex64::new(-1.0, 0.0), 0.5)],
        }
    }

    /// `Ω = δ_0`.
    pub fn point() -> Self {
        ClusterLaw::FiniteCluster {
            alternatives: vec![(vec![(vec![0.0], Complex64::new(1.0, 0.0))], 1.0)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ClusterLaw::RandomWeight { values } => {
                check_probabilities(values.iter().map(|(_, p)| p))?;
                if values.iter().any(|(w, _)| !(w.re.is_finite() && w.im.is_finite())) {
                    return param("weights must be finite");
                }
            }
            ClusterLaw::RandomDisplacement { offsets } => {
                check_probabilities(offsets.iter().map(|(_, p)| p))?;
                let d = offsets[0].0.len();
                if d == 0 || offsets.iter().any(|(x, _)| x.len() != d || x.iter().any(|v| !v.is_finite())) {
                    return param("offsets must be finite with one common dimension");
                }
            }
            ClusterLaw::GaussianDisplacement { sigma } => {
                if !(sigma.is_finite() && *sigma >= 0.0) {
                    return param("sigma must be finite and non-negative");
                }
            }
            ClusterLaw::FiniteCluster { alternatives } => {
                check_probabilities(alternatives.iter().map(|(_, p)| p))?;
                let d = alternatives.iter().flat_map(|(c, _)| c.first()).map(|(x, _)| x.len()).next();
                if alternatives
                    .iter()
                    .flat_map(|(c, _)| c)
                    .any(|(x, w)| Some(x.len()) != d || !w.re.is_finite() || !w.im.is_finite())
                {
                    return param("cluster points must share one dimension and carry finite weights");
                }
            }
        }
        Ok(())
    }

    /// `E(Ω̂)(k)`.
    pub fn first_moment(&self, k: &[f64]) -> Complex64 {
        match self {
            ClusterLaw::RandomWeight { values } => values.iter().map(|(w, p)| w * p).sum(),
            ClusterLaw::RandomDisplacement { offsets } => offsets.iter().map(|(x, p)| phase(k, x) * p).sum(),
            ClusterLaw::GaussianDisplacement { sigma } => {
                let k2: f64 = k.iter().map(|v| v * v).sum();
                Complex64::new((-2.0 * PI * PI * sigma * sigma * k2).exp(), 0.0)
            }
            ClusterLaw::FiniteCluster { alternatives } => alternatives
                .iter()
                .map(|(c, p)| cluster_transform(c, k) * p)
                .sum(),
        }
    }

    /// `E(|Ω̂|²)(k)`.
    pub fn second_moment(&self, k: &[f64]) -> f64 {
        match self {
            ClusterLaw::RandomWeight { values } => values.iter().map(|(w, p)| w.norm_sqr() * p).sum(),
            ClusterLaw::RandomDisplacement { .. } | ClusterLaw::GaussianDisplacement { .. } => 1.0,
            ClusterLaw::FiniteCluster { alternatives } => alternatives
                .iter()
                .map(|(c, p)| cluster_transform(c, k).norm_sqr() * p)
                .sum(),
        }
    }
}

fn cluster_transform(cluster: &[(Vec<f64>, Complex64)], k: &[f64]) -> Complex64 {
    cluster.iter().map(|(x, w)| w * phase(k, x)).sum()
}

/// Diffraction of the decorated structure
/// `|E Ω̂|² γ̂ + dens(Λ) (E|Ω̂|² - |E Ω̂|²) λ`.
///
/// `base` is the diffraction of `Λ`. Its ac samples, if any, must sit
/// exactly on `k_grid`; the new density is sampled there. A base with a
/// singular continuous part is rejected.
pub fn cluster_diffraction(
    base: &DiffractionOutput,
    density: f64,
    law: &ClusterLaw,
    k_grid: &[Vec<f64>],
) -> Result<DiffractionOutput> {
    law.validate()?;
    if !(density.is_finite() && density >= 0.0) {
        return param("density must be finite and non-negative");
    }
    if base.sc_distribution.is_some() {
        return param("cluster modulation of a singular continuous part is not supported");
    }
    if !base.ac_density.is_empty()
        && (base.ac_density.len() != k_grid.len() || base.ac_density.iter().zip(k_grid).any(|(s, k)| s.k != *k))
    {
        return param("base ac samples must lie exactly on the k grid");
    }
    let mut out = base.clone();
    for p in &mut out.pure_point {
        if !p.extinct {
            p.intensity *= law.first_moment(&p.position).norm_sqr();
        }
    }
    out.mark_extinctions(EXTINCTION_RELATIVE_TOL);
    let mut samples = Vec::with_capacity(k_grid.len());
    for (i, k) in k_grid.iter().enumerate() {
        let m1 = law.first_moment(k).norm_sqr();
        let mut var = law.second_moment(k) - m1;
        if var < 0.0 {
            if var < -1e-12 {
                return Err(Error::Internal(format!("negative cluster variance {var} at k = {k:?}")));
            }
            var = 0.0;
        }
        let base_value = base.ac_density.get(i).map(|s| m1 * s.value).unwrap_or(0.0);
        samples.push(DensitySample {
            k: k.clone(),
            value: base_value + density * var,
        });
    }
    if !base.ac_density.is_empty() || samples.iter().any(|s| s.value != 0.0) {
        out.ac_density = samples;
    }
    Ok(out)
}
