use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_distr::weighted::WeightedIndex;
use rand_distr::{Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use super::binary::lattice_peaks;
use super::SeedSpec;
use crate::comb::{BraggPeak, DensitySample, DiffractionOutput, Normalization};
use crate::error::{param, Error, Result};
use crate::exact::{parse_rational, to_f64};

/// Largest horizon accepted by [`renewal_sample`] (mean gap is 1).
pub const MAX_HORIZON: f64 = 1e8;
/// Largest number of lattice cells for the atomic renewal measure.
pub const MAX_ATOMIC_CELLS: usize = 100_000;

/// Waiting-time law on the positive half-line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LawRepr", into = "LawRepr")]
pub enum RenewalLaw {
    Exponential { rate: f64 },
    Gamma { shape: f64, scale: f64 },
    /// Finitely many rational atoms `(position, probability)`.
    Discrete { atoms: Vec<(BigRational, BigRational)> },
    Deterministic { a: BigRational },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum LawRepr {
    Exponential {
        #[serde(default = "one")]
        rate: f64,
    },
    Gamma {
        shape: f64,
        #[serde(default = "one")]
        scale: f64,
    },
    Discrete {
        atoms: Vec<(String, String)>,
    },
    Deterministic {
        a: String,
    },
}

impl TryFrom<LawRepr> for RenewalLaw {
    type Error = String;

    fn try_from(r: LawRepr) -> std::result::Result<Self, String> {
        let q = |s: &str| parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"));
        Ok(match r {
            LawRepr::Exponential { rate } => RenewalLaw::Exponential { rate },
            LawRepr::Gamma { shape, scale } => RenewalLaw::Gamma { shape, scale },
            LawRepr::Discrete { atoms } => RenewalLaw::Discrete {
                atoms: atoms.iter().map(|(x, p)| Ok((q(x)?, q(p)?))).collect::<std::result::Result<_, String>>()?,
            },
            LawRepr::Deterministic { a } => RenewalLaw::Deterministic { a: q(&a)? },
        })
    }
}

impl From<RenewalLaw> for LawRepr {
    fn from(l: RenewalLaw) -> Self {
        match l {
            RenewalLaw::Exponential { rate } => LawRepr::Exponential { rate },
            RenewalLaw::Gamma { shape, scale } => LawRepr::Gamma { shape, scale },
            RenewalLaw::Discrete { atoms } => LawRepr::Discrete {
                atoms: atoms.iter().map(|(x, p)| (x.to_string(), p.to_string())).collect(),
            },
            RenewalLaw::Deterministic { a } => LawRepr::Deterministic { a: a.to_string() },
        }
    }
}

/// A validated waiting-time law, rescaled on construction to mean 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RenewalSpec {
    original: RenewalLaw,
    law: RenewalLaw,
    mean: f64,
}

fn positive(v: f64, what: &str) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return param(format!("{what} must be positive and finite, got {v}"));
    }
    Ok(())
}

impl RenewalSpec {
    pub fn new(law: RenewalLaw) -> Result<Self> {
        let (normal, mean) = match &law {
            RenewalLaw::Exponential { rate } => {
                positive(*rate, "rate")?;
                (RenewalLaw::Exponential { rate: 1.0 }, 1.0 / rate)
            }
            RenewalLaw::Gamma { shape, scale } => {
                positive(*shape, "shape")?;
                positive(*scale, "scale")?;
                (
                    RenewalLaw::Gamma {
                        shape: *shape,
                        scale: 1.0 / shape,
                    },
                    shape * scale,
                )
            }
            RenewalLaw::Discrete { atoms } => {
                if atoms.is_empty() {
                    return param("discrete law needs at least one atom");
                }
                if atoms.iter().any(|(x, p)| !x.is_positive() || !p.is_positive()) {
                    return param("atoms and probabilities must be positive");
                }
                let total: BigRational = atoms.iter().map(|(_, p)| p.clone()).sum();
                if !total.is_one() {
                    return param(format!("probabilities sum to {total}, not 1"));
                }
                let mean: BigRational = atoms.iter().map(|(x, p)| x * p).sum();
                let scaled = atoms.iter().map(|(x, p)| (x / &mean, p.clone())).collect();
                (RenewalLaw::Discrete { atoms: scaled }, to_f64(&mean))
            }
            RenewalLaw::Deterministic { a } => {
                if !a.is_positive() {
                    return param("deterministic waiting time must be positive");
                }
                (
                    RenewalLaw::Deterministic {
                        a: BigRational::one(),
                    },
                    to_f64(a),
                )
            }
        };
        Ok(Self {
            original: law,
            law: normal,
            mean,
        })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::new(RenewalLaw::Exponential { rate })
    }

    pub fn gamma(shape: f64, scale: f64) -> Result<Self> {
        Self::new(RenewalLaw::Gamma { shape, scale })
    }

    pub fn discrete(atoms: Vec<(BigRational, BigRational)>) -> Result<Self> {
        Self::new(RenewalLaw::Discrete { atoms })
    }

    pub fn deterministic(a: BigRational) -> Result<Self> {
        Self::new(RenewalLaw::Deterministic { a })
    }

    /// The law as given, before rescaling.
    pub fn original(&self) -> &RenewalLaw {
        &self.original
    }

    /// Mean of the original law; the working law has mean 1.
    pub fn original_mean(&self) -> f64 {
        self.mean
    }

    pub fn law(&self) -> &RenewalLaw {
        &self.law
    }

    /// `μ̂(k) = E e^{-2πikT}`.
    pub fn characteristic(&self, k: f64) -> Complex64 {
        let t = 2.0 * PI * k;
        match &self.law {
            RenewalLaw::Exponential { .. } => Complex64::new(1.0, t).inv(),
            RenewalLaw::Gamma { shape, scale } => Complex64::new(1.0, t * scale).powf(-shape),
            RenewalLaw::Discrete { atoms } => atoms
                .iter()
                .map(|(x, p)| Complex64::from_polar(to_f64(p), -t * to_f64(x)))
                .sum(),
            RenewalLaw::Deterministic { .. } => Complex64::from_polar(1.0, -t),
        }
    }

    /// `1 - μ̂(k)`, evaluated without cancellation near `μ̂ = 1`.
    pub fn one_minus_characteristic(&self, k: f64) -> Complex64 {
        let t = 2.0 * PI * k;
        let atom = |x: f64| {
            let half = (0.5 * t * x).sin();
            Complex64::new(2.0 * half * half, (t * x).sin())
        };
        match &self.law {
            RenewalLaw::Exponential { .. } => Complex64::new(0.0, t) / Complex64::new(1.0, t),
            RenewalLaw::Gamma { shape, scale } => {
                let w = t * scale;
                // z = -shape * Log(1 + iw); 1 - e^z = -expm1(z).
                let x = -shape * 0.5 * (w * w).ln_1p();
                let y = -shape * w.atan();
                let half = (0.5 * y).sin();
                let re = x.exp_m1() * y.cos() - 2.0 * half * half;
                let im = x.exp() * y.sin();
                -Complex64::new(re, im)
            }
            RenewalLaw::Discrete { atoms } => atoms.iter().map(|(x, p)| atom(to_f64(x)) * to_f64(p)).sum(),
            RenewalLaw::Deterministic { .. } => atom(1.0),
        }
    }

    /// `ln E e^{-sT}` for `s >= 0`, finite even where the transform underflows.
    fn log_laplace(&self, s: f64) -> f64 {
        match &self.law {
            RenewalLaw::Exponential { .. } => -s.ln_1p(),
            RenewalLaw::Gamma { shape, scale } => -shape * (s * scale).ln_1p(),
            RenewalLaw::Discrete { atoms } => {
                let terms: Vec<f64> = atoms.iter().map(|(x, p)| to_f64(p).ln() - s * to_f64(x)).collect();
                let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln()
            }
            RenewalLaw::Deterministic { .. } => -s,
        }
    }

    /// Generator `b` of the coarsest lattice `bZ` containing the support,
    /// for laws with rational atoms; `None` for continuous laws.
    pub fn lattice_step(&self) -> Option<BigRational> {
        match &self.law {
            RenewalLaw::Discrete { atoms } => {
                let den = atoms.iter().fold(BigInt::one(), |acc, (x, _)| acc.lcm(x.denom()));
                let g = atoms
                    .iter()
                    .map(|(x, _)| x.numer() * (&den / x.denom()))
                    .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
                Some(BigRational::new(g, den))
            }
            RenewalLaw::Deterministic { a } => Some(a.clone()),
            _ => None,
        }
    }

    fn sampler(&self) -> Result<GapSampler> {
        Ok(match &self.law {
            RenewalLaw::Exponential { .. } => GapSampler::Exponential,
            RenewalLaw::Gamma { shape, scale } => GapSampler::Gamma(
                Gamma::new(*shape, *scale).map_err(|e| Error::Parameter(format!("gamma law: {e}")))?,
            ),
            RenewalLaw::Discrete { atoms } => GapSampler::Discrete(
                atoms.iter().map(|(x, _)| to_f64(x)).collect(),
                WeightedIndex::new(atoms.iter().map(|(_, p)| to_f64(p)))
                    .map_err(|e| Error::Parameter(format!("discrete law: {e}")))?,
            ),
            RenewalLaw::Deterministic { .. } => GapSampler::Deterministic,
        })
    }
}

enum GapSampler {
    Exponential,
    Gamma(Gamma<f64>),
    Discrete(Vec<f64>, WeightedIndex<f64>),
    Deterministic,
}

impl GapSampler {
    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            GapSampler::Exponential => Exp1.sample(rng),
            GapSampler::Gamma(g) => g.sample(rng),
            GapSampler::Discrete(xs, w) => xs[w.sample(rng)],
            GapSampler::Deterministic => 1.0,
        }
    }
}

/// Points `t_1 < t_2 < ...` in `(0, T]` with i.i.d. gaps from the mean-1
/// law, the first gap measured from the origin.
pub fn renewal_sample(spec: &RenewalSpec, horizon: f64, seed: SeedSpec) -> Result<Vec<f64>> {
    positive(horizon, "horizon")?;
    if horizon > MAX_HORIZON {
        return Err(Error::Resource(format!("horizon {horizon} exceeds {MAX_HORIZON}")));
    }
    let sampler = spec.sampler()?;
    let mut rng = seed.rng();
    let mut out = Vec::with_capacity(horizon as usize + 1);
    let mut t = 0.0;
    loop {
        t += sampler.draw(&mut rng);
        if t > horizon {
            return Ok(out);
        }
        out.push(t);
    }
}

/// Truncated renewal measure `ν ≈ Σ_{n=1}^{K} μ^{*n}` evaluated at points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenewalMeasure {
    /// `true`: `values` are point masses; `false`: Lebesgue densities.
    pub atomic: bool,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub truncation: usize,
    /// Upper bound on the omitted mass `Σ_{n>K} μ^{*n}([0, max xs])`.
    pub tail_bound: f64,
}

/// Evaluates `ν = μ + μ*μ + ...` truncated after `truncation` terms.
///
/// For laws on a lattice `bZ` the values are the masses `ν({x})` (zero off
/// the lattice); for continuous laws they are densities. Fails with an
/// accuracy error when the Chernoff bound on the omitted terms exceeds `tol`.
pub fn renewal_measure_nu(spec: &RenewalSpec, xs: &[f64], truncation: usize, tol: f64) -> Result<RenewalMeasure> {
    if xs.is_empty() || xs.iter().any(|x| !x.is_finite()) {
        return param("evaluation points must be non-empty and finite");
    }
    if truncation == 0 {
        return param("truncation must be at least 1");
    }
    let x_max = xs.iter().copied().fold(0.0, f64::max);
    let (atomic, values, min_gap) = match spec.lattice_step() {
        Some(b) => {
            let step = to_f64(&b);
            let cells = (x_max / step + 1e-9).floor() as usize;
            if cells > MAX_ATOMIC_CELLS {
                return Err(Error::Resource(format!("{cells} lattice cells exceed {MAX_ATOMIC_CELLS}")));
            }
            let mu = lattice_masses(spec, &b, cells);
            let nu = truncated_series(&mu, truncation);
            let values = xs
                .iter()
                .map(|&x| {
                    let n = (x / step).round();
                    if n >= 1.0 && (x - n * step).abs() <= 1e-9 * step.max(1.0) && (n as usize) <= cells {
                        nu[n as usize]
                    } else {
                        0.0
                    }
                })
                .collect();
            let min_atom = match spec.law() {
                RenewalLaw::Discrete { atoms } => atoms.iter().map(|(x, _)| to_f64(x)).fold(f64::INFINITY, f64::min),
                _ => 1.0,
            };
            (true, values, min_atom)
        }
        None => {
            let (shape, scale) = match spec.law() {
                RenewalLaw::Gamma { shape, scale } => (*shape, *scale),
                _ => (1.0, 1.0),
            };
            let values = xs.iter().map(|&x| gamma_series_density(x, shape, scale, truncation)).collect();
            (false, values, 0.0)
        }
    };
    let tail_bound = if (truncation as f64 + 1.0) * min_gap > x_max {
        0.0
    } else {
        chernoff_tail(spec, x_max, truncation)
    };
    if tail_bound > tol {
        return Err(Error::Accuracy {
            message: format!("renewal series truncated after {truncation} terms"),
            achieved: tail_bound,
        });
    }
    Ok(RenewalMeasure {
        atomic,
        xs: xs.to_vec(),
        values,
        truncation,
        tail_bound,
    })
}

/// `μ({n b})` for `n = 0..=cells`.
fn lattice_masses(spec: &RenewalSpec, b: &BigRational, cells: usize) -> Vec<f64> {
    let mut mu = vec![0.0; cells + 1];
    let atoms: Vec<(BigRational, BigRational)> = match spec.law() {
        RenewalLaw::Discrete { atoms } => atoms.clone(),
        RenewalLaw::Deterministic { a } => vec![(a.clone(), BigRational::one())],
        _ => unreachable!("continuous laws have no lattice"),
    };
    for (x, p) in atoms {
        let n = (x / b).to_integer();
        if let Ok(n) = usize::try_from(n) {
            if n <= cells {
                mu[n] += to_f64(&p);
            }
        }
    }
    mu
}

/// `Σ_{j=1}^{K} μ^{*j}` on `0..=cells`, stopping once a power vanishes.
fn truncated_series(mu: &[f64], k: usize) -> Vec<f64> {
    let mut total = mu.to_vec();
    let mut power = mu.to_vec();
    for _ in 1..k {
        let mut next = vec![0.0; mu.len()];
        for (i, &a) in power.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &m) in mu.iter().enumerate().take(mu.len() - i) {
                next[i + j] += a * m;
            }
        }
        if next.iter().all(|&v| v == 0.0) {
            break;
        }
        for (t, v) in total.iter_mut().zip(&next) {
            *t += v;
        }
        power = next;
    }
    total
}

/// `Σ_{n=1}^{K}` of Gamma(`n·shape`, `scale`) densities at `x`.
fn gamma_series_density(x: f64, shape: f64, scale: f64, k: usize) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (1..=k)
        .map(|n| {
            let a = n as f64 * shape;
            ((a - 1.0) * x.ln() - x / scale - libm::lgamma(a) - a * scale.ln()).exp()
        })
        .sum()
}

/// `min_s e^{sX} L(s)^{K+1} / (1 - L(s))`, bounding `Σ_{n>K} P(S_n <= X)`.
fn chernoff_tail(spec: &RenewalSpec, x: f64, k: usize) -> f64 {
    (0..=600)
        .map(|i| 10f64.powf(-4.0 + i as f64 * 0.0125))
        .map(|s| {
            let l = spec.log_laplace(s);
            (s * x + (k as f64 + 1.0) * l - (-l.exp_m1()).ln()).exp()
        })
        .fold(f64::INFINITY, f64::min)
        .min(f64::MAX)
}

/// `h(k) = 2(|μ̂|² - Re μ̂) / |1 - μ̂|²`, or `None` on the singular set
/// `μ̂(k) = 1`.
///
/// Computed as `2 - 2 Re(1 / (1 - μ̂))`, which is algebraically identical.
pub fn renewal_h(spec: &RenewalSpec, k: f64) -> Option<f64> {
    if is_singular(spec, k) {
        return None;
    }
    let a = spec.one_minus_characteristic(k);
    Some(2.0 - 2.0 * a.re / a.norm_sqr())
}

fn is_singular(spec: &RenewalSpec, k: f64) -> bool {
    match spec.lattice_step() {
        Some(b) => {
            let kb = k * to_f64(&b);
            (kb - kb.round()).abs() <= 1e-12 * kb.abs().max(1.0)
        }
        None => k.abs() <= 1e-12,
    }
}

/// `γ̂ = γ̂_pp + (1 - h) λ` on the grid.
///
/// The pure-point part is `δ_{Z/b}` for a law on `bZ` and `δ_0` otherwise;
/// peaks are listed within the range of the grid. Grid points on the
/// singular set carry no density sample and are listed in `flagged`.
pub fn renewal_diffraction(spec: &RenewalSpec, k_grid: &[f64]) -> Result<DiffractionOutput> {
    if k_grid.is_empty() || k_grid.iter().any(|k| !k.is_finite()) {
        return param("k grid must be non-empty and finite");
    }
    let lo = k_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = k_grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut out = DiffractionOutput::empty(Normalization::PerUnitVolume);
    out.pure_point = match spec.lattice_step() {
        Some(b) => lattice_peaks(to_f64(&b), 1.0, lo, hi),
        None if lo <= 0.0 && hi >= 0.0 => vec![BraggPeak {
            position: vec![0.0],
            intensity: 1.0,
            extinct: false,
            label: Some(vec![0]),
        }],
        None => Vec::new(),
    };
    for &k in k_grid {
        match renewal_h(spec, k) {
            Some(h) => {
                let mut value = 1.0 - h;
                if value < 0.0 {
                    if value < -1e-12 {
                        return Err(Error::Internal(format!("negative renewal density {value} at k = {k}")));
                    }
                    value = 0.0;
                }
                out.ac_density.push(DensitySample { k: vec![k], value });
            }
            None => out.flagged.push(vec![k]),
        }
    }
    Ok(out)
}
