use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::surd::Surd;
use super::window::Window;
use crate::comb::{LatticeSpec, Region};
use crate::error::{param, Error, Result};

/// Default cap on enumerated candidates.
pub const CANDIDATE_CAP: usize = 10_000_000;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// The two supported cut-and-project schemes.
///
/// * `SilverMean`: `L = {(x, x*) : x in Z[sqrt 2]}` in `R x R`, star map
///   `sqrt 2 -> -sqrt 2`. Module coordinates `(p, q)` mean `p + q sqrt 2`.
/// * `AmmannBeenker`: Minkowski embedding of `Z[xi]`, `xi = e^{2 pi i/8}`,
///   in `R^2 x R^2`, star map `xi -> xi^3`. Coordinates `(a0, a1, a2, a3)`
///   mean `a0 + a1 xi + a2 xi^2 + a3 xi^3`.
///
/// Fourier-module elements use coordinates with respect to the dual basis:
/// `k = n1/2 + n2 sqrt2/4` (silver mean) and `k = (a0 + ... + a3 xi^3)/2`
/// (Ammann-Beenker).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutProjectScheme {
    SilverMean,
    AmmannBeenker,
}

impl CutProjectScheme {
    pub fn physical_dimension(self) -> usize {
        match self {
            Self::SilverMean => 1,
            Self::AmmannBeenker => 2,
        }
    }

    pub fn internal_dimension(self) -> usize {
        self.physical_dimension()
    }

    pub fn rank(self) -> usize {
        2 * self.physical_dimension()
    }

    /// Rows `(x, x*)` of the module generators in `R^{d+m}`.
    pub fn embedding_basis(self) -> Vec<Vec<f64>> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                let mut row: Vec<f64> = self.physical(&e).iter().map(Surd::to_f64).collect();
                row.extend(self.star(&e).iter().map(Surd::to_f64));
                row
            })
            .collect()
    }

    /// Density of the embedding lattice, `1/|det|`.
    pub fn lattice_density(self) -> f64 {
        LatticeSpec::new(self.embedding_basis())
            .expect("embedding basis is non-singular")
            .density()
    }

    /// Physical position of a module element.
    pub fn physical(self, z: &[i64]) -> Vec<Surd> {
        match self {
            Self::SilverMean => vec![Surd::frac(z[0], z[1], 1)],
            Self::AmmannBeenker => vec![
                Surd::int(z[0]) + Surd::frac(0, z[1] - z[3], 2),
                Surd::int(z[2]) + Surd::frac(0, z[1] + z[3], 2),
            ],
        }
    }

    /// Internal position `z*`.
    pub fn star(self, z: &[i64]) -> Vec<Surd> {
        match self {
            Self::SilverMean => vec![Surd::frac(z[0], -z[1], 1)],
            Self::AmmannBeenker => vec![
                Surd::int(z[0]) - Surd::frac(0, z[1] - z[3], 2),
                -Surd::int(z[2]) + Surd::frac(0, z[1] + z[3], 2),
            ],
        }
    }

    /// The star map as a map on module coordinates.
    pub fn star_coords(self, z: &[i64]) -> Vec<i64> {
        match self {
            Self::SilverMean => vec![z[0], -z[1]],
            Self::AmmannBeenker => vec![z[0], z[3], -z[2], z[1]],
        }
    }

    /// Physical position of a Fourier-module element.
    pub fn dual_physical(self, k: &[i64]) -> Vec<Surd> {
        let half = Surd::frac(1, 0, 2);
        match self {
            Self::SilverMean => vec![Surd::frac(2 * k[0], k[1], 4)],
            Self::AmmannBeenker => self.physical(k).into_iter().map(|s| s * half).collect(),
        }
    }

    /// Internal position `k*` of a Fourier-module element.
    pub fn dual_star(self, k: &[i64]) -> Vec<Surd> {
        let half = Surd::frac(1, 0, 2);
        match self {
            Self::SilverMean => vec![Surd::frac(2 * k[0], -k[1], 4)],
            Self::AmmannBeenker => self.star(k).into_iter().map(|s| s * half).collect(),
        }
    }

    /// Multiplication by `xi` on Ammann-Beenker coordinates.
    pub fn rotate(self, z: &[i64]) -> Result<Vec<i64>> {
        match self {
            Self::AmmannBeenker => Ok(vec![-z[3], z[0], z[1], z[2]]),
            Self::SilverMean => param("rotation is only defined for the Ammann-Beenker scheme"),
        }
    }

    /// Complex conjugation on Ammann-Beenker coordinates, reflection
    /// `x -> -x` for the silver mean.
    pub fn reflect(self, z: &[i64]) -> Vec<i64> {
        match self {
            Self::AmmannBeenker => vec![z[0], -z[3], -z[2], -z[1]],
            Self::SilverMean => vec![-z[0], -z[1]],
        }
    }

    /// Checks injectivity of the physical projection and density of the
    /// internal projection (both heuristic, on bounded coefficient ranges).
    pub fn validate(self) -> Result<()> {
        static SILVER: OnceLock<std::result::Result<(), String>> = OnceLock::new();
        static AB: OnceLock<std::result::Result<(), String>> = OnceLock::new();
        let cell = match self {
            Self::SilverMean => &SILVER,
            Self::AmmannBeenker => &AB,
        };
        cell.get_or_init(|| self.check_projections()).clone().map_err(Error::Validation)
    }

    fn check_projections(self) -> std::result::Result<(), String> {
        let r = self.rank();
        let basis = self.embedding_basis();
        let d = self.physical_dimension();
        // no nonzero combination with coefficients in [-10, 10] projects to 0
        let mut z = vec![-10i64; r];
        loop {
            if z.iter().any(|&c| c != 0) {
                let norm: f64 = (0..d)
                    .map(|j| {
                        let x: f64 = (0..r).map(|i| z[i] as f64 * basis[i][j]).sum();
                        x * x
                    })
                    .sum();
                if norm < 1e-18 {
                    return Err(format!("physical projection is not injective: {z:?}"));
                }
            }
            let mut i = 0;
            while i < r && z[i] == 10 {
                z[i] = -10;
                i += 1;
            }
            if i == r {
                break;
            }
            z[i] += 1;
        }
        // internal images of combinations with coefficients <= 100 fill the
        // unit torus with gaps < 0.05
        match self {
            Self::SilverMean => {
                let mut f: Vec<f64> = (-100..=100)
                    .flat_map(|p| (-100..=100).map(move |q| (p as f64 - q as f64 * SQRT2).rem_euclid(1.0)))
                    .collect();
                f.sort_by(f64::total_cmp);
                let gap = f.windows(2).map(|w| w[1] - w[0]).fold(f[0] + 1.0 - f[f.len() - 1], f64::max);
                if gap >= 0.05 {
                    return Err(format!("internal projection leaves a gap of {gap}"));
                }
            }
            Self::AmmannBeenker => {
                let mut hit = [[false; 20]; 20];
                for a1 in -100i64..=100 {
                    for a3 in -100i64..=100 {
                        let y = self.star(&[0, a1, 0, a3]);
                        let (u, v) = (y[0].to_f64().rem_euclid(1.0), y[1].to_f64().rem_euclid(1.0));
                        hit[((u * 20.0) as usize).min(19)][((v * 20.0) as usize).min(19)] = true;
                    }
                }
                if hit.iter().flatten().any(|h| !h) {
                    return Err("internal projection leaves a 0.05-cell empty".into());
                }
            }
        }
        Ok(())
    }
}

/// Integer pairs `(u, v)` with `s (u + v c)` in `[p0, p1]` and
/// `s (u - v c)` in `[i0, i1]`, loosened slightly; callers filter exactly.
fn split_pairs(s: f64, c: f64, phys: (f64, f64), int: (f64, f64), budget: &mut usize) -> Result<Vec<(i64, i64)>> {
    let (p0, p1) = (phys.0 / s, phys.1 / s);
    let (i0, i1) = (int.0 / s, int.1 / s);
    let slack = |x: f64| 1e-9 * (1.0 + x.abs());
    let vlo = ((p0 - i1) / (2.0 * c) - slack(p0 - i1)).floor() as i64;
    let vhi = ((p1 - i0) / (2.0 * c) + slack(p1 - i0)).ceil() as i64;
    let mut out = Vec::new();
    for v in vlo..=vhi {
        let vc = v as f64 * c;
        let lo = (p0 - vc).max(i0 + vc);
        let hi = (p1 - vc).min(i1 + vc);
        let (ulo, uhi) = ((lo - slack(lo)).floor() as i64, (hi + slack(hi)).ceil() as i64);
        if ulo > uhi {
            continue;
        }
        let n = (uhi - ulo + 1) as usize;
        if n > *budget {
            return Err(Error::Resource(format!("candidate count exceeds the cap of {CANDIDATE_CAP}")));
        }
        *budget -= n;
        out.extend((ulo..=uhi).map(|u| (u, v)));
    }
    Ok(out)
}

/// Module coordinates whose image under `(phys, internal)` may lie in the
/// given boxes. `dual` selects the Fourier module. The result is a superset;
/// callers apply exact tests.
pub(crate) fn candidates(
    cps: CutProjectScheme,
    dual: bool,
    phys: (&[f64], &[f64]),
    int: (&[f64], &[f64]),
) -> Result<Vec<Vec<i64>>> {
    let mut budget = CANDIDATE_CAP;
    let s = if dual { 0.5 } else { 1.0 };
    match cps {
        CutProjectScheme::SilverMean => {
            let (s, c) = if dual { (0.5, SQRT2 / 2.0) } else { (1.0, SQRT2) };
            let pairs = split_pairs(s, c, (phys.0[0], phys.1[0]), (int.0[0], int.1[0]), &mut budget)?;
            Ok(pairs.into_iter().map(|(u, v)| vec![u, v]).collect())
        }
        CutProjectScheme::AmmannBeenker => {
            let c = SQRT2 / 2.0;
            // Re x = a0 + d c, Re x* = a0 - d c with d = a1 - a3;
            // Im x = a2 + e c, Im x* = -a2 + e c with e = a1 + a3.
            let re = split_pairs(s, c, (phys.0[0], phys.1[0]), (int.0[0], int.1[0]), &mut budget)?;
            let im = split_pairs(s, c, (phys.0[1], phys.1[1]), (-int.1[1], -int.0[1]), &mut budget)?;
            let (even, odd): (Vec<_>, Vec<_>) = im.into_iter().partition(|(_, e)| e.rem_euclid(2) == 0);
            let mut out = Vec::new();
            for (a0, d) in re {
                let partners = if d.rem_euclid(2) == 0 { &even } else { &odd };
                if partners.len() > budget {
                    return Err(Error::Resource(format!("candidate count exceeds the cap of {CANDIDATE_CAP}")));
                }
                budget -= partners.len();
                for &(a2, e) in partners {
                    out.push(vec![a0, (e + d) / 2, a2, (e - d) / 2]);
                }
            }
            Ok(out)
        }
    }
}

/// One point of a model set, with exact module coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSetPoint {
    pub coords: Vec<i64>,
    pub position: Vec<f64>,
    pub star: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSetSample {
    pub scheme: CutProjectScheme,
    pub points: Vec<ModelSetPoint>,
}

impl ModelSetSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn positions(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.position.clone()).collect()
    }
}

pub(crate) fn check_window(cps: CutProjectScheme, w: &Window) -> Result<()> {
    match w.dimension() {
        Some(m) if m != cps.internal_dimension() => {
            param(format!("window dimension {m} does not match the internal space of {cps:?}"))
        }
        _ => Ok(()),
    }
}

fn cmp_exact(a: &[Surd], b: &[Surd]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// `{x in L : x in region, x* in W}` with exact window tests.
pub fn modelset_points(cps: CutProjectScheme, window: &Window, region: &Region) -> Result<ModelSetSample> {
    cps.validate()?;
    check_window(cps, window)?;
    region.validate()?;
    if region.dimension() != cps.physical_dimension() {
        return param("region dimension does not match the physical space");
    }
    let Some((wlo, whi)) = window.bounding_box() else {
        return Ok(ModelSetSample { scheme: cps, points: Vec::new() });
    };
    let (rlo, rhi) = region.bounding_box();
    let mut pts: Vec<(Vec<Surd>, ModelSetPoint)> = Vec::new();
    for z in candidates(cps, false, (&rlo, &rhi), (&wlo, &whi))? {
        let star = cps.star(&z);
        if !window.contains(&star) {
            continue;
        }
        let phys = cps.physical(&z);
        let position: Vec<f64> = phys.iter().map(Surd::to_f64).collect();
        if !region.contains(&position) {
            continue;
        }
        let star = star.iter().map(Surd::to_f64).collect();
        pts.push((phys, ModelSetPoint { coords: z, position, star }));
    }
    pts.sort_by(|a, b| cmp_exact(&a.0, &b.0));
    Ok(ModelSetSample { scheme: cps, points: pts.into_iter().map(|p| p.1).collect() })
}
