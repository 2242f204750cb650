use std::f64::consts::PI;

use num_complex::Complex64;

use super::scheme::{candidates, check_window, CutProjectScheme};
use super::surd::Surd;
use super::window::{covariogram, Window};
use crate::comb::{BraggPeak, DiffractionOutput, Normalization, Region};
use crate::error::{param, Result};

fn to_f64s(v: &[Surd]) -> Vec<f64> {
    v.iter().map(Surd::to_f64).collect()
}

/// `dens(Lambda) = dens(L) vol(W)`.
pub fn modelset_density(cps: CutProjectScheme, window: &Window) -> f64 {
    cps.lattice_density() * window.volume()
}

/// `A(k) = dens(L) 1_W^(-k*)`, equal to `(dens(Lambda)/vol(W)) 1_W^(-k*)`,
/// for `k` given by its Fourier-module coordinates.
pub fn amplitude(cps: CutProjectScheme, window: &Window, k: &[i64]) -> Result<Complex64> {
    check_window(cps, window)?;
    if k.len() != cps.rank() {
        return param(format!("Fourier-module element needs {} integer coordinates", cps.rank()));
    }
    let q: Vec<f64> = cps.dual_star(k).iter().map(|s| -s.to_f64()).collect();
    Ok(cps.lattice_density() * window.fourier(&q))
}

/// Radius in internal space outside which `|A(k)|^2 < threshold |A(0)|^2`,
/// from `|1_W^(q)| <= perimeter / (2 pi |q|)`.
pub fn internal_radius(window: &Window, threshold: f64) -> f64 {
    window.perimeter() / (2.0 * PI * window.volume() * threshold.sqrt())
}

/// Bragg peaks at Fourier-module points in `k_region` with intensity at least
/// `threshold` times the central one. Labels are the exact module coordinates;
/// peaks are sorted by them.
pub fn peak_enumeration(
    cps: CutProjectScheme,
    window: &Window,
    k_region: &Region,
    threshold: f64,
) -> Result<DiffractionOutput> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return param("threshold must be a positive number");
    }
    cps.validate()?;
    check_window(cps, window)?;
    k_region.validate()?;
    if k_region.dimension() != cps.physical_dimension() {
        return param("k-region dimension does not match the physical space");
    }
    let mut out = DiffractionOutput::empty(Normalization::PerUnitVolume);
    if matches!(window, Window::Empty) {
        return Ok(out);
    }
    let i0 = modelset_density(cps, window).powi(2);
    let r = internal_radius(window, threshold);
    let m = cps.internal_dimension();
    let (klo, khi) = k_region.bounding_box();
    let (ilo, ihi) = (vec![-r; m], vec![r; m]);
    let mut found = Vec::new();
    for k in candidates(cps, true, (&klo, &khi), (&ilo, &ihi))? {
        let pos = to_f64s(&cps.dual_physical(&k));
        if !k_region.contains(&pos) {
            continue;
        }
        let star = to_f64s(&cps.dual_star(&k));
        if star.iter().map(|x| x * x).sum::<f64>().sqrt() > r * (1.0 + 1e-12) {
            continue;
        }
        let intensity = amplitude(cps, window, &k)?.norm_sqr();
        if intensity >= threshold * i0 {
            found.push((k, pos, intensity));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    out.pure_point = found
        .into_iter()
        .map(|(k, position, intensity)| BraggPeak { position, intensity, extinct: false, label: Some(k) })
        .collect();
    Ok(out)
}

/// `eta(z) = dens(L) cvg_W(z*)` for `z` in the module.
pub fn modelset_eta(cps: CutProjectScheme, window: &Window, z: &[i64]) -> Result<f64> {
    check_window(cps, window)?;
    if z.len() != cps.rank() {
        return param(format!("module element needs {} integer coordinates", cps.rank()));
    }
    if matches!(window, Window::Empty) {
        return Ok(0.0);
    }
    let star = to_f64s(&cps.star(z));
    Ok(cps.lattice_density() * covariogram(window, &star)?)
}
