use nalgebra::DMatrix;

use super::{BraggPeak, DiffractionOutput, Normalization, Region, WeightedComb, EXTINCTION_RELATIVE_TOL};
use crate::error::{param, Error, Result};

const SINGULAR_TOL: f64 = 1e-12;
const CANDIDATE_CAP: u64 = 10_000_000;

/// Lattice in `R^d` spanned by the rows of `basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    basis: DMatrix<f64>,
}

impl LatticeSpec {
    pub fn new(basis: Vec<Vec<f64>>) -> Result<Self> {
        let d = basis.len();
        if d == 0 || basis.iter().any(|r| r.len() != d) {
            return param("lattice basis must be a non-empty square matrix");
        }
        if basis.iter().flatten().any(|v| !v.is_finite()) {
            return param("lattice basis must be finite");
        }
        let m = DMatrix::from_fn(d, d, |i, j| basis[i][j]);
        if m.determinant().abs() <= SINGULAR_TOL {
            return param("lattice basis is singular");
        }
        Ok(Self { basis: m })
    }

    /// `aZ` in one dimension.
    pub fn scaled_integers(a: f64) -> Result<Self> {
        Self::new(vec![vec![a]])
    }

    pub fn dimension(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<f64> {
        self.basis.row(i).iter().copied().collect()
    }

    pub fn basis_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dimension()).map(|i| self.basis_vector(i)).collect()
    }

    pub fn determinant(&self) -> f64 {
        self.basis.determinant()
    }

    /// Points per unit volume, `1/|det|`.
    pub fn density(&self) -> f64 {
        1.0 / self.determinant().abs()
    }

    /// Lattice point with integer coordinates `n` relative to the basis.
    pub fn point(&self, n: &[i64]) -> Vec<f64> {
        let d = self.dimension();
        (0..d)
            .map(|j| (0..d).map(|i| n[i] as f64 * self.basis[(i, j)]).sum())
            .collect()
    }

    /// Inclusive integer coordinate ranges of lattice points inside the box
    /// `[lo, hi]`, obtained from the dual basis (`n_i = x . dual_i`).
    pub(crate) fn coordinate_ranges(&self, lo: &[f64], hi: &[f64]) -> Result<Vec<(i64, i64)>> {
        let dual = dual_lattice(self)?;
        let d = self.dimension();
        let mut ranges = Vec::with_capacity(d);
        for i in 0..d {
            let (mut a, mut b) = (0.0, 0.0);
            for j in 0..d {
                let c = dual.basis[(i, j)];
                a += (c * lo[j]).min(c * hi[j]);
                b += (c * lo[j]).max(c * hi[j]);
            }
            ranges.push(((a - 1e-9).floor() as i64, (b + 1e-9).ceil() as i64));
        }
        let count = ranges
            .iter()
            .try_fold(1u64, |acc, (a, b)| acc.checked_mul((b - a + 1) as u64))
            .unwrap_or(u64::MAX);
        if count > CANDIDATE_CAP {
            return Err(Error::Resource(format!(
                "{count} lattice candidates exceed the cap of {CANDIDATE_CAP}"
            )));
        }
        Ok(ranges)
    }
}

/// Dual lattice `{x : x.y in Z for all y in the lattice}`; its basis is the
/// inverse transpose of the original one.
pub fn dual_lattice(lattice: &LatticeSpec) -> Result<LatticeSpec> {
    let inv = lattice
        .basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Parameter("lattice basis is singular".into()))?;
    Ok(LatticeSpec { basis: inv.transpose() })
}

/// Iterates all integer vectors inside the given inclusive ranges in
/// lexicographic order.
pub(crate) fn for_each_integer_point(ranges: &[(i64, i64)], mut f: impl FnMut(&[i64])) {
    if ranges.iter().any(|(a, b)| a > b) {
        return;
    }
    let mut n: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&n);
        let mut i = n.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if n[i] < ranges[i].1 {
                n[i] += 1;
                break;
            }
            n[i] = ranges[i].0;
        }
    }
}

/// Diffraction of the crystal `motif * delta_Gamma` inside `k_region`:
/// peaks on the dual lattice with intensity `dens(Gamma)^2 |motif_hat(k)|^2`.
pub fn lattice_comb_diffraction(
    lattice: &LatticeSpec,
    motif: &WeightedComb,
    k_region: &Region,
) -> Result<DiffractionOutput> {
    k_region.validate()?;
    let d = lattice.dimension();
    if motif.dimension() != d || k_region.dimension() != d {
        return param("lattice, motif and k-region dimensions differ");
    }
    let dual = dual_lattice(lattice)?;
    let (lo, hi) = k_region.bounding_box();
    let ranges = dual.coordinate_ranges(&lo, &hi)?;
    let dens2 = lattice.density().powi(2);
    let mut out = DiffractionOutput::empty(Normalization::PerUnitVolume);
    for_each_integer_point(&ranges, |n| {
        let k = dual.point(n);
        if k_region.contains(&k) {
            out.pure_point.push(BraggPeak {
                intensity: dens2 * motif.fourier(&k).norm_sqr(),
                position: k,
                extinct: false,
                label: Some(n.to_vec()),
            });
        }
    });
    out.mark_extinctions(EXTINCTION_RELATIVE_TOL);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_are_self_dual() {
        let z = LatticeSpec::scaled_integers(1.0).unwrap();
        assert_eq!(dual_lattice(&z).unwrap().basis_vector(0), vec![1.0]);
    }

    #[test]
    fn dual_of_2z_is_half_integers() {
        let l = LatticeSpec::scaled_integers(2.0).unwrap();
        let d = dual_lattice(&l).unwrap();
        assert_eq!(d.basis_vector(0), vec![0.5]);
        assert!((d.density() * l.density() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn singular_basis_rejected() {
        assert!(matches!(
            LatticeSpec::new(vec![vec![1.0, 2.0], vec![2.0, 4.0]]),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn unit_motif_on_integers() {
        let z = LatticeSpec::scaled_integers(1.0).unwrap();
        let motif = WeightedComb::dirac(&[0.0]).unwrap();
        let out = lattice_comb_diffraction(&z, &motif, &Region::interval(-3.0, 3.0)).unwrap();
        assert_eq!(out.pure_point.len(), 7);
        assert!(out.pure_point.iter().all(|p| p.intensity == 1.0));
        assert!(out.ac_density.is_empty() && out.sc_distribution.is_none());
    }

    #[test]
    fn odometer_visits_box() {
        let mut seen = Vec::new();
        for_each_integer_point(&[(0, 1), (-1, 0)], |n| seen.push(n.to_vec()));
        assert_eq!(seen, vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]);
    }
}
