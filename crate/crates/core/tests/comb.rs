use diffractio::comb::{
    empirical_autocorrelation, finite_fourier, lattice_comb_diffraction, LatticeSpec, Region, WeightedComb,
};
use num_complex::Complex64;
use proptest::prelude::*;

/// A window of length `2N+1` together with a lag bound `M <= N`.
fn window_strategy() -> impl Strategy<Value = (Vec<Complex64>, usize)> {
    (1usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| Complex64::new(a, b)), 2 * n + 1),
            0..=n,
        )
    })
}

proptest! {
    #[test]
    fn empirical_autocorrelation_is_hermitian((w, max_lag) in window_strategy()) {
        let eta = empirical_autocorrelation(&w, max_lag).unwrap();
        for (lag, v) in eta.iter() {
            let back = eta.get(&[-lag[0]]).unwrap();
            prop_assert_eq!(back, v.conj());
        }
        let e0 = eta.at(0).unwrap();
        prop_assert_eq!(e0.im, 0.0);
        prop_assert!(e0.re >= 0.0);
    }

    #[test]
    fn empirical_autocorrelation_is_bounded_by_energy((w, max_lag) in window_strategy()) {
        let eta = empirical_autocorrelation(&w, max_lag).unwrap();
        let bound = w.iter().map(|z| z.norm_sqr()).sum::<f64>() / w.len() as f64;
        for (_, v) in eta.iter() {
            prop_assert!(v.norm() <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn intensities_ignore_motif_translation(
        pts in prop::collection::btree_set(-20i32..20, 1..6),
        t in -2.0f64..2.0,
        a in 0.5f64..2.0,
    ) {
        let entries: Vec<(f64, f64)> = pts.iter().enumerate().map(|(i, &x)| (x as f64 * 0.05, 1.0 + i as f64)).collect();
        let motif = WeightedComb::from_real_1d(&entries).unwrap();
        let moved = motif.translated(&[t]).unwrap();
        let lattice = LatticeSpec::scaled_integers(a).unwrap();
        let region = Region::interval(-3.0, 3.0);
        let p = lattice_comb_diffraction(&lattice, &motif, &region).unwrap();
        let q = lattice_comb_diffraction(&lattice, &moved, &region).unwrap();
        prop_assert_eq!(p.pure_point.len(), q.pure_point.len());
        for (x, y) in p.pure_point.iter().zip(&q.pure_point) {
            prop_assert_eq!(&x.position, &y.position);
            prop_assert!((x.intensity - y.intensity).abs() <= 1e-9 * (1.0 + x.intensity));
        }
    }

    #[test]
    fn unit_motif_peaks_sit_on_dual_lattice(a in 0.25f64..4.0) {
        let lattice = LatticeSpec::scaled_integers(a).unwrap();
        let motif = WeightedComb::dirac(&[0.0]).unwrap();
        let out = lattice_comb_diffraction(&lattice, &motif, &Region::interval(-5.0, 5.0)).unwrap();
        let expected = ((5.0 * a + 1e-9).floor() as i64) * 2 + 1;
        prop_assert_eq!(out.pure_point.len() as i64, expected);
        for p in &out.pure_point {
            let j = (p.position[0] * a).round();
            prop_assert!((p.position[0] - j / a).abs() < 1e-12);
            prop_assert!((p.intensity - 1.0 / (a * a)).abs() < 1e-12);
        }
    }

    #[test]
    fn real_motif_transform_is_hermitian(
        entries in prop::collection::btree_map(-50i32..50, -5.0f64..5.0, 1..8),
        k in -10.0f64..10.0,
    ) {
        let e: Vec<(f64, f64)> = entries.iter().map(|(&x, &w)| (x as f64 * 0.1, w)).collect();
        let motif = WeightedComb::from_real_1d(&e).unwrap();
        let f = finite_fourier(&motif);
        let d = f(&[k]) - f(&[-k]).conj();
        prop_assert!(d.norm() < 1e-12);
    }
}

#[test]
fn square_lattice_peaks_have_unit_intensity() {
    let lattice = LatticeSpec::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let motif = WeightedComb::dirac(&[0.0, 0.0]).unwrap();
    let region = Region::Box { lo: vec![-1.5, -1.5], hi: vec![1.5, 1.5] };
    let out = lattice_comb_diffraction(&lattice, &motif, &region).unwrap();
    assert_eq!(out.pure_point.len(), 9);
    assert!(out.pure_point.iter().all(|p| (p.intensity - 1.0).abs() < 1e-12));
}

#[test]
fn half_shifted_pair_is_extinct_at_odd_k() {
    let motif = WeightedComb::from_real_1d(&[(0.0, 1.0), (0.5, 1.0)]).unwrap();
    let lattice = LatticeSpec::scaled_integers(1.0).unwrap();
    let out = lattice_comb_diffraction(&lattice, &motif, &Region::interval(-3.0, 3.0)).unwrap();
    for p in &out.pure_point {
        let k = p.position[0].round() as i64;
        assert_eq!(p.extinct, k % 2 != 0, "k = {k}");
    }
}
