//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diffractio::comb::{empirical_autocorrelation_real, lattice_comb_diffraction, LatticeSpec, Region, WeightedComb};
use diffractio::exact::{int, rat};
use diffractio::homometry::{
    homometry_check, is_exact_extinction, periodic_autocorrelation, periodic_diffraction, separating_tuple,
    PeriodicComb,
};
use diffractio::modelset::{
    amplitude, covariogram, homometric_window_pair, modelset_density, modelset_eta, modelset_points,
    peak_enumeration, polygon_ft, CutProjectScheme, Polygon, Window,
};
use diffractio::spectral::{gtm_distribution_series, volterra_tm_distribution, wiener_sigma, SeriesWeighting};
use diffractio::stochastic::{
    bernoullise, binned_periodogram, cluster_diffraction, dimer_block_image, empirical_auto_2d, periodogram,
    renewal_diffraction, renewal_h, renewal_measure_nu, rm_beta2_b, rm_beta2_f, rm_beta2_h, sample_dimer,
    sample_ledrappier, theoretical_eta_bernoullise, ClusterLaw, RenewalSpec, SeedSpec,
};
use diffractio::substitution::{binary_rs_sequence, rs_eta_theta, tm_eta, CoefficientSystem, ExactCoefficientTable};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_tm_exact() -> Outcome {
    let want = [int(1), rat(-1, 3), rat(-1, 3), rat(1, 3)];
    for (m, w) in want.iter().enumerate() {
        ensure(tm_eta(m as i64) == *w, || format!("eta({m}) = {}", tm_eta(m as i64)))?;
    }
    for m in 0..=2048 {
        ensure(tm_eta(2 * m) == tm_eta(m), || format!("eta(2m) != eta(m) at m = {m}"))?;
    }
    Ok("eta(0..3) = 1, -1/3, -1/3, 1/3; eta(2m) = eta(m) for m <= 2048".into())
}

fn c2_wiener() -> Outcome {
    let t = Instant::now();
    let w = wiener_sigma(tm_eta, 4096);
    let three_halves = rat(3, 2);
    for n in 1..=1024u64 {
        let (s4, s2) = (w.sigma(4 * n).unwrap(), w.sigma(2 * n).unwrap());
        ensure(*s4 <= &three_halves * s2, || format!("Sigma(4N) > 3/2 Sigma(2N) at N = {n}"))?;
    }
    let (r6, r3) = (w.ratio(4096).unwrap(), w.ratio(64).unwrap());
    ensure(r6 < r3, || format!("Sigma(4^6)/4^6 = {r6} not below Sigma(4^3)/4^3 = {r3}"))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("ratios {r3:.4} -> {r6:.4}, {secs:.2} s"))
}

fn c3_distribution() -> Outcome {
    let g = 1 << 14;
    let v = volterra_tm_distribution(20, g).map_err(|e| e.to_string())?;
    let s = gtm_distribution_series(1, 1, 4096, g, SeriesWeighting::Fejer).map_err(|e| e.to_string())?;
    let diff = v.values().iter().zip(s.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(diff < 5e-3, || format!("max pointwise difference {diff:e}"))?;
    for f in [&v, &s] {
        for q in [0.0, 0.5, 1.0] {
            let x = f.eval(q).unwrap();
            ensure((x - q).abs() < 1e-6, || format!("F({q}) = {x}"))?;
        }
        ensure(f.is_strictly_increasing(), || "distribution function not strictly increasing".into())?;
    }
    Ok(format!("max |F_volterra - F_series| = {diff:.2e}"))
}

fn c4_rudin_shapiro() -> Outcome {
    for m in -4096..=4096 {
        let (eta, theta) = rs_eta_theta(m);
        let want = if m == 0 { int(1) } else { int(0) };
        ensure(eta == want && theta.is_zero(), || format!("eta/theta wrong at m = {m}"))?;
    }
    let seq = binary_rs_sequence(0..1 << 20).map_err(|e| e.to_string())?;
    let eta = empirical_autocorrelation_real(&seq, 64).map_err(|e| e.to_string())?;
    let worst = eta[1..].iter().map(|v| v.abs()).fold(0.0, f64::max);
    ensure(worst < 1e-2, || format!("max |eta(m)| = {worst}"))?;
    Ok(format!("exact delta for |m| <= 4096; empirical max |eta| = {worst:.2e}"))
}

fn c5_bernoullisation() -> Outcome {
    let table = ExactCoefficientTable::build(CoefficientSystem::RudinShapiro, 64).map_err(|e| e.to_string())?;
    for p in [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)] {
        let g = theoretical_eta_bernoullise(&table.eta, &p).map_err(|e| e.to_string())?;
        for (m, v) in &g {
            let want = if *m == 0 { int(1) } else { int(0) };
            ensure(*v == want, || format!("p = {p}: eta({m}) = {v}"))?;
        }
    }
    let n = 1_000_000i64;
    let base = binary_rs_sequence(-n..n + 1).map_err(|e| e.to_string())?;
    let w = bernoullise(&base, 0.25, SeedSpec::new(2024)).map_err(|e| e.to_string())?;
    let eta = empirical_autocorrelation_real(&w, 8).map_err(|e| e.to_string())?;
    let worst = eta[1..].iter().map(|v| v.abs()).fold(0.0, f64::max);
    ensure(worst < 4e-3, || format!("max |eta(m)| = {worst}"))?;
    Ok(format!("exact delta for 5 values of p; empirical max |eta| = {worst:.2e}"))
}

fn c6_homometry() -> Outcome {
    let t = Instant::now();
    let a = PeriodicComb::from_integers(&[11, 25, 42, 45, 31, 14]).unwrap();
    let b = PeriodicComb::from_integers(&[10, 21, 39, 46, 35, 17]).unwrap();
    ensure(periodic_autocorrelation(&a) == periodic_autocorrelation(&b), || "autocorrelations differ".into())?;
    for comb in [&a, &b] {
        let d = periodic_diffraction(comb);
        for p in &d.pure_point {
            let l = p.label.as_ref().unwrap()[0];
            let expected = [2, 3, 4].contains(&l.rem_euclid(6));
            ensure(p.extinct == expected && is_exact_extinction(comb, l as usize) == expected, || {
                format!("extinction mismatch at l = {l}")
            })?;
        }
    }
    for r in 3..=5 {
        let s = separating_tuple(&a, &b, r).map_err(|e| e.to_string())?;
        ensure(s.is_none(), || format!("separated already at order {r}"))?;
    }
    let rep = homometry_check(&a, &b, 8).map_err(|e| e.to_string())?;
    ensure(rep.separating_order == Some(6), || format!("separating order {:?}", rep.separating_order))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1} s"))?;
    Ok(format!("order-6 witness {:?}, {secs:.2} s", rep.witness_tuple.unwrap()))
}

fn c7_silver_mean() -> Outcome {
    let cps = CutProjectScheme::SilverMean;
    let w = Window::silver_mean();
    let len = 1e4;
    let pts = modelset_points(cps, &w, &Region::interval(0.0, len)).map_err(|e| e.to_string())?;
    let counted = pts.len() as f64 / len;
    let theory = modelset_density(cps, &w);
    ensure((counted - theory).abs() < 1e-2, || format!("density {counted} vs {theory}"))?;
    // 10^4 points: the window [0, 2 10^4] at density 1/2.
    let big = modelset_points(cps, &w, &Region::interval(0.0, 2.0 * len)).map_err(|e| e.to_string())?;
    let xs: Vec<f64> = big.points.iter().map(|p| p.position[0]).collect();
    let span = 2.0 * len;
    let mut worst = 0.0f64;
    for k in [[0, 0], [1, 0], [0, 1], [1, 1], [2, 1], [-1, 1], [3, 2], [1, 2], [-2, 3], [4, 3]] {
        let kx = k[0] as f64 / 2.0 + k[1] as f64 * 2f64.sqrt() / 4.0;
        let s: Complex64 = xs.iter().map(|x| Complex64::from_polar(1.0, -2.0 * PI * kx * x)).sum();
        let emp = (s / span).norm_sqr();
        let th = amplitude(cps, &w, &k).map_err(|e| e.to_string())?.norm_sqr();
        worst = worst.max((emp - th).abs());
    }
    ensure(worst < 5e-3, || format!("max |periodogram - |A|^2| = {worst:e}"))?;
    Ok(format!("density {counted:.5} vs {theory:.5}; {} points; peak error {worst:.1e}", xs.len()))
}

/// Gauss-Legendre nodes and weights on [0, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            (0.5 * (1.0 - x), 0.5 * w)
        })
        .collect()
}

/// Integral of `e^{-2 pi i k.y}` over a convex polygon by a fan of
/// collapsed-square (Duffy) Gauss rules.
fn quadrature_ft(vertices: &[[f64; 2]], k: [f64; 2], rule: &[(f64, f64)]) -> Complex64 {
    let n = vertices.len() as f64;
    let c = [
        vertices.iter().map(|v| v[0]).sum::<f64>() / n,
        vertices.iter().map(|v| v[1]).sum::<f64>() / n,
    ];
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..vertices.len() {
        let (b, d) = (vertices[i], vertices[(i + 1) % vertices.len()]);
        let e1 = [b[0] - c[0], b[1] - c[1]];
        let e2 = [d[0] - b[0], d[1] - b[1]];
        let jac = (e1[0] * e2[1] - e1[1] * e2[0]).abs();
        for &(u, wu) in rule {
            for &(v, wv) in rule {
                let p = [c[0] + u * e1[0] + u * v * e2[0], c[1] + u * e1[1] + u * v * e2[1]];
                let phase = -2.0 * PI * (k[0] * p[0] + k[1] * p[1]);
                total += Complex64::from_polar(wu * wv * u * jac, phase);
            }
        }
    }
    total
}

fn c8_ammann_beenker() -> Outcome {
    let oct = match Window::octagon() {
        Window::Polygon(p) => p.polygon().clone(),
        _ => return Err("octagon is not a polygon window".into()),
    };
    let verts: Vec<[f64; 2]> = oct.vertices().to_vec();
    let poly = Polygon::new(verts.clone()).map_err(|e| e.to_string())?;
    let rule = gauss_legendre(40);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let k = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        let err = (polygon_ft(&poly, k) - quadrature_ft(&verts, k, &rule)).norm();
        worst = worst.max(err);
    }
    ensure(worst < 1e-8, || format!("max |FT - quadrature| = {worst:e}"))?;
    let cps = CutProjectScheme::AmmannBeenker;
    let peaks = peak_enumeration(cps, &Window::octagon(), &Region::Ball { dimension: 2, radius: 2.0 }, 1e-3)
        .map_err(|e| e.to_string())?;
    let labels: BTreeSet<Vec<i64>> = peaks.pure_point.iter().map(|p| p.label.clone().unwrap()).collect();
    let rotated: BTreeSet<Vec<i64>> = labels.iter().map(|l| cps.rotate(l).unwrap()).collect();
    ensure(labels == rotated, || "peak set not invariant under rotation by pi/4".into())?;
    Ok(format!("FT error {worst:.1e}; {} peaks, rotation invariant", labels.len()))
}

fn c9_covariograms() -> Outcome {
    let cells = [(0, 0), (1, 0), (2, 0), (2, 1), (0, 2)];
    let p = Window::polyomino(&cells).map_err(|e| e.to_string())?;
    let shifted = Window::polyomino(&cells.map(|(a, b)| (a + 5, b - 3))).map_err(|e| e.to_string())?;
    let cvg = |w: &Window, x: [f64; 2]| covariogram(w, &x).unwrap();
    ensure(cvg(&p, [0.0, 0.0]) == p.volume(), || "cvg(0) != vol(W)".into())?;
    let grid: Vec<f64> = (-16..=16).map(|i| i as f64 * 0.25).collect();
    for &x in &grid {
        for &y in &grid {
            ensure(cvg(&p, [x, y]) == cvg(&p, [-x, -y]), || format!("cvg(-x) != cvg(x) at {x},{y}"))?;
            ensure(cvg(&p, [x, y]) == cvg(&shifted, [x, y]), || format!("translation changes cvg at {x},{y}"))?;
        }
    }
    let (wa, wb) = homometric_window_pair(&[(0, 0), (2, 1), (5, 3)], &[(0, 0), (1, 0)]).map_err(|e| e.to_string())?;
    ensure(wa != wb, || "Minkowski pair windows coincide".into())?;
    for &x in &grid {
        for &y in &grid {
            let (ca, cb) = (cvg(&wa, [x, y]), cvg(&wb, [x, y]));
            ensure((ca - cb).abs() < 1e-12, || format!("covariograms differ at {x},{y}: {ca} vs {cb}"))?;
        }
    }
    let cps = CutProjectScheme::AmmannBeenker;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let z: Vec<i64> = (0..4).map(|_| rng.random_range(-3..=3)).collect();
        let (ea, eb) = (modelset_eta(cps, &wa, &z).unwrap(), modelset_eta(cps, &wb, &z).unwrap());
        ensure((ea - eb).abs() < 1e-12, || format!("eta differs at {z:?}"))?;
    }
    Ok("polyomino laws exact on a 0.25-grid; Minkowski pair agrees on 100 module elements".into())
}

fn c10_dimer() -> Outcome {
    let w = sample_dimer(1_000_000, SeedSpec::new(10)).map_err(|e| e.to_string())?;
    let eta = empirical_autocorrelation_real(&w, 2).map_err(|e| e.to_string())?;
    ensure((eta[1] + 0.5).abs() < 4e-3, || format!("eta(1) = {}", eta[1]))?;
    ensure(eta[2].abs() < 4e-3, || format!("eta(2) = {}", eta[2]))?;
    let w = sample_dimer((1 << 20) + 1, SeedSpec::new(11)).map_err(|e| e.to_string())?;
    let u = dimer_block_image(&w).map_err(|e| e.to_string())?;
    let l = u.len();
    let mass = periodogram(&u)[l / 2] / l as f64;
    ensure((mass - 0.25).abs() < 1e-2, || format!("Bragg mass at 1/2 = {mass}"))?;
    let bins = binned_periodogram(&u, 64).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (j, b) in bins.iter().enumerate() {
        // Bins 0 and 32 hold the Bragg ordinates at k = 0 and k = 1/2.
        if j != 0 && j != 32 {
            worst = worst.max((b.value - 0.5).abs());
        }
    }
    ensure(worst < 5e-2, || format!("ac floor deviates by {worst}"))?;
    Ok(format!("eta(1) = {:.4}, eta(2) = {:.4}, mass(1/2) = {mass:.4}, floor deviation {worst:.3}", eta[1], eta[2]))
}

fn c11_ledrappier() -> Outcome {
    let s = sample_ledrappier(1024, 1024, SeedSpec::new(12)).map_err(|e| e.to_string())?;
    ensure(s.constraint_holds(), || "constraint violated".into())?;
    let g = empirical_auto_2d(&s.to_f64(), 1024, 1024, 8).map_err(|e| e.to_string())?;
    let lags: [[i64; 2]; 20] = [
        [1, 0], [0, 1], [1, 1], [-1, 1], [2, 0], [0, 2], [2, 1], [1, 2], [-2, 1], [3, 0],
        [0, 3], [3, 3], [4, 0], [0, 4], [-4, 4], [5, 2], [6, 0], [0, 7], [8, 8], [-8, 3],
    ];
    let mut worst = 0.0f64;
    for z in lags {
        worst = worst.max(g.get(&z).unwrap().re.abs());
    }
    ensure(worst < 0.01, || format!("max |eta| = {worst}"))?;
    Ok(format!("constraint holds; max |eta(z)| over 20 lags = {worst:.2e}"))
}

fn c12_renewal() -> Outcome {
    let grid: Vec<f64> = (-400..=400).map(|i| i as f64 * 0.01).collect();
    let exp = RenewalSpec::exponential(1.0).map_err(|e| e.to_string())?;
    let worst_h = grid.iter().filter_map(|&k| renewal_h(&exp, k)).map(f64::abs).fold(0.0, f64::max);
    ensure(worst_h < 1e-12, || format!("exponential |h| up to {worst_h:e}"))?;
    let d = renewal_diffraction(&exp, &grid).map_err(|e| e.to_string())?;
    ensure(d.pure_point.len() == 1 && d.pure_point[0].position == [0.0], || "exponential pp part is not delta_0".into())?;

    let det = RenewalSpec::deterministic(int(1)).map_err(|e| e.to_string())?;
    let d = renewal_diffraction(&det, &grid).map_err(|e| e.to_string())?;
    let pos: Vec<f64> = d.pure_point.iter().map(|p| p.position[0]).collect();
    ensure(pos == [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0], || format!("deterministic peaks {pos:?}"))?;
    let worst_ac = d.ac_density.iter().map(|s| s.value.abs()).fold(0.0, f64::max);
    ensure(worst_ac < 1e-12, || format!("deterministic ac density up to {worst_ac:e}"))?;

    let two = RenewalSpec::discrete(vec![(rat(1, 2), rat(1, 2)), (rat(3, 2), rat(1, 2))]).map_err(|e| e.to_string())?;
    let d = renewal_diffraction(&two, &grid).map_err(|e| e.to_string())?;
    let pos: Vec<f64> = d.pure_point.iter().map(|p| p.position[0]).collect();
    ensure(pos == [-4.0, -2.0, 0.0, 2.0, 4.0], || format!("two-atom peaks {pos:?}"))?;

    // nu = mu + mu * nu on the atoms j/2, j = 1..20, with mu = (delta_{1/2} + delta_{3/2}) / 2.
    let xs: Vec<f64> = (1..=20).map(|j| j as f64 / 2.0).collect();
    let nu = renewal_measure_nu(&two, &xs, 40, 1e-9).map_err(|e| e.to_string())?;
    let at = |j: i64| if j >= 1 { nu.values[(j - 1) as usize] } else { 0.0 };
    let mu = |j: i64| if j == 1 || j == 3 { 0.5 } else { 0.0 };
    let mut worst = 0.0f64;
    for j in 1..=20i64 {
        let conv: f64 = (1..j).map(|i| mu(i) * at(j - i)).sum();
        worst = worst.max((at(j) - mu(j) - conv).abs());
    }
    ensure(worst < 1e-6 && worst <= nu.tail_bound + 1e-12, || format!("renewal residual {worst:e}"))?;
    Ok(format!("|h_exp| <= {worst_h:.1e}; renewal residual {worst:.1e} (tail bound {:.1e})", nu.tail_bound))
}

fn c13_clusters() -> Outcome {
    let z = LatticeSpec::scaled_integers(1.0).unwrap();
    let base = lattice_comb_diffraction(&z, &WeightedComb::dirac(&[0.0]).unwrap(), &Region::interval(-3.0, 3.0))
        .map_err(|e| e.to_string())?;
    let grid: Vec<Vec<f64>> = (0..=60).map(|i| vec![-3.0 + 0.1 * i as f64]).collect();
    let out = cluster_diffraction(&base, 1.0, &ClusterLaw::fair_sign(), &grid).map_err(|e| e.to_string())?;
    ensure(out.pure_point.iter().all(|p| p.intensity == 0.0), || "fair signs leave a peak".into())?;
    ensure(out.ac_density.iter().all(|s| s.value == 1.0), || "fair signs do not give density 1".into())?;

    // Monte Carlo: n + X_n with X_n = +-1/4 on the torus (1/4)Z / 4N Z.
    let law = ClusterLaw::RandomDisplacement { offsets: vec![(vec![0.25], 0.5), (vec![-0.25], 0.5)] };
    let n = 1_000_000usize;
    let mut rng = SeedSpec::new(13).rng();
    let mut sites = vec![0.0; 4 * n];
    for i in 0..n {
        let j = if rng.random_bool(0.5) { 4 * i + 1 } else { (4 * i + 4 * n - 1) % (4 * n) };
        sites[j] = 1.0;
    }
    // Ordinate j sits at k = j / n. The sample covers length n with 4n sites,
    // so |sum|^2 / n is four times the site-normalised periodogram.
    let p: Vec<f64> = periodogram(&sites).into_iter().map(|v| 4.0 * v).collect();
    let theory = cluster_diffraction(&base, 1.0, &law, &[]).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for peak in theory.pure_point.iter().filter(|p| p.position[0] >= 0.0) {
        let j = (peak.position[0] as usize) * n;
        worst = worst.max((p[j] / n as f64 - peak.intensity).abs());
    }
    let bins = 8;
    let per = 4 * n / bins;
    for b in 0..bins {
        let (mut emp, mut th, mut count) = (0.0, 0.0, 0.0);
        for j in (b * per..(b + 1) * per).filter(|j| j % n != 0) {
            let k = [j as f64 / n as f64];
            emp += p[j];
            th += law.second_moment(&k) - law.first_moment(&k).norm_sqr();
            count += 1.0;
        }
        worst = worst.max(((emp - th) / count).abs());
    }
    ensure(worst < 5e-3, || format!("Monte Carlo deviation {worst:e}"))?;
    Ok(format!("fair signs give Lebesgue exactly; displacement Monte Carlo deviation {worst:.1e}"))
}

fn c14_beta2() -> Outcome {
    ensure(rm_beta2_h(0.0) == 0.0 && rm_beta2_h(1.0) == 1.0 && rm_beta2_h(-1.0) == 1.0, || "h at bends".into())?;
    let ks: Vec<f64> = (-400..=400).map(|i| i as f64 / 100.0).collect();
    for &k in &ks {
        if k.abs() >= 1.0 {
            ensure(rm_beta2_h(k) == 1.0, || format!("h({k}) != 1"))?;
        }
        // Second differences vanish away from the bends.
        let step = 1e-3;
        if [0.0f64, 1.0, -1.0].iter().all(|b| (k - b).abs() > 2.0 * step) {
            let d2 = rm_beta2_h(k + step) - 2.0 * rm_beta2_h(k) + rm_beta2_h(k - step);
            ensure(d2.abs() < 1e-12, || format!("h bends at {k}"))?;
        }
    }
    // Simpson rule for f(x) cos(2 pi k x) on [-200, 200].
    let (a, m) = (200.0, 80_000usize);
    let h = 2.0 * a / m as f64;
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let k = -2.0 + 0.1 * i as f64;
        let mut s = 0.0;
        for j in 0..=m {
            let x = -a + j as f64 * h;
            let wt = if j == 0 || j == m { 1.0 } else if j % 2 == 1 { 4.0 } else { 2.0 };
            s += wt * rm_beta2_f(x) * (2.0 * PI * k * x).cos();
        }
        worst = worst.max((s * h / 3.0 - rm_beta2_b(k)).abs());
    }
    ensure(worst < 1e-3, || format!("max |FT f - b| = {worst:e}"))?;
    Ok(format!("shape checks pass; max |FT f - b| = {worst:.1e}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("Thue-Morse exact coefficients", c1_tm_exact),
        ("Thue-Morse Wiener inequality", c2_wiener),
        ("Thue-Morse distribution function", c3_distribution),
        ("Rudin-Shapiro coefficients", c4_rudin_shapiro),
        ("Bernoullisation invariance", c5_bernoullisation),
        ("periodic homometric pair", c6_homometry),
        ("silver mean model set", c7_silver_mean),
        ("Ammann-Beenker model set", c8_ammann_beenker),
        ("covariogram laws", c9_covariograms),
        ("random dimers", c10_dimer),
        ("Ledrappier configurations", c11_ledrappier),
        ("renewal processes", c12_renewal),
        ("random clusters", c13_clusters),
        ("beta = 2 densities", c14_beta2),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2} s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

