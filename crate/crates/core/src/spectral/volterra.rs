use std::f64::consts::PI;

use super::{Construction, DistributionFunction};
use crate::error::{param, Result};
use crate::exact::CompensatedSum;

/// `1 - sin(u)/u` without cancellation for small `u`.
fn one_minus_sinc(u: f64) -> f64 {
    if u.abs() < 1e-2 {
        let u2 = u * u;
        u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0 * (1.0 - u2 / 72.0)))
    } else {
        1.0 - u.sin() / u
    }
}

/// Iterates `F_{n+1}(x) = 1/2 int_0^{2x} (1 - cos pi y) F_n'(y) dy` from
/// `F_0(x) = x` on the grid `x_i = i/G`.
///
/// `F_n` is kept as its cell masses, so `F_n'` is piecewise constant and each
/// cell integral of `1 - cos pi y` is evaluated in closed form. `F_n'` on
/// `[1, 2]` comes from `F(x+1) = 1 + F(x)`.
pub fn volterra_tm_distribution(iterations: u32, grid_size: usize) -> Result<DistributionFunction> {
    if grid_size < 2 {
        return param("Volterra iteration needs grid_size >= 2");
    }
    let g = grid_size;
    let h = 1.0 / g as f64;
    // Cell j of [0, 2] is [j h, (j+1) h]; its integral of 1 - cos(pi y) is
    // h (1 - s cos(pi c)) = h ((1 - s) + 2 s sin^2(pi c / 2)),
    // with c the centre and s = sinc(pi h / 2).
    let u = 0.5 * PI * h;
    let one_minus_s = one_minus_sinc(u);
    let s = 1.0 - one_minus_s;
    let weight: Vec<f64> = (0..2 * g)
        .map(|j| {
            let c = (j as f64 + 0.5) * h;
            let sn = (0.5 * PI * c).sin();
            // integral divided by h, i.e. the cell average of 1 - cos(pi y)
            one_minus_s + 2.0 * s * sn * sn
        })
        .collect();
    let mut mass = vec![h; g];
    for _ in 0..iterations {
        // new mass on [x_i, x_{i+1}] = 1/2 (avg_{2i} m_{2i} + avg_{2i+1} m_{2i+1})
        mass = (0..g)
            .map(|i| {
                let (a, b) = (2 * i, 2 * i + 1);
                0.5 * (weight[a] * mass[a % g] + weight[b] * mass[b % g])
            })
            .collect();
    }
    let mut acc = CompensatedSum::default();
    let mut values = Vec::with_capacity(g + 1);
    values.push(0.0);
    for m in &mass {
        acc.add(*m);
        values.push(acc.value());
    }
    let grid = (0..=g).map(|i| i as f64 * h).collect();
    DistributionFunction::build(grid, values, mass, Construction::Volterra { iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_iterations_is_identity() {
        let f = volterra_tm_distribution(0, 64).unwrap();
        for (x, v) in f.grid().iter().zip(f.values()) {
            assert!((x - v).abs() < 1e-15);
        }
    }

    #[test]
    fn first_iterate_closed_form() {
        let f = volterra_tm_distribution(1, 256).unwrap();
        for (x, v) in f.grid().iter().zip(f.values()) {
            let want = x - (2.0 * PI * x).sin() / (2.0 * PI);
            assert!((v - want).abs() < 1e-14, "x = {x}");
        }
        assert!((f.eval(0.25).unwrap() - (0.25 - 1.0 / (2.0 * PI))).abs() < 1e-14);
    }

    #[test]
    fn mass_and_symmetry() {
        let f = volterra_tm_distribution(20, 1 << 12).unwrap();
        let v = f.values();
        let g = v.len() - 1;
        assert!((v[g] - 1.0).abs() < 1e-12);
        assert!((v[g / 2] - 0.5).abs() < 1e-6);
        for i in 0..=g {
            assert!((v[g - i] - (1.0 - v[i])).abs() < 1e-9);
        }
        assert!(f.is_strictly_increasing());
        assert!(v.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn tiny_grid_rejected() {
        assert!(volterra_tm_distribution(3, 1).is_err());
    }
}
