//! Floating-point polygon geometry and Fourier transforms of indicator
//! functions, all with kernel `exp(-2 pi i k x)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{param, Result};

/// Simple polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<[f64; 2]>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_cross(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> bool {
    let d1 = cross(p, q, r);
    let d2 = cross(p, q, s);
    let d3 = cross(r, s, p);
    let d4 = cross(r, s, q);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

impl Polygon {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 || vertices.iter().flatten().any(|v| !v.is_finite()) {
            return param("polygon needs at least three finite vertices");
        }
        let p = Self { vertices };
        if p.signed_area() <= 0.0 {
            return param("polygon must be positively oriented with positive area");
        }
        let v = &p.vertices;
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                    return param("polygon edges intersect");
                }
            }
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn signed_area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| a[0] * b[1] - a[1] * b[0]).sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| (b[0] - a[0]).hypot(b[1] - a[1])).sum()
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        v.iter()
            .flat_map(|a| v.iter().map(move |b| (b[0] - a[0]).hypot(b[1] - a[1])))
            .fold(0.0, f64::max)
    }

    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]) >= 0.0)
    }

    pub fn translated(&self, t: [f64; 2]) -> Self {
        Self { vertices: self.vertices.iter().map(|v| [v[0] + t[0], v[1] + t[1]]).collect() }
    }

    /// `-P`, still counter-clockwise.
    pub fn reflected(&self) -> Self {
        Self { vertices: self.vertices.iter().map(|v| [-v[0], -v[1]]).collect() }
    }
}

/// `(e^{ia} - 1)/(ia) = e^{ia/2} sinc(a/2)`.
fn edge_factor(a: f64) -> Complex64 {
    let h = 0.5 * a;
    let sinc = if h.abs() < 1e-8 { 1.0 - h * h / 6.0 } else { h.sin() / h };
    Complex64::from_polar(sinc, h)
}

/// Complete homogeneous symmetric polynomial of degree `n` in three values.
fn h3(n: u32, a: f64, b: f64, c: f64) -> f64 {
    let mut s = 0.0;
    for i in 0..=n {
        for j in 0..=n - i {
            s += a.powi(i as i32) * b.powi(j as i32) * c.powi((n - i - j) as i32);
        }
    }
    s
}

/// `int_P e^{-2 pi i k.x} dx`.
///
/// Away from `k = 0` this is the boundary sum
/// `i/(2 pi |k|^2) sum_e (k x e) e^{-2 pi i k.v0} E(-2 pi k.e)`. For
/// `|k| diam(P) < 1e-3` the exponential is expanded about the first vertex
/// `c` and integrated over the fan triangles `(c, v_j, v_{j+1})`, using
/// `int_T f^n = 2|T| n!/(n+2)! h_n(f(A), f(B), f(C))` for linear `f`.
pub fn polygon_ft(p: &Polygon, k: [f64; 2]) -> Complex64 {
    let k2 = k[0] * k[0] + k[1] * k[1];
    if k2 == 0.0 {
        return Complex64::new(p.area(), 0.0);
    }
    if k2.sqrt() * p.diameter() < 1e-3 {
        let c = p.vertices[0];
        let mut out = Complex64::new(0.0, 0.0);
        for (a, b) in p.edges() {
            let area = 0.5 * cross(c, a, b);
            let fa = k[0] * (a[0] - c[0]) + k[1] * (a[1] - c[1]);
            let fb = k[0] * (b[0] - c[0]) + k[1] * (b[1] - c[1]);
            let mut coeff = Complex64::new(1.0, 0.0);
            for n in 0..8u32 {
                let moment = 2.0 * area * h3(n, 0.0, fa, fb) / factorial(n + 2);
                out += coeff * moment;
                coeff *= Complex64::new(0.0, -2.0 * PI);
            }
        }
        return out * Complex64::from_polar(1.0, -2.0 * PI * (k[0] * c[0] + k[1] * c[1]));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for (a, b) in p.edges() {
        let e = [b[0] - a[0], b[1] - a[1]];
        let w = k[0] * e[1] - k[1] * e[0];
        if w == 0.0 {
            continue;
        }
        let phase = Complex64::from_polar(1.0, -2.0 * PI * (k[0] * a[0] + k[1] * a[1]));
        s += w * phase * edge_factor(-2.0 * PI * (k[0] * e[0] + k[1] * e[1]));
    }
    s * Complex64::new(0.0, 1.0 / (2.0 * PI * k2))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `int_a^b e^{-2 pi i y x} dx`.
pub fn interval_ft(a: f64, b: f64, y: f64) -> Complex64 {
    let len = b - a;
    let u = PI * y * len;
    let sinc = if u.abs() < 1e-8 { 1.0 - u * u / 6.0 } else { u.sin() / u };
    Complex64::from_polar(len * sinc, -PI * y * (a + b))
}

/// Area of `P ∩ Q` for convex `Q` (Sutherland-Hodgman clipping of `P`).
pub fn convex_intersection_area(p: &Polygon, q: &Polygon) -> f64 {
    let mut poly: Vec<[f64; 2]> = p.vertices.clone();
    for (a, b) in q.edges() {
        if poly.is_empty() {
            break;
        }
        let input = std::mem::take(&mut poly);
        let n = input.len();
        for i in 0..n {
            let cur = input[i];
            let prev = input[(i + n - 1) % n];
            let cin = cross(a, b, cur) >= 0.0;
            let pin = cross(a, b, prev) >= 0.0;
            if cin {
                if !pin {
                    poly.push(line_hit(prev, cur, a, b));
                }
                poly.push(cur);
            } else if pin {
                poly.push(line_hit(prev, cur, a, b));
            }
        }
    }
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let s: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    (0.5 * s).max(0.0)
}

fn line_hit(p: [f64; 2], q: [f64; 2], a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    let dp = cross(a, b, p);
    let dq = cross(a, b, q);
    let t = dp / (dp - dq);
    [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(c: [f64; 2], s: f64) -> Polygon {
        let h = s / 2.0;
        Polygon::new(vec![
            [c[0] - h, c[1] - h],
            [c[0] + h, c[1] - h],
            [c[0] + h, c[1] + h],
            [c[0] - h, c[1] + h],
        ])
        .unwrap()
    }

    fn sinc(x: f64) -> f64 {
        if x == 0.0 {
            1.0
        } else {
            (PI * x).sin() / (PI * x)
        }
    }

    #[test]
    fn unit_square_is_sinc_product() {
        let sq = square([0.0, 0.0], 1.0);
        for k in [[1.0, 0.0], [0.3, 0.7], [0.0, 2.5], [-1.3, 0.2], [1e-5, 2e-5], [1e-12, 0.0]] {
            let got = polygon_ft(&sq, k);
            let want = sinc(k[0]) * sinc(k[1]);
            assert!((got - want).norm() < 1e-12, "{k:?}: {got} vs {want}");
        }
        assert!(polygon_ft(&sq, [1.0, 0.0]).norm() < 1e-15);
    }

    #[test]
    fn shifted_square_phase() {
        let sq = square([0.5, 0.25], 1.0);
        let k = [0.3, -0.4];
        let want = Complex64::from_polar(sinc(k[0]) * sinc(k[1]), -2.0 * PI * (0.5 * k[0] + 0.25 * k[1]));
        assert!((polygon_ft(&sq, k) - want).norm() < 1e-12);
        let small = [2e-5, -1e-5];
        let want = Complex64::from_polar(sinc(small[0]) * sinc(small[1]), -2.0 * PI * (0.5 * small[0] + 0.25 * small[1]));
        assert!((polygon_ft(&sq, small) - want).norm() < 1e-14);
    }

    #[test]
    fn zero_frequency_is_area() {
        let sq = square([3.0, -1.0], 2.0);
        assert_eq!(polygon_ft(&sq, [0.0, 0.0]), Complex64::new(4.0, 0.0));
    }

    #[test]
    fn interval_transform() {
        assert_eq!(interval_ft(-0.5, 0.5, 0.0), Complex64::new(1.0, 0.0));
        assert!(interval_ft(-0.5, 0.5, 1.0).norm() < 1e-15);
        let z = interval_ft(0.0, 1.0, 0.25);
        let want = (Complex64::new(0.0, -2.0 * PI * 0.25).exp() - 1.0) / Complex64::new(0.0, -2.0 * PI * 0.25);
        assert!((z - want).norm() < 1e-15);
    }

    #[test]
    fn clipping_areas() {
        let a = square([0.0, 0.0], 2.0);
        assert!((convex_intersection_area(&a, &a) - 4.0).abs() < 1e-15);
        assert!((convex_intersection_area(&a, &a.translated([0.5, 1.5])) - 1.5 * 0.5).abs() < 1e-14);
        assert_eq!(convex_intersection_area(&a, &a.translated([3.0, 0.0])), 0.0);
    }

    #[test]
    fn validation() {
        assert!(Polygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).is_err());
        assert!(Polygon::new(vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]).is_err());
        let sq = square([0.0, 0.0], 1.0);
        assert!(sq.is_convex());
        assert!((sq.perimeter() - 4.0).abs() < 1e-15);
    }
}
