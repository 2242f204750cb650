use std::collections::BTreeSet;

use num_complex::Complex64;

use super::geometry::{convex_intersection_area, interval_ft, polygon_ft, Polygon};
use super::surd::Surd;
use crate::error::{param, Error, Result};

/// Internal-space window. Boundaries are given exactly (endpoints and
/// vertices in `Q(sqrt 2)`, polyomino cells on the integer grid), so
/// membership of module points is decided exactly. Windows are closed.
#[derive(Debug, Clone, PartialEq)]
pub enum Window {
    /// Contains nothing; selects the empty model set.
    Empty,
    Interval { lo: Surd, hi: Surd },
    /// Convex polygon, vertices counter-clockwise.
    Polygon(ExactPolygon),
    Polyomino(Polyomino),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactPolygon {
    vertices: Vec<[Surd; 2]>,
    approx: Polygon,
}

impl ExactPolygon {
    pub fn new(vertices: Vec<[Surd; 2]>) -> Result<Self> {
        let approx = Polygon::new(vertices.iter().map(|v| [v[0].to_f64(), v[1].to_f64()]).collect())?;
        let n = vertices.len();
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if exact_cross(a, b, c).signum() < 0 {
                return param("polygon window must be convex");
            }
        }
        Ok(Self { vertices, approx })
    }

    pub fn vertices(&self) -> &[[Surd; 2]] {
        &self.vertices
    }

    pub fn polygon(&self) -> &Polygon {
        &self.approx
    }

    pub fn contains(&self, p: [Surd; 2]) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| exact_cross(self.vertices[i], self.vertices[(i + 1) % n], p).signum() >= 0)
    }

    /// Twice the area, exactly.
    pub fn double_area(&self) -> Surd {
        let n = self.vertices.len();
        (0..n).fold(Surd::default(), |acc, i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            acc + a[0] * b[1] - a[1] * b[0]
        })
    }
}

fn exact_cross(o: [Surd; 2], a: [Surd; 2], b: [Surd; 2]) -> Surd {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Union of closed unit cells `[i, i+1] x [j, j+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyomino {
    cells: BTreeSet<(i64, i64)>,
}

impl Polyomino {
    pub fn new(cells: &[(i64, i64)]) -> Result<Self> {
        if cells.is_empty() {
            return param("polyomino needs at least one cell");
        }
        let set: BTreeSet<_> = cells.iter().copied().collect();
        if set.len() != cells.len() {
            return param("polyomino cells must be distinct");
        }
        Ok(Self { cells: set })
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn translated(&self, t: (i64, i64)) -> Self {
        Self { cells: self.cells.iter().map(|c| (c.0 + t.0, c.1 + t.1)).collect() }
    }

    pub fn contains(&self, p: [Surd; 2]) -> bool {
        let (fx, fy) = (p[0].floor(), p[1].floor());
        let xs = if Surd::int(fx) == p[0] { vec![fx - 1, fx] } else { vec![fx] };
        let ys = if Surd::int(fy) == p[1] { vec![fy - 1, fy] } else { vec![fy] };
        xs.iter().any(|&i| ys.iter().any(|&j| self.cells.contains(&(i, j))))
    }

    /// Number of unit edges on the boundary.
    pub fn perimeter(&self) -> f64 {
        let mut n = 0;
        for &(i, j) in &self.cells {
            for d in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                if !self.cells.contains(&(i + d.0, j + d.1)) {
                    n += 1;
                }
            }
        }
        n as f64
    }

    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
        for &(i, j) in &self.cells {
            lo = [lo[0].min(i as f64), lo[1].min(j as f64)];
            hi = [hi[0].max(i as f64 + 1.0), hi[1].max(j as f64 + 1.0)];
        }
        (lo, hi)
    }
}

fn tri(u: f64) -> f64 {
    (1.0 - u.abs()).max(0.0)
}

impl Window {
    /// `[lo, hi]` with `lo < hi`.
    pub fn interval(lo: Surd, hi: Surd) -> Result<Self> {
        if lo >= hi {
            return param("interval window needs lo < hi");
        }
        Ok(Window::Interval { lo, hi })
    }

    /// `[-sqrt2/2, sqrt2/2]`, the window of the silver mean point set.
    pub fn silver_mean() -> Self {
        Window::Interval { lo: Surd::frac(0, -1, 2), hi: Surd::frac(0, 1, 2) }
    }

    /// Regular octagon with edge length 1, centred at 0, edges parallel to
    /// the eighth roots of unity.
    pub fn octagon() -> Self {
        let h = Surd::frac(1, 0, 2);
        let r = Surd::frac(1, 1, 2);
        let v = vec![
            [r, -h],
            [r, h],
            [h, r],
            [-h, r],
            [-r, h],
            [-r, -h],
            [-h, -r],
            [h, -r],
        ];
        Window::Polygon(ExactPolygon::new(v).expect("octagon is a valid convex polygon"))
    }

    pub fn polygon(vertices: Vec<[Surd; 2]>) -> Result<Self> {
        Ok(Window::Polygon(ExactPolygon::new(vertices)?))
    }

    pub fn polyomino(cells: &[(i64, i64)]) -> Result<Self> {
        Ok(Window::Polyomino(Polyomino::new(cells)?))
    }

    /// Internal dimension, `None` for the empty window.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Window::Empty => None,
            Window::Interval { .. } => Some(1),
            _ => Some(2),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Window::Empty => 0.0,
            Window::Interval { lo, hi } => (*hi - *lo).to_f64(),
            Window::Polygon(p) => 0.5 * p.double_area().to_f64(),
            Window::Polyomino(p) => p.len() as f64,
        }
    }

    /// Upper bound for the boundary length, used by peak search bounds.
    pub fn perimeter(&self) -> f64 {
        match self {
            Window::Empty => 0.0,
            Window::Interval { .. } => 2.0,
            Window::Polygon(p) => p.approx.perimeter(),
            Window::Polyomino(p) => p.perimeter(),
        }
    }

    /// Bounding box `(lo, hi)` in internal space.
    pub fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            Window::Empty => None,
            Window::Interval { lo, hi } => Some((vec![lo.to_f64()], vec![hi.to_f64()])),
            Window::Polygon(p) => {
                let v = p.approx.vertices();
                let lo = (0..2).map(|d| v.iter().map(|x| x[d]).fold(f64::MAX, f64::min)).collect();
                let hi = (0..2).map(|d| v.iter().map(|x| x[d]).fold(f64::MIN, f64::max)).collect();
                Some((lo, hi))
            }
            Window::Polyomino(p) => {
                let (lo, hi) = p.bounds();
                Some((lo.to_vec(), hi.to_vec()))
            }
        }
    }

    /// Exact membership of an internal point.
    pub fn contains(&self, y: &[Surd]) -> bool {
        match (self, y) {
            (Window::Interval { lo, hi }, [x]) => lo <= x && x <= hi,
            (Window::Polygon(p), [a, b]) => p.contains([*a, *b]),
            (Window::Polyomino(p), [a, b]) => p.contains([*a, *b]),
            _ => false,
        }
    }

    /// `int_W e^{-2 pi i q.y} dy`.
    pub fn fourier(&self, q: &[f64]) -> Complex64 {
        match (self, q) {
            (Window::Interval { lo, hi }, [y]) => interval_ft(lo.to_f64(), hi.to_f64(), *y),
            (Window::Polygon(p), [a, b]) => polygon_ft(&p.approx, [*a, *b]),
            (Window::Polyomino(p), [a, b]) => p
                .cells()
                .map(|(i, j)| {
                    interval_ft(i as f64, i as f64 + 1.0, *a) * interval_ft(j as f64, j as f64 + 1.0, *b)
                })
                .sum(),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    /// Largest distance between two window points (bounding-box diagonal for
    /// polyominoes).
    pub fn diameter(&self) -> f64 {
        match self {
            Window::Empty => 0.0,
            Window::Interval { lo, hi } => (*hi - *lo).to_f64(),
            Window::Polygon(p) => p.approx.diameter(),
            Window::Polyomino(p) => {
                let (lo, hi) = p.bounds();
                (hi[0] - lo[0]).hypot(hi[1] - lo[1])
            }
        }
    }
}

/// `vol(W ∩ (x + W))`.
pub fn covariogram(w: &Window, x: &[f64]) -> Result<f64> {
    match (w, x) {
        (Window::Empty, _) => Ok(0.0),
        (Window::Interval { .. }, [t]) => Ok((w.volume() - t.abs()).max(0.0)),
        (Window::Polygon(p), [a, b]) => {
            Ok(convex_intersection_area(p.polygon(), &p.polygon().translated([*a, *b])))
        }
        (Window::Polyomino(p), [a, b]) => Ok(polyomino_covariogram(p, [*a, *b])),
        _ => param("displacement dimension does not match the window"),
    }
}

/// Sum over cell pairs of the overlap of two unit squares, each a product of
/// triangle functions of the displacement.
fn polyomino_covariogram(p: &Polyomino, x: [f64; 2]) -> f64 {
    let mut s = 0.0;
    for (i, j) in p.cells() {
        for (k, l) in p.cells() {
            let (dx, dy) = ((k - i) as f64, (l - j) as f64);
            s += tri(x[0] - dx) * tri(x[1] - dy);
        }
    }
    s
}

/// Polyominoes with cells `A + B` and `A - B`. Both sums must be direct,
/// i.e. all `|A| |B|` sums distinct, which makes the covariograms agree.
pub fn homometric_window_pair(a: &[(i64, i64)], b: &[(i64, i64)]) -> Result<(Window, Window)> {
    if a.is_empty() || b.is_empty() {
        return param("cell sets must be non-empty");
    }
    let sum = |sign: i64| -> Result<Vec<(i64, i64)>> {
        let cells: Vec<_> = a
            .iter()
            .flat_map(|p| b.iter().map(move |q| (p.0 + sign * q.0, p.1 + sign * q.1)))
            .collect();
        let distinct: BTreeSet<_> = cells.iter().collect();
        if distinct.len() != cells.len() {
            return Err(Error::Validation(format!(
                "A {} B is not a direct sum: cells overlap",
                if sign > 0 { "+" } else { "-" }
            )));
        }
        Ok(cells)
    };
    Ok((Window::polyomino(&sum(1)?)?, Window::polyomino(&sum(-1)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octagon_geometry() {
        let o = Window::octagon();
        assert!((o.volume() - 2.0 * (1.0 + 2f64.sqrt())).abs() < 1e-14);
        assert!((o.perimeter() - 8.0).abs() < 1e-14);
        let h = Surd::frac(1, 0, 2);
        let r = Surd::frac(1, 1, 2);
        assert!(o.contains(&[r, h]));
        assert!(o.contains(&[Surd::int(0), Surd::int(0)]));
        assert!(!o.contains(&[r, r]));
        assert!(!o.contains(&[Surd::int(0), r + Surd::frac(1, 0, 1000)]));
    }

    #[test]
    fn silver_window() {
        let w = Window::silver_mean();
        assert!((w.volume() - 2f64.sqrt()).abs() < 1e-15);
        assert!(w.contains(&[Surd::frac(0, 1, 2)]));
        assert!(!w.contains(&[Surd::int(1)]));
        assert!(Window::interval(Surd::int(1), Surd::int(1)).is_err());
    }

    #[test]
    fn polyomino_membership_is_closed() {
        let w = Window::polyomino(&[(0, 0), (1, 0)]).unwrap();
        assert!(w.contains(&[Surd::int(2), Surd::int(1)]));
        assert!(w.contains(&[Surd::frac(0, 1, 1), Surd::frac(1, 0, 2)]));
        assert!(!w.contains(&[Surd::int(2), Surd::frac(11, 0, 10)]));
        assert_eq!(w.perimeter(), 6.0);
    }

    #[test]
    fn covariogram_basics() {
        let w = Window::polyomino(&[(0, 0), (1, 0), (1, 1)]).unwrap();
        assert_eq!(covariogram(&w, &[0.0, 0.0]).unwrap(), 3.0);
        assert_eq!(covariogram(&w, &[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(covariogram(&w, &[0.5, 0.0]).unwrap(), 2.0);
        let s = Window::silver_mean();
        assert!((covariogram(&s, &[1.0]).unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        let o = Window::octagon();
        assert!((covariogram(&o, &[0.0, 0.0]).unwrap() - o.volume()).abs() < 1e-13);
        assert!(covariogram(&o, &[0.0]).is_err());
    }

    #[test]
    fn polyomino_ft_at_zero_is_area() {
        let w = Window::polyomino(&[(0, 0), (3, 2)]).unwrap();
        assert_eq!(w.fourier(&[0.0, 0.0]), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn homometric_pair_example() {
        let (a, b) = homometric_window_pair(&[(0, 0), (2, 1)], &[(0, 0), (1, 0)]).unwrap();
        assert_ne!(a, b);
        let (wa, wb) = (a.volume(), b.volume());
        assert_eq!((wa, wb), (4.0, 4.0));
        let (same_a, same_b) = homometric_window_pair(&[(0, 0), (2, 1)], &[(0, 0)]).unwrap();
        assert_eq!(same_a, same_b);
        assert!(matches!(
            homometric_window_pair(&[(0, 0), (1, 0)], &[(0, 0), (1, 0)]),
            Err(Error::Validation(_))
        ));
    }
}
