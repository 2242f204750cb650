//! CSV and JSON forms of [`WeightedComb`].

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::WeightedComb;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Scalar(f64),
    Vector(Vec<f64>),
}

#[derive(Serialize, Deserialize)]
struct CombRepr {
    dimension: usize,
    points: Vec<PointRepr>,
    weights: Vec<[f64; 2]>,
}

impl WeightedComb {
    /// `{"dimension": d, "points": [...], "weights": [[re, im], ...]}`; 1D
    /// points are written as plain numbers.
    pub fn to_json(&self) -> Result<String> {
        let repr = CombRepr {
            dimension: self.dimension,
            points: self
                .points()
                .map(|p| {
                    if self.dimension == 1 {
                        PointRepr::Scalar(p[0])
                    } else {
                        PointRepr::Vector(p.to_vec())
                    }
                })
                .collect(),
            weights: self.weights.iter().map(|w| [w.re, w.im]).collect(),
        };
        Ok(serde_json::to_string(&repr)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: CombRepr = serde_json::from_str(s)?;
        let points = repr
            .points
            .into_iter()
            .map(|p| match p {
                PointRepr::Scalar(x) => vec![x],
                PointRepr::Vector(v) => v,
            })
            .collect();
        let weights = repr.weights.iter().map(|w| Complex64::new(w[0], w[1])).collect();
        Self::new(repr.dimension, points, weights)
    }

    /// Header `x[,y],re_weight,im_weight`, one row per point.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        if self.dimension == 1 {
            w.write_record(["x", "re_weight", "im_weight"])?;
        } else {
            w.write_record(["x", "y", "re_weight", "im_weight"])?;
        }
        for (p, wt) in self.points().zip(&self.weights) {
            let mut rec: Vec<String> = p.iter().map(|v| super::output::format_f64(*v)).collect();
            rec.push(super::output::format_f64(wt.re));
            rec.push(super::output::format_f64(wt.im));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers = r.headers()?.clone();
        let names: Vec<&str> = headers.iter().collect();
        let dimension = match names.as_slice() {
            ["x", "re_weight", "im_weight"] => 1,
            ["x", "y", "re_weight", "im_weight"] => 2,
            _ => return Err(Error::Parse(format!("unexpected comb CSV header {names:?}"))),
        };
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let vals: Vec<f64> = rec
                .iter()
                .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("{f:?}: {e}"))))
                .collect::<Result<_>>()?;
            points.push(vals[..dimension].to_vec());
            weights.push(Complex64::new(vals[dimension], vals[dimension + 1]));
        }
        Self::new(dimension, points, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_2d() {
        let c = WeightedComb::new(
            2,
            vec![vec![0.0, 0.5], vec![1.25, -2.0]],
            vec![Complex64::new(1.0, -0.5), Complex64::new(0.0, 2.0)],
        )
        .unwrap();
        let back = WeightedComb::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn json_accepts_scalar_points() {
        let c = WeightedComb::from_json(r#"{"dimension":1,"points":[0,0.5],"weights":[[1,0],[1,0]]}"#).unwrap();
        assert_eq!(c.point(1), &[0.5]);
    }

    #[test]
    fn csv_round_trip_1d() {
        let c = WeightedComb::from_real_1d(&[(0.0, 1.0), (0.5, -2.0)]).unwrap();
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "x,re_weight,im_weight\n0,1.0,0\n0.5,-2.0,0\n");
        assert_eq!(WeightedComb::read_csv(buf.as_slice()).unwrap(), c);
    }

    #[test]
    fn csv_rejects_bad_header() {
        assert!(WeightedComb::read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
