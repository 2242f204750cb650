use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Intensities below this fraction of the largest peak in a region are
/// reported as extinctions (set to zero and flagged).
pub const EXTINCTION_RELATIVE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Measure per unit length (1D) or unit area (2D) of the structure.
    PerUnitVolume,
    /// Per site of a periodic comb: `1/n` for period `n`. Multiply by `n^2`
    /// to recover the convention of a comb on `nZ` with integer weights.
    PerSite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraggPeak {
    pub position: Vec<f64>,
    pub intensity: f64,
    #[serde(default)]
    pub extinct: bool,
    /// Exact integer coordinates of the position (dual-lattice or Fourier
    /// module coordinates), when the producer knows them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    pub k: Vec<f64>,
    pub value: f64,
}

/// Lebesgue decomposition of a diffraction measure, sampled on a region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffractionOutput {
    pub pure_point: Vec<BraggPeak>,
    pub ac_density: Vec<DensitySample>,
    /// Samples `(x, F(x))` of the distribution function of the singular
    /// continuous part restricted to `[0, 1]`.
    pub sc_distribution: Option<Vec<(f64, f64)>>,
    pub normalization: Normalization,
    /// `k` values where a density could not be evaluated (singular points).
    #[serde(default)]
    pub flagged: Vec<Vec<f64>>,
}

impl DiffractionOutput {
    pub fn empty(normalization: Normalization) -> Self {
        Self {
            pure_point: Vec::new(),
            ac_density: Vec::new(),
            sc_distribution: None,
            normalization,
            flagged: Vec::new(),
        }
    }

    pub fn max_intensity(&self) -> f64 {
        self.pure_point.iter().map(|p| p.intensity).fold(0.0, f64::max)
    }

    /// Zeroes and flags every peak below `rel_tol` times the maximal peak.
    pub fn mark_extinctions(&mut self, rel_tol: f64) {
        let cut = rel_tol * self.max_intensity();
        for p in &mut self.pure_point {
            if p.intensity < cut || p.intensity == 0.0 {
                p.intensity = 0.0;
                p.extinct = true;
            }
        }
    }

    pub fn peak_at(&self, position: &[f64], tol: f64) -> Option<&BraggPeak> {
        self.pure_point.iter().find(|p| {
            p.position.len() == position.len()
                && p.position.iter().zip(position).all(|(a, b)| (a - b).abs() <= tol)
        })
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.pure_point.iter().find(|p| p.intensity.is_nan() || p.intensity < 0.0) {
            return Err(Error::Validation(format!("negative peak intensity at {:?}", p.position)));
        }
        if let Some(s) = self.ac_density.iter().find(|s| s.value.is_nan() || s.value < 0.0) {
            return Err(Error::Validation(format!("negative density at {:?}", s.k)));
        }
        if let Some(sc) = &self.sc_distribution {
            if sc.windows(2).any(|w| w[1].0 < w[0].0 || w[1].1 < w[0].1) {
                return Err(Error::Validation("sc distribution samples not non-decreasing".into()));
            }
        }
        let mut pos: Vec<&Vec<f64>> = self.pure_point.iter().map(|p| &p.position).collect();
        pos.sort_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(a.len().cmp(&b.len()))
        });
        if pos.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("repeated peak position".into()));
        }
        Ok(())
    }

    /// CSV with columns `part,k1[,k2],value,extinct,label`; `part` is one of
    /// `pp`, `ac`, `sc` or `flagged`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let dim = self
            .pure_point
            .first()
            .map(|p| p.position.len())
            .or_else(|| self.ac_density.first().map(|s| s.k.len()))
            .unwrap_or(1);
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let mut header = vec!["part".to_string()];
        header.extend((1..=dim).map(|i| format!("k{i}")));
        header.extend(["value".to_string(), "extinct".to_string(), "label".to_string()]);
        w.write_record(&header)?;
        let coords = |k: &[f64]| -> Vec<String> {
            (0..dim).map(|i| k.get(i).map(|v| format_f64(*v)).unwrap_or_default()).collect()
        };
        for p in &self.pure_point {
            let mut rec = vec!["pp".to_string()];
            rec.extend(coords(&p.position));
            rec.push(format_f64(p.intensity));
            rec.push(p.extinct.to_string());
            rec.push(
                p.label
                    .as_ref()
                    .map(|l| l.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default(),
            );
            w.write_record(&rec)?;
        }
        for s in &self.ac_density {
            let mut rec = vec!["ac".to_string()];
            rec.extend(coords(&s.k));
            rec.extend([format_f64(s.value), String::new(), String::new()]);
            w.write_record(&rec)?;
        }
        if let Some(sc) = &self.sc_distribution {
            for (x, f) in sc {
                let mut rec = vec!["sc".to_string()];
                rec.extend(coords(&[*x]));
                rec.extend([format_f64(*f), String::new(), String::new()]);
                w.write_record(&rec)?;
            }
        }
        for k in &self.flagged {
            let mut rec = vec!["flagged".to_string()];
            rec.extend(coords(k));
            rec.extend([String::new(), String::new(), String::new()]);
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Shortest round-trip representation; identical bits give identical text.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:?}")
    }
}
