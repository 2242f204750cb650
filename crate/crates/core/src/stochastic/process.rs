use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{
    bernoullise, dimer_block_image, renewal_sample, sample_bernoulli, sample_dimer, sample_ledrappier, RenewalLaw,
    RenewalSpec, SeedSpec,
};
use crate::comb::format_f64;
use crate::error::{param, Result};
use crate::substitution::{binary_rs_sequence, tm_two_sided};

/// Size cap shared by the sequence samplers.
pub const MAX_SAMPLE_LEN: usize = 1 << 26;

fn default_n() -> usize {
    1000
}

fn default_side() -> usize {
    64
}

fn default_horizon() -> f64 {
    1000.0
}

/// Deterministic base sequence for Bernoullisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseSequence {
    Ones,
    ThueMorse,
    RudinShapiro,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "process", rename_all = "snake_case")]
pub enum ProcessKind {
    /// `±1` on `-n..=n`.
    Bernoulli {
        p: f64,
        #[serde(default = "default_n")]
        n: usize,
    },
    /// Base sequence on `0..n` times i.i.d. signs.
    Bernoullise {
        base: BaseSequence,
        p: f64,
        #[serde(default = "default_n")]
        n: usize,
    },
    Dimer {
        #[serde(default = "default_n")]
        n: usize,
    },
    /// Block image `u_i = -w_i w_{i+1}` of a dimer sample of length `n + 1`.
    DimerBlock {
        #[serde(default = "default_n")]
        n: usize,
    },
    Ledrappier {
        #[serde(default = "default_side")]
        rows: usize,
        #[serde(default = "default_side")]
        cols: usize,
    },
    Renewal {
        law: RenewalLaw,
        #[serde(default = "default_horizon")]
        horizon: f64,
    },
}

/// JSON description of a sampling run, e.g.
/// `{"process": "renewal", "law": {"gamma": {"shape": 4}}, "seed": 42}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    #[serde(flatten)]
    pub kind: ProcessKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    /// Weights on consecutive integers starting at `first`.
    Sequence { first: i64, values: Vec<f64> },
    /// Row-major array, row 0 at the bottom.
    Array { rows: usize, cols: usize, values: Vec<f64> },
    Points(Vec<f64>),
}

impl ProcessSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn seed_spec(&self) -> SeedSpec {
        SeedSpec::with_stream(self.seed, self.stream)
    }

    pub fn run(&self) -> Result<Sample> {
        let seed = self.seed_spec();
        let check_len = |n: usize| {
            if n > MAX_SAMPLE_LEN {
                return Err(crate::Error::Resource(format!("length {n} exceeds {MAX_SAMPLE_LEN}")));
            }
            Ok(())
        };
        Ok(match &self.kind {
            ProcessKind::Bernoulli { p, n } => {
                check_len(2 * n + 1)?;
                Sample::Sequence {
                    first: -(*n as i64),
                    values: sample_bernoulli(*p, *n, seed)?,
                }
            }
            ProcessKind::Bernoullise { base, p, n } => {
                check_len(*n)?;
                let b = match base {
                    BaseSequence::Ones => vec![1.0; *n],
                    BaseSequence::ThueMorse => tm_two_sided(0..*n as i64),
                    BaseSequence::RudinShapiro => binary_rs_sequence(0..*n as i64)?,
                };
                Sample::Sequence {
                    first: 0,
                    values: bernoullise(&b, *p, seed)?,
                }
            }
            ProcessKind::Dimer { n } => {
                check_len(*n)?;
                Sample::Sequence {
                    first: 0,
                    values: sample_dimer(*n, seed)?,
                }
            }
            ProcessKind::DimerBlock { n } => {
                check_len(n + 1)?;
                if *n == 0 {
                    return param("block image needs n >= 1");
                }
                Sample::Sequence {
                    first: 0,
                    values: dimer_block_image(&sample_dimer(n + 1, seed)?)?,
                }
            }
            ProcessKind::Ledrappier { rows, cols } => {
                check_len(rows.saturating_mul(*cols))?;
                let s = sample_ledrappier(*rows, *cols, seed)?;
                Sample::Array {
                    rows: *rows,
                    cols: *cols,
                    values: s.to_f64(),
                }
            }
            ProcessKind::Renewal { law, horizon } => {
                let spec = RenewalSpec::new(law.clone())?;
                Sample::Points(renewal_sample(&spec, *horizon, seed)?)
            }
        })
    }
}

impl Sample {
    /// Weight sequence for periodogram work; `None` for point sets.
    pub fn weights(&self) -> Option<&[f64]> {
        match self {
            Sample::Sequence { values, .. } | Sample::Array { values, .. } => Some(values),
            Sample::Points(_) => None,
        }
    }

    /// Columns `n,w` (sequences), `row,col,w` (arrays) or `x` (points).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        match self {
            Sample::Sequence { first, values } => {
                w.write_record(["n", "w"])?;
                for (i, v) in values.iter().enumerate() {
                    w.write_record([(first + i as i64).to_string(), format_f64(*v)])?;
                }
            }
            Sample::Array { rows, cols, values } => {
                w.write_record(["row", "col", "w"])?;
                for r in 0..*rows {
                    for c in 0..*cols {
                        w.write_record([r.to_string(), c.to_string(), format_f64(values[r * cols + c])])?;
                    }
                }
            }
            Sample::Points(xs) => {
                w.write_record(["x"])?;
                for x in xs {
                    w.write_record([format_f64(*x)])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}
