//! Exact analysis of periodic rational combs `delta_{nZ} * sum_j c_j delta_j`.
//!
//! All averages are per site (`1/n`). The `r`-point correlation is
//! `(1/n) sum_j c_j c_{j+m_1} ... c_{j+m_{r-1}}` with indices mod `n`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::comb::{BraggPeak, DiffractionOutput, Normalization, EXTINCTION_RELATIVE_TOL};
use crate::error::{param, Result};
use crate::exact::{parse_rational, to_f64};

pub const MAX_ORDER: usize = 8;
pub const MAX_SEARCH_PERIOD: usize = 12;
const MAX_TABLE: usize = 1_000_000;

/// Convention string attached to every report.
pub const CORRELATION_CONVENTION: &str =
    "r-point correlation = (1/n) sum_j c_j c_(j+m_1) ... c_(j+m_(r-1)), indices mod n, lags m_i >= 0 uncentred";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicComb {
    weights: Vec<BigRational>,
}

impl PeriodicComb {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.is_empty() {
            return param("periodic comb needs at least one weight");
        }
        Ok(Self { weights })
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| BigRational::from_integer(w.into())).collect())
    }

    /// Comma- or whitespace-separated rationals, e.g. `11,25,42` or `1/2 -3`.
    pub fn parse(text: &str) -> Result<Self> {
        let weights = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| parse_rational(s).ok_or_else(|| crate::Error::Parse(format!("invalid weight {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }

    pub fn period(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// `c_j -> c_{n-1-j}`.
    pub fn reflected(&self) -> Self {
        Self { weights: self.weights.iter().rev().cloned().collect() }
    }

    /// `c_j -> c_{j-s}`.
    pub fn shifted(&self, s: usize) -> Self {
        let n = self.period();
        Self { weights: (0..n).map(|j| self.weights[(j + n - s % n) % n].clone()).collect() }
    }

    /// The same comb described with period `k n`.
    pub fn lifted(&self, k: usize) -> Self {
        Self { weights: (0..k).flat_map(|_| self.weights.iter().cloned()).collect() }
    }

    fn c(&self, j: usize) -> &BigRational {
        &self.weights[j % self.period()]
    }
}

/// `eta(m) = (1/n) sum_j c_j c_{j-m}` for `m = 0..n-1`.
pub fn periodic_autocorrelation(comb: &PeriodicComb) -> Vec<BigRational> {
    let n = comb.period();
    (0..n)
        .map(|m| {
            let s = (0..n).fold(BigRational::zero(), |acc, j| acc + comb.c(j) * comb.c(j + n - m));
            s / BigRational::from_integer(n.into())
        })
        .collect()
}

/// `(1/n) sum_j c_j e^{-2 pi i j l/n}` for `l = 0..n-1`.
pub fn periodic_amplitudes(comb: &PeriodicComb) -> Vec<Complex64> {
    let n = comb.period();
    let c: Vec<f64> = comb.weights.iter().map(to_f64).collect();
    (0..n)
        .map(|l| {
            c.iter()
                .enumerate()
                .map(|(j, &w)| Complex64::from_polar(w, -2.0 * PI * ((j * l) % n) as f64 / n as f64))
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// Inverse of [`periodic_amplitudes`].
pub fn inverse_amplitudes(a: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    (0..n)
        .map(|j| {
            a.iter()
                .enumerate()
                .map(|(l, &z)| z * Complex64::from_polar(1.0, 2.0 * PI * ((j * l) % n) as f64 / n as f64))
                .sum()
        })
        .collect()
}

/// Polynomial with rational coefficients, lowest degree first.
fn poly_rem(mut p: Vec<BigRational>, d: &[BigRational]) -> Vec<BigRational> {
    let dl = d.len();
    let lead = &d[dl - 1];
    while p.len() >= dl {
        let top = p.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let f = top / lead;
        let off = p.len() + 1 - dl;
        for (i, di) in d[..dl - 1].iter().enumerate() {
            p[off + i] -= &f * di;
        }
    }
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_div_exact(p: &[BigRational], d: &[BigRational]) -> Vec<BigRational> {
    let mut rem = p.to_vec();
    let dl = d.len();
    let mut q = vec![BigRational::zero(); p.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let f = &rem[i + dl - 1] / &d[dl - 1];
        for (j, dj) in d.iter().enumerate() {
            rem[i + j] -= &f * dj;
        }
        q[i] = f;
    }
    q
}

/// Cyclotomic polynomial `Phi_d`.
fn cyclotomic(d: usize) -> Vec<BigRational> {
    let mut p = vec![BigRational::zero(); d + 1];
    p[0] = -BigRational::one();
    p[d] = BigRational::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = poly_div_exact(&p, &cyclotomic(e));
        }
    }
    p
}

/// True iff `sum_j c_j zeta^{j l} = 0` with `zeta = e^{-2 pi i/n}`, decided by
/// divisibility by the cyclotomic polynomial of the order of `zeta^l`.
pub fn is_exact_extinction(comb: &PeriodicComb, l: usize) -> bool {
    let n = comb.period();
    let d = n / l.gcd(&n).max(1);
    let d = if l.is_multiple_of(n) { 1 } else { d };
    poly_rem(comb.weights.clone(), &cyclotomic(d)).is_empty()
}

/// Intensities `|(1/n) sum_j c_j e^{-2 pi i j l/n}|^2` at `k = l/n`,
/// `l = 0..n-1`, per site. Exact extinctions are reported as intensity 0.
pub fn periodic_diffraction(comb: &PeriodicComb) -> DiffractionOutput {
    let n = comb.period();
    let amps = periodic_amplitudes(comb);
    let mut out = DiffractionOutput::empty(Normalization::PerSite);
    for (l, a) in amps.iter().enumerate() {
        let exact = is_exact_extinction(comb, l);
        out.pure_point.push(BraggPeak {
            position: vec![l as f64 / n as f64],
            intensity: if exact { 0.0 } else { a.norm_sqr() },
            extinct: exact,
            label: Some(vec![l as i64]),
        });
    }
    out.mark_extinctions(EXTINCTION_RELATIVE_TOL);
    out
}

/// `r`-point correlation at the lags `m_1..m_{r-1}`.
pub fn npoint_correlation(comb: &PeriodicComb, order: usize, lags: &[i64]) -> Result<BigRational> {
    if !(2..=MAX_ORDER).contains(&order) {
        return param(format!("correlation order must lie in 2..={MAX_ORDER}"));
    }
    if lags.len() != order - 1 {
        return param(format!("order {order} needs {} lags", order - 1));
    }
    let n = comb.period();
    let lags: Vec<usize> = lags.iter().map(|m| m.rem_euclid(n as i64) as usize).collect();
    let s = (0..n).fold(BigRational::zero(), |acc, j| {
        let p = lags.iter().fold(comb.c(j).clone(), |p, &m| p * comb.c(j + m));
        acc + p
    });
    Ok(s / BigRational::from_integer(n.into()))
}

/// All values of the `r`-point correlation, keyed by lag tuple in `[0, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTable {
    pub order: usize,
    pub values: BTreeMap<Vec<i64>, BigRational>,
}

impl CorrelationTable {
    pub fn build(comb: &PeriodicComb, order: usize) -> Result<Self> {
        let n = comb.period();
        let count = (n as u128).saturating_pow(order.saturating_sub(1) as u32);
        if count > MAX_TABLE as u128 {
            return Err(crate::Error::Resource(format!("{count} lag tuples exceed the table cap")));
        }
        let mut values = BTreeMap::new();
        let mut lags = vec![0i64; order.saturating_sub(1)];
        loop {
            values.insert(lags.clone(), npoint_correlation(comb, order, &lags)?);
            let mut i = lags.len();
            loop {
                if i == 0 {
                    return Ok(Self { order, values });
                }
                i -= 1;
                lags[i] += 1;
                if lags[i] < n as i64 {
                    break;
                }
                lags[i] = 0;
            }
        }
    }
}

/// Integer weights `a_j` and denominator `D` with `c_j = a_j / D`.
fn integer_form(comb: &PeriodicComb) -> (Vec<BigInt>, BigInt) {
    let d = comb.weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let a = comb.weights.iter().map(|w| (w * BigRational::from_integer(d.clone())).to_integer()).collect();
    (a, d)
}

/// First sorted lag tuple (lexicographically) at which the order-`r`
/// correlations of two combs with equal period differ. The correlation is
/// symmetric in the lags, so sorted tuples cover every value and the minimal
/// sorted witness is the minimal witness overall.
pub fn separating_tuple(c1: &PeriodicComb, c2: &PeriodicComb, order: usize) -> Result<Option<Vec<i64>>> {
    if !(2..=MAX_ORDER).contains(&order) {
        return param(format!("correlation order must lie in 2..={MAX_ORDER}"));
    }
    let n = c1.period();
    if c2.period() != n {
        return param("combs must have equal periods");
    }
    let (a1, d1) = integer_form(c1);
    let (a2, d2) = integer_form(c2);
    // compare S1 / d1^r with S2 / d2^r
    let f1 = num_traits::pow(d2.clone(), order);
    let f2 = num_traits::pow(d1.clone(), order);
    let k = order - 1;
    let mut lags = vec![0usize; k];
    loop {
        let s = |a: &[BigInt]| -> BigInt {
            (0..n)
                .map(|j| lags.iter().fold(a[j].clone(), |p, &m| p * &a[(j + m) % n]))
                .sum()
        };
        if s(&a1) * &f1 != s(&a2) * &f2 {
            return Ok(Some(lags.iter().map(|&m| m as i64).collect()));
        }
        // next non-decreasing tuple
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if lags[i] + 1 < n {
                let v = lags[i] + 1;
                for l in &mut lags[i..] {
                    *l = v;
                }
                break;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Homometric,
    Distinct,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaRow {
    pub m: usize,
    pub comb1: String,
    pub comb2: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomometryReport {
    pub verdict: Verdict,
    pub period: usize,
    pub eta_table: Vec<EtaRow>,
    /// Lowest order with differing correlations; `None` if none up to the
    /// searched order.
    pub separating_order: Option<usize>,
    pub witness_tuple: Option<Vec<i64>>,
    /// Highest order searched (0 if the search was skipped).
    pub searched_up_to: usize,
    pub note: Option<String>,
    pub convention: String,
}

fn rat_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Compares autocorrelations exactly (after lifting to a common period) and,
/// for homometric pairs, searches orders `3..=max_order` for a separating
/// lag tuple.
pub fn homometry_check(c1: &PeriodicComb, c2: &PeriodicComb, max_order: usize) -> Result<HomometryReport> {
    if !(2..=MAX_ORDER).contains(&max_order) {
        return param(format!("maximal order must lie in 2..={MAX_ORDER}"));
    }
    let n = c1.period().lcm(&c2.period());
    let (l1, l2) = (c1.lifted(n / c1.period()), c2.lifted(n / c2.period()));
    let (e1, e2) = (periodic_autocorrelation(&l1), periodic_autocorrelation(&l2));
    let eta_table: Vec<EtaRow> = e1
        .iter()
        .zip(&e2)
        .enumerate()
        .map(|(m, (a, b))| EtaRow { m, comb1: rat_str(a), comb2: rat_str(b) })
        .collect();
    let mut report = HomometryReport {
        verdict: Verdict::Homometric,
        period: n,
        eta_table,
        separating_order: None,
        witness_tuple: None,
        searched_up_to: 0,
        note: None,
        convention: CORRELATION_CONVENTION.to_string(),
    };
    if let Some(m) = e1.iter().zip(&e2).position(|(a, b)| a != b) {
        report.verdict = Verdict::Distinct;
        report.separating_order = Some(2);
        report.witness_tuple = Some(vec![m as i64]);
        report.searched_up_to = 2;
        return Ok(report);
    }
    if n > MAX_SEARCH_PERIOD {
        report.note = Some(format!("period {n} exceeds {MAX_SEARCH_PERIOD}; higher orders not searched"));
        return Ok(report);
    }
    report.searched_up_to = 2;
    for order in 3..=max_order {
        report.searched_up_to = order;
        if let Some(w) = separating_tuple(&l1, &l2, order)? {
            report.separating_order = Some(order);
            report.witness_tuple = Some(w);
            return Ok(report);
        }
    }
    report.note = Some(format!("not separated up to order {max_order}"));
    Ok(report)
}

impl HomometryReport {
    pub fn is_homometric(&self) -> bool {
        self.verdict == Verdict::Homometric
    }
}
