use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::comb::AutocorrelationSeries;
use crate::error::{param, Result};
use crate::exact::{int, rat, to_f64};

thread_local! {
    static GTM_CACHE: RefCell<HashMap<(u64, u64, u64), BigRational>> = RefCell::new(HashMap::new());
    static RS_CACHE: RefCell<HashMap<i64, (BigRational, BigRational)>> = RefCell::new(HashMap::new());
}

/// Exact `eta(m)` of the Thue-Morse sequence.
pub fn tm_eta(m: i64) -> BigRational {
    gtm_eta_unchecked(1, 1, m.unsigned_abs())
}

/// Exact `eta(m)` of the generalised Morse sequence with parameters `(k, l)`.
pub fn gtm_eta(k: u64, l: u64, m: i64) -> Result<BigRational> {
    if k == 0 || l == 0 {
        return param("gTM parameters must satisfy k, l >= 1");
    }
    Ok(gtm_eta_unchecked(k, l, m.unsigned_abs()))
}

fn alpha(k: u64, l: u64, r: u64) -> i64 {
    let n = k + l;
    (n - r) as i64 - 2 * k.min(l).min(r).min(n - r) as i64
}

fn gtm_eta_unchecked(k: u64, l: u64, m: u64) -> BigRational {
    if m == 0 {
        return BigRational::one();
    }
    if let Some(v) = GTM_CACHE.with(|c| c.borrow().get(&(k, l, m)).cloned()) {
        return v;
    }
    let n = k + l;
    let (q, r) = (m / n, m % n);
    let v = if r == 0 {
        gtm_eta_unchecked(k, l, q)
    } else if q == 0 && r == 1 {
        // eta(1) = (alpha_1 eta(0) + alpha_{n-1} eta(1)) / n
        rat(alpha(k, l, 1), n as i64 - alpha(k, l, n - 1))
    } else {
        let a = gtm_eta_unchecked(k, l, q) * int(alpha(k, l, r));
        let b = gtm_eta_unchecked(k, l, q + 1) * int(alpha(k, l, n - r));
        (a + b) / int(n as i64)
    };
    GTM_CACHE.with(|c| c.borrow_mut().insert((k, l, m), v.clone()));
    v
}

fn sign(m: i64) -> BigRational {
    if m.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Exact `(eta(m), theta(m))` of the binary Rudin-Shapiro sequence, where
/// `theta` is the autocorrelation twisted by `(-1)^n`. Evaluated through the
/// closed four-branch recursion with `eta(0) = 1`, `theta(0) = 0`.
pub fn rs_eta_theta(m: i64) -> (BigRational, BigRational) {
    if m < 0 {
        let (e, t) = rs_eta_theta(-m);
        return (e, t * sign(m));
    }
    if m == 0 {
        return (BigRational::one(), BigRational::zero());
    }
    if let Some(v) = RS_CACHE.with(|c| c.borrow().get(&m).cloned()) {
        return v;
    }
    let (q, r) = (m / 4, m % 4);
    let s = sign(q);
    let quarter = rat(1, 4);
    let half = rat(1, 2);
    let one = BigRational::one();
    let v = if q == 0 && r == 1 {
        // theta(1) = -theta(0)/4 + theta(1)/4, eta(1) = theta(0)/4 - theta(1)/4
        let (_, t0) = rs_eta_theta(0);
        let t1 = -&t0 / int(3);
        let e1 = (&t0 - &t1) * &quarter;
        (e1, t1)
    } else {
        let (e_q, t_q) = rs_eta_theta(q);
        let (e_q1, t_q1) = rs_eta_theta(q + 1);
        match r {
            0 => ((&one + &s) * &half * &e_q, BigRational::zero()),
            1 => (
                (&one - &s) * &quarter * &e_q + &s * &quarter * &t_q - &quarter * &t_q1,
                (&one - &s) * &quarter * &e_q - &s * &quarter * &t_q + &quarter * &t_q1,
            ),
            2 => (BigRational::zero(), &s * &half * &t_q + &half * &t_q1),
            _ => (
                (&one + &s) * &quarter * &e_q1 - &s * &quarter * &t_q + &quarter * &t_q1,
                -(&one + &s) * &quarter * &e_q1 - &s * &quarter * &t_q + &quarter * &t_q1,
            ),
        }
    };
    RS_CACHE.with(|c| c.borrow_mut().insert(m, v.clone()));
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSystem {
    ThueMorse,
    GeneralisedMorse { k: u64, l: u64 },
    RudinShapiro,
}

/// Exact coefficients `eta(m)` for `|m| <= max_lag`, plus `theta(m)` for
/// Rudin-Shapiro.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactCoefficientTable {
    pub system: CoefficientSystem,
    #[serde(serialize_with = "ser_table")]
    pub eta: BTreeMap<i64, BigRational>,
    #[serde(serialize_with = "ser_opt_table", skip_serializing_if = "Option::is_none")]
    pub theta: Option<BTreeMap<i64, BigRational>>,
}

impl ExactCoefficientTable {
    pub fn build(system: CoefficientSystem, max_lag: u64) -> Result<Self> {
        let max = max_lag as i64;
        let mut eta = BTreeMap::new();
        let mut theta = None;
        match system {
            CoefficientSystem::ThueMorse => {
                for m in -max..=max {
                    eta.insert(m, tm_eta(m));
                }
            }
            CoefficientSystem::GeneralisedMorse { k, l } => {
                for m in -max..=max {
                    eta.insert(m, gtm_eta(k, l, m)?);
                }
            }
            CoefficientSystem::RudinShapiro => {
                let mut t = BTreeMap::new();
                for m in -max..=max {
                    let (e, th) = rs_eta_theta(m);
                    eta.insert(m, e);
                    t.insert(m, th);
                }
                theta = Some(t);
            }
        }
        Ok(Self { system, eta, theta })
    }

    pub fn get(&self, m: i64) -> Option<&BigRational> {
        self.eta.get(&m)
    }

    pub fn to_series(&self) -> Result<AutocorrelationSeries> {
        let max = self.eta.keys().next_back().copied().unwrap_or(0);
        let values: Vec<f64> = (0..=max).map(|m| to_f64(&self.eta[&m])).collect();
        AutocorrelationSeries::from_nonnegative_lags(&values)
    }
}

fn pair(q: &BigRational) -> (String, String) {
    (q.numer().to_string(), q.denom().to_string())
}

#[derive(Serialize)]
struct Entry {
    m: i64,
    numerator: String,
    denominator: String,
}

fn entries(t: &BTreeMap<i64, BigRational>) -> Vec<Entry> {
    t.iter()
        .map(|(m, q)| {
            let (numerator, denominator) = pair(q);
            Entry { m: *m, numerator, denominator }
        })
        .collect()
}

fn ser_table<S: Serializer>(t: &BTreeMap<i64, BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    entries(t).serialize(s)
}

fn ser_opt_table<S: Serializer>(
    t: &Option<BTreeMap<i64, BigRational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    t.as_ref().map(entries).serialize(s)
}
