use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::to_f64;

/// `Sigma(N) = sum_{|m| <= N} eta(m)^2` for `N = 0..=max_n`, exact.
#[derive(Debug, Clone, PartialEq)]
pub struct WienerStatistic {
    sigma: Vec<BigRational>,
}

impl WienerStatistic {
    pub fn max_n(&self) -> u64 {
        self.sigma.len() as u64 - 1
    }

    pub fn sigma(&self, n: u64) -> Option<&BigRational> {
        self.sigma.get(n as usize)
    }

    /// `Sigma(N)/N`; `None` for `N = 0`.
    pub fn ratio(&self, n: u64) -> Option<f64> {
        (n > 0).then(|| self.sigma(n).map(|s| to_f64(s) / n as f64)).flatten()
    }

    pub fn ratios(&self) -> Vec<(u64, f64)> {
        (1..=self.max_n()).map(|n| (n, self.ratio(n).unwrap())).collect()
    }
}

pub fn wiener_sigma(eta: impl Fn(i64) -> BigRational, max_n: u64) -> WienerStatistic {
    let mut sigma = Vec::with_capacity(max_n as usize + 1);
    let mut acc = BigRational::zero();
    for n in 0..=max_n as i64 {
        let e = eta(n);
        acc += &e * &e;
        if n > 0 {
            let e = eta(-n);
            acc += &e * &e;
        }
        sigma.push(acc.clone());
    }
    WienerStatistic { sigma }
}
