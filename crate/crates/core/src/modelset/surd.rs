//! Exact arithmetic in `Q(sqrt 2)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Q = Ratio<i128>;

/// `a + b sqrt 2` with rational `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    pub a: Q,
    pub b: Q,
}

impl Surd {
    pub const fn new(a: Q, b: Q) -> Self {
        Self { a, b }
    }

    pub fn int(a: i64) -> Self {
        Self::new(Q::from_integer(a as i128), Q::zero())
    }

    /// `(p + q sqrt 2) / d`.
    pub fn frac(p: i64, q: i64, d: i64) -> Self {
        Self::new(Q::new(p as i128, d as i128), Q::new(q as i128, d as i128))
    }

    pub fn sqrt2() -> Self {
        Self::new(Q::zero(), Q::from_integer(1))
    }

    /// Algebraic conjugate `a - b sqrt 2`.
    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a^2 with 2 b^2
        let a2 = self.a * self.a;
        let b2 = self.b * self.b * Q::from_integer(2);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> i64 {
        let mut f = self.to_f64().floor() as i64;
        while Surd::int(f) > *self {
            f -= 1;
        }
        while Surd::int(f + 1) <= *self {
            f += 1;
        }
        f
    }

    pub fn abs(self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self
        }
    }
}

fn sign(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl Add for Surd {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Surd {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Surd {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for Surd {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Q::from_integer(2);
        Self::new(self.a * o.a + two * self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl Mul<Q> for Surd {
    type Output = Self;
    fn mul(self, q: Q) -> Self {
        Self::new(self.a * q, self.b * q)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{}-{}*sqrt2", self.a, -self.b),
            (false, false) => write!(f, "{}+{}*sqrt2", self.a, self.b),
        }
    }
}

fn parse_q(s: &str) -> Result<Q, Error> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses sums of terms `r`, `r*sqrt2`, `sqrt2`, `sqrt2/d` with rationals
/// `r = n` or `n/d`, e.g. `-1/2*sqrt2` or `1/2+1/2*sqrt2`.
impl FromStr for Surd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('√', "sqrt");
        if s.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in s.char_indices() {
            if (c == '+' || c == '-') && i > 0 {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut out = Surd::default();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let term = if let Some(pos) = body.find("sqrt2") {
                let before = body[..pos].trim_end_matches('*');
                let after = &body[pos + 5..];
                let mut coeff = if before.is_empty() { Q::from_integer(1) } else { parse_q(before)? };
                if let Some(d) = after.strip_prefix('/') {
                    coeff /= parse_q(d)?;
                } else if !after.is_empty() {
                    return Err(Error::Parse(format!("invalid term {t:?}")));
                }
                Surd::new(Q::zero(), coeff)
            } else {
                Surd::new(parse_q(body)?, Q::zero())
            };
            out = out + if neg { -term } else { term };
        }
        Ok(out)
    }
}
