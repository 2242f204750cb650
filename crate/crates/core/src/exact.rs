//! Exact rational helpers and deterministic floating-point summation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &BigRational) -> f64 {
    // Ratio::to_f64 handles huge numerators/denominators without overflow.
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3"`, `"-7/4"` or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let q = BigRational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Renders `q` with `sig` significant digits, rounding half to even.
///
/// Trailing zeros of the fractional part are dropped, so `-1/2` renders as
/// `-0.5` and `-1/3` as `-0.333333333333` for `sig = 12`.
pub fn render_decimal(q: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    // Decimal exponent: 10^e <= a < 10^(e+1).
    let mut e = to_f64(&a).log10().floor() as i64;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - e);
    let mut digits = round_half_even(&scaled);
    if digits == num_traits::pow(ten.clone(), sig) {
        digits = num_traits::pow(ten, sig - 1);
        e += 1;
    }
    let ds = digits.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if !(-20..=20).contains(&e) {
        let (head, tail) = ds.split_at(1);
        let tail = tail.trim_end_matches('0');
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push_str(&format!("e{e}"));
        return out;
    }
    if e >= 0 {
        let int_len = e as usize + 1;
        if int_len >= ds.len() {
            out.push_str(&ds);
            out.push_str(&"0".repeat(int_len - ds.len()));
        } else {
            let (ip, fp) = ds.split_at(int_len);
            out.push_str(ip);
            let fp = fp.trim_end_matches('0');
            if !fp.is_empty() {
                out.push('.');
                out.push_str(fp);
            }
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-e - 1) as usize));
        out.push_str(ds.trim_end_matches('0'));
    }
    out
}

fn round_half_even(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_mod_floor(x.denom());
    let twice: BigInt = r * 2;
    match twice.cmp(x.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Neumaier-compensated accumulator; the result depends only on the order
/// of the inputs, not on any thread scheduling.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_thirds_and_halves() {
        assert_eq!(render_decimal(&rat(-1, 3), 12), "-0.333333333333");
        assert_eq!(render_decimal(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(render_decimal(&rat(-1, 2), 12), "-0.5");
        assert_eq!(render_decimal(&rat(2, 3), 12), "0.666666666667");
        assert_eq!(render_decimal(&int(1), 12), "1");
        assert_eq!(render_decimal(&int(0), 12), "0");
        assert_eq!(render_decimal(&int(1500), 2), "1500");
        assert_eq!(render_decimal(&rat(1, 1000), 3), "0.001");
    }

    #[test]
    fn half_even_rounding() {
        // 0.125 at two digits: ...12|5 -> 12 (even)
        assert_eq!(render_decimal(&rat(1, 8), 2), "0.12");
        // 0.375 -> 0.38 (37|5 -> 38)
        assert_eq!(render_decimal(&rat(3, 8), 2), "0.38");
        assert_eq!(render_decimal(&rat(999, 1000), 2), "1");
    }

    #[test]
    fn extreme_exponents_use_scientific() {
        let tiny = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 30));
        assert_eq!(render_decimal(&tiny, 12), "1e-30");
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-7/4"), Some(rat(-7, 4)));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("3"), Some(int(3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let xs = [1.0, 1e-16, 1e-16, 1e-16, 1e-16, -1.0];
        assert!((compensated_sum(xs) - 4e-16).abs() < 1e-30);
    }
}
