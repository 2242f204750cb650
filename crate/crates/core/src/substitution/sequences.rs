use std::ops::Range;

use crate::error::{param, Error, Result};

/// Thue-Morse value `(-1)^{s(i)}` with `s` the binary digit sum, extended to
/// negative indices by the reflection `w_i = v_{-i-1}`.
pub fn tm_value(i: i64) -> i8 {
    let j = if i >= 0 { i as u64 } else { (-1 - i) as u64 };
    if j.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Two-sided Thue-Morse weights on `range`.
pub fn tm_two_sided(range: Range<i64>) -> Vec<f64> {
    range.map(|i| tm_value(i) as f64).collect()
}

/// One-sided fixed point of `1 -> 1^k 1̄^l`, `1̄ -> 1̄^k 1^l` as +-1 weights:
/// `v_i` is the product over the base-`(k+l)` digits `d` of `i` of
/// `-1 if d >= k else 1`.
pub fn gtm_sequence(k: u64, l: u64, len: usize) -> Result<Vec<f64>> {
    if k == 0 || l == 0 {
        return param("gTM parameters must satisfy k, l >= 1");
    }
    let n = k + l;
    Ok((0..len as u64)
        .map(|mut i| {
            let mut s = 1.0;
            while i > 0 {
                if i % n >= k {
                    s = -s;
                }
                i /= n;
            }
            s
        })
        .collect())
}

fn rs_value(n: i64) -> i8 {
    match n {
        -1 => -1,
        0 => 1,
        _ => {
            let (q, l) = (n.div_euclid(4), n.rem_euclid(4));
            let base = rs_value(q);
            if l < 2 || (q + l).rem_euclid(2) == 0 {
                base
            } else {
                -base
            }
        }
    }
}

/// Binary Rudin-Shapiro weights on `range` from `w(-1) = -1`, `w(0) = 1` and
/// `w(4n+l) = w(n)` for `l in {0,1}`, `(-1)^(n+l) w(n)` for `l in {2,3}`.
pub fn binary_rs_sequence(range: Range<i64>) -> Result<Vec<f64>> {
    let len = range.end.saturating_sub(range.start);
    if len < 0 || len as u128 > super::DEFAULT_LENGTH_CAP as u128 {
        return Err(Error::Resource(format!("range of {len} indices exceeds the length cap")));
    }
    Ok(range.map(|i| rs_value(i) as f64).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairLetter {
    A,
    B,
}

impl PairLetter {
    pub fn as_char(self) -> char {
        match self {
            PairLetter::A => 'a',
            PairLetter::B => 'b',
        }
    }
}

/// `a` where neighbours differ, `b` where they agree.
pub fn block_map_pairs(w: &[f64]) -> Result<Vec<PairLetter>> {
    if w.len() < 2 {
        return param("block map needs at least two symbols");
    }
    Ok(w.windows(2)
        .map(|p| if p[0] != p[1] { PairLetter::A } else { PairLetter::B })
        .collect())
}

/// True if no factor `xxx` with `x` non-empty occurs.
pub fn is_cube_free<T: PartialEq>(w: &[T]) -> bool {
    let n = w.len();
    (1..=n / 3).all(|p| {
        let mut run = 0;
        for i in p..n {
            if w[i] == w[i - p] {
                run += 1;
                if run >= 2 * p {
                    return false;
                }
            } else {
                run = 0;
            }
        }
        true
    })
}

/// True if no overlap `xxa` (with `a` the first letter of `x`) occurs, the
/// strong form of cube-freeness.
pub fn is_overlap_free<T: PartialEq>(w: &[T]) -> bool {
    let n = w.len();
    (1..=n / 2).all(|p| {
        let mut run = 0;
        for i in p..n {
            if w[i] == w[i - p] {
                run += 1;
                if run > p {
                    return false;
                }
            } else {
                run = 0;
            }
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{iterate_fixed_point, SubstitutionRule};

    #[test]
    fn tm_value_matches_reflection() {
        assert_eq!(tm_two_sided(-4..4), vec![1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn rs_initial_window() {
        let w = binary_rs_sequence(-4..4).unwrap();
        assert_eq!(w, vec![-1.0, -1.0, 1.0, -1.0, 1.0, 1.0, 1.0, -1.0]);
    }

    #[test]
    fn rs_matches_quaternary_fixed_point() {
        let rs = SubstitutionRule::rudin_shapiro().unwrap();
        let u = iterate_fixed_point(&rs, &rs.word("b|a").unwrap(), 8).unwrap();
        let phi = rs.word_weights(&u).unwrap();
        let lo = -(u.origin as i64);
        let w = binary_rs_sequence(lo..lo + u.len() as i64).unwrap();
        assert_eq!(w, phi);
    }

    #[test]
    fn block_map_examples() {
        use PairLetter::*;
        assert_eq!(block_map_pairs(&[1.0; 4]).unwrap(), vec![B, B, B]);
        assert_eq!(block_map_pairs(&[1.0, -1.0, -1.0, 1.0]).unwrap(), vec![A, B, A]);
        assert_eq!(block_map_pairs(&[1.0, -1.0, 1.0, -1.0]).unwrap(), vec![A, A, A]);
        assert!(block_map_pairs(&[1.0]).is_err());
    }

    #[test]
    fn gtm_digits_match_substitution() {
        for (k, l) in [(1, 1), (2, 1), (5, 1), (2, 3)] {
            let r = SubstitutionRule::generalised_thue_morse(k as usize, l as usize).unwrap();
            let w = iterate_fixed_point(&r, &r.word("1").unwrap(), 4).unwrap();
            let v = r.word_weights(&w).unwrap();
            assert_eq!(gtm_sequence(k, l, v.len()).unwrap(), v);
        }
    }

    #[test]
    fn tm_is_overlap_free() {
        let v = tm_two_sided(0..2048);
        assert!(is_overlap_free(&v) && is_cube_free(&v));
        assert!(!is_cube_free(&[1, 2, 1, 2, 1, 2]));
        assert!(is_cube_free(&[1, 1, 2, 1, 1]));
        assert!(!is_overlap_free(&[1, 2, 1, 2, 1]));
    }
}
