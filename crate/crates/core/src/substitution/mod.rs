//! Substitution rules on finite alphabets, their fixed points and the exact
//! autocorrelation coefficients of the Thue-Morse, generalised Morse and
//! Rudin-Shapiro sequences.
//!
//! Letters are stored as indices into the rule's alphabet. Numeric weights
//! (`1̄ -> -1`, the Rudin-Shapiro reduction `a,c -> 1`, `b,d -> -1`) are
//! attached to the named rules and applied with [`SubstitutionRule::word_weights`].

mod coefficients;
mod sequences;

use std::fmt;

use crate::error::{param, Error, Result};

pub use coefficients::{gtm_eta, rs_eta_theta, tm_eta, CoefficientSystem, ExactCoefficientTable};
pub use sequences::{
    binary_rs_sequence, block_map_pairs, gtm_sequence, is_cube_free, is_overlap_free, tm_two_sided,
    tm_value, PairLetter,
};

/// Default cap on the length of iterated words.
pub const DEFAULT_LENGTH_CAP: usize = 1 << 26;

/// Maximal power searched when checking seed legality.
pub const LEGALITY_DEPTH: u32 = 6;

/// Seeds longer than this are not checked for legality.
pub const LEGALITY_MAX_SEED: usize = 8;

/// The letter `1̄` of the Thue-Morse alphabet.
pub const ONE_BAR: &str = "1\u{0304}";

#[derive(Debug, Clone, PartialEq)]
pub struct SubstitutionRule {
    alphabet: Vec<String>,
    images: Vec<Vec<u8>>,
    weights: Option<Vec<f64>>,
}

impl SubstitutionRule {
    /// Builds a rule from `(letter, image)` pairs; images are words over the
    /// same letters. Fails unless every image is non-empty and the rule is
    /// primitive.
    pub fn new(rules: &[(&str, Vec<&str>)]) -> Result<Self> {
        if rules.is_empty() || rules.len() > u8::MAX as usize {
            return param("alphabet must contain between 1 and 255 letters");
        }
        let alphabet: Vec<String> = rules.iter().map(|(a, _)| a.to_string()).collect();
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() || a.contains(char::is_whitespace) || a.contains('|') {
                return param(format!("invalid letter {a:?}"));
            }
            if alphabet[..i].contains(a) {
                return param(format!("letter {a:?} defined twice"));
            }
        }
        let mut images = Vec::with_capacity(rules.len());
        for (a, img) in rules {
            if img.is_empty() {
                return Err(Error::Validation(format!("image of {a:?} is empty")));
            }
            let word = img
                .iter()
                .map(|s| letter_index(&alphabet, s))
                .collect::<Result<Vec<u8>>>()?;
            images.push(word);
        }
        let rule = Self { alphabet, images, weights: None };
        if !is_primitive(&rule.incidence_matrix()) {
            return Err(Error::Validation("substitution rule is not primitive".into()));
        }
        Ok(rule)
    }

    /// Parses lines of the form `a -> a b a`. Blank lines and lines starting
    /// with `#` are skipped. An image written without spaces (`a -> aba`) is
    /// split into single characters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected `letter -> image`, got {line:?}")))?;
            pairs.push((lhs.trim().to_string(), rhs.trim().to_string()));
        }
        let alphabet: Vec<&str> = pairs.iter().map(|(a, _)| a.as_str()).collect();
        let mut tokens: Vec<Vec<String>> = Vec::with_capacity(pairs.len());
        for (_, rhs) in &pairs {
            let mut word = Vec::new();
            for tok in rhs.split_whitespace() {
                if alphabet.contains(&tok) {
                    word.push(tok.to_string());
                } else {
                    word.extend(tok.chars().map(String::from));
                }
            }
            tokens.push(word);
        }
        let rules: Vec<(&str, Vec<&str>)> = pairs
            .iter()
            .zip(&tokens)
            .map(|((a, _), w)| (a.as_str(), w.iter().map(String::as_str).collect()))
            .collect();
        Self::new(&rules)
    }

    /// Built-in rules: `tm`, `gtm:k,l`, `pd`, `gpd:k,l`, `rs4`, `silver`.
    pub fn named(name: &str) -> Result<Self> {
        let (base, args) = match name.split_once(':') {
            Some((b, a)) => (b, Some(a)),
            None => (name, None),
        };
        let kl = || -> Result<(usize, usize)> {
            let a = args.ok_or_else(|| Error::Parameter(format!("{base} needs parameters k,l")))?;
            let (k, l) = a
                .split_once(',')
                .ok_or_else(|| Error::Parameter(format!("expected k,l, got {a:?}")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parameter(format!("invalid integer {s:?}")))
            };
            Ok((parse(k)?, parse(l)?))
        };
        match (base, args) {
            ("tm", None) => Self::thue_morse(),
            ("gtm", _) => {
                let (k, l) = kl()?;
                Self::generalised_thue_morse(k, l)
            }
            ("pd", None) => Self::period_doubling(),
            ("gpd", _) => {
                let (k, l) = kl()?;
                Self::generalised_period_doubling(k, l)
            }
            ("rs4", None) => Self::rudin_shapiro(),
            ("silver", None) => Self::silver_mean(),
            _ => param(format!("unknown substitution {name:?}")),
        }
    }

    pub fn thue_morse() -> Result<Self> {
        Self::generalised_thue_morse(1, 1)
    }

    /// `1 -> 1^k 1̄^l`, `1̄ -> 1̄^k 1^l`.
    pub fn generalised_thue_morse(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return param("gTM parameters must satisfy k, l >= 1");
        }
        let img = |x: &'static str, y: &'static str| {
            std::iter::repeat_n(x, k).chain(std::iter::repeat_n(y, l)).collect::<Vec<_>>()
        };
        let mut r = Self::new(&[("1", img("1", ONE_BAR)), (ONE_BAR, img(ONE_BAR, "1"))])?;
        r.weights = Some(vec![1.0, -1.0]);
        Ok(r)
    }

    pub fn period_doubling() -> Result<Self> {
        Self::generalised_period_doubling(1, 1)
    }

    /// `a -> b^(k-1) a b^(l-1) b`, `b -> b^(k-1) a b^(l-1) a`.
    pub fn generalised_period_doubling(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return param("gPD parameters must satisfy k, l >= 1");
        }
        let img = |last: &'static str| {
            let mut w = vec!["b"; k - 1];
            w.push("a");
            w.extend(std::iter::repeat_n("b", l - 1));
            w.push(last);
            w
        };
        Self::new(&[("a", img("b")), ("b", img("a"))])
    }

    /// Quaternary Rudin-Shapiro rule with the reduction `a,c -> 1`, `b,d -> -1`.
    pub fn rudin_shapiro() -> Result<Self> {
        let mut r = Self::new(&[
            ("a", vec!["a", "c"]),
            ("b", vec!["d", "c"]),
            ("c", vec!["a", "b"]),
            ("d", vec!["d", "b"]),
        ])?;
        r.weights = Some(vec![1.0, -1.0, 1.0, -1.0]);
        Ok(r)
    }

    /// `a -> a b a`, `b -> a`.
    pub fn silver_mean() -> Result<Self> {
        Self::new(&[("a", vec!["a", "b", "a"]), ("b", vec!["a"])])
    }

    /// Attaches numeric weights to the letters, in alphabet order.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.alphabet.len() || weights.iter().any(|w| !w.is_finite()) {
            return param("one finite weight per letter required");
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn letter(&self, name: &str) -> Result<u8> {
        letter_index(&self.alphabet, name)
    }

    /// `M[i][j]` = number of occurrences of letter `i` in the image of `j`.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.alphabet.len();
        let mut m = vec![vec![0u64; n]; n];
        for (j, img) in self.images.iter().enumerate() {
            for &i in img {
                m[i as usize][j] += 1;
            }
        }
        m
    }

    /// Perron-Frobenius eigenvalue of the incidence matrix (power iteration).
    pub fn perron_frobenius_eigenvalue(&self) -> f64 {
        let m = self.incidence_matrix();
        let n = m.len();
        let mut v = vec![1.0 / n as f64; n];
        let mut lambda = 0.0;
        for _ in 0..10_000 {
            let w: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| m[i][j] as f64 * v[j]).sum())
                .collect();
            let s: f64 = w.iter().sum();
            let next = s / v.iter().sum::<f64>();
            v = w.iter().map(|x| x / s).collect();
            if (next - lambda).abs() <= 1e-15 * next {
                return next;
            }
            lambda = next;
        }
        lambda
    }

    /// `rule(word)`, with the origin moved to the image of the cut.
    pub fn apply(&self, word: &SymbolicWord) -> SymbolicWord {
        let mut symbols = Vec::new();
        let mut origin = 0;
        for (i, &s) in word.symbols.iter().enumerate() {
            if i == word.origin {
                origin = symbols.len();
            }
            symbols.extend_from_slice(&self.images[s as usize]);
        }
        if word.origin == word.symbols.len() {
            origin = symbols.len();
        }
        SymbolicWord { symbols, origin }
    }

    /// Parses a word such as `1 1̄ | 1`, `ba`, or `b|a`. Without a `|` the
    /// origin sits at the start.
    pub fn word(&self, text: &str) -> Result<SymbolicWord> {
        let (left, right) = match text.split_once('|') {
            Some((l, r)) => (l, r),
            None => ("", text),
        };
        let left = self.parse_letters(left)?;
        let right = self.parse_letters(right)?;
        let origin = left.len();
        let mut symbols = left;
        symbols.extend(right);
        Ok(SymbolicWord { symbols, origin })
    }

    fn parse_letters(&self, text: &str) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if let Ok(i) = self.letter(tok) {
                out.push(i);
                continue;
            }
            let mut rest = tok;
            while !rest.is_empty() {
                let best = self
                    .alphabet
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| rest.starts_with(a.as_str()))
                    .max_by_key(|(_, a)| a.len())
                    .ok_or_else(|| Error::Parameter(format!("unknown letter in {tok:?}")))?;
                out.push(best.0 as u8);
                rest = &rest[best.1.len()..];
            }
        }
        Ok(out)
    }

    /// Letters written side by side, with `|` at the origin of two-sided words.
    pub fn render(&self, word: &SymbolicWord) -> String {
        let mut s = String::new();
        for (i, &c) in word.symbols.iter().enumerate() {
            if i == word.origin && i > 0 {
                s.push('|');
            }
            s.push_str(&self.alphabet[c as usize]);
        }
        s
    }

    pub fn word_weights(&self, word: &SymbolicWord) -> Result<Vec<f64>> {
        let w = self
            .weights
            .as_ref()
            .ok_or_else(|| Error::Parameter("rule has no letter weights".into()))?;
        Ok(word.symbols.iter().map(|&s| w[s as usize]).collect())
    }

    /// True if the concatenated seed occurs in `rule^j(letter)` for some
    /// letter and some `j <= LEGALITY_DEPTH`. Single letters are always
    /// legal; seeds longer than [`LEGALITY_MAX_SEED`] are accepted unchecked.
    pub fn is_legal(&self, seed: &SymbolicWord) -> bool {
        if seed.symbols.len() <= 1 || seed.symbols.len() > LEGALITY_MAX_SEED {
            return true;
        }
        (0..self.alphabet.len() as u8).any(|c| {
            let mut w = vec![c];
            for _ in 0..=LEGALITY_DEPTH {
                if w.windows(seed.symbols.len()).any(|x| x == seed.symbols.as_slice()) {
                    return true;
                }
                if w.len() > 1 << 22 {
                    break;
                }
                w = w.iter().flat_map(|&s| self.images[s as usize].iter().copied()).collect();
            }
            false
        })
    }

    /// Length of `rule^n(word)` without building it, saturating at `u128::MAX`.
    pub fn iterated_length(&self, word: &SymbolicWord, n: u32) -> u128 {
        let m = self.incidence_matrix();
        let k = m.len();
        let mut counts = vec![0u128; k];
        for &s in &word.symbols {
            counts[s as usize] += 1;
        }
        for _ in 0..n {
            let mut next = vec![0u128; k];
            for j in 0..k {
                for i in 0..k {
                    next[i] = next[i].saturating_add(counts[j].saturating_mul(m[i][j] as u128));
                }
            }
            counts = next;
            if counts.contains(&u128::MAX) {
                return u128::MAX;
            }
        }
        counts.iter().fold(0u128, |a, &c| a.saturating_add(c))
    }
}

/// True if some power `M^p`, `p <= n^2`, of the square matrix is positive.
pub fn is_primitive(m: &[Vec<u64>]) -> bool {
    let n = m.len();
    let b: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut p = b.clone();
    for _ in 0..n * n {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        p = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|l| p[i][l] && b[l][j])).collect())
            .collect();
    }
    false
}

fn letter_index(alphabet: &[String], s: &str) -> Result<u8> {
    alphabet
        .iter()
        .position(|a| a == s)
        .map(|i| i as u8)
        .ok_or_else(|| Error::Parameter(format!("unknown letter {s:?}")))
}

/// Finite word with a cut: `symbols[..origin]` lies left of the origin
/// (negative indices), `symbols[origin..]` at indices `0, 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicWord {
    pub symbols: Vec<u8>,
    pub origin: usize,
}

impl SymbolicWord {
    pub fn one_sided(symbols: Vec<u8>) -> Self {
        Self { symbols, origin: 0 }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at integer position `i` relative to the origin.
    pub fn at(&self, i: i64) -> Option<u8> {
        let j = self.origin as i64 + i;
        (j >= 0 && (j as usize) < self.symbols.len()).then(|| self.symbols[j as usize])
    }

    pub fn right(&self) -> &[u8] {
        &self.symbols[self.origin..]
    }

    pub fn left(&self) -> &[u8] {
        &self.symbols[..self.origin]
    }
}

impl fmt::Display for SymbolicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.symbols.iter().map(u8::to_string).collect();
        write!(f, "{}|{}", strs[..self.origin].join(" "), strs[self.origin..].join(" "))
    }
}

/// `rule^n(seed)` with the origin tracked, capped at [`DEFAULT_LENGTH_CAP`].
pub fn iterate_fixed_point(rule: &SubstitutionRule, seed: &SymbolicWord, n: u32) -> Result<SymbolicWord> {
    iterate_fixed_point_capped(rule, seed, n, DEFAULT_LENGTH_CAP)
}

pub fn iterate_fixed_point_capped(
    rule: &SubstitutionRule,
    seed: &SymbolicWord,
    n: u32,
    cap: usize,
) -> Result<SymbolicWord> {
    if seed.is_empty() || seed.origin > seed.len() {
        return param("seed must be non-empty with origin inside the word");
    }
    if seed.symbols.iter().any(|&s| s as usize >= rule.alphabet.len()) {
        return Err(Error::Validation("seed contains letters outside the alphabet".into()));
    }
    if !rule.is_legal(seed) {
        return Err(Error::Validation(format!(
            "seed {} is not a legal word of the substitution",
            rule.render(seed)
        )));
    }
    let len = rule.iterated_length(seed, n);
    if len > cap as u128 {
        return Err(Error::Resource(format!(
            "iterated word would have {len} symbols, exceeding the cap of {cap}"
        )));
    }
    let mut w = seed.clone();
    for _ in 0..n {
        w = rule.apply(&w);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tm_iteration_display() {
        let tm = SubstitutionRule::thue_morse().unwrap();
        let w = iterate_fixed_point(&tm, &tm.word("1").unwrap(), 3).unwrap();
        let b = ONE_BAR;
        assert_eq!(tm.render(&w), format!("1{b}{b}1{b}11{b}"));
    }

    #[test]
    fn pd_two_steps() {
        let pd = SubstitutionRule::period_doubling().unwrap();
        let w = iterate_fixed_point(&pd, &pd.word("a").unwrap(), 2).unwrap();
        assert_eq!(pd.render(&w), "abaa");
    }

    #[test]
    fn rs_two_sided_seed() {
        let rs = SubstitutionRule::rudin_shapiro().unwrap();
        let w = iterate_fixed_point(&rs, &rs.word("b|a").unwrap(), 2).unwrap();
        assert_eq!(rs.render(&w), "dbab|acab");
        assert_eq!(w.origin, 4);
    }

    #[test]
    fn non_primitive_rejected() {
        let r = SubstitutionRule::parse("a -> a\nb -> a b");
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn named_rules_are_primitive() {
        for name in ["tm", "gtm:2,1", "gtm:5,1", "pd", "gpd:3,2", "rs4", "silver"] {
            let r = SubstitutionRule::named(name).unwrap();
            assert!(is_primitive(&r.incidence_matrix()), "{name}");
        }
    }

    #[test]
    fn parse_text_format() {
        let r = SubstitutionRule::parse("# silver mean\na -> a b a\nb -> a\n").unwrap();
        assert_eq!(r, SubstitutionRule::silver_mean().unwrap());
        let compact = SubstitutionRule::parse("a -> aba\nb -> a").unwrap();
        assert_eq!(compact, r);
        assert_eq!(r.incidence_matrix(), vec![vec![2, 1], vec![1, 0]]);
    }

    #[test]
    fn pf_eigenvalues() {
        let s = SubstitutionRule::silver_mean().unwrap().perron_frobenius_eigenvalue();
        assert!((s - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        let g = SubstitutionRule::named("gtm:5,1").unwrap().perron_frobenius_eigenvalue();
        assert!((g - 6.0).abs() < 1e-12);
    }

    #[test]
    fn legality() {
        let tm = SubstitutionRule::thue_morse().unwrap();
        assert!(tm.is_legal(&tm.word("1|1").unwrap()));
        let w = tm.word("1 1 1").unwrap();
        assert!(!tm.is_legal(&w));
        assert!(matches!(iterate_fixed_point(&tm, &w, 1), Err(Error::Validation(_))));
    }

    #[test]
    fn length_cap() {
        let tm = SubstitutionRule::thue_morse().unwrap();
        let seed = tm.word("1").unwrap();
        assert!(matches!(iterate_fixed_point(&tm, &seed, 27), Err(Error::Resource(_))));
        assert!(matches!(iterate_fixed_point_capped(&tm, &seed, 5, 16), Err(Error::Resource(_))));
        assert_eq!(iterate_fixed_point_capped(&tm, &seed, 4, 16).unwrap().len(), 16);
    }

    #[test]
    fn tm_two_sided_is_fixed_by_square() {
        let tm = SubstitutionRule::thue_morse().unwrap();
        let w = iterate_fixed_point(&tm, &tm.word("1|1").unwrap(), 6).unwrap();
        let w2 = iterate_fixed_point(&tm, &w, 2).unwrap();
        for i in -64..64 {
            assert_eq!(w.at(i), w2.at(i));
        }
    }

    #[test]
    fn gtm_image() {
        let r = SubstitutionRule::named("gtm:2,1").unwrap();
        let w = r.apply(&r.word("1").unwrap());
        assert_eq!(r.render(&w), format!("11{ONE_BAR}"));
        let g = SubstitutionRule::named("gpd:2,3").unwrap();
        assert_eq!(g.render(&g.apply(&g.word("a").unwrap())), "babbb");
    }
}
