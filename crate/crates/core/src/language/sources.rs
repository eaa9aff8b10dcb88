//! Oracle constructors: primitive substitutions, Sturmian expansions, samples.

use std::collections::BTreeMap;

use super::automaton::SuffixAutomaton;
use super::words::{Alphabet, Symbol, Word};
use super::{Certification, FactorOracle, SubshiftSource};
use crate::{Error, Result};

/// Hard cap on scan windows; growth loops error out instead of thrashing.
const WINDOW_CAP: usize = 1 << 26;

/// Builds the factor oracle of the subshift generated by a primitive
/// substitution. Factor sets are certified by window-doubling stabilization
/// on a fixed-point prefix, and the language is checked to be aperiodic
/// (`p(n) >= n + 1` on the certified range).
pub fn substitution_oracle(
    rules: &BTreeMap<char, String>,
    seed: char,
    depth: usize,
) -> Result<FactorOracle> {
    if rules.len() < 2 {
        // Degenerate systems like {a -> a} never generate an aperiodic
        // minimal subshift; reported as non-primitive.
        return Err(Error::NotPrimitive);
    }
    let alphabet = Alphabet::new(rules.keys().copied().collect())?;
    let mut images: Vec<Vec<Symbol>> = Vec::with_capacity(alphabet.size());
    for image in rules.values() {
        let w = alphabet.parse(image)?;
        if w.is_empty() {
            return Err(Error::InvalidArgument("empty substitution image".into()));
        }
        images.push(w.symbols().to_vec());
    }
    let seed = alphabet
        .index_of(seed)
        .ok_or_else(|| Error::InvalidArgument("seed is not an alphabet symbol".into()))?;

    if !is_primitive(&images, alphabet.size()) {
        return Err(Error::NotPrimitive);
    }

    // A letter c and power p with sigma^p(c) starting with c: follow the
    // first-letter map from the seed until it cycles.
    let (cycle_letter, power) = first_letter_cycle(&images, seed);
    let expand = |w: &[Symbol], target: usize| -> Vec<Symbol> {
        let mut cur = w.to_vec();
        for _ in 0..power {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for &s in &cur {
                next.extend_from_slice(&images[s as usize]);
                if next.len() >= target {
                    break;
                }
            }
            next.truncate(target);
            cur = next;
        }
        cur
    };

    let fixed_prefix = |target: usize| -> Result<Vec<Symbol>> {
        let mut w = vec![cycle_letter];
        while w.len() < target {
            let next = expand(&w, target);
            if next.len() <= w.len() {
                return Err(Error::NoFixedPoint);
            }
            w = next;
        }
        Ok(w)
    };

    // Sanity: the cycle letter must begin its own image under sigma^power.
    if expand(&[cycle_letter], 2).first() != Some(&cycle_letter) {
        return Err(Error::NoFixedPoint);
    }

    let mut win = usize::max(1024, 8 * depth.max(1));
    loop {
        if 2 * win > WINDOW_CAP {
            return Err(Error::StabilizationFailed { cap: WINDOW_CAP });
        }
        let w1 = fixed_prefix(win)?;
        let w2 = fixed_prefix(2 * win)?;
        if counts_agree(&w1, &w2, alphabet.size(), depth) {
            check_aperiodic(&w2, alphabet.size(), depth)?;
            let source = SubshiftSource::Substitution {
                rules: rules.iter().map(|(c, s)| (*c, s.clone())).collect(),
                seed: alphabet.char_at(seed),
            };
            let len = w2.len();
            return Ok(FactorOracle::from_window(
                alphabet,
                w2,
                depth,
                Certification::Stabilized { window_len: len },
                source,
            ));
        }
        win *= 2;
    }
}

fn is_primitive(images: &[Vec<Symbol>], n: usize) -> bool {
    let mut adj = vec![vec![false; n]; n];
    for (a, image) in images.iter().enumerate() {
        for &b in image {
            adj[a][b as usize] = true;
        }
    }
    // Wielandt bound: primitive iff some power <= (n-1)^2 + 1 is positive.
    let bound = (n - 1) * (n - 1) + 1;
    let mut cur = adj.clone();
    for _ in 0..bound {
        if cur.iter().all(|row| row.iter().all(|&x| x)) {
            return true;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if cur[i][k] {
                    for j in 0..n {
                        if adj[k][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        cur = next;
    }
    false
}

fn first_letter_cycle(images: &[Vec<Symbol>], seed: Symbol) -> (Symbol, usize) {
    let f = |s: Symbol| images[s as usize][0];
    let mut orbit = vec![seed];
    loop {
        let next = f(*orbit.last().unwrap());
        if let Some(pos) = orbit.iter().position(|&x| x == next) {
            return (next, orbit.len() - pos);
        }
        orbit.push(next);
    }
}

fn counts_agree(w1: &[Symbol], w2: &[Symbol], sigma: usize, depth: usize) -> bool {
    let c1 = SuffixAutomaton::from_text(w1, sigma).degree_histogram(depth);
    let c2 = SuffixAutomaton::from_text(w2, sigma).degree_histogram(depth);
    (0..=depth).all(|n| {
        c1[n].iter().sum::<u64>() == c2[n].iter().sum::<u64>()
    })
}

fn check_aperiodic(window: &[Symbol], sigma: usize, depth: usize) -> Result<()> {
    let hist = SuffixAutomaton::from_text(window, sigma).degree_histogram(depth);
    for (n, row) in hist.iter().enumerate().take(depth + 1) {
        let count = row.iter().sum::<u64>() as usize;
        if count <= n {
            return Err(Error::Periodic { n, count });
        }
    }
    Ok(())
}

/// Coefficient stream for a continued-fraction expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffSeq {
    /// Finite list extended cyclically (quadratic irrational slope).
    Cyclic(Vec<u32>),
    /// Finite list used as-is; runs out.
    Finite(Vec<u32>),
    /// `a_n = n`.
    Linear,
}

/// Continued-fraction description of a Sturmian subshift, with the derived
/// standard words `s_0 = 0`, `s_1 = 0^(a_1 - 1) 1`, `s_n = s_{n-1}^{a_n} s_{n-2}`.
#[derive(Clone, Debug)]
pub struct SturmianSpec {
    coeffs: CoeffSeq,
}

impl SturmianSpec {
    pub fn cyclic(coeffs: Vec<u32>) -> Result<Self> {
        Self::validated(CoeffSeq::Cyclic(coeffs))
    }

    pub fn finite(coeffs: Vec<u32>) -> Result<Self> {
        Self::validated(CoeffSeq::Finite(coeffs))
    }

    pub fn linear() -> Self {
        SturmianSpec { coeffs: CoeffSeq::Linear }
    }

    fn validated(coeffs: CoeffSeq) -> Result<Self> {
        let list = match &coeffs {
            CoeffSeq::Cyclic(v) | CoeffSeq::Finite(v) => v,
            CoeffSeq::Linear => return Ok(SturmianSpec { coeffs }),
        };
        if list.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient list".into()));
        }
        if list.contains(&0) {
            return Err(Error::InvalidArgument(
                "continued-fraction coefficients must be positive".into(),
            ));
        }
        Ok(SturmianSpec { coeffs })
    }

    pub fn coefficients(&self) -> &CoeffSeq {
        &self.coeffs
    }

    /// 1-based coefficient `a_n`, if available.
    pub fn coefficient(&self, n: usize) -> Option<u32> {
        debug_assert!(n >= 1);
        match &self.coeffs {
            CoeffSeq::Cyclic(v) => Some(v[(n - 1) % v.len()]),
            CoeffSeq::Finite(v) => v.get(n - 1).copied(),
            CoeffSeq::Linear => Some(n as u32),
        }
    }

    pub fn describe(&self) -> String {
        match &self.coeffs {
            CoeffSeq::Cyclic(v) => format!("cyclic {v:?}"),
            CoeffSeq::Finite(v) => format!("finite {v:?}"),
            CoeffSeq::Linear => "a_n = n".to_string(),
        }
    }

    /// The standard word `s_n`.
    pub fn standard_word(&self, n: usize) -> Result<Word> {
        let mut prev = Word::from_symbols(vec![0]);
        if n == 0 {
            return Ok(prev);
        }
        let mut cur = self.first_standard_word(0)?;
        for m in 2..=n {
            let a = self
                .coefficient(m)
                .ok_or(Error::InsufficientCoefficients { required: 0 })? as usize;
            let next = cur.repeat(a).concat(&prev);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    fn first_standard_word(&self, required: usize) -> Result<Word> {
        let a1 = self
            .coefficient(1)
            .ok_or(Error::InsufficientCoefficients { required })? as usize;
        let mut s1 = Word::from_symbols(vec![0; a1 - 1]);
        s1.push(1);
        Ok(s1)
    }

    /// Prefix of the characteristic word of the given length. `s_m` is a
    /// prefix of `s_{m+1}` for `m >= 1`, so any long enough standard word
    /// serves.
    pub(crate) fn characteristic_prefix(&self, len: usize) -> Result<Vec<Symbol>> {
        let need = len.max(2);
        let mut prev = Word::from_symbols(vec![0]);
        let mut cur = self.first_standard_word(need)?;
        let mut m = 1;
        while cur.len() < need {
            let a = self
                .coefficient(m + 1)
                .ok_or(Error::InsufficientCoefficients { required: need })?
                as usize;
            let next = cur.repeat(a).concat(&prev);
            debug_assert!(next.len() > cur.len());
            prev = cur;
            cur = next;
            m += 1;
        }
        let mut w = cur.symbols().to_vec();
        w.truncate(len);
        Ok(w)
    }
}

/// Builds a Sturmian factor oracle. The window grows until the factor counts
/// hit the exact Sturmian complexity `p(n) = n + 1` for every `n <= depth`,
/// which certifies the factor sets (a window's factors are a subset of the
/// subshift's, and equal counts force equality).
pub fn sturmian_oracle(spec: &SturmianSpec, depth: usize) -> Result<FactorOracle> {
    let alphabet = Alphabet::binary();
    let mut len = usize::max(1024, 4 * depth.max(1));
    loop {
        if len > WINDOW_CAP {
            return Err(Error::StabilizationFailed { cap: WINDOW_CAP });
        }
        let window = spec.characteristic_prefix(len)?;
        let hist = SuffixAutomaton::from_text(&window, 2).degree_histogram(depth);
        let exact = (0..=depth).all(|n| hist[n].iter().sum::<u64>() as usize == n + 1);
        if exact {
            let window_len = window.len();
            return Ok(FactorOracle::from_window(
                alphabet,
                window,
                depth,
                Certification::ExactComplexity { window_len },
                SubshiftSource::Sturmian {
                    coefficients: spec.describe(),
                },
            ));
        }
        len *= 2;
    }
}

/// Builds an uncertified oracle whose factor sets are the substrings of a
/// sample word. Adequacy (`|text| >= 4 * depth`) is recorded, not enforced;
/// texts shorter than the requested depth are rejected.
pub fn sample_oracle(text: &str, depth: usize) -> Result<FactorOracle> {
    let chars: Vec<char> = text.chars().collect();
    if chars.len() < depth {
        return Err(Error::TextTooShort {
            len: chars.len(),
            depth,
        });
    }
    let mut symbols: Vec<char> = chars.clone();
    symbols.sort_unstable();
    symbols.dedup();
    let alphabet = Alphabet::new(symbols)?;
    let window: Vec<Symbol> = chars
        .iter()
        .map(|&c| alphabet.index_of(c).unwrap())
        .collect();
    let adequate = chars.len() >= 4 * depth;
    let text_len = chars.len();
    Ok(FactorOracle::from_window(
        alphabet,
        window,
        depth,
        Certification::SampleBased { text_len, adequate },
        SubshiftSource::Sample { text_len },
    ))
}
