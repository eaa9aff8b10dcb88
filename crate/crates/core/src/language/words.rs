//! Alphabets and finite words.
//!
//! Words store symbol indices, not characters: comparing two words compares
//! their symbols in alphabet order, so `Ord` on [`Word`] is the lexicographic
//! order that every enumeration in this crate uses.

use std::fmt;

use crate::{Error, Result};

/// Index of a symbol in an [`Alphabet`].
pub type Symbol = u8;

/// Ordered alphabet. The symbol order is fixed at construction and drives
/// every lexicographic tie-break downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from distinct characters, keeping the given order.
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        if symbols.len() < 2 {
            return Err(Error::InvalidArgument(
                "alphabet needs at least two symbols".into(),
            ));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::InvalidArgument("alphabet too large".into()));
        }
        let mut seen = symbols.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != symbols.len() {
            return Err(Error::InvalidArgument("alphabet symbols must be distinct".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// Binary alphabet `{'0', '1'}`.
    pub fn binary() -> Self {
        Alphabet { symbols: vec!['0', '1'] }
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Option<Symbol> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as Symbol)
    }

    pub fn char_at(&self, s: Symbol) -> char {
        self.symbols[s as usize]
    }

    /// Parses a string of alphabet characters into a word.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut out = Vec::with_capacity(text.len());
        for c in text.chars() {
            match self.index_of(c) {
                Some(s) => out.push(s),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "symbol {c:?} is not in the alphabet"
                    )))
                }
            }
        }
        Ok(Word::from_symbols(out))
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.symbols().iter().map(|&s| self.char_at(s)).collect()
    }
}

/// A finite word over some alphabet, stored as symbol indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn single(s: Symbol) -> Self {
        Word(vec![s])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extended(&self, s: Symbol) -> Word {
        let mut v = self.0.clone();
        v.push(s);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` repeated `p` times.
    pub fn repeat(&self, p: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * p);
        for _ in 0..p {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn suffix(&self, n: usize) -> Word {
        Word(self.0[self.len() - n.min(self.len())..].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn is_proper_prefix_of(&self, other: &Word) -> bool {
        self.0.len() < other.0.len() && self.is_prefix_of(other)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[other.0.len() - self.0.len()..] == self.0[..]
    }

    pub fn is_proper_suffix_of(&self, other: &Word) -> bool {
        self.0.len() < other.0.len() && self.is_suffix_of(other)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.len();
        (0..n / 2).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    pub fn longest_common_prefix(&self, other: &Word) -> Word {
        let n = self
            .0
            .iter()
            .zip(other.0.iter())
            .take_while(|(a, b)| a == b)
            .count();
        self.prefix(n)
    }

    /// Length of the longest proper border (prefix that is also a suffix).
    pub fn longest_border(&self) -> usize {
        let pi = prefix_function(&self.0);
        *pi.last().unwrap_or(&0)
    }

    /// Number of (possibly overlapping) occurrences of `self` in `text`.
    pub fn count_occurrences_in(&self, text: &Word) -> usize {
        if self.is_empty() {
            return text.len() + 1;
        }
        let pi = prefix_function(&self.0);
        let mut state = 0usize;
        let mut count = 0usize;
        for &c in &text.0 {
            state = kmp_step(&self.0, &pi, state, c);
            if state == self.len() {
                count += 1;
                state = pi[state];
            }
        }
        count
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "Word(ε)");
        }
        write!(f, "Word(")?;
        for &s in &self.0 {
            if s < 10 {
                write!(f, "{s}")?;
            } else {
                write!(f, "<{s}>")?;
            }
        }
        write!(f, ")")
    }
}

/// KMP prefix function; `pi[i]` is the longest proper border of `w[..i]`.
pub(crate) fn prefix_function(w: &[Symbol]) -> Vec<usize> {
    let mut pi = vec![0usize; w.len() + 1];
    let mut k = 0usize;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = pi[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        pi[i + 1] = k;
    }
    pi
}

/// One KMP automaton step for pattern `w` with table `pi`.
pub(crate) fn kmp_step(w: &[Symbol], pi: &[usize], mut state: usize, c: Symbol) -> usize {
    loop {
        if state < w.len() && w[state] == c {
            return state + 1;
        }
        if state == 0 {
            return 0;
        }
        state = pi[state];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates_and_singletons() {
        assert!(Alphabet::new(vec!['a']).is_err());
        assert!(Alphabet::new(vec!['a', 'a']).is_err());
        assert!(Alphabet::new(vec!['a', 'b']).is_ok());
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let a = Alphabet::binary();
        let w = a.parse("10110").unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(a.format(&w), "10110");
        assert_eq!(a.format(&Word::empty()), "ε");
    }

    #[test]
    fn prefix_suffix_predicates() {
        let a = Alphabet::binary();
        let u = a.parse("101").unwrap();
        let v = a.parse("10110").unwrap();
        assert!(u.is_prefix_of(&v));
        assert!(u.is_proper_prefix_of(&v));
        assert!(!u.is_suffix_of(&v));
        assert!(a.parse("110").unwrap().is_suffix_of(&v));
        assert!(Word::empty().is_prefix_of(&u));
        assert!(u.is_prefix_of(&u) && !u.is_proper_prefix_of(&u));
    }

    #[test]
    fn palindromes() {
        let a = Alphabet::binary();
        assert!(a.parse("0110").unwrap().is_palindrome());
        assert!(!a.parse("10").unwrap().is_palindrome());
        assert!(Word::empty().is_palindrome());
    }

    #[test]
    fn borders_and_occurrences() {
        let a = Alphabet::binary();
        let w = a.parse("10110").unwrap();
        // longest border of 10110 is "10"
        assert_eq!(w.longest_border(), 2);
        assert_eq!(a.parse("0110110").unwrap().longest_border(), 4);
        let pat = a.parse("11").unwrap();
        let text = a.parse("111011").unwrap();
        assert_eq!(pat.count_occurrences_in(&text), 3);
        assert_eq!(Word::empty().count_occurrences_in(&text), 7);
    }

    #[test]
    fn word_order_is_lexicographic_by_symbol_index() {
        let a = Alphabet::binary();
        let mut v = [
            a.parse("10").unwrap(),
            a.parse("01").unwrap(),
            a.parse("1").unwrap(),
            a.parse("0").unwrap(),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|w| a.format(w)).collect();
        assert_eq!(shown, vec!["0", "01", "1", "10"]);
    }
}
