//! Exact factor oracles for concrete subshifts.
//!
//! A [`FactorOracle`] answers membership, enumeration and branching queries
//! about the language of a fixed subshift, exactly up to a certified depth.
//! Oracles are built from one of three sources (see [`sources`]): a primitive
//! substitution, a Sturmian continued-fraction expansion, or a raw sample
//! word. The first two certify their factor sets (window-doubling
//! stabilization, respectively the exact Sturmian complexity `p(n) = n + 1`);
//! sample oracles are explicitly uncertified.

mod automaton;
pub mod sources;
pub(crate) mod words;

pub use sources::{sample_oracle, sturmian_oracle, substitution_oracle, CoeffSeq, SturmianSpec};
pub use words::{Alphabet, Symbol, Word};

use automaton::SuffixAutomaton;

use crate::{Error, Result};

/// How the factor sets of an oracle were certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Doubling the scan window does not change any factor set of length
    /// `<= certified_depth`.
    Stabilized { window_len: usize },
    /// The factor counts match the exact Sturmian complexity `p(n) = n + 1`
    /// for every `n <= certified_depth`.
    ExactComplexity { window_len: usize },
    /// Factor sets are substrings of a user sample; not stabilized.
    SampleBased { text_len: usize, adequate: bool },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Certification::SampleBased { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            Certification::Stabilized { window_len } => {
                format!("stabilized (window {window_len})")
            }
            Certification::ExactComplexity { window_len } => {
                format!("exact Sturmian complexity (window {window_len})")
            }
            Certification::SampleBased { text_len, adequate } => format!(
                "sample-based, not stabilized (text {text_len}, adequate: {adequate})"
            ),
        }
    }
}

/// Provenance of an oracle, kept for reports.
#[derive(Clone, Debug)]
pub enum SubshiftSource {
    Substitution { rules: Vec<(char, String)>, seed: char },
    Sturmian { coefficients: String },
    Sample { text_len: usize },
}

/// Cursor into the factor index: a factor together with its automaton state.
/// Stepping right by one symbol is O(1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorCursor {
    state: usize,
    len: usize,
}

impl FactorCursor {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Exact membership and enumeration interface for the language of a fixed
/// subshift, certified up to `certified_depth`.
pub struct FactorOracle {
    alphabet: Alphabet,
    window: Vec<Symbol>,
    sam: SuffixAutomaton,
    certified_depth: usize,
    certification: Certification,
    source: SubshiftSource,
    /// `hist[n][d]` = number of factors of length `n` with `d` one-letter
    /// right extensions, for `n <= certified_depth`.
    hist: Vec<Vec<u64>>,
}

impl FactorOracle {
    pub(crate) fn from_window(
        alphabet: Alphabet,
        window: Vec<Symbol>,
        certified_depth: usize,
        certification: Certification,
        source: SubshiftSource,
    ) -> Self {
        let sam = SuffixAutomaton::from_text(&window, alphabet.size());
        let hist = sam.degree_histogram(certified_depth);
        FactorOracle {
            alphabet,
            window,
            sam,
            certified_depth,
            certification,
            source,
            hist,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn certified_depth(&self) -> usize {
        self.certified_depth
    }

    pub fn certification(&self) -> &Certification {
        &self.certification
    }

    pub fn source(&self) -> &SubshiftSource {
        &self.source
    }

    /// The scan window the factor index was built from.
    pub fn window(&self) -> &[Symbol] {
        &self.window
    }

    pub fn guard(&self, n: usize) -> Result<()> {
        if n > self.certified_depth {
            Err(Error::UncertifiedLength {
                requested: n,
                certified: self.certified_depth,
            })
        } else {
            Ok(())
        }
    }

    /// Membership in the language, up to the certification guarantee.
    pub fn is_factor(&self, w: &Word) -> Result<bool> {
        self.guard(w.len())?;
        Ok(self.sam.walk(w.symbols()).is_some())
    }

    /// Number of factors of length `n`.
    pub fn complexity(&self, n: usize) -> Result<usize> {
        self.guard(n)?;
        Ok(self.hist[n].iter().sum::<u64>() as usize)
    }

    /// Number of right-special factors of length `n`.
    pub fn right_special_count(&self, n: usize) -> Result<u64> {
        self.guard(n)?;
        Ok(self.hist[n][2..].iter().sum())
    }

    /// Branching histogram at length `n`: entry `d` counts factors with
    /// exactly `d` one-letter right extensions (so `a(v) = d - 1`).
    pub fn branching_histogram(&self, n: usize) -> Result<&[u64]> {
        self.guard(n)?;
        Ok(&self.hist[n])
    }

    /// Sorted one-letter right extensions of `w` in the language.
    pub fn right_extensions(&self, w: &Word) -> Result<Vec<Symbol>> {
        self.guard(w.len() + 1)?;
        let state = self
            .sam
            .walk(w.symbols())
            .ok_or_else(|| self.not_a_factor(w))?;
        Ok(self.sam.transitions(state).map(|(c, _)| c).collect())
    }

    /// All factors of length `n`, in lexicographic order.
    pub fn factors_of_length(&self, n: usize) -> Result<Vec<Word>> {
        self.guard(n)?;
        let mut out = Vec::with_capacity(self.complexity(n)?);
        let mut path: Vec<Symbol> = Vec::with_capacity(n);
        // (state, next symbol to try)
        let mut stack: Vec<(usize, u8)> = vec![(0, 0)];
        while let Some((state, sym)) = stack.pop() {
            if path.len() == n {
                out.push(Word::from_symbols(path.clone()));
                path.pop();
                continue;
            }
            if (sym as usize) >= self.alphabet.size() {
                path.pop();
                continue;
            }
            stack.push((state, sym + 1));
            if let Some(next) = self.sam.step(state, sym) {
                path.push(sym);
                stack.push((next, 0));
            }
        }
        // The root frame pops one element off an empty path; harmless.
        Ok(out)
    }

    pub fn root_cursor(&self) -> FactorCursor {
        FactorCursor { state: 0, len: 0 }
    }

    /// Extends a cursor one symbol to the right, if the extension is a factor.
    pub fn cursor_step(&self, cur: FactorCursor, c: Symbol) -> Option<FactorCursor> {
        self.sam.step(cur.state, c).map(|state| FactorCursor {
            state,
            len: cur.len + 1,
        })
    }

    /// Sorted symbols by which the cursor extends inside the window.
    pub fn cursor_extensions(&self, cur: FactorCursor) -> Vec<Symbol> {
        self.sam.transitions(cur.state).map(|(c, _)| c).collect()
    }

    pub fn cursor_for(&self, w: &Word) -> Option<FactorCursor> {
        self.sam.walk(w.symbols()).map(|state| FactorCursor {
            state,
            len: w.len(),
        })
    }

    pub(crate) fn not_a_factor(&self, w: &Word) -> Error {
        Error::NotAFactor {
            word: self.alphabet.format(w),
        }
    }
}

impl std::fmt::Debug for FactorOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FactorOracle")
            .field("alphabet", &self.alphabet)
            .field("window_len", &self.window.len())
            .field("certified_depth", &self.certified_depth)
            .field("certification", &self.certification)
            .finish()
    }
}
