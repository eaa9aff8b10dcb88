//! Privileged words: iterated complete first returns to the empty word.
//!
//! The incremental scanner below maintains, along a growing word, the chain
//! of its privileged prefixes. It rests on the nesting property: if `u` is
//! privileged and `u'` is a complete first return to `u`, no privileged word
//! lies strictly between them in the prefix order. Consequently the parent of
//! a privileged word is its longest privileged proper prefix, and a prefix
//! becomes privileged exactly when the current longest privileged prefix
//! reappears as a suffix for the first time.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::language::words::{kmp_step, prefix_function};
use crate::language::{FactorOracle, Symbol, Word};
use crate::{Error, Result};

use super::returns::returns_search;

/// Incrementally tracks the privileged prefixes of a word.
#[derive(Clone, Debug)]
pub struct PrivilegedScanner {
    word: Vec<Symbol>,
    chain: Vec<usize>,
    parent_pi: Vec<usize>,
    parent_len: usize,
    kmp_state: usize,
}

impl Default for PrivilegedScanner {
    fn default() -> Self {
        Self::new()
    }
}

impl PrivilegedScanner {
    pub fn new() -> Self {
        PrivilegedScanner {
            word: Vec::new(),
            chain: vec![0],
            parent_pi: Vec::new(),
            parent_len: 0,
            kmp_state: 0,
        }
    }

    pub fn from_word(w: &[Symbol]) -> Self {
        let mut s = Self::new();
        for &c in w {
            s.push(c);
        }
        s
    }

    pub fn push(&mut self, c: Symbol) {
        self.word.push(c);
        let m = self.word.len();
        if m == 1 {
            self.chain.push(1);
            self.promote_parent(1);
            return;
        }
        let state = kmp_step(
            &self.word[..self.parent_len],
            &self.parent_pi,
            self.kmp_state,
            c,
        );
        if state == self.parent_len {
            // The parent reoccurred for the first time: this prefix is a
            // complete first return to it, hence privileged.
            self.chain.push(m);
            self.promote_parent(m);
        } else {
            self.kmp_state = state;
        }
    }

    fn promote_parent(&mut self, len: usize) {
        self.parent_len = len;
        self.parent_pi = prefix_function(&self.word[..len]);
        self.kmp_state = self.parent_pi[len];
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Lengths of the privileged prefixes, ascending, starting with 0.
    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn word_is_privileged(&self) -> bool {
        *self.chain.last().unwrap() == self.word.len()
    }
}

/// Lengths of the privileged prefixes of `w` (including 0 for the empty word).
pub fn privileged_prefix_lengths(w: &[Symbol]) -> Vec<usize> {
    PrivilegedScanner::from_word(w).chain().to_vec()
}

/// Whether a word is privileged, as a pure word property.
pub fn is_privileged(w: &Word) -> bool {
    PrivilegedScanner::from_word(w.symbols()).word_is_privileged()
}

/// The unique privileged word a privileged `w` is a complete first return of
/// (its longest privileged proper prefix). `None` for the empty word or for
/// non-privileged input.
pub fn privileged_parent(w: &Word) -> Option<Word> {
    if w.is_empty() {
        return None;
    }
    let chain = privileged_prefix_lengths(w.symbols());
    if *chain.last().unwrap() != w.len() {
        return None;
    }
    Some(w.prefix(chain[chain.len() - 2]))
}

/// Order of `u` as an iterated complete first return from the empty word,
/// or `None` if `u` is not privileged. Errors if `u` is not a certified factor.
pub fn privileged_order(oracle: &FactorOracle, u: &Word) -> Result<Option<u32>> {
    if !oracle.is_factor(u)? {
        return Err(oracle.not_a_factor(u));
    }
    let chain = privileged_prefix_lengths(u.symbols());
    if *chain.last().unwrap() == u.len() {
        Ok(Some((chain.len() - 1) as u32))
    } else {
        Ok(None)
    }
}

/// Number of distinct privileged factors of `u`, the empty word included.
pub fn distinct_privileged_factors(u: &Word) -> usize {
    let w = u.symbols();
    let mut seen: std::collections::HashSet<&[Symbol]> = std::collections::HashSet::new();
    for start in 0..w.len() {
        let mut scanner = PrivilegedScanner::new();
        for &c in &w[start..] {
            scanner.push(c);
            if scanner.word_is_privileged() {
                seen.insert(&w[start..start + scanner.len()]);
            }
        }
    }
    seen.len() + 1
}

/// A privileged word together with its order, parent and complete first
/// returns. `returns_complete` is false when the search budget truncated the
/// return set.
#[derive(Clone, Debug)]
pub struct PrivilegedRecord {
    pub word: Word,
    pub order: u32,
    pub parent: Option<Word>,
    pub returns: std::collections::BTreeSet<Word>,
    pub returns_complete: bool,
}

impl PrivilegedRecord {
    /// Number of complete first returns minus one; `None` when truncated.
    pub fn a_tilde(&self) -> Option<u64> {
        if self.returns_complete {
            Some(self.returns.len() as u64 - 1)
        } else {
            None
        }
    }
}

/// The tree of privileged words of length at most `max_len`, rooted at the
/// empty word, with return sets searched up to a length budget.
pub struct PrivilegedTree {
    max_len: usize,
    budget: usize,
    records: Vec<PrivilegedRecord>,
    index: BTreeMap<Word, usize>,
    counts: Vec<u64>,
}

impl PrivilegedTree {
    /// Builds the tree with the full certified depth as return budget.
    pub fn build(oracle: &FactorOracle, max_len: usize) -> Result<Self> {
        Self::build_with_budget(oracle, max_len, oracle.certified_depth())
    }

    pub fn build_with_budget(
        oracle: &FactorOracle,
        max_len: usize,
        budget: usize,
    ) -> Result<Self> {
        oracle.guard(max_len)?;
        oracle.guard(budget)?;
        if budget <= max_len {
            return Err(Error::InvalidArgument(
                "return budget must exceed the enumeration length".into(),
            ));
        }
        let mut records: Vec<PrivilegedRecord> = Vec::new();
        let mut queue: VecDeque<(Word, u32, Option<Word>)> = VecDeque::new();
        queue.push_back((Word::empty(), 0, None));
        while let Some((word, order, parent)) = queue.pop_front() {
            let search = returns_search(oracle, &word, budget)?;
            let complete = search.open.is_empty();
            for ret in &search.returns {
                if ret.len() <= max_len {
                    queue.push_back((ret.clone(), order + 1, Some(word.clone())));
                }
            }
            records.push(PrivilegedRecord {
                word,
                order,
                parent,
                returns: search.returns,
                returns_complete: complete,
            });
        }
        records.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
        let index = records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.word.clone(), i))
            .collect();
        let mut counts = vec![0u64; max_len + 1];
        for r in &records {
            counts[r.word.len()] += 1;
        }
        Ok(PrivilegedTree {
            max_len,
            budget,
            records,
            index,
            counts,
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// All records, sorted by (length, word).
    pub fn records(&self) -> &[PrivilegedRecord] {
        &self.records
    }

    pub fn get(&self, w: &Word) -> Option<&PrivilegedRecord> {
        self.index.get(w).map(|&i| &self.records[i])
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// Privileged complexity `p_pr(n)` for `n <= max_len`.
    pub fn privileged_complexity(&self) -> &[u64] {
        &self.counts
    }

    /// Whether every record of length at most `len` has a complete return set.
    pub fn complete_up_to(&self, len: usize) -> bool {
        self.records
            .iter()
            .take_while(|r| r.word.len() <= len)
            .all(|r| r.returns_complete)
    }

    /// Largest `L <= max_len` such that every record of length at most `L`
    /// has a complete return set.
    pub fn max_complete_length(&self) -> usize {
        let mut cap = self.max_len;
        for r in &self.records {
            if !r.returns_complete && r.word.len() <= cap {
                cap = r.word.len().saturating_sub(1);
            }
        }
        cap
    }
}
