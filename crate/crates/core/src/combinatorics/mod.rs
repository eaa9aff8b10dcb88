//! Right-special and privileged word structure: extensions, complete first
//! returns, the `phi` maps between the two branchings, balance, palindromes,
//! powers and repulsiveness.

pub mod powers;
pub mod privileged;
pub mod returns;

pub use powers::{
    max_power, power_witness, rank_profile, repulsiveness_index, LogFit, MaxPowerReport,
    PowerWitness, RankProfile, RepulsivenessReport,
};
pub use privileged::{
    distinct_privileged_factors, is_privileged, privileged_order, privileged_parent,
    privileged_prefix_lengths, PrivilegedRecord, PrivilegedScanner, PrivilegedTree,
};
pub use returns::complete_first_returns;

use std::collections::BTreeSet;

use crate::language::{FactorOracle, Symbol, Word};
use crate::{Error, Result};

/// A word with its right-extension data; `a = |extensions| - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialRecord {
    pub word: Word,
    pub a: u32,
    pub right_extensions: Vec<Symbol>,
}

/// Right extensions of `v` in the language and the branching number `a(v)`.
pub fn special_record(oracle: &FactorOracle, v: &Word) -> Result<SpecialRecord> {
    let right_extensions = oracle.right_extensions(v)?;
    let a = right_extensions.len().saturating_sub(1) as u32;
    Ok(SpecialRecord {
        word: v.clone(),
        a,
        right_extensions,
    })
}

pub fn is_right_special(oracle: &FactorOracle, v: &Word) -> Result<bool> {
    Ok(oracle.right_extensions(v)?.len() >= 2)
}

/// All privileged words of length at most `max_len`, with orders, parents
/// and complete first returns, as a tree rooted at the empty word.
pub fn privileged_words(oracle: &FactorOracle, max_len: usize) -> Result<PrivilegedTree> {
    PrivilegedTree::build(oracle, max_len)
}

/// `S(u)`: right-special words `r` with `u` a prefix of `r` and `r` a proper
/// prefix of some complete first return to `u`.
pub fn special_between(oracle: &FactorOracle, u: &Word) -> Result<BTreeSet<Word>> {
    let returns = complete_first_returns(oracle, u, oracle.certified_depth())?;
    let mut out = BTreeSet::new();
    for ret in &returns {
        for len in u.len()..ret.len() {
            let r = ret.prefix(len);
            if out.contains(&r) {
                continue;
            }
            if is_right_special(oracle, &r)? {
                out.insert(r);
            }
        }
    }
    Ok(out)
}

/// The shortest right-special word containing the privileged `u` as a prefix.
/// Extensions are forced until the first right-special word, so it is unique.
pub fn phi0(oracle: &FactorOracle, u: &Word) -> Result<Word> {
    if !is_privileged(u) {
        return Err(Error::NotPrivileged {
            word: oracle.alphabet().format(u),
        });
    }
    if !oracle.is_factor(u)? {
        return Err(oracle.not_a_factor(u));
    }
    let mut w = u.clone();
    loop {
        let ext = match oracle.right_extensions(&w) {
            Ok(e) => e,
            Err(Error::UncertifiedLength { .. }) => {
                return Err(Error::NoRightSpecialExtension {
                    word: oracle.alphabet().format(u),
                })
            }
            Err(e) => return Err(e),
        };
        match ext.len() {
            0 => {
                return Err(Error::NoRightSpecialExtension {
                    word: oracle.alphabet().format(u),
                })
            }
            1 => w.push(ext[0]),
            _ => return Ok(w),
        }
    }
}

/// Maps a privileged horizontal edge (two distinct complete first returns of
/// one privileged word) to the right-special edge of one-letter extensions of
/// their longest common prefix.
pub fn phi1(oracle: &FactorOracle, edge: (&Word, &Word)) -> Result<(Word, Word)> {
    let (u1, u2) = edge;
    if u1 == u2 {
        return Err(Error::NotSiblingReturns);
    }
    if !oracle.is_factor(u1)? || !oracle.is_factor(u2)? {
        return Err(Error::NotSiblingReturns);
    }
    let (p1, p2) = (privileged_parent(u1), privileged_parent(u2));
    match (p1, p2) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Err(Error::NotSiblingReturns),
    }
    let meet = u1.longest_common_prefix(u2);
    if meet.len() >= u1.len() || meet.len() >= u2.len() {
        return Err(Error::NotSiblingReturns);
    }
    let v1 = meet.extended(u1.symbols()[meet.len()]);
    let v2 = meet.extended(u2.symbols()[meet.len()]);
    Ok((v1, v2))
}

/// Outcome of the right-special balance check.
#[derive(Clone, Debug)]
pub struct BalanceVerdict {
    pub balanced: bool,
    /// First privileged word whose `S(u)` is not a singleton, with that set.
    pub counterexample: Option<(Word, BTreeSet<Word>)>,
    pub checked_depth: usize,
}

/// Checks `|S(u)| = 1` for every privileged `u` of length at most `depth`.
pub fn is_right_special_balanced(oracle: &FactorOracle, depth: usize) -> Result<BalanceVerdict> {
    let tree = PrivilegedTree::build(oracle, depth)?;
    for record in tree.records() {
        let s = special_between(oracle, &record.word)?;
        if s.len() != 1 {
            return Ok(BalanceVerdict {
                balanced: false,
                counterexample: Some((record.word.clone(), s)),
                checked_depth: depth,
            });
        }
    }
    Ok(BalanceVerdict {
        balanced: true,
        counterexample: None,
        checked_depth: depth,
    })
}

/// Number of palindromic factors of length `n`.
pub fn palindromic_complexity(oracle: &FactorOracle, n: usize) -> Result<usize> {
    Ok(oracle
        .factors_of_length(n)?
        .iter()
        .filter(|w| w.is_palindrome())
        .count())
}
