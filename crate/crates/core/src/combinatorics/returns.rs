//! Complete first returns by language BFS with suffix-closure termination.
//!
//! A complete first return to `u` contains `u` exactly twice, as a prefix and
//! as a suffix. Branches of right extensions of `u` are closed the moment `u`
//! reappears as a suffix, which makes the double-occurrence condition
//! automatic; a per-call length budget guards against blowup.

use std::collections::{BTreeSet, VecDeque};

use crate::language::words::{kmp_step, prefix_function};
use crate::language::{FactorOracle, Word};
use crate::{Error, Result};

use super::privileged::is_privileged;

pub(crate) struct ReturnSearch {
    pub returns: BTreeSet<Word>,
    /// Branches still open when they reached the budget.
    pub open: Vec<Word>,
}

pub(crate) fn returns_search(
    oracle: &FactorOracle,
    u: &Word,
    budget: usize,
) -> Result<ReturnSearch> {
    oracle.guard(budget)?;
    if u.is_empty() {
        // The complete first returns of the empty word are the letters.
        if budget < 1 {
            return Err(Error::ReturnBudgetExceeded {
                budget,
                branch: "ε".into(),
            });
        }
        let returns = oracle
            .right_extensions(&Word::empty())?
            .into_iter()
            .map(Word::single)
            .collect();
        return Ok(ReturnSearch {
            returns,
            open: Vec::new(),
        });
    }
    if !oracle.is_factor(u)? {
        return Err(oracle.not_a_factor(u));
    }
    let mut returns = BTreeSet::new();
    let mut open = Vec::new();
    if u.len() >= budget {
        return Ok(ReturnSearch {
            returns,
            open: vec![u.clone()],
        });
    }
    let pattern = u.symbols();
    let pi = prefix_function(pattern);
    let start_cursor = oracle
        .cursor_for(u)
        .ok_or_else(|| oracle.not_a_factor(u))?;
    // KMP state after reading u itself: fall back past the trivial match.
    let mut queue = VecDeque::new();
    queue.push_back((start_cursor, pi[pattern.len()], u.clone()));
    while let Some((cursor, state, word)) = queue.pop_front() {
        for c in oracle.cursor_extensions(cursor) {
            let next_cursor = oracle.cursor_step(cursor, c).expect("extension must step");
            let next_state = kmp_step(pattern, &pi, state, c);
            let next_word = word.extended(c);
            if next_state == pattern.len() {
                returns.insert(next_word);
            } else if next_word.len() >= budget {
                open.push(next_word);
            } else {
                queue.push_back((next_cursor, next_state, next_word));
            }
        }
    }
    Ok(ReturnSearch { returns, open })
}

/// All complete first returns to `u` of length at most `budget`. For the
/// empty word these are the alphabet letters. Errors when a branch reaches
/// the budget without closing, carrying that branch.
pub fn complete_first_returns(
    oracle: &FactorOracle,
    u: &Word,
    budget: usize,
) -> Result<BTreeSet<Word>> {
    if !u.is_empty() && !is_privileged(u) {
        return Err(Error::NotPrivileged {
            word: oracle.alphabet().format(u),
        });
    }
    let search = returns_search(oracle, u, budget)?;
    if let Some(branch) = search.open.first() {
        return Err(Error::ReturnBudgetExceeded {
            budget,
            branch: oracle.alphabet().format(branch),
        });
    }
    Ok(search.returns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::sources::substitution_oracle;

    fn fib(depth: usize) -> FactorOracle {
        let rules: std::collections::BTreeMap<char, String> =
            [('0', "1".to_string()), ('1', "10".to_string())].into();
        substitution_oracle(&rules, '1', depth).unwrap()
    }

    #[test]
    fn fibonacci_returns_match_gap_scan() {
        let o = fib(30);
        let a = o.alphabet().clone();
        let one = a.parse("1").unwrap();
        let got: Vec<String> = complete_first_returns(&o, &one, 10)
            .unwrap()
            .iter()
            .map(|w| a.format(w))
            .collect();
        assert_eq!(got, vec!["101", "11"]);

        let zero = a.parse("0").unwrap();
        let got: Vec<String> = complete_first_returns(&o, &zero, 10)
            .unwrap()
            .iter()
            .map(|w| a.format(w))
            .collect();
        assert_eq!(got, vec!["010", "0110"]);
    }

    #[test]
    fn empty_word_returns_are_the_letters() {
        let o = fib(30);
        let a = o.alphabet().clone();
        let got: Vec<String> = complete_first_returns(&o, &Word::empty(), 1)
            .unwrap()
            .iter()
            .map(|w| a.format(w))
            .collect();
        assert_eq!(got, vec!["0", "1"]);
    }

    #[test]
    fn budget_too_small_names_an_open_branch() {
        let o = fib(30);
        let a = o.alphabet().clone();
        let zero = a.parse("0").unwrap();
        match complete_first_returns(&o, &zero, 3) {
            Err(Error::ReturnBudgetExceeded { budget: 3, branch }) => {
                assert_eq!(branch, "011");
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn non_privileged_input_is_rejected() {
        let o = fib(30);
        let a = o.alphabet().clone();
        assert!(matches!(
            complete_first_returns(&o, &a.parse("10").unwrap(), 10),
            Err(Error::NotPrivileged { .. })
        ));
    }

    #[test]
    fn returns_contain_base_exactly_twice() {
        let o = fib(60);
        let a = o.alphabet().clone();
        for s in ["1", "0", "11", "101", "010", "0110"] {
            let u = a.parse(s).unwrap();
            for ret in complete_first_returns(&o, &u, 40).unwrap() {
                assert!(u.is_proper_prefix_of(&ret));
                assert!(u.is_proper_suffix_of(&ret));
                assert_eq!(u.count_occurrences_in(&ret), 2, "{s} in {ret:?}");
            }
        }
    }
}
