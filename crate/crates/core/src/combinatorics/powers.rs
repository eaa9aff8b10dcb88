//! Repulsiveness, integer powers and the power-to-privileged-chain witness.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::language::{FactorOracle, Word};
use crate::{Error, Result};

use super::privileged::{PrivilegedScanner, PrivilegedTree};

/// Cumulative repulsiveness and power data, one entry per scanned length.
pub struct PowerScan {
    /// `ell[n]` = min of (|W|-|w|)/|w| over border pairs with |W| <= n.
    ell: Vec<Option<(BigRational, Word, Word)>>,
    /// `pmax[n]` = largest p with some u^p a factor of length <= n.
    pmax: Vec<(u32, Option<Word>)>,
}

impl PowerScan {
    pub fn depth(&self) -> usize {
        self.ell.len() - 1
    }

    /// Minimizing `(value, w, W)` over pairs with `|W| <= n`.
    pub fn ell_at(&self, n: usize) -> Option<(BigRational, Word, Word)> {
        self.ell.get(n).cloned().flatten()
    }

    pub fn pmax_at(&self, n: usize) -> u32 {
        self.pmax.get(n).map(|(p, _)| *p).unwrap_or(0)
    }

    pub fn pmax_base_at(&self, n: usize) -> Option<Word> {
        self.pmax.get(n).and_then(|(_, b)| b.clone())
    }
}

/// One pass over all factors of length at most `n_max`, collecting the
/// cumulative repulsiveness minima and maximal integer powers.
pub fn power_scan(oracle: &FactorOracle, n_max: usize) -> Result<PowerScan> {
    oracle.guard(n_max)?;
    let mut ell: Vec<Option<(BigRational, Word, Word)>> = vec![None; n_max + 1];
    let mut pmax: Vec<(u32, Option<Word>)> = vec![(0, None); n_max + 1];
    let mut best_ell: Option<(BigRational, Word, Word)> = None;
    let mut best_p: (u32, Option<Word>) = (0, None);
    for n in 1..=n_max {
        for word in oracle.factors_of_length(n)? {
            let border = word.longest_border();
            if border >= 1 {
                let ratio = BigRational::new(BigInt::from(n - border), BigInt::from(border));
                let better = match &best_ell {
                    None => true,
                    Some((cur, _, _)) => ratio < *cur,
                };
                if better {
                    let w = word.prefix(border);
                    best_ell = Some((ratio, w, word.clone()));
                }
            }
            let period = n - border;
            if n % period == 0 {
                let p = (n / period) as u32;
                if p > best_p.0 {
                    best_p = (p, Some(word.prefix(period)));
                }
            } else if best_p.0 == 0 {
                best_p = (1, Some(word.prefix(period)));
            }
        }
        ell[n] = best_ell.clone();
        pmax[n] = best_p.clone();
    }
    Ok(PowerScan { ell, pmax })
}

/// Measured index of repulsiveness over factors of length at most `n_max`.
#[derive(Clone, Debug)]
pub struct RepulsivenessReport {
    /// The minimum of `(|W| - |w|) / |w|`; `None` when no factor of the range
    /// has a nonempty border.
    pub value: Option<BigRational>,
    /// A minimizing pair `(w, W)` with `w` a proper prefix and suffix of `W`.
    pub witness: Option<(Word, Word)>,
    pub depth: usize,
}

/// Minimizes `(|W| - |w|) / |w|` over factor pairs where `w` is a proper
/// prefix and suffix of `W` and `|W| <= n_max`.
pub fn repulsiveness_index(oracle: &FactorOracle, n_max: usize) -> Result<RepulsivenessReport> {
    let scan = power_scan(oracle, n_max)?;
    let entry = scan.ell_at(n_max);
    Ok(match entry {
        Some((value, w, big)) => RepulsivenessReport {
            value: Some(value),
            witness: Some((w, big)),
            depth: n_max,
        },
        None => RepulsivenessReport {
            value: None,
            witness: None,
            depth: n_max,
        },
    })
}

/// Largest integer power realized by a factor of length at most `n_max`.
#[derive(Clone, Debug)]
pub struct MaxPowerReport {
    pub p: u32,
    pub base: Option<Word>,
    pub depth: usize,
}

pub fn max_power(oracle: &FactorOracle, n_max: usize) -> Result<MaxPowerReport> {
    let scan = power_scan(oracle, n_max)?;
    Ok(MaxPowerReport {
        p: scan.pmax_at(n_max),
        base: scan.pmax_base_at(n_max),
        depth: n_max,
    })
}

/// The privileged chain attached to an integer power `u^p`: privileged words
/// `v_1 .. v_p` with `v_j = u^j ũ` for `j < p`, each a complete first return
/// to the previous one, and `u^p` a proper prefix of `v_p`.
#[derive(Clone, Debug)]
pub struct PowerWitness {
    pub base: Word,
    pub exponent: u32,
    pub chain: Vec<Word>,
    pub stub: Word,
}

pub fn power_witness(oracle: &FactorOracle, u: &Word, p: u32) -> Result<PowerWitness> {
    if p < 2 || u.is_empty() {
        return Err(Error::InvalidArgument(
            "power witness requires a nonempty base and p >= 2".into(),
        ));
    }
    let up = u.repeat(p as usize);
    if !oracle.is_factor(&up)? {
        return Err(oracle.not_a_factor(&up));
    }
    // Shortest privileged proper extension of u^p; BFS by length, symbols in
    // alphabet order, so ties resolve lexicographically.
    let base_cursor = oracle.cursor_for(&up).expect("u^p is a factor");
    let base_scanner = PrivilegedScanner::from_word(up.symbols());
    let mut frontier = vec![(base_cursor, base_scanner, up.clone())];
    let v_p = 'outer: loop {
        let mut next_frontier = Vec::new();
        if frontier.is_empty() {
            return Err(Error::NoRightSpecialExtension {
                word: oracle.alphabet().format(&up),
            });
        }
        for (cursor, scanner, word) in frontier {
            if word.len() + 1 > oracle.certified_depth() {
                return Err(Error::UncertifiedLength {
                    requested: word.len() + 1,
                    certified: oracle.certified_depth(),
                });
            }
            for c in oracle.cursor_extensions(cursor) {
                let next_cursor = oracle.cursor_step(cursor, c).expect("extension must step");
                let mut next_scanner = scanner.clone();
                next_scanner.push(c);
                let next_word = word.extended(c);
                if next_scanner.word_is_privileged() {
                    break 'outer (next_word, next_scanner);
                }
                next_frontier.push((next_cursor, next_scanner, next_word));
            }
        }
        frontier = next_frontier;
    };
    let (v_p_word, v_p_scanner) = v_p;
    let chain_lengths = v_p_scanner.chain();
    if chain_lengths.len() < (p as usize) + 1 {
        return Err(Error::InvalidArgument(format!(
            "privileged chain of the witness is too short: {} levels for p = {p}",
            chain_lengths.len() - 1
        )));
    }
    let tail = &chain_lengths[chain_lengths.len() - p as usize..];
    let chain: Vec<Word> = tail.iter().map(|&l| v_p_word.prefix(l)).collect();
    let v1 = &chain[0];
    if v1.len() < u.len() || !u.is_prefix_of(v1) {
        return Err(Error::InvalidArgument(
            "witness chain does not start with u·stub".into(),
        ));
    }
    // The stub may be empty (v_1 = u itself, when u is privileged).
    let stub = Word::from_symbols(v1.symbols()[u.len()..].to_vec());
    if !stub.is_prefix_of(u) {
        return Err(Error::InvalidArgument(
            "witness stub is not a prefix of the base".into(),
        ));
    }
    for (j, v) in chain.iter().enumerate().take(p as usize - 1) {
        let expect = u.repeat(j + 1).concat(&stub);
        if *v != expect {
            return Err(Error::InvalidArgument(format!(
                "witness chain level {} is not u^{}·stub",
                j + 1,
                j + 1
            )));
        }
    }
    Ok(PowerWitness {
        base: u.clone(),
        exponent: p,
        chain,
        stub,
    })
}

/// Least-squares fit of the rank profile against `log(n)^b`.
#[derive(Clone, Debug)]
pub struct LogFit {
    pub exponent_b: u32,
    pub coefficient: f64,
    pub rms_residual: f64,
}

/// Profile of the maximal return branching `ã` over privileged words, by
/// length, with descriptive log-power fits. Reported, never asserted.
#[derive(Clone, Debug)]
pub struct RankProfile {
    pub per_length: Vec<(usize, u64)>,
    pub fits: Vec<LogFit>,
    /// True when some return set in range was truncated by the budget.
    pub truncated: bool,
}

pub fn rank_profile(oracle: &FactorOracle, n_max: usize) -> Result<RankProfile> {
    let tree = PrivilegedTree::build(oracle, n_max)?;
    let mut truncated = false;
    let mut best_by_len = vec![0u64; n_max + 1];
    for r in tree.records() {
        match r.a_tilde() {
            Some(a) => {
                let l = r.word.len();
                if a > best_by_len[l] {
                    best_by_len[l] = a;
                }
            }
            None => truncated = true,
        }
    }
    let mut per_length = Vec::with_capacity(n_max);
    let mut running = 0u64;
    for (n, &best) in best_by_len.iter().enumerate().skip(1) {
        running = running.max(best);
        per_length.push((n, running));
    }
    let fits = (1..=3)
        .map(|b| {
            let mut sxx = 0f64;
            let mut sxy = 0f64;
            let mut pts = 0usize;
            for &(n, y) in per_length.iter().filter(|&&(n, _)| n >= 2) {
                let x = (n as f64).ln().powi(b);
                sxx += x * x;
                sxy += x * y as f64;
                pts += 1;
            }
            let coefficient = if sxx > 0.0 { sxy / sxx } else { 0.0 };
            let mut sq = 0f64;
            for &(n, y) in per_length.iter().filter(|&&(n, _)| n >= 2) {
                let x = (n as f64).ln().powi(b);
                let e = y as f64 - coefficient * x;
                sq += e * e;
            }
            LogFit {
                exponent_b: b as u32,
                coefficient,
                rms_residual: if pts > 0 { (sq / pts as f64).sqrt() } else { 0.0 },
            }
        })
        .collect();
    Ok(RankProfile {
        per_length,
        fits,
        truncated,
    })
}
