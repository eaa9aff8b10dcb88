//! The Lipschitz-equivalence criterion for the extremal privileged metrics,
//! and the bounded-powers verdict built on it.
//!
//! The scalar under test is `r(ξ, m) = δ(|ξ̃_m|)⁻¹ Σ_{n>m} δ(|ξ̃_n|)` over
//! privileged prefix chains. Bounded powers force a uniform geometric bound
//! (through the measured repulsiveness index); unbounded powers push the
//! profile up along power-witness chains.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{max_power, power_witness, repulsiveness_index, PrivilegedTree};
use crate::graph::{ChoiceFunction, LazyPoint};
use crate::language::FactorOracle;
use crate::{Error, Result};

use super::distance::privileged_chain;
use super::weight::WeightFunction;

/// `r(ξ, m)` truncated at `depth`: the ratio of the summed weights of the
/// privileged prefixes past chain index `m` to the weight at `m`.
/// `None` when the chain has no index `m`.
pub fn privileged_ratio(
    point: &LazyPoint,
    weight: &WeightFunction,
    m: usize,
    depth: usize,
) -> Result<Option<BigRational>> {
    let chain = privileged_chain(point, depth)?;
    if m == 0 || m >= chain.len() {
        return Ok(None);
    }
    Ok(Some(ratio_from_chain(&chain, weight, m, depth)))
}

fn ratio_from_chain(
    chain: &[usize],
    weight: &WeightFunction,
    m: usize,
    depth: usize,
) -> BigRational {
    let mut sum = BigRational::zero();
    for &l in &chain[m + 1..] {
        if l > depth {
            break;
        }
        sum += weight.eval(l);
    }
    sum / weight.eval(chain[m])
}

/// The sampled Lipschitz profile: per chain index `m >= 1`, the maximum of
/// `r(ξ, m)` over the sample points. Truncated sums, hence lower bounds,
/// monotone in `depth`.
#[derive(Clone, Debug)]
pub struct LipschitzProfile {
    pub depth: usize,
    /// `per_m[i]` is the profile at `m = i + 1`.
    pub per_m: Vec<BigRational>,
    pub max: BigRational,
    pub samples: Vec<String>,
}

/// Deterministic sample set: the lexmin point, a fixed family of seeded
/// points, the lexmin point through every short privileged word, and
/// adversarial points with a maximal-power witness prefix.
fn sample_points(oracle: &Arc<FactorOracle>, depth: usize) -> Result<Vec<LazyPoint>> {
    let lexmin = ChoiceFunction::lexmin(oracle.clone());
    let mut out = vec![lexmin.point(&crate::language::Word::empty())?];
    for seed in 1..=6 {
        let tau = ChoiceFunction::seeded(oracle.clone(), seed);
        out.push(tau.point(&crate::language::Word::empty())?);
    }
    let tree = PrivilegedTree::build(oracle, depth.min(12))?;
    for record in tree.records() {
        if !record.word.is_empty() {
            out.push(lexmin.point(&record.word)?);
        }
    }
    let scan_depth = depth.min(256);
    if scan_depth >= 2 {
        let mp = max_power(oracle, scan_depth)?;
        if mp.p >= 2 {
            if let Some(base) = mp.base {
                if let Ok(witness) = power_witness(oracle, &base, mp.p) {
                    let v_p = witness.chain.last().expect("nonempty chain");
                    if v_p.len() <= depth {
                        out.push(lexmin.point(v_p)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Computes the profile at `depth` over the standard samples plus
/// `extra_points` (used for adversarial constructions).
pub fn lipschitz_profile(
    oracle: &Arc<FactorOracle>,
    weight: &WeightFunction,
    depth: usize,
    extra_points: &[LazyPoint],
) -> Result<LipschitzProfile> {
    let mut points = sample_points(oracle, depth)?;
    points.extend(extra_points.iter().cloned());
    let mut samples = Vec::with_capacity(points.len());
    let mut chains = Vec::with_capacity(points.len());
    for p in &points {
        samples.push(p.descriptor());
        chains.push(privileged_chain(p, depth)?);
    }
    Ok(profile_from_chains(&chains, weight, depth, samples))
}

fn profile_from_chains(
    chains: &[Vec<usize>],
    weight: &WeightFunction,
    depth: usize,
    samples: Vec<String>,
) -> LipschitzProfile {
    let max_m = chains
        .iter()
        .map(|c| c.iter().take_while(|&&l| l <= depth).count())
        .max()
        .unwrap_or(1)
        .saturating_sub(1);
    let mut per_m = Vec::new();
    for m in 1..=max_m {
        let mut best = BigRational::zero();
        for chain in chains {
            let within = chain.iter().take_while(|&&l| l <= depth).count();
            if m < within {
                let r = ratio_from_chain(chain, weight, m, depth);
                if r > best {
                    best = r;
                }
            }
        }
        per_m.push(best);
    }
    let max = per_m.iter().cloned().max().unwrap_or_else(BigRational::zero);
    LipschitzProfile {
        depth,
        per_m,
        max,
        samples,
    }
}

/// The profile value at one index `m` (zero when no sampled chain reaches it).
pub fn lipschitz_ratio(
    oracle: &Arc<FactorOracle>,
    weight: &WeightFunction,
    m: usize,
    depth: usize,
) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "the Lipschitz ratio is indexed from m = 1".into(),
        ));
    }
    let profile = lipschitz_profile(oracle, weight, depth, &[])?;
    Ok(profile
        .per_m
        .get(m - 1)
        .cloned()
        .unwrap_or_else(BigRational::zero))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PowersVerdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

/// Everything the verdict looked at, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct VerdictEvidence {
    pub depth: usize,
    pub windows: Vec<usize>,
    /// `(N, ℓ_N)` per window; `None` when no bordered factor exists yet.
    pub repulsiveness: Vec<(usize, Option<String>)>,
    pub max_powers: Vec<(usize, u32)>,
    pub powers_grow: bool,
    pub profile_max: Vec<(usize, String)>,
    pub geometric_bound: Option<String>,
    pub profile_within_bound: Option<bool>,
    /// A depth pair `(D1, D2)` with `profile(D2) > 2 profile(D1)`, if found.
    pub doubling_pair: Option<(usize, usize, String, String)>,
}

/// Decides bounded vs unbounded powers from measured trends:
/// unbounded needs strictly growing maximal powers across the windows and a
/// profile-doubling depth pair; bounded needs stable powers, a positive
/// repulsiveness index and a profile dominated by its geometric bound.
pub fn bounded_powers_verdict(
    oracle: &Arc<FactorOracle>,
    weight: &WeightFunction,
    depth: usize,
) -> Result<(PowersVerdict, VerdictEvidence)> {
    oracle.guard(depth)?;
    if depth < 128 {
        let ell = if depth >= 2 {
            repulsiveness_index(oracle, depth)?
                .value
                .map(|v| v.to_string())
        } else {
            None
        };
        return Ok((
            PowersVerdict::Inconclusive,
            VerdictEvidence {
                depth,
                windows: vec![depth],
                repulsiveness: vec![(depth, ell)],
                max_powers: Vec::new(),
                powers_grow: false,
                profile_max: Vec::new(),
                geometric_bound: None,
                profile_within_bound: None,
                doubling_pair: None,
            },
        ));
    }
    let windows = vec![depth / 64, depth / 8, depth];
    let scan = crate::combinatorics::powers::power_scan(oracle, depth)?;
    let repulsiveness: Vec<(usize, Option<String>)> = windows
        .iter()
        .map(|&n| (n, scan.ell_at(n).map(|(v, _, _)| v.to_string())))
        .collect();
    let max_powers: Vec<(usize, u32)> = windows.iter().map(|&n| (n, scan.pmax_at(n))).collect();
    let powers_grow =
        max_powers[2].1 > max_powers[1].1 && max_powers[1].1 > max_powers[0].1;

    // One chain materialization at full depth serves every smaller one.
    let mut points = sample_points(oracle, depth)?;
    // Adversarial witnesses discovered at the intermediate windows too.
    for &n in &windows[..2] {
        if n >= 2 {
            let (p, base) = (scan.pmax_at(n), scan.pmax_base_at(n));
            if p >= 2 {
                if let Some(base) = base {
                    if let Ok(witness) = power_witness(oracle, &base, p) {
                        let v_p = witness.chain.last().expect("nonempty chain");
                        if v_p.len() <= depth {
                            points.push(ChoiceFunction::lexmin(oracle.clone()).point(v_p)?);
                        }
                    }
                }
            }
        }
    }
    let mut chains = Vec::new();
    let mut samples = Vec::new();
    for p in &points {
        samples.push(p.descriptor());
        chains.push(privileged_chain(p, depth)?);
    }
    let profile_at = |d: usize| -> BigRational {
        profile_from_chains(&chains, weight, d, Vec::new()).max
    };
    let profile_max: Vec<(usize, String)> = windows
        .iter()
        .map(|&n| (n, profile_at(n).to_string()))
        .collect();

    let mut doubling_pair = None;
    'search: for d1 in 2..=depth / 2 {
        let p1 = profile_at(d1);
        if !p1.is_positive() {
            continue;
        }
        for factor in [2usize, 4, 8] {
            let d2 = d1 * factor;
            if d2 > depth {
                break;
            }
            let p2 = profile_at(d2);
            if p2 > BigRational::from_integer(2.into()) * &p1 {
                doubling_pair = Some((d1, d2, p1.to_string(), p2.to_string()));
                break 'search;
            }
        }
    }

    let full_profile = profile_at(depth);
    let ell_full = scan.ell_at(depth).map(|(v, _, _)| v);
    let (geometric_bound, profile_within_bound) = match &ell_full {
        Some(e) if e.is_positive() => match weight.geometric_bound(e)? {
            Some(b) => {
                let within = full_profile <= b;
                (Some(b.to_string()), Some(within))
            }
            None => (None, None),
        },
        _ => (None, None),
    };

    let verdict = if powers_grow && doubling_pair.is_some() {
        PowersVerdict::Unbounded
    } else if !powers_grow
        && ell_full.as_ref().map(|e| e.is_positive()).unwrap_or(false)
        && profile_within_bound == Some(true)
    {
        PowersVerdict::Bounded
    } else {
        PowersVerdict::Inconclusive
    };
    Ok((
        verdict,
        VerdictEvidence {
            depth,
            windows,
            repulsiveness,
            max_powers,
            powers_grow,
            profile_max,
            geometric_bound,
            profile_within_bound,
            doubling_pair,
        },
    ))
}
