//! Meets, ultrametrics, and the per-choice metrics with their explicit
//! formulas, plus the extremal inf/sup metrics.
//!
//! For points in the image of the evaluated choice function the formula sums
//! terminate (the choice through a deeper vertex reuses that vertex's
//! choice, so all later indicators vanish) and the value is exact. For other
//! points the formula is evaluated as a truncated continuous extension and
//! flagged, with a geometric tail bound when a repulsiveness index is
//! supplied.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::privileged_prefix_lengths;
use crate::graph::{first_difference, ChoiceFunction, EdgeKind, LazyPoint};
use crate::language::Word;
use crate::{Error, Result};

use super::weight::WeightFunction;

fn check_same_oracle(x: &LazyPoint, y: &LazyPoint) -> Result<()> {
    if Arc::ptr_eq(x.oracle(), y.oracle()) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "points belong to different oracles".into(),
        ))
    }
}

fn provably_identical(x: &LazyPoint, y: &LazyPoint) -> bool {
    x.strategy() == y.strategy() && x.base() == y.base()
}

/// Longest common prefix `ξ ∧ η`, or an error when the points agree to `cap`.
pub fn meet(x: &LazyPoint, y: &LazyPoint, cap: usize) -> Result<Word> {
    check_same_oracle(x, y)?;
    match first_difference(x, y, cap)? {
        Some(i) => x.prefix(i),
        None => Err(Error::IndistinguishableAtDepth { depth: cap }),
    }
}

/// Longest common privileged prefix `ξ ⩘ η` (the longest privileged prefix
/// of the plain meet).
pub fn priv_meet(x: &LazyPoint, y: &LazyPoint, cap: usize) -> Result<Word> {
    let m = meet(x, y, cap)?;
    let chain = privileged_prefix_lengths(m.symbols());
    Ok(m.prefix(*chain.last().unwrap()))
}

fn kind_meet(x: &LazyPoint, y: &LazyPoint, kind: EdgeKind, cap: usize) -> Result<Word> {
    match kind {
        EdgeKind::RightSpecial => meet(x, y, cap),
        EdgeKind::Privileged => priv_meet(x, y, cap),
    }
}

/// Lengths of the privileged prefixes of the point, up to `depth`.
pub fn privileged_chain(x: &LazyPoint, depth: usize) -> Result<Vec<usize>> {
    let w = x.prefix(depth)?;
    Ok(privileged_prefix_lengths(w.symbols()))
}

/// Lengths of the right-special prefixes of the point, up to `depth`
/// (requires `depth + 1` within the certified range).
pub fn right_special_chain(x: &LazyPoint, depth: usize) -> Result<Vec<usize>> {
    let oracle = x.oracle();
    oracle.guard(depth + 1)?;
    let w = x.prefix(depth)?;
    let mut cursor = oracle.root_cursor();
    let mut out = Vec::new();
    for m in 0..=depth {
        if m > 0 {
            cursor = oracle
                .cursor_step(cursor, w.symbols()[m - 1])
                .expect("materialized prefix is a factor");
        }
        if oracle.cursor_extensions(cursor).len() >= 2 {
            out.push(m);
        }
    }
    Ok(out)
}

fn kind_chain(x: &LazyPoint, kind: EdgeKind, depth: usize) -> Result<Vec<usize>> {
    match kind {
        EdgeKind::RightSpecial => right_special_chain(x, depth),
        EdgeKind::Privileged => privileged_chain(x, depth),
    }
}

/// The ultrametric `δ(|ξ ∧ η|)` (right-special kind) or `δ(|ξ ⩘ η|)`
/// (privileged kind); zero for identical points.
pub fn ultrametric(
    x: &LazyPoint,
    y: &LazyPoint,
    weight: &WeightFunction,
    kind: EdgeKind,
    cap: usize,
) -> Result<BigRational> {
    check_same_oracle(x, y)?;
    if provably_identical(x, y) {
        return Ok(BigRational::zero());
    }
    let m = kind_meet(x, y, kind, cap)?;
    Ok(weight.eval(m.len()))
}

/// The infimum metric over choice functions; by the closed formula it equals
/// the ultrametric of the same kind.
pub fn d_inf(
    x: &LazyPoint,
    y: &LazyPoint,
    weight: &WeightFunction,
    kind: EdgeKind,
    cap: usize,
) -> Result<BigRational> {
    ultrametric(x, y, weight, kind, cap)
}

/// How much of an infinite series is missing beyond the truncation.
#[derive(Clone, Debug, PartialEq)]
pub enum TailBound {
    /// The remaining terms are provably zero; the value is exact.
    Zero,
    /// The remaining terms sum to at most this much (from repulsiveness).
    Geometric(BigRational),
    /// No bound available; the value is a lower bound only.
    Unbounded,
}

/// A metric value with its truncation certificate.
#[derive(Clone, Debug)]
pub struct MetricValue {
    pub value: BigRational,
    pub tail: TailBound,
    /// Set when a point was not in the image of the choice function and the
    /// formula was applied as a continuous extension.
    pub continuous_extension: bool,
}

impl MetricValue {
    /// `value + tail` when the tail is bounded.
    pub fn upper_bound(&self) -> Option<BigRational> {
        match &self.tail {
            TailBound::Zero => Some(self.value.clone()),
            TailBound::Geometric(t) => Some(&self.value + t),
            TailBound::Unbounded => None,
        }
    }
}

fn add_tail(acc: &mut TailBound, side: TailBound) {
    let merged = match (&*acc, side) {
        (TailBound::Unbounded, _) | (_, TailBound::Unbounded) => TailBound::Unbounded,
        (TailBound::Zero, s) => s,
        (t, TailBound::Zero) => t.clone(),
        (TailBound::Geometric(a), TailBound::Geometric(b)) => TailBound::Geometric(a + b),
    };
    *acc = merged;
}

fn side_tail(
    weight: &WeightFunction,
    kind: EdgeKind,
    ell: Option<&BigRational>,
    anchor_len: usize,
) -> Result<TailBound> {
    if kind == EdgeKind::Privileged && anchor_len >= 1 {
        if let Some(e) = ell {
            if e.is_positive() {
                if let Some(bound) = weight.geometric_bound(e)? {
                    return Ok(TailBound::Geometric(bound * weight.eval(anchor_len)));
                }
            }
        }
    }
    Ok(TailBound::Unbounded)
}

/// The metric `d_τ` (right-special kind) or `d̃_τ` (privileged kind) by its
/// explicit formula: `δ(|meet|)` plus the indicator-weighted chain sums of
/// both points past the meet. Exact for points of `Im(τ)`; otherwise
/// truncated at `depth` with `ell` feeding the tail bound.
pub fn d_tau(
    x: &LazyPoint,
    y: &LazyPoint,
    tau: &ChoiceFunction,
    weight: &WeightFunction,
    kind: EdgeKind,
    depth: usize,
    ell: Option<&BigRational>,
) -> Result<MetricValue> {
    check_same_oracle(x, y)?;
    if !Arc::ptr_eq(x.oracle(), tau.oracle()) {
        return Err(Error::InvalidArgument(
            "choice function belongs to a different oracle".into(),
        ));
    }
    if provably_identical(x, y) {
        return Ok(MetricValue {
            value: BigRational::zero(),
            tail: TailBound::Zero,
            continuous_extension: false,
        });
    }
    let meet_word = kind_meet(x, y, kind, depth)?;
    let mut value = weight.eval(meet_word.len());
    let mut tail = TailBound::Zero;
    let mut continuous = false;
    for xi in [x, y] {
        let chain = kind_chain(xi, kind, depth)?;
        // In Im(τ): τ of any chain vertex at or past the base reproduces ξ
        // itself, so those indicators vanish and the sum is finite.
        let exact = xi.strategy() == tau.strategy() && xi.base().len() <= depth;
        let cut = if exact { xi.base().len() } else { usize::MAX };
        for &l in chain.iter() {
            if l <= meet_word.len() {
                continue;
            }
            if l >= cut {
                break;
            }
            let through = tau.point(&xi.prefix(l)?)?;
            let cp = match first_difference(&through, xi, depth)? {
                Some(i) => i,
                // Agreement to full depth: the meet is deeper than l, so the
                // indicator is zero regardless of anything past the depth.
                None => continue,
            };
            let beta = match kind {
                EdgeKind::RightSpecial => cp == l,
                EdgeKind::Privileged => {
                    let priv_cp = *chain
                        .iter()
                        .take_while(|&&c| c <= cp)
                        .last()
                        .unwrap_or(&0);
                    priv_cp == l
                }
            };
            if beta {
                value += weight.eval(l);
            }
        }
        if !exact {
            continuous = true;
            let anchor = *chain.last().unwrap_or(&0);
            add_tail(&mut tail, side_tail(weight, kind, ell, anchor)?);
        }
    }
    Ok(MetricValue {
        value,
        tail,
        continuous_extension: continuous,
    })
}

/// The supremum metric by its closed formula: `δ(|meet|)` plus the full
/// chain sums of both points past the meet, truncated at `depth`, with a
/// geometric tail bound from `ell` on the privileged kind.
pub fn d_sup(
    x: &LazyPoint,
    y: &LazyPoint,
    weight: &WeightFunction,
    kind: EdgeKind,
    depth: usize,
    ell: Option<&BigRational>,
) -> Result<MetricValue> {
    check_same_oracle(x, y)?;
    if provably_identical(x, y) {
        return Ok(MetricValue {
            value: BigRational::zero(),
            tail: TailBound::Zero,
            continuous_extension: false,
        });
    }
    let meet_word = kind_meet(x, y, kind, depth)?;
    let mut value = weight.eval(meet_word.len());
    let mut tail = TailBound::Zero;
    for xi in [x, y] {
        let chain = kind_chain(xi, kind, depth)?;
        for &l in chain.iter() {
            if l > meet_word.len() {
                value += weight.eval(l);
            }
        }
        let anchor = *chain.last().unwrap_or(&0);
        add_tail(&mut tail, side_tail(weight, kind, ell, anchor)?);
    }
    Ok(MetricValue {
        value,
        tail,
        continuous_extension: false,
    })
}

/// An exact rational with a float rendering, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct RationalValue {
    pub exact: String,
    pub approx: f64,
}

impl RationalValue {
    pub fn from_rational(r: &BigRational) -> Self {
        RationalValue {
            exact: r.to_string(),
            approx: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricEntry {
    pub value: RationalValue,
    pub tail: String,
    pub continuous_extension: bool,
}

impl MetricEntry {
    fn from_value(v: &MetricValue) -> Self {
        MetricEntry {
            value: RationalValue::from_rational(&v.value),
            tail: match &v.tail {
                TailBound::Zero => "zero".into(),
                TailBound::Geometric(t) => format!("geometric <= {t}"),
                TailBound::Unbounded => "no bound".into(),
            },
            continuous_extension: v.continuous_extension,
        }
    }
}

/// All metric values for one pair of points, at one truncation depth.
#[derive(Clone, Debug, Serialize)]
pub struct MetricReport {
    pub pair: (String, String),
    pub truncation_depth: usize,
    pub repulsiveness: Option<String>,
    pub d: RationalValue,
    pub d_tilde: RationalValue,
    pub d_inf: RationalValue,
    pub d_tilde_inf: RationalValue,
    pub d_tau: Vec<(String, MetricEntry)>,
    pub d_tilde_tau: Vec<(String, MetricEntry)>,
    pub d_sup_truncated: MetricEntry,
    pub d_tilde_sup_truncated: MetricEntry,
}

/// Evaluates every metric of the module for one pair.
pub fn metric_report(
    x: &LazyPoint,
    y: &LazyPoint,
    taus: &[ChoiceFunction],
    weight: &WeightFunction,
    depth: usize,
    ell: Option<&BigRational>,
) -> Result<MetricReport> {
    let d = ultrametric(x, y, weight, EdgeKind::RightSpecial, depth)?;
    let d_tilde = ultrametric(x, y, weight, EdgeKind::Privileged, depth)?;
    let mut d_tau_rows = Vec::new();
    let mut d_tilde_tau_rows = Vec::new();
    for tau in taus {
        let label = tau.strategy().describe();
        let v = d_tau(x, y, tau, weight, EdgeKind::RightSpecial, depth, ell)?;
        d_tau_rows.push((label.clone(), MetricEntry::from_value(&v)));
        let v = d_tau(x, y, tau, weight, EdgeKind::Privileged, depth, ell)?;
        d_tilde_tau_rows.push((label, MetricEntry::from_value(&v)));
    }
    let sup = d_sup(x, y, weight, EdgeKind::RightSpecial, depth, ell)?;
    let sup_tilde = d_sup(x, y, weight, EdgeKind::Privileged, depth, ell)?;
    Ok(MetricReport {
        pair: (x.descriptor(), y.descriptor()),
        truncation_depth: depth,
        repulsiveness: ell.map(|e| e.to_string()),
        d: RationalValue::from_rational(&d),
        d_tilde: RationalValue::from_rational(&d_tilde),
        d_inf: RationalValue::from_rational(&d_inf(
            x,
            y,
            weight,
            EdgeKind::RightSpecial,
            depth,
        )?),
        d_tilde_inf: RationalValue::from_rational(&d_inf(
            x,
            y,
            weight,
            EdgeKind::Privileged,
            depth,
        )?),
        d_tau: d_tau_rows,
        d_tilde_tau: d_tilde_tau_rows,
        d_sup_truncated: MetricEntry::from_value(&sup),
        d_tilde_sup_truncated: MetricEntry::from_value(&sup_tilde),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_approx_graph, ChoiceStrategy};
    use crate::language::sources::substitution_oracle;
    use crate::language::FactorOracle;

    fn fib(depth: usize) -> Arc<FactorOracle> {
        let rules: std::collections::BTreeMap<char, String> =
            [('0', "1".to_string()), ('1', "10".to_string())].into();
        Arc::new(substitution_oracle(&rules, '1', depth).unwrap())
    }

    fn point(o: &Arc<FactorOracle>, s: &str, strategy: ChoiceStrategy) -> LazyPoint {
        let base = o.alphabet().parse(s).unwrap();
        ChoiceFunction::new(o.clone(), strategy).point(&base).unwrap()
    }

    #[test]
    fn meets_match_spec_examples() {
        let o = fib(60);
        let a = o.alphabet().clone();
        // ξ = 10110…, η = 10101… -> ξ∧η = "101", ξ⩘η = "101"
        let x = point(&o, "10110", ChoiceStrategy::LexMin);
        let y = point(&o, "10101", ChoiceStrategy::LexMin);
        assert_eq!(meet(&x, &y, 40).unwrap(), a.parse("101").unwrap());
        assert_eq!(priv_meet(&x, &y, 40).unwrap(), a.parse("101").unwrap());
        let w = WeightFunction::default_weight();
        assert_eq!(
            ultrametric(&x, &y, &w, EdgeKind::RightSpecial, 40).unwrap(),
            w.eval(3)
        );
        assert_eq!(
            ultrametric(&x, &y, &w, EdgeKind::Privileged, 40).unwrap(),
            w.eval(3)
        );
    }

    #[test]
    fn identical_points_have_distance_zero() {
        let o = fib(60);
        let w = WeightFunction::default_weight();
        let x = point(&o, "1", ChoiceStrategy::LexMin);
        let y = point(&o, "1", ChoiceStrategy::LexMin);
        assert!(ultrametric(&x, &y, &w, EdgeKind::Privileged, 40)
            .unwrap()
            .is_zero());
        let tau = ChoiceFunction::lexmin(o.clone());
        let v = d_tau(&x, &y, &tau, &w, EdgeKind::Privileged, 40, None).unwrap();
        assert!(v.value.is_zero());
        assert_eq!(v.tail, TailBound::Zero);
    }

    #[test]
    fn ultrametric_inequality_on_triples() {
        let o = fib(120);
        let w = WeightFunction::default_weight();
        let pts: Vec<LazyPoint> = (0..6)
            .map(|s| point(&o, "", ChoiceStrategy::Seeded(s)))
            .collect();
        for kind in [EdgeKind::RightSpecial, EdgeKind::Privileged] {
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    for k in 0..pts.len() {
                        let dij = ultrametric(&pts[i], &pts[j], &w, kind, 100);
                        let dik = ultrametric(&pts[i], &pts[k], &w, kind, 100);
                        let dkj = ultrametric(&pts[k], &pts[j], &w, kind, 100);
                        if let (Ok(dij), Ok(dik), Ok(dkj)) = (dij, dik, dkj) {
                            assert!(dij <= dik.max(dkj), "{kind:?} {i} {j} {k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plain_ultrametric_below_privileged_one() {
        let o = fib(120);
        let w = WeightFunction::default_weight();
        for s in 0..8u64 {
            let x = point(&o, "", ChoiceStrategy::Seeded(s));
            let y = point(&o, "", ChoiceStrategy::Seeded(s + 17));
            if let (Ok(d), Ok(dt)) = (
                ultrametric(&x, &y, &w, EdgeKind::RightSpecial, 100),
                ultrametric(&x, &y, &w, EdgeKind::Privileged, 100),
            ) {
                assert!(d <= dt, "seed {s}");
            }
        }
    }

    #[test]
    fn sandwich_inf_tau_sup() {
        let o = fib(200);
        let w = WeightFunction::default_weight();
        let ell = crate::combinatorics::repulsiveness_index(&o, 100)
            .unwrap()
            .value
            .unwrap();
        let depth = 120usize;
        for seed in 0..10u64 {
            let tau = ChoiceFunction::seeded(o.clone(), seed);
            let x = tau.point(&Word::empty()).unwrap();
            let y = tau.point(&o.alphabet().parse("11").unwrap()).unwrap();
            for kind in [EdgeKind::RightSpecial, EdgeKind::Privileged] {
                let lo = d_inf(&x, &y, &w, kind, depth).unwrap();
                let mid = d_tau(&x, &y, &tau, &w, kind, depth, Some(&ell)).unwrap();
                let hi = d_sup(&x, &y, &w, kind, depth, Some(&ell)).unwrap();
                assert_eq!(mid.tail, TailBound::Zero, "image points are exact");
                assert!(lo <= mid.value, "{kind:?} seed {seed}");
                let hi_bound = match kind {
                    EdgeKind::Privileged => hi.upper_bound().expect("geometric tail"),
                    EdgeKind::RightSpecial => hi.value.clone(),
                };
                // exact d_tau is below even the truncated sup sum
                assert!(mid.value <= hi_bound, "{kind:?} seed {seed}");
            }
        }
    }

    #[test]
    fn formula_matches_dijkstra_on_graph_vertices() {
        // Cross-module oracle: for in-truncation vertex pairs of the
        // privileged approximation graph, the explicit formula equals the
        // exact shortest-path distance.
        let o = fib(140);
        let w = WeightFunction::default_weight();
        let tau = ChoiceFunction::lexmin(o.clone());
        let depth = 20usize;
        let g = build_approx_graph(&tau, depth, EdgeKind::Privileged, &w).unwrap();
        let mut checked = 0usize;
        let n = g.vertex_count();
        for i in 0..n {
            for j in (i + 1)..n {
                let x = &g.vertices()[i].point;
                let y = &g.vertices()[j].point;
                let m = match priv_meet(x, y, depth) {
                    Ok(m) => m,
                    Err(_) => continue,
                };
                if m.len() > depth {
                    continue;
                }
                let lhs = d_tau(x, y, &tau, &w, EdgeKind::Privileged, depth, None).unwrap();
                if lhs.tail != TailBound::Zero {
                    continue;
                }
                let rhs = g.distance(i, j).unwrap();
                assert_eq!(lhs.value, rhs, "vertices {i} {j}");
                checked += 1;
            }
        }
        assert!(checked >= 20, "only {checked} in-truncation pairs checked");
    }

    #[test]
    fn metric_report_serializes() {
        let o = fib(120);
        let w = WeightFunction::default_weight();
        let taus = vec![
            ChoiceFunction::lexmin(o.clone()),
            ChoiceFunction::seeded(o.clone(), 5),
        ];
        let x = point(&o, "", ChoiceStrategy::LexMin);
        let y = point(&o, "11", ChoiceStrategy::LexMin);
        let ell = crate::combinatorics::repulsiveness_index(&o, 60)
            .unwrap()
            .value
            .unwrap();
        let report = metric_report(&x, &y, &taus, &w, 80, Some(&ell)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("d_tilde_sup_truncated"));
    }
}
