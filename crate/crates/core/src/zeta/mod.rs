//! Dirichlet-type zeta partial sums over the tree of words, the
//! spectral-trace identities, and complexity-exponent estimation.
//!
//! `ζ_k(s) = Σ_v a(v)^k δ(|v|)^s` over all factors, `ζ̃_k` the analogue with
//! the return branching `ã(v)` of privileged words, with the convention
//! `0^0 = 0` (so the `k = 0` series count branching words only). Abscissas
//! of convergence are never claimed numerically; the module reports exponent
//! estimates of the coefficient counting functions instead.

use serde::Serialize;
use std::sync::Arc;

use crate::combinatorics::PrivilegedTree;
use crate::language::FactorOracle;
use crate::metrics::WeightFunction;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZetaFamily {
    /// `ζ_k`: right-special branching over all factors.
    ZetaK,
    /// `ζ̃_k`: return branching over privileged factors.
    ZetaTildeK,
    /// `ζ_D = ½ Σ a(v)(a(v)+1) δ(|v|)^s`, the right-special trace.
    ZetaD,
    /// `ζ_D̃ = ½ Σ ã(v)(ã(v)+1) δ(|v|)^s`, the privileged trace.
    ZetaDTilde,
}

impl ZetaFamily {
    pub fn describe(&self) -> &'static str {
        match self {
            ZetaFamily::ZetaK => "zeta_k",
            ZetaFamily::ZetaTildeK => "zeta_tilde_k",
            ZetaFamily::ZetaD => "zeta_D",
            ZetaFamily::ZetaDTilde => "zeta_D_tilde",
        }
    }
}

/// A truncated Dirichlet series value.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaSeries {
    pub family: ZetaFamily,
    pub k: u32,
    pub s: f64,
    pub n_max: usize,
    pub partial_sum: f64,
    /// Fraction of the partial sum contributed by lengths in `(n_max/10, n_max]`.
    pub last_decade_ratio: f64,
}

/// Kahan-compensated accumulator; terms are added in ascending length order
/// for reproducibility.
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn new() -> Self {
        Kahan { sum: 0.0, c: 0.0 }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Per-length integer coefficients of a zeta family.
fn coefficients(
    oracle: &FactorOracle,
    tree: Option<&PrivilegedTree>,
    family: ZetaFamily,
    k: u32,
    n_max: usize,
) -> Result<Vec<f64>> {
    let mut out = vec![0f64; n_max + 1];
    match family {
        ZetaFamily::ZetaK | ZetaFamily::ZetaD => {
            for (n, slot) in out.iter_mut().enumerate() {
                let hist = oracle.branching_histogram(n)?;
                let mut acc = 0f64;
                for (deg, &count) in hist.iter().enumerate() {
                    let a = deg.saturating_sub(1) as f64;
                    if count == 0 {
                        continue;
                    }
                    let weight = match family {
                        // 0^0 = 0: for k = 0 only branching words count.
                        ZetaFamily::ZetaK => {
                            if a == 0.0 && k == 0 {
                                0.0
                            } else {
                                a.powi(k as i32)
                            }
                        }
                        ZetaFamily::ZetaD => 0.5 * a * (a + 1.0),
                        _ => unreachable!(),
                    };
                    acc += count as f64 * weight;
                }
                *slot = acc;
            }
        }
        ZetaFamily::ZetaTildeK | ZetaFamily::ZetaDTilde => {
            let tree = tree.expect("privileged families need the tree");
            for record in tree.records() {
                let n = record.word.len();
                if n > n_max {
                    continue;
                }
                let a = record.a_tilde().ok_or(Error::ReturnBudgetExceeded {
                    budget: tree.budget(),
                    branch: oracle.alphabet().format(&record.word),
                })? as f64;
                let weight = match family {
                    ZetaFamily::ZetaTildeK => {
                        if a == 0.0 && k == 0 {
                            0.0
                        } else {
                            a.powi(k as i32)
                        }
                    }
                    ZetaFamily::ZetaDTilde => 0.5 * a * (a + 1.0),
                    _ => unreachable!(),
                };
                out[n] += weight;
            }
        }
    }
    Ok(out)
}

fn sum_series(
    coeffs: &[f64],
    weight: &WeightFunction,
    family: ZetaFamily,
    k: u32,
    s: f64,
    n_max: usize,
) -> ZetaSeries {
    let mut total = Kahan::new();
    let mut head = Kahan::new();
    let decade_cut = n_max / 10;
    for (n, &c) in coeffs.iter().enumerate().take(n_max + 1) {
        let term = c * weight.pow_f64(n, s);
        total.add(term);
        if n <= decade_cut {
            head.add(term);
        }
    }
    let last_decade_ratio = if total.sum != 0.0 {
        (total.sum - head.sum) / total.sum
    } else {
        0.0
    };
    ZetaSeries {
        family,
        k,
        s,
        n_max,
        partial_sum: total.sum,
        last_decade_ratio,
    }
}

/// Builds a privileged tree adequate for the tilde families up to `n_max`.
pub fn privileged_tree_for_zeta(oracle: &FactorOracle, n_max: usize) -> Result<PrivilegedTree> {
    PrivilegedTree::build(oracle, n_max)
}

/// Partial sum of one zeta family, exact per-term coefficients accumulated
/// with compensated summation in ascending length order.
pub fn zeta_partial(
    oracle: &FactorOracle,
    weight: &WeightFunction,
    family: ZetaFamily,
    k: u32,
    s: f64,
    n_max: usize,
) -> Result<ZetaSeries> {
    oracle.guard(n_max)?;
    if s <= 0.0 {
        return Err(Error::InvalidArgument("zeta exponent s must be positive".into()));
    }
    let tree = match family {
        ZetaFamily::ZetaTildeK | ZetaFamily::ZetaDTilde => {
            Some(privileged_tree_for_zeta(oracle, n_max)?)
        }
        _ => None,
    };
    zeta_partial_with(oracle, tree.as_ref(), weight, family, k, s, n_max)
}

/// As [`zeta_partial`], reusing a precomputed privileged tree.
pub fn zeta_partial_with(
    oracle: &FactorOracle,
    tree: Option<&PrivilegedTree>,
    weight: &WeightFunction,
    family: ZetaFamily,
    k: u32,
    s: f64,
    n_max: usize,
) -> Result<ZetaSeries> {
    oracle.guard(n_max)?;
    let coeffs = coefficients(oracle, tree, family, k, n_max)?;
    Ok(sum_series(&coeffs, weight, family, k, s, n_max))
}

/// The spectral series of one kind together with its trace identity check
/// against `½(ζ_2 + ζ_1)` (or the `ã` analogue) at the same truncation.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralCheck {
    pub series: ZetaSeries,
    pub identity_ok: bool,
    pub identity_gap: f64,
}

pub fn zeta_spectral(
    oracle: &FactorOracle,
    weight: &WeightFunction,
    kind: crate::graph::EdgeKind,
    s: f64,
    n_max: usize,
) -> Result<SpectralCheck> {
    let (spectral_family, k_family) = match kind {
        crate::graph::EdgeKind::RightSpecial => (ZetaFamily::ZetaD, ZetaFamily::ZetaK),
        crate::graph::EdgeKind::Privileged => (ZetaFamily::ZetaDTilde, ZetaFamily::ZetaTildeK),
    };
    let tree = match kind {
        crate::graph::EdgeKind::Privileged => Some(privileged_tree_for_zeta(oracle, n_max)?),
        _ => None,
    };
    let series =
        zeta_partial_with(oracle, tree.as_ref(), weight, spectral_family, 0, s, n_max)?;
    let z1 = zeta_partial_with(oracle, tree.as_ref(), weight, k_family, 1, s, n_max)?;
    let z2 = zeta_partial_with(oracle, tree.as_ref(), weight, k_family, 2, s, n_max)?;
    let rhs = 0.5 * (z2.partial_sum + z1.partial_sum);
    let gap = (series.partial_sum - rhs).abs();
    let scale = series.partial_sum.abs().max(1.0);
    Ok(SpectralCheck {
        series,
        identity_ok: gap <= 1e-12 * scale,
        identity_gap: gap,
    })
}

/// One row of the inequality audit.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityRow {
    pub s: f64,
    pub k: u32,
    pub zeta_k: f64,
    pub zeta_tilde_k: f64,
    pub tilde_dominates: bool,
    /// The `k = 0` comparison needs `|S(u)| = 1` (right-special balance):
    /// the proof's step `ã(u)^k >= Σ_{r∈S(u)} a(r)^k` fails at `k = 0` when
    /// `S(u)` has several elements, and so can the inequality itself.
    pub requires_balance: bool,
}

/// Audit of the comparison results at a truncation: `ζ̃_k >= ζ_k` on a grid
/// of `(k, s)`, and `ζ_1 >= ½ ζ̃_0 − ½ δ(0)^s`. Failures are reported with
/// the offending terms, never silently dropped.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityAudit {
    pub n_max: usize,
    pub rows: Vec<InequalityRow>,
    pub lower_bound_rows: Vec<(f64, f64, f64, bool)>,
    /// Every comparison holds, the balance-dependent `k = 0` rows included.
    pub all_hold: bool,
    /// Every comparison that is a theorem for general minimal aperiodic
    /// subshifts holds (`k >= 1` domination and the `ζ_1` lower bound).
    pub provable_hold: bool,
}

pub fn inequality_audit(
    oracle: &FactorOracle,
    weight: &WeightFunction,
    s_grid: &[f64],
    n_max: usize,
) -> Result<InequalityAudit> {
    let tree = privileged_tree_for_zeta(oracle, n_max)?;
    let mut rows = Vec::new();
    let mut lower_bound_rows = Vec::new();
    let mut all_hold = true;
    let mut provable_hold = true;
    for &s in s_grid {
        for k in 0..=2u32 {
            let zk =
                zeta_partial_with(oracle, None, weight, ZetaFamily::ZetaK, k, s, n_max)?;
            let ztk = zeta_partial_with(
                oracle,
                Some(&tree),
                weight,
                ZetaFamily::ZetaTildeK,
                k,
                s,
                n_max,
            )?;
            let ok = ztk.partial_sum >= zk.partial_sum - 1e-12;
            all_hold &= ok;
            if k >= 1 {
                provable_hold &= ok;
            }
            rows.push(InequalityRow {
                s,
                k,
                zeta_k: zk.partial_sum,
                zeta_tilde_k: ztk.partial_sum,
                tilde_dominates: ok,
                requires_balance: k == 0,
            });
        }
        let z1 = zeta_partial_with(oracle, None, weight, ZetaFamily::ZetaK, 1, s, n_max)?;
        let zt0 = zeta_partial_with(
            oracle,
            Some(&tree),
            weight,
            ZetaFamily::ZetaTildeK,
            0,
            s,
            n_max,
        )?;
        let rhs = 0.5 * zt0.partial_sum - 0.5 * weight.pow_f64(0, s);
        let ok = z1.partial_sum >= rhs - 1e-12;
        all_hold &= ok;
        provable_hold &= ok;
        lower_bound_rows.push((s, z1.partial_sum, rhs, ok));
    }
    Ok(InequalityAudit {
        n_max,
        rows,
        lower_bound_rows,
        all_hold,
        provable_hold,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExponentKind {
    /// Growth exponent of the word complexity `p(n)`.
    Beta,
    /// Growth exponent of the right-special counting function.
    BetaRightSpecial,
    /// Growth exponent of the privileged counting function.
    BetaPrivileged,
}

/// A least-squares growth exponent with its fit diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentEstimate {
    pub kind: ExponentKind,
    pub value: f64,
    pub window: (usize, usize),
    pub rms_residual: f64,
    pub method: String,
}

/// Log-log least squares. For `β` the counts `p(n)` are fit directly; for
/// `β_rs` and `β_pr` the cumulative counting functions are fit and 1 is
/// subtracted, which is stabler than per-length fits for bounded counts.
pub fn exponent_estimate(
    oracle: &FactorOracle,
    kind: ExponentKind,
    window: (usize, usize),
) -> Result<ExponentEstimate> {
    let (lo, hi) = window;
    oracle.guard(hi)?;
    if lo < 1 || hi < lo + 2 {
        return Err(Error::DegenerateWindow);
    }
    let (xs, ys, method): (Vec<f64>, Vec<f64>, String) = match kind {
        ExponentKind::Beta => {
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for n in lo..=hi {
                let p = oracle.complexity(n)? as f64;
                xs.push((n as f64).ln());
                ys.push(p.ln());
            }
            (xs, ys, "log-log slope of p(n)".into())
        }
        ExponentKind::BetaRightSpecial => {
            let mut cum = 0f64;
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for n in 0..=hi {
                cum += oracle.right_special_count(n)? as f64;
                if n >= lo && cum > 0.0 {
                    xs.push((n as f64).ln());
                    ys.push(cum.ln());
                }
            }
            (xs, ys, "log-log slope of cumulative p_rs, minus 1".into())
        }
        ExponentKind::BetaPrivileged => {
            let tree = PrivilegedTree::build(oracle, hi)?;
            let counts = tree.privileged_complexity();
            let mut cum = 0f64;
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for (n, &count) in counts.iter().enumerate().take(hi + 1) {
                cum += count as f64;
                if n >= lo && cum > 0.0 {
                    xs.push((n as f64).ln());
                    ys.push(cum.ln());
                }
            }
            (xs, ys, "log-log slope of cumulative p_pr, minus 1".into())
        }
    };
    if xs.len() < 3 {
        return Err(Error::DegenerateWindow);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateWindow);
    }
    let sxy: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum::<f64>()
        / n)
        .sqrt();
    let value = match kind {
        ExponentKind::Beta => slope,
        _ => slope - 1.0,
    };
    Ok(ExponentEstimate {
        kind,
        value,
        window,
        rms_residual: rms,
        method,
    })
}

/// CSV rendering, columns `family,k,s,N,partial_sum,diagnostic`.
pub fn csv(series: &[ZetaSeries]) -> String {
    let mut out = String::from("family,k,s,N,partial_sum,diagnostic\n");
    for z in series {
        out.push_str(&format!(
            "{},{},{},{},{:.17e},{:.6}\n",
            z.family.describe(),
            z.k,
            z.s,
            z.n_max,
            z.partial_sum,
            z.last_decade_ratio
        ));
    }
    out
}

/// Convenience: the histogram route and the complexity-difference route for
/// the `ζ_1` coefficients must agree: `Σ_{|v|=n} a(v) = p(n+1) − p(n)`.
pub fn zeta1_coefficient_crosscheck(oracle: &Arc<FactorOracle>, n_max: usize) -> Result<bool> {
    for n in 0..n_max {
        let hist = oracle.branching_histogram(n)?;
        let a_sum: u64 = hist
            .iter()
            .enumerate()
            .map(|(deg, &c)| c * deg.saturating_sub(1) as u64)
            .sum();
        let diff = oracle.complexity(n + 1)? as u64 - oracle.complexity(n)? as u64;
        if a_sum != diff {
            return Ok(false);
        }
    }
    Ok(true)
}
