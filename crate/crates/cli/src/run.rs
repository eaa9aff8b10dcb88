//! Orchestration: build the oracle, run the requested analyses, assemble the
//! report, and drive the graph/zeta exports.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};
use subshift_core::combinatorics::{
    self, is_right_special_balanced, max_power, rank_profile, repulsiveness_index, PrivilegedTree,
};
use subshift_core::graph::{build_approx_graph, ChoiceFunction};
use subshift_core::language::sources::{
    sample_oracle, sturmian_oracle, substitution_oracle, SturmianSpec,
};
use subshift_core::metrics::{
    bounded_powers_verdict, lipschitz_profile, metric_report, PowersVerdict,
};
use subshift_core::zeta::{self, ExponentKind, ZetaFamily};
use subshift_core::{EdgeKind, Error as CoreError, FactorOracle, WeightFunction, Word};

use crate::config::{AnalysisConfig, AnalysisKind, CfSpec, SubshiftConfig, TauStrategy};
use crate::report::*;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(CoreError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn build_oracle(config: &AnalysisConfig, depth: usize) -> Result<Arc<FactorOracle>, CliError> {
    let oracle = match &config.subshift {
        SubshiftConfig::Substitution { rules, seed, .. } => {
            let mut parsed: BTreeMap<char, String> = BTreeMap::new();
            for (k, v) in rules {
                let mut chars = k.chars();
                let c = chars
                    .next()
                    .ok_or_else(|| CliError::Config("empty rule key".into()))?;
                if chars.next().is_some() {
                    return Err(CliError::Config(format!(
                        "rule keys must be single symbols, got {k:?}"
                    )));
                }
                parsed.insert(c, v.clone());
            }
            let mut seed_chars = seed.chars();
            let seed_char = seed_chars
                .next()
                .ok_or_else(|| CliError::Config("empty seed".into()))?;
            if seed_chars.next().is_some() {
                return Err(CliError::Config("seed must be a single symbol".into()));
            }
            substitution_oracle(&parsed, seed_char, depth)?
        }
        SubshiftConfig::Sturmian { cf, cycle, .. } => {
            let spec = match cf {
                CfSpec::Coefficients(v) if *cycle => SturmianSpec::cyclic(v.clone())?,
                CfSpec::Coefficients(v) => SturmianSpec::finite(v.clone())?,
                CfSpec::Rule(r) if r == "linear" => SturmianSpec::linear(),
                CfSpec::Rule(r) => {
                    return Err(CliError::Config(format!(
                        "unknown cf rule {r:?}; only \"linear\" is recognized"
                    )))
                }
            };
            sturmian_oracle(&spec, depth)?
        }
        SubshiftConfig::Sample { text, .. } => sample_oracle(text, depth)?,
    };
    Ok(Arc::new(oracle))
}

fn tau_functions(config: &AnalysisConfig, oracle: &Arc<FactorOracle>) -> Vec<ChoiceFunction> {
    let mut out = Vec::new();
    if config.tau.strategies.is_empty() {
        out.push(ChoiceFunction::lexmin(oracle.clone()));
        out.push(ChoiceFunction::seeded(oracle.clone(), 1));
        out.push(ChoiceFunction::seeded(oracle.clone(), 2));
    } else {
        for s in &config.tau.strategies {
            match s {
                TauStrategy::Named(_) => out.push(ChoiceFunction::lexmin(oracle.clone())),
                TauStrategy::Seeded { seeded } => {
                    out.push(ChoiceFunction::seeded(oracle.clone(), *seeded))
                }
            }
        }
    }
    out
}

/// Runs the full pipeline and assembles the report.
pub fn analyze(config: &AnalysisConfig, raw_config: &[u8]) -> Result<AnalysisReport, CliError> {
    let depth = config.validate().map_err(CliError::Config)?;
    let oracle = build_oracle(config, depth)?;
    let weight = WeightFunction::default_weight();
    let wants = |k: AnalysisKind| config.analyses.contains(&k);

    let provenance = Provenance {
        tool: "subshift-lab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config_fingerprint: crate::config::fingerprint(raw_config),
        subshift: config.subshift.describe(),
        alphabet: oracle.alphabet().symbols().to_vec(),
        requested_depth: depth,
        certified_depth: oracle.certified_depth(),
        certification: oracle.certification().describe(),
        window_len: oracle.window().len(),
    };

    let structure = if wants(AnalysisKind::Structure) {
        Some(structure_section(&oracle)?)
    } else {
        None
    };
    let balance = if wants(AnalysisKind::Balance) {
        Some(balance_section(&oracle)?)
    } else {
        None
    };
    let powers = if wants(AnalysisKind::Powers) {
        Some(powers_section(&oracle, &weight)?)
    } else {
        None
    };
    let metrics_section_opt = if wants(AnalysisKind::Metrics) {
        Some(metrics_section(config, &oracle, &weight)?)
    } else {
        None
    };
    let lipschitz = if wants(AnalysisKind::Lipschitz) {
        Some(lipschitz_section(&oracle, &weight)?)
    } else {
        None
    };
    let zeta_section_opt = if wants(AnalysisKind::Zeta) {
        Some(zeta_section(&oracle, &weight)?)
    } else {
        None
    };

    Ok(AnalysisReport {
        provenance,
        structure,
        balance,
        powers,
        metrics: metrics_section_opt,
        lipschitz,
        zeta: zeta_section_opt,
    })
}

/// Whether the report's bounded-powers verdict is inconclusive (drives the
/// `--strict` exit status).
pub fn is_inconclusive(report: &AnalysisReport) -> bool {
    report
        .powers
        .as_ref()
        .map(|p| p.verdict == "inconclusive")
        .unwrap_or(false)
}

fn structure_section(oracle: &Arc<FactorOracle>) -> Result<StructureSection, CliError> {
    let depth = oracle.certified_depth();
    let rows_to = depth.min(64);
    let mut complexity_rows = Vec::with_capacity(rows_to + 1);
    for n in 0..=rows_to {
        complexity_rows.push(ComplexityRow {
            n,
            p: oracle.complexity(n)?,
            p_rs: oracle.right_special_count(n)?,
            p_pal: combinatorics::palindromic_complexity(oracle, n)?,
        });
    }
    let privileged = if depth >= 8 {
        let max_len = (depth / 3).min(48);
        let tree = PrivilegedTree::build(oracle, max_len)?;
        let counts = tree.privileged_complexity().to_vec();
        let max_order = tree.records().iter().map(|r| r.order).max().unwrap_or(0);
        Some(PrivilegedStats {
            max_len,
            total: tree.records().len(),
            count_by_length: counts.iter().copied().enumerate().collect(),
            max_order,
            all_returns_complete: tree.complete_up_to(max_len),
        })
    } else {
        None
    };
    Ok(StructureSection {
        complexity_rows,
        complexity_rows_to: rows_to,
        privileged,
    })
}

fn balance_section(oracle: &Arc<FactorOracle>) -> Result<BalanceSection, CliError> {
    // Return searches for S(u) run to the certified depth; slowly recurrent
    // subshifts need roughly a tenfold margin over the checked length.
    let checked_depth = (oracle.certified_depth() / 10).min(30);
    let verdict = is_right_special_balanced(oracle, checked_depth)?;
    let alphabet = oracle.alphabet();
    Ok(BalanceSection {
        checked_depth,
        balanced: verdict.balanced,
        counterexample: verdict.counterexample.map(|(word, set)| BalanceCounterexample {
            word: alphabet.format(&word),
            s_set: set.iter().map(|w| alphabet.format(w)).collect(),
        }),
    })
}

fn powers_section(
    oracle: &Arc<FactorOracle>,
    weight: &WeightFunction,
) -> Result<PowersSection, CliError> {
    let alphabet = oracle.alphabet().clone();
    let cap = oracle.certified_depth().min(400);
    let windows: Vec<usize> = [cap / 4, cap / 2, cap]
        .into_iter()
        .filter(|&n| n >= 2)
        .collect();
    let mut rep_rows = Vec::new();
    let mut pow_rows = Vec::new();
    for &n in &windows {
        let r = repulsiveness_index(oracle, n)?;
        rep_rows.push(RepulsivenessRow {
            n,
            value: r.value.as_ref().map(|v| v.to_string()),
            value_approx: r.value.as_ref().and_then(|v| v.to_f64()),
            witness: r
                .witness
                .map(|(w, big)| (alphabet.format(&w), alphabet.format(&big))),
        });
        let p = max_power(oracle, n)?;
        pow_rows.push(MaxPowerRow {
            n,
            p: p.p,
            base: p.base.map(|b| alphabet.format(&b)),
        });
    }
    let rank = if oracle.certified_depth() >= 24 {
        let depth = (oracle.certified_depth() / 4).min(200);
        let profile = rank_profile(oracle, depth)?;
        let max_a_tilde = profile.per_length.last().map(|&(_, a)| a).unwrap_or(0);
        let tail: Vec<(usize, u64)> = profile
            .per_length
            .iter()
            .rev()
            .take(8)
            .rev()
            .copied()
            .collect();
        Some(RankProfileSection {
            depth,
            truncated: profile.truncated,
            max_a_tilde,
            per_length_tail: tail,
            fits: profile
                .fits
                .iter()
                .map(|f| RankFitRow {
                    log_exponent_b: f.exponent_b,
                    coefficient: f.coefficient,
                    rms_residual: f.rms_residual,
                })
                .collect(),
        })
    } else {
        None
    };
    let verdict_depth = oracle.certified_depth().min(512);
    let (verdict, evidence) = bounded_powers_verdict(oracle, weight, verdict_depth)?;
    let verdict = match verdict {
        PowersVerdict::Bounded => "bounded",
        PowersVerdict::Unbounded => "unbounded",
        PowersVerdict::Inconclusive => "inconclusive",
    };
    Ok(PowersSection {
        repulsiveness: rep_rows,
        max_power: pow_rows,
        rank_profile: rank,
        verdict: verdict.into(),
        verdict_evidence: evidence,
    })
}

fn metrics_section(
    config: &AnalysisConfig,
    oracle: &Arc<FactorOracle>,
    weight: &WeightFunction,
) -> Result<MetricsSection, CliError> {
    // Right-special chains query one-letter extensions, so stay one short of
    // the certified depth.
    let depth = oracle.certified_depth().saturating_sub(1).clamp(1, 160);
    let taus = tau_functions(config, oracle);
    let ell = if oracle.certified_depth() >= 16 {
        repulsiveness_index(oracle, oracle.certified_depth().min(200))?.value
    } else {
        None
    };
    // Deterministic pair set: points of the configured strategies from the
    // root, plus the lexmin points through each letter.
    let mut points = Vec::new();
    for tau in &taus {
        points.push(tau.point(&Word::empty())?);
    }
    let lexmin = ChoiceFunction::lexmin(oracle.clone());
    for s in 0..oracle.alphabet().size() {
        points.push(lexmin.point(&Word::single(s as u8))?);
    }
    let mut pairs = Vec::new();
    'outer: for i in 0..points.len() {
        for j in i + 1..points.len() {
            match metric_report(&points[i], &points[j], &taus, weight, depth, ell.as_ref()) {
                Ok(r) => pairs.push(r),
                Err(CoreError::IndistinguishableAtDepth { .. }) => continue,
                Err(e) => return Err(e.into()),
            }
            if pairs.len() >= 6 {
                break 'outer;
            }
        }
    }
    let audit = weight.audit(10_000);
    Ok(MetricsSection {
        weight: WeightInfo {
            name: "default 1/(n+1)".into(),
            cbar: weight.cbar().to_string(),
            c_under: weight.c_under().to_string(),
            audit_grid_max: audit.grid_max,
            audit_max_submultiplicative_ratio: audit.max_submultiplicative_ratio.to_string(),
            audit_doubling_holds: audit.doubling_holds,
            audit_strictly_decreasing: audit.strictly_decreasing,
        },
        truncation_depth: depth,
        repulsiveness: ell.map(|e| e.to_string()),
        pairs,
    })
}

fn lipschitz_section(
    oracle: &Arc<FactorOracle>,
    weight: &WeightFunction,
) -> Result<LipschitzSection, CliError> {
    let depth = oracle.certified_depth().min(256);
    let profile = lipschitz_profile(oracle, weight, depth, &[])?;
    let ell = repulsiveness_index(oracle, depth)?.value;
    let (geometric_bound, within_bound) = match &ell {
        Some(e) if e.is_positive() => match weight.geometric_bound(e)? {
            Some(b) => {
                let within = profile.max <= b;
                (Some(b.to_string()), Some(within))
            }
            None => (None, None),
        },
        _ => (None, None),
    };
    Ok(LipschitzSection {
        depth,
        samples: profile.samples.clone(),
        profile: profile
            .per_m
            .iter()
            .enumerate()
            .map(|(i, v)| (i + 1, v.to_string(), v.to_f64().unwrap_or(f64::NAN)))
            .collect(),
        max: profile.max.to_string(),
        max_approx: profile.max.to_f64().unwrap_or(f64::NAN),
        geometric_bound,
        within_bound,
    })
}

fn zeta_section(
    oracle: &Arc<FactorOracle>,
    weight: &WeightFunction,
) -> Result<ZetaSection, CliError> {
    let candidate = (oracle.certified_depth() / 3).min(200);
    let s_grid = vec![1.2, 1.5, 2.0, 3.0];
    // The tilde families need complete return sets; shrink the truncation to
    // the range the certified depth can actually close.
    let probe = zeta::privileged_tree_for_zeta(oracle, candidate)?;
    let n_max = probe.max_complete_length();
    let tree = probe;
    let mut series = Vec::new();
    for &s in &s_grid {
        for (family, k) in [
            (ZetaFamily::ZetaK, 0),
            (ZetaFamily::ZetaK, 1),
            (ZetaFamily::ZetaTildeK, 0),
            (ZetaFamily::ZetaTildeK, 1),
        ] {
            series.push(zeta::zeta_partial_with(
                oracle,
                Some(&tree),
                weight,
                family,
                k,
                s,
                n_max,
            )?);
        }
    }
    let mut spectral = Vec::new();
    for kind in [EdgeKind::RightSpecial, EdgeKind::Privileged] {
        for &s in &s_grid {
            let check = zeta::zeta_spectral(oracle, weight, kind, s, n_max)?;
            spectral.push(SpectralRow {
                kind: kind.describe().into(),
                s,
                partial_sum: check.series.partial_sum,
                identity_ok: check.identity_ok,
                identity_gap: check.identity_gap,
            });
        }
    }
    let inequalities = zeta::inequality_audit(oracle, weight, &s_grid, n_max)?;
    let mut exponents = Vec::new();
    let mut notes = vec![
        "abscissas of convergence are not estimated numerically; the exponents below describe \
         the coefficient counting functions (for the default weight the abscissa of zeta_1 \
         equals the weak complexity exponent beta)"
            .to_string(),
    ];
    if n_max < candidate {
        notes.push(format!(
            "zeta truncation reduced from {candidate} to {n_max}: return sets of longer \
             privileged words escape the certified depth"
        ));
    }
    let beta_hi = oracle.certified_depth().min(2000);
    let beta_window = (beta_hi / 4, beta_hi);
    match zeta::exponent_estimate(oracle, ExponentKind::Beta, beta_window) {
        Ok(e) => exponents.push(e),
        Err(CoreError::DegenerateWindow) => notes.push("beta window degenerate; skipped".into()),
        Err(e) => return Err(e.into()),
    }
    match zeta::exponent_estimate(oracle, ExponentKind::BetaRightSpecial, beta_window) {
        Ok(e) => exponents.push(e),
        Err(CoreError::DegenerateWindow) => {
            notes.push("beta_rs window degenerate; skipped".into())
        }
        Err(e) => return Err(e.into()),
    }
    let pr_hi = n_max;
    match zeta::exponent_estimate(oracle, ExponentKind::BetaPrivileged, (pr_hi / 4, pr_hi)) {
        Ok(e) => exponents.push(e),
        Err(CoreError::DegenerateWindow) => {
            notes.push("beta_pr window degenerate; skipped".into())
        }
        Err(e) => return Err(e.into()),
    }
    Ok(ZetaSection {
        n_max,
        s_grid,
        series,
        spectral,
        inequalities,
        exponents,
        notes,
    })
}

/// Builds the approximation graph of the requested kind and renders DOT.
pub fn export_graph(
    config: &AnalysisConfig,
    kind: EdgeKind,
    graph_depth: usize,
) -> Result<String, CliError> {
    let depth = config.validate().map_err(CliError::Config)?;
    let oracle = build_oracle(config, depth)?;
    let weight = WeightFunction::default_weight();
    let tau = tau_functions(config, &oracle)
        .into_iter()
        .next()
        .expect("at least one strategy");
    let graph = build_approx_graph(&tau, graph_depth, kind, &weight)?;
    Ok(graph.to_dot())
}

/// Runs one zeta family over an `s` grid and renders CSV. With
/// `check_identity`, appends an `identity_ok` column (spectral families).
pub fn zeta_scan(
    config: &AnalysisConfig,
    family: ZetaFamily,
    k: u32,
    s_values: &[f64],
    n_max: usize,
    check_identity: bool,
) -> Result<String, CliError> {
    if s_values.is_empty() {
        return Err(CliError::Config("empty s grid".into()));
    }
    let depth = config.validate().map_err(CliError::Config)?;
    let oracle = build_oracle(config, depth)?;
    let weight = WeightFunction::default_weight();
    let tree = match family {
        ZetaFamily::ZetaTildeK | ZetaFamily::ZetaDTilde => {
            Some(zeta::privileged_tree_for_zeta(&oracle, n_max)?)
        }
        _ => None,
    };
    let mut rows = Vec::new();
    for &s in s_values {
        rows.push(zeta::zeta_partial_with(
            &oracle,
            tree.as_ref(),
            &weight,
            family,
            k,
            s,
            n_max,
        )?);
    }
    if !check_identity {
        return Ok(zeta::csv(&rows));
    }
    let kind = match family {
        ZetaFamily::ZetaD | ZetaFamily::ZetaK => EdgeKind::RightSpecial,
        ZetaFamily::ZetaDTilde | ZetaFamily::ZetaTildeK => EdgeKind::Privileged,
    };
    let mut out = String::from("family,k,s,N,partial_sum,diagnostic,identity_ok\n");
    for row in &rows {
        let check = zeta::zeta_spectral(&oracle, &weight, kind, row.s, n_max)?;
        let base = zeta::csv(std::slice::from_ref(row));
        let line = base.lines().nth(1).expect("one row");
        out.push_str(&format!("{line},{}\n", check.identity_ok));
    }
    Ok(out)
}

/// Renders the report deterministically (pretty JSON with a trailing newline).
pub fn render_report(report: &AnalysisReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}
