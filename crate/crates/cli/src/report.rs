//! Machine-readable analysis report. Every numeric entry carries its
//! truncation depth; verdicts carry their evidence.

use serde::Serialize;
use subshift_core::metrics::{MetricReport, VerdictEvidence};
use subshift_core::zeta::{ExponentEstimate, InequalityAudit, ZetaSeries};

#[derive(Serialize)]
pub struct AnalysisReport {
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balance: Option<BalanceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub powers: Option<PowersSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<LipschitzSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaSection>,
}

#[derive(Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_fingerprint: String,
    pub subshift: String,
    pub alphabet: Vec<char>,
    pub requested_depth: usize,
    pub certified_depth: usize,
    pub certification: String,
    pub window_len: usize,
}

#[derive(Serialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub p: usize,
    pub p_rs: u64,
    pub p_pal: usize,
}

#[derive(Serialize)]
pub struct StructureSection {
    pub complexity_rows: Vec<ComplexityRow>,
    pub complexity_rows_to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub privileged: Option<PrivilegedStats>,
}

#[derive(Serialize)]
pub struct PrivilegedStats {
    pub max_len: usize,
    pub total: usize,
    pub count_by_length: Vec<(usize, u64)>,
    pub max_order: u32,
    pub all_returns_complete: bool,
}

#[derive(Serialize)]
pub struct BalanceSection {
    pub checked_depth: usize,
    pub balanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BalanceCounterexample>,
}

#[derive(Serialize)]
pub struct BalanceCounterexample {
    pub word: String,
    pub s_set: Vec<String>,
}

#[derive(Serialize)]
pub struct RepulsivenessRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_approx: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(String, String)>,
}

#[derive(Serialize)]
pub struct MaxPowerRow {
    pub n: usize,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
}

#[derive(Serialize)]
pub struct RankFitRow {
    pub log_exponent_b: u32,
    pub coefficient: f64,
    pub rms_residual: f64,
}

#[derive(Serialize)]
pub struct RankProfileSection {
    pub depth: usize,
    pub truncated: bool,
    pub max_a_tilde: u64,
    pub per_length_tail: Vec<(usize, u64)>,
    pub fits: Vec<RankFitRow>,
}

#[derive(Serialize)]
pub struct PowersSection {
    pub repulsiveness: Vec<RepulsivenessRow>,
    pub max_power: Vec<MaxPowerRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_profile: Option<RankProfileSection>,
    pub verdict: String,
    pub verdict_evidence: VerdictEvidence,
}

#[derive(Serialize)]
pub struct MetricsSection {
    pub weight: WeightInfo,
    pub truncation_depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repulsiveness: Option<String>,
    pub pairs: Vec<MetricReport>,
}

#[derive(Serialize)]
pub struct WeightInfo {
    pub name: String,
    pub cbar: String,
    pub c_under: String,
    pub audit_grid_max: usize,
    pub audit_max_submultiplicative_ratio: String,
    pub audit_doubling_holds: bool,
    pub audit_strictly_decreasing: bool,
}

#[derive(Serialize)]
pub struct LipschitzSection {
    pub depth: usize,
    pub samples: Vec<String>,
    pub profile: Vec<(usize, String, f64)>,
    pub max: String,
    pub max_approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometric_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_bound: Option<bool>,
}

#[derive(Serialize)]
pub struct SpectralRow {
    pub kind: String,
    pub s: f64,
    pub partial_sum: f64,
    pub identity_ok: bool,
    pub identity_gap: f64,
}

#[derive(Serialize)]
pub struct ZetaSection {
    pub n_max: usize,
    pub s_grid: Vec<f64>,
    pub series: Vec<ZetaSeries>,
    pub spectral: Vec<SpectralRow>,
    pub inequalities: InequalityAudit,
    pub exponents: Vec<ExponentEstimate>,
    pub notes: Vec<String>,
}
