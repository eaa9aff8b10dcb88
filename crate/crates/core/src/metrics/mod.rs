//! Weight functions, the ultrametric pair, the per-choice metrics and their
//! inf/sup extremes, and the Lipschitz test for bounded powers.

pub mod distance;
pub mod lipschitz;
pub mod weight;

pub use distance::{
    d_inf, d_sup, d_tau, meet, metric_report, priv_meet, privileged_chain, right_special_chain,
    ultrametric, MetricEntry, MetricReport, MetricValue, RationalValue, TailBound,
};
pub use lipschitz::{
    bounded_powers_verdict, lipschitz_profile, lipschitz_ratio, privileged_ratio,
    LipschitzProfile, PowersVerdict, VerdictEvidence,
};
pub use weight::{WeightAudit, WeightFunction};
