//! Configuration schema.
//!
//! A subshift document is a JSON object
//! `{"type": "substitution"|"sturmian"|"sample", ...}`:
//!
//! - `{"type": "substitution", "rules": {"0": "1", "1": "10"}, "seed": "1"}`
//! - `{"type": "sturmian", "cf": [1, 2] }` (coefficients cycle by default;
//!   `"cycle": false` uses them once), or `{"type": "sturmian", "cf": "linear"}`
//!   for `a_n = n`
//! - `{"type": "sample", "text": "abab..."}`
//!
//! Each variant accepts an optional `"depth"`; an analysis config embeds a
//! subshift under `"subshift"` and may override the depth at top level:
//!
//! ```json
//! {
//!   "subshift": {"type": "substitution", "rules": {"0": "1", "1": "10"}, "seed": "1"},
//!   "depth": 60,
//!   "weight": "default",
//!   "tau": {"strategies": ["lexmin", {"seeded": 1}]},
//!   "analyses": ["structure", "balance", "powers", "metrics", "lipschitz", "zeta"]
//! }
//! ```
//!
//! Unknown keys are rejected everywhere.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub subshift: SubshiftConfig,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default = "default_weight")]
    pub weight: String,
    #[serde(default)]
    pub tau: TauConfig,
    pub analyses: Vec<AnalysisKind>,
}

fn default_weight() -> String {
    "default".into()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SubshiftConfig {
    Substitution {
        rules: BTreeMap<String, String>,
        seed: String,
        #[serde(default)]
        depth: Option<usize>,
    },
    Sturmian {
        cf: CfSpec,
        #[serde(default = "default_true")]
        cycle: bool,
        #[serde(default)]
        depth: Option<usize>,
    },
    Sample {
        text: String,
        #[serde(default)]
        depth: Option<usize>,
    },
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CfSpec {
    Coefficients(Vec<u32>),
    /// Only `"linear"` (`a_n = n`) is recognized.
    Rule(String),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauConfig {
    #[serde(default)]
    pub strategies: Vec<TauStrategy>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum TauStrategy {
    /// `"lexmin"`.
    Named(String),
    /// `{"seeded": 7}`.
    Seeded { seeded: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalysisKind {
    Structure,
    Balance,
    Powers,
    Metrics,
    Lipschitz,
    Zeta,
}

impl SubshiftConfig {
    pub fn depth(&self) -> Option<usize> {
        match self {
            SubshiftConfig::Substitution { depth, .. }
            | SubshiftConfig::Sturmian { depth, .. }
            | SubshiftConfig::Sample { depth, .. } => *depth,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SubshiftConfig::Substitution { rules, seed, .. } => {
                let parts: Vec<String> =
                    rules.iter().map(|(k, v)| format!("{k}->{v}")).collect();
                format!("substitution {{{}}} seed {}", parts.join(", "), seed)
            }
            SubshiftConfig::Sturmian { cf, cycle, .. } => match cf {
                CfSpec::Coefficients(v) if *cycle => format!("sturmian cyclic {v:?}"),
                CfSpec::Coefficients(v) => format!("sturmian finite {v:?}"),
                CfSpec::Rule(r) => format!("sturmian {r}"),
            },
            SubshiftConfig::Sample { text, .. } => format!("sample ({} symbols)", text.len()),
        }
    }
}

impl AnalysisConfig {
    /// The effective depth: top level wins, then the subshift document.
    pub fn effective_depth(&self) -> Option<usize> {
        self.depth.or(self.subshift.depth())
    }

    pub fn validate(&self) -> Result<usize, String> {
        let depth = self
            .effective_depth()
            .ok_or_else(|| "missing depth (top-level or in the subshift spec)".to_string())?;
        if depth == 0 {
            return Err("depth must be positive".into());
        }
        if self.weight != "default" {
            return Err(format!(
                "unknown weight {:?}; only \"default\" (1/(n+1)) is available",
                self.weight
            ));
        }
        if self.analyses.is_empty() {
            return Err("at least one analysis must be requested".into());
        }
        for s in &self.tau.strategies {
            if let TauStrategy::Named(name) = s {
                if name != "lexmin" {
                    return Err(format!("unknown tau strategy {name:?}"));
                }
            }
        }
        Ok(depth)
    }
}

/// FNV-1a fingerprint of the raw config bytes, for provenance.
pub fn fingerprint(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h = (h ^ b as u64).wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_parses() {
        let text = r#"{
            "subshift": {"type": "substitution", "rules": {"0": "1", "1": "10"}, "seed": "1"},
            "depth": 60,
            "tau": {"strategies": ["lexmin", {"seeded": 1}]},
            "analyses": ["structure", "powers"]
        }"#;
        let cfg: AnalysisConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.validate().unwrap(), 60);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{
            "subshift": {"type": "sample", "text": "abab", "depth": 1},
            "analyses": ["structure"],
            "surprise": 1
        }"#;
        assert!(serde_json::from_str::<AnalysisConfig>(text).is_err());
    }

    #[test]
    fn sturmian_variants_parse() {
        let cyc: SubshiftConfig =
            serde_json::from_str(r#"{"type": "sturmian", "cf": [1, 2], "depth": 9}"#).unwrap();
        assert_eq!(cyc.depth(), Some(9));
        let lin: SubshiftConfig =
            serde_json::from_str(r#"{"type": "sturmian", "cf": "linear"}"#).unwrap();
        assert!(matches!(
            lin,
            SubshiftConfig::Sturmian { cf: CfSpec::Rule(_), .. }
        ));
    }

    #[test]
    fn missing_depth_fails_validation() {
        let text = r#"{
            "subshift": {"type": "sample", "text": "abab"},
            "analyses": ["structure"]
        }"#;
        let cfg: AnalysisConfig = serde_json::from_str(text).unwrap();
        assert!(cfg.validate().is_err());
    }
}
