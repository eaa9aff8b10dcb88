use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use subshift_core::zeta::ZetaFamily;
use subshift_core::EdgeKind;

use subshift_lab::config::AnalysisConfig;
use subshift_lab::run;

#[derive(Parser)]
#[command(
    name = "subshift-lab",
    version,
    about = "Combinatorial analysis of minimal aperiodic subshifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the requested analyses and write a JSON report.
    Analyze {
        config: PathBuf,
        /// Exit with status 2 when the bounded-powers verdict is inconclusive.
        #[arg(long)]
        strict: bool,
        /// Report path.
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
    },
    /// Export an approximation graph as DOT.
    Graph {
        config: PathBuf,
        /// Edge kind: "priv" (privileged) or "rs" (right-special).
        #[arg(long)]
        kind: String,
        /// Truncation depth of the graph.
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value = "graph.dot")]
        out: PathBuf,
    },
    /// Evaluate zeta partial sums over an s-grid and write CSV.
    Zeta {
        config: PathBuf,
        /// Family: zeta_k | zeta_tilde_k | zeta_d | zeta_d_tilde
        /// (aliases: zeta0, zeta1, zeta2 for zeta_k with that k).
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Comma-separated s values, e.g. "1.5,2".
        #[arg(long)]
        s: String,
        /// Truncation length.
        #[arg(long, value_name = "N")]
        n: usize,
        /// Append an identity_ok column checking the spectral trace identity.
        #[arg(long)]
        check_identity: bool,
        #[arg(long, default_value = "zeta.csv")]
        out: PathBuf,
    },
}

fn load_config(path: &PathBuf) -> Result<(AnalysisConfig, Vec<u8>), String> {
    let raw = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut de = serde_json::Deserializer::from_slice(&raw);
    match serde_path_to_error::deserialize::<_, AnalysisConfig>(&mut de) {
        Ok(cfg) => Ok((cfg, raw)),
        Err(e) => Err(format!(
            "config schema violation at `{}`: {}",
            e.path(),
            e.inner()
        )),
    }
}

fn parse_family(name: &str, k: u32) -> Result<(ZetaFamily, u32), String> {
    match name.to_ascii_lowercase().as_str() {
        "zeta_k" | "zetak" => Ok((ZetaFamily::ZetaK, k)),
        "zeta_tilde_k" | "zetatildek" | "tilde" => Ok((ZetaFamily::ZetaTildeK, k)),
        "zeta_d" | "zetad" => Ok((ZetaFamily::ZetaD, k)),
        "zeta_d_tilde" | "zetadtilde" => Ok((ZetaFamily::ZetaDTilde, k)),
        "zeta0" => Ok((ZetaFamily::ZetaK, 0)),
        "zeta1" => Ok((ZetaFamily::ZetaK, 1)),
        "zeta2" => Ok((ZetaFamily::ZetaK, 2)),
        "tzeta0" | "zeta_tilde0" => Ok((ZetaFamily::ZetaTildeK, 0)),
        "tzeta1" | "zeta_tilde1" => Ok((ZetaFamily::ZetaTildeK, 1)),
        other => Err(format!("unknown zeta family {other:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze { config, strict, out } => {
            let (cfg, raw) = load_config(&config)?;
            let report = run::analyze(&cfg, &raw).map_err(|e| e.to_string())?;
            let text = run::render_report(&report);
            std::fs::write(&out, &text)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            let inconclusive = run::is_inconclusive(&report);
            println!(
                "report written to {} (certified depth {})",
                out.display(),
                report.provenance.certified_depth
            );
            if let Some(p) = &report.powers {
                println!("bounded-powers verdict: {}", p.verdict);
            }
            if strict && inconclusive {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph {
            config,
            kind,
            depth,
            out,
        } => {
            let (cfg, _) = load_config(&config)?;
            let kind = match kind.as_str() {
                "priv" | "privileged" => EdgeKind::Privileged,
                "rs" | "right-special" => EdgeKind::RightSpecial,
                other => return Err(format!("unknown graph kind {other:?} (use priv|rs)")),
            };
            let dot = run::export_graph(&cfg, kind, depth).map_err(|e| e.to_string())?;
            std::fs::write(&out, &dot)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            println!("graph written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Zeta {
            config,
            family,
            k,
            s,
            n,
            check_identity,
            out,
        } => {
            let (cfg, _) = load_config(&config)?;
            let (family, k) = parse_family(&family, k)?;
            let s_values: Vec<f64> = s
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("bad s value {t:?}: {e}"))
                })
                .collect::<Result<_, _>>()?;
            let csv = run::zeta_scan(&cfg, family, k, &s_values, n, check_identity)
                .map_err(|e| e.to_string())?;
            std::fs::write(&out, &csv)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            println!("zeta table written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
