use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use matching_kneser::alternation::EdgeOrdering;
use matching_kneser::chromatic::Budget;
use matching_kneser::graph::Graph;
use matching_kneser::harness::{
    cmd_analyze, cmd_permutation, cmd_scan, cmd_schrijver, AnalysisOptions, OrderingChoice, Report,
    ScanMode, ScanOptions,
};
use matching_kneser::hypergraph::matching_graph;

/// Chromatic numbers of matching graphs KG(G, rK2) with certificates.
#[derive(Parser)]
#[command(name = "mkg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(clap::Args)]
struct Common {
    /// Edge ordering for alternation bounds: euler, identity or file:PATH.
    #[arg(long, default_value = "euler")]
    ordering: String,
    /// Node budget for the exact searches.
    #[arg(long, default_value_t = matching_kneser::chromatic::DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Write the report (or, for scan, the records) here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// χ(KG(C_n, rK2)) against n − 2r + 2.
    Schrijver {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
    /// χ(KG(K_{m,n}, rK2)) against m(n − r + 1).
    Permutation {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check χ = |E| − ex on every small graph.
    Scan {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        r: usize,
        /// Scan disjoint unions of connected graphs instead.
        #[arg(long)]
        disconnected: bool,
        /// Largest component in disconnected mode.
        #[arg(long)]
        max_component: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Full report for one graph file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
    /// DIMACS export of a graph file, or of its matching graph with --r.
    Dimacs {
        file: PathBuf,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn options(common: &Common) -> Result<AnalysisOptions> {
    let ordering = match common.ordering.as_str() {
        "euler" => OrderingChoice::Euler,
        "identity" => OrderingChoice::Identity,
        other => match other.strip_prefix("file:") {
            Some(path) => {
                let text =
                    fs::read_to_string(path).with_context(|| format!("reading ordering {path}"))?;
                let line = text
                    .lines()
                    .find(|l| !l.trim().is_empty() && !l.starts_with('#'))
                    .unwrap_or("");
                OrderingChoice::Given(
                    EdgeOrdering::from_line(line)
                        .with_context(|| format!("parsing ordering {path}"))?,
                )
            }
            None => bail!("unknown ordering {other:?}; use euler, identity or file:PATH"),
        },
    };
    Ok(AnalysisOptions {
        ordering,
        budget: Budget {
            max_nodes: common.max_nodes,
        },
        ..AnalysisOptions::default()
    })
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Table => {
            let mut out = format!("command  {}\n", report.command);
            if let Some(h) = &report.graph_sha256 {
                out += &format!("graph    {h}\n");
            }
            let mut rows = Vec::new();
            flatten("", &report.results, &mut rows);
            for (k, v) in rows {
                out += &format!("{k:<32} {v}\n");
            }
            for c in &report.claims {
                out += &format!("{:<32} {:?}\n", format!("claim {}", c.name), c.exactness);
            }
            out += &format!("{:<32} {}\n", "violations", report.violations);
            out
        }
    }
}

/// Scalar leaves only; arrays and the nested analysis are left to the JSON form.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                if k != "analysis" {
                    flatten(&key, x, rows);
                }
            }
        }
        Value::Array(_) => {}
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let report = match cli.command {
        Command::Schrijver { n, r, common } => {
            let rep = cmd_schrijver(n, r, &options(&common)?)?;
            emit(&render(&rep, common.format), common.out.as_ref())?;
            rep
        }
        Command::Permutation { m, n, r, common } => {
            let rep = cmd_permutation(m, n, r, &options(&common)?)?;
            emit(&render(&rep, common.format), common.out.as_ref())?;
            rep
        }
        Command::Analyze { file, r, common } => {
            let g = read_graph(&file)?;
            let rep = cmd_analyze(&g, r, &options(&common)?)?;
            emit(&render(&rep, common.format), common.out.as_ref())?;
            rep
        }
        Command::Scan {
            max_n,
            min_n,
            r,
            disconnected,
            max_component,
            common,
        } => {
            let mode = if disconnected {
                ScanMode::Disconnected {
                    max_component: max_component.unwrap_or(max_n),
                }
            } else {
                ScanMode::Connected
            };
            let opts = ScanOptions {
                min_n,
                max_n,
                r,
                mode,
                analysis: options(&common)?,
            };
            let out = cmd_scan(&opts)?;
            if let Some(path) = &common.out {
                let mut lines = String::new();
                for rec in &out.records {
                    lines += &serde_json::to_string(rec)?;
                    lines.push('\n');
                }
                fs::write(path, lines).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&render(&out.report, common.format), None)?;
            out.report
        }
        Command::Dimacs { file, r, out } => {
            let g = read_graph(&file)?;
            let text = match r {
                Some(r) => matching_graph(&g, r)?.graph.to_dimacs(),
                None => g.to_dimacs(),
            };
            emit(&text, out.as_ref())?;
            return Ok(0);
        }
    };
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
