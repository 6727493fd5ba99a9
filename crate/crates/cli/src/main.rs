mod source;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use matchram::coloured::SigmaGuard;
use matchram::compression::{distil_with, DistilOptions};
use matchram::connector::{
    cl_extremal, gnp_adversary_colouring, konig_colouring, sharp_construction,
    split_star_colouring, ConnectorGuard,
};
use matchram::ramsey::{adversarial_colouring, arrows_with, rho_with, Adversary, ArrowOptions};
use matchram::suite::{run_suite, SuiteConfig, SUITES};
use matchram::{ColouredGraph, Error, TVector};

/// Gallai-Edmonds compression and monochromatic matching arrows.
#[derive(Parser)]
#[command(name = "matchram", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every random choice; trial `i` uses `seed + i`.
    #[arg(long, env = "MATCHRAM_SEED", default_value_t = 0)]
    seed: u64,
    /// Largest vertex count (and σ-search block) the exact searches accept.
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..=64))]
    guard_n: u64,
    /// Largest edge count the exact arrow search accepts.
    #[arg(long, default_value_t = 28, value_parser = clap::value_parser!(u64).range(1..))]
    guard_edges: u64,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        /// Suite name, or `all`. May be repeated.
        #[arg(long, required = true)]
        suite: Vec<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 7)]
        max_r: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long)]
        t: Option<TVector>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a graph arrows `(t_1, ..., t_q) K_2`, or compute ρ_q.
    Arrow {
        #[arg(long)]
        graph: String,
        #[arg(long, required_unless_present = "rho")]
        t: Option<TVector>,
        /// Compute ρ_q(G) instead of a single arrow decision.
        #[arg(long, requires = "q")]
        rho: bool,
        #[arg(long)]
        q: Option<usize>,
        /// Disable the matching-capacity prune.
        #[arg(long)]
        no_prune: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a coloured-graph file.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        #[arg(long)]
        t: Option<TVector>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the distilling pipeline on a coloured graph.
    Distil {
        /// Host graph; defaults to the union of the colouring's layers.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        s: usize,
        /// Write the stage trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, overrides_with = "unchecked")]
        checked: bool,
        #[arg(long, overrides_with = "checked")]
        unchecked: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Sample graphs and adversarial colourings and tabulate colour matchings.
    Experiment {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        t: TVector,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Cl,
    Sharp,
    SplitStar,
    Konig,
    GnpAdversary,
}

/// An error that should exit with status 1 rather than 2.
#[derive(Debug)]
struct Failure(String);

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failure {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let failed = e.downcast_ref::<Failure>().is_some()
                || matches!(e.downcast_ref::<Error>(), Some(Error::Contract { .. }));
            ExitCode::from(if failed { 1 } else { 2 })
        }
    }
}

/// Returns whether the command passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            suite,
            trials,
            max_n,
            q,
            max_r,
            s,
            t,
            common,
        } => {
            let cfg = SuiteConfig {
                trials,
                seed: common.seed,
                max_n,
                q,
                max_r,
                s,
                t,
            };
            cmd_verify(&suite, &cfg, &common)
        }
        Command::Arrow {
            graph,
            t,
            rho,
            q,
            no_prune,
            common,
        } => cmd_arrow(&graph, t, rho.then_some(q).flatten(), !no_prune, &common),
        Command::Construct {
            kind,
            t,
            s,
            q,
            graph,
            common,
        } => cmd_construct(kind, t, s, q, graph.as_deref(), &common),
        Command::Distil {
            graph,
            colouring,
            s,
            trace,
            unchecked,
            common,
            ..
        } => cmd_distil(
            graph.as_deref(),
            &colouring,
            s,
            trace.as_deref(),
            !unchecked,
            &common,
        ),
        Command::Experiment {
            graph,
            t,
            s,
            trials,
            common,
        } => cmd_experiment(&graph, &t, s, trials, &common),
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_json(common: &Common, value: &Value) -> Result<()> {
    if common.format != Format::Json {
        bail!("this command only writes JSON");
    }
    emit(
        common,
        &format!("{}\n", serde_json::to_string_pretty(value)?),
    )
}

fn arrow_options(common: &Common, prune: bool) -> ArrowOptions {
    ArrowOptions {
        max_edges: common.guard_edges as usize,
        capacity_prune: prune,
        ..ArrowOptions::default()
    }
}

fn cmd_verify(names: &[String], cfg: &SuiteConfig, common: &Common) -> Result<bool> {
    let mut selected: Vec<&str> = Vec::new();
    for name in names {
        if name == "all" {
            selected.extend(SUITES);
        } else if SUITES.contains(&name.as_str()) {
            selected.push(name);
        } else {
            bail!(
                "unknown suite {name:?}; expected one of all, {}",
                SUITES.join(", ")
            );
        }
    }
    let mut reports = Vec::new();
    for name in selected {
        reports.push(run_suite(name, cfg)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    match common.format {
        Format::Json => emit_json(common, &json!({ "passed": passed, "suites": reports }))?,
        Format::Csv => {
            let mut out = String::from("suite,instances,failures,seed,pass\n");
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.suite,
                    r.instances,
                    r.failures.len(),
                    r.seed,
                    r.passed()
                ));
            }
            emit(common, &out)?;
        }
    }
    Ok(passed)
}

fn cmd_arrow(
    spec: &str,
    t: Option<TVector>,
    rho_q: Option<usize>,
    prune: bool,
    common: &Common,
) -> Result<bool> {
    let g = source::parse_graph(spec, common.seed)?;
    let opts = arrow_options(common, prune);
    let report = if let Some(q) = rho_q {
        let r = rho_with(&g, q, opts)?;
        json!({
            "claim": format!("rho_{q}({spec})"),
            "params": { "graph": spec, "q": q },
            "method": "exhaustive",
            "trials": 1,
            "seed": common.seed,
            "rho": r.value.to_string(),
            "achieving_t": r.achieving_t.entries(),
            "arrow_queries": r.arrow_queries,
        })
    } else {
        let t = t.ok_or_else(|| anyhow!("--t is required"))?;
        let v = arrows_with(&g, &t, opts)?;
        let witnesses: Vec<Value> = v
            .witness
            .iter()
            .map(|w| serde_json::from_str(&w.to_json()).expect("valid JSON"))
            .collect();
        json!({
            "claim": format!("{spec} -> ({t})K2"),
            "params": { "graph": spec, "t": t.entries(), "n": g.n(), "m": g.m() },
            "method": "exhaustive",
            "trials": 1,
            "seed": common.seed,
            "verdict": v.arrows,
            "arrows": v.arrows,
            "nodes_explored": v.nodes_explored,
            "witnesses": witnesses,
        })
    };
    emit_json(common, &report)?;
    Ok(true)
}

fn cmd_construct(
    kind: Construction,
    t: Option<TVector>,
    s: Option<usize>,
    q: Option<usize>,
    graph: Option<&str>,
    common: &Common,
) -> Result<bool> {
    let need_t = || {
        t.clone()
            .ok_or_else(|| anyhow!("this construction needs --t"))
    };
    let need_s = || s.ok_or_else(|| anyhow!("this construction needs --s"));
    let need_graph = || -> Result<matchram::Graph> {
        let spec = graph.ok_or_else(|| anyhow!("this construction needs --graph"))?;
        source::parse_graph(spec, common.seed)
    };
    let cg = match kind {
        Construction::Cl => cl_extremal(&need_t()?).1,
        Construction::Sharp => sharp_construction(&need_t()?, need_s()?)?.1,
        Construction::SplitStar => {
            let q = q.ok_or_else(|| anyhow!("split-star needs --q"))?;
            split_star_colouring(q, need_s()?)?.1
        }
        Construction::Konig => konig_colouring(&need_graph()?, &need_t()?)?,
        Construction::GnpAdversary => gnp_adversary_colouring(&need_graph()?, &need_t()?)?
            .ok_or_else(|| Failure("the dense part already reaches the largest target".into()))?,
    };
    let text = cg.to_json();
    let reread = ColouredGraph::from_json(&text, Some(cg.host()))?;
    if reread != cg {
        return Err(Failure("emitted colouring does not read back".into()).into());
    }
    if common.format != Format::Json {
        bail!("construct only writes JSON");
    }
    emit(common, &format!("{text}\n"))?;
    Ok(true)
}

fn cmd_distil(
    graph: Option<&str>,
    colouring: &std::path::Path,
    s: usize,
    trace: Option<&std::path::Path>,
    checked: bool,
    common: &Common,
) -> Result<bool> {
    let host = graph
        .map(|spec| source::parse_graph(spec, common.seed))
        .transpose()?;
    let text = fs::read_to_string(colouring)
        .with_context(|| format!("cannot read colouring {}", colouring.display()))?;
    let cg = ColouredGraph::from_json(&text, host.as_ref())?;
    let opts = DistilOptions {
        checked,
        sigma_guard: SigmaGuard {
            max_block: common.guard_n as usize,
        },
        connector_guard: ConnectorGuard {
            max_n: common.guard_n as usize,
            max_s: 8,
        },
    };
    let result = distil_with(&cg, s, &opts)?;
    if let Some(path) = trace {
        fs::write(path, result.trace_jsonl())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    emit_json(common, &result.summary_json())?;
    Ok(true)
}

struct TrialRow {
    n: usize,
    nus: Vec<usize>,
    adversary: &'static str,
}

fn cmd_experiment(
    spec: &str,
    t: &TVector,
    s: usize,
    trials: usize,
    common: &Common,
) -> Result<bool> {
    let random_graph = source::is_random(spec);
    let fixed = if random_graph {
        None
    } else {
        Some(source::parse_graph(spec, common.seed)?)
    };
    let rows: Vec<TrialRow> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<TrialRow> {
            let seed = common.seed.wrapping_add(trial as u64);
            let g = match &fixed {
                Some(g) => g.clone(),
                None => source::parse_graph(spec, seed)?,
            };
            let kind = Adversary::ALL[trial % Adversary::ALL.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cg = adversarial_colouring(&g, t, kind, &mut rng)?;
            Ok(TrialRow {
                n: g.n(),
                nus: cg.nu_vector(),
                adversary: kind.name(),
            })
        })
        .collect::<Result<_>>()?;

    let t_label = t
        .entries()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let arrowed = rows
        .iter()
        .filter(|r| r.nus.iter().zip(t.entries()).any(|(nu, tj)| nu >= tj))
        .count();
    match common.format {
        Format::Csv => {
            let mut out = String::from("trial,n,s,q,t,colour,nu,threshold,pass\n");
            for (trial, row) in rows.iter().enumerate() {
                for (j, (&nu, &tj)) in row.nus.iter().zip(t.entries()).enumerate() {
                    out.push_str(&format!(
                        "{trial},{},{s},{},{t_label},{},{nu},{tj},{}\n",
                        row.n,
                        t.q(),
                        j + 1,
                        nu >= tj
                    ));
                }
            }
            emit(common, &out)?;
        }
        Format::Json => {
            let per_trial: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(trial, r)| {
                    json!({
                        "trial": trial,
                        "n": r.n,
                        "adversary": r.adversary,
                        "nu": r.nus,
                        "reached": r.nus.iter().zip(t.entries()).any(|(nu, tj)| nu >= tj),
                    })
                })
                .collect();
            let max_ratio = rows
                .iter()
                .map(|r| {
                    r.nus
                        .iter()
                        .zip(t.entries())
                        .map(|(&nu, &tj)| nu as f64 / tj as f64)
                        .fold(0.0, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            emit_json(
                common,
                &json!({
                    "claim": format!("sampled colourings of {spec} reach ({t})K2"),
                    "params": { "graph": spec, "t": t.entries(), "s": s, "q": t.q() },
                    "method": "sampled",
                    "trials": trials,
                    "seed": common.seed,
                    "verdict": arrowed == trials,
                    "reached": arrowed,
                    "min_best_ratio": if trials == 0 { Value::Null } else { json!(max_ratio) },
                    "witnesses": per_trial
                        .iter()
                        .filter(|r| r["reached"] == json!(false))
                        .cloned()
                        .collect::<Vec<_>>(),
                    "per_trial": per_trial,
                }),
            )?;
        }
    }
    Ok(true)
}
