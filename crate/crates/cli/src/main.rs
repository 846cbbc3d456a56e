use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypermatch::absorption::{sample_absorbing_family, AbsorptionConfig};
use hypermatch::constructions::{
    build_h, build_hk, build_hprime, build_hstar, counterexample6, ExtremalTemplate, TemplateRule,
};
use hypermatch::engine::{greedy_matching, local_search, max_matching_exact, SearchBudget};
use hypermatch::format::{parse_hypergraph, parse_matching, write_hypergraph};
use hypermatch::solver::{
    best_template, random_instance, solve_perfect_matching, threshold_sweep, verify_thresholds, Certificate,
    SolveStatus, SolverConfig, SolverMode,
};
use hypermatch::structure::{classify_good_vertices, closeness, matching_graph};
use hypermatch::{KPartiteHypergraph, VertexRef};

#[derive(Parser)]
#[command(name = "hypermatch", version, about = "Perfect matchings in k-partite k-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "H")]
    H,
    #[value(name = "Hk")]
    Hk,
    #[value(name = "Hstar")]
    Hstar,
    #[value(name = "Hprime")]
    Hprime,
    #[value(name = "counterexample6")]
    Counterexample6,
    #[value(name = "complete")]
    Complete,
    #[value(name = "random")]
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Exact,
    Greedy,
    Local,
    Auto,
    Heuristic,
    Extremal,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated hypergraph in text format v1.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        profile: Option<Vec<usize>>,
        /// Minimum vertex degree for `random`.
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Search for a perfect or maximum matching.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: SolveMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Closeness to an H' template and per-vertex goodness.
    Analyze {
        file: PathBuf,
        /// `Hprime:d1,d2,d3` or `H:d1,...,dk`; defaults to the closest H'.
        #[arg(long)]
        template: Option<String>,
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
        #[arg(long, default_value_t = 0.02)]
        epsilon: f64,
    },
    /// Edge-type histogram of the matching graph for a transversal S.
    Mgraph {
        file: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        /// Uncovered transversal `x1,x2,x3`.
        #[arg(long, value_delimiter = ',')]
        s: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample and verify an absorbing family.
    Absorb {
        file: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        gamma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        strict: bool,
    },
    /// Perfect-matching frequency of random instances over a δ₁ grid.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tightness table of the threshold constructions.
    VerifyThresholds {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_graph(path: &Path) -> Result<KPartiteHypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_hypergraph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> Result<()> {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(v)?))
}

fn profile3(profile: &Option<Vec<usize>>) -> Result<[usize; 3]> {
    match profile.as_deref() {
        Some(&[a, b, c]) => Ok([a, b, c]),
        Some(p) => bail!("expected three profile entries, got {}", p.len()),
        None => bail!("--profile is required"),
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    n: usize,
    k: usize,
    m: Option<usize>,
    profile: &Option<Vec<usize>>,
    target: Option<usize>,
    seed: u64,
) -> Result<KPartiteHypergraph> {
    let need_m = || m.context("--m is required");
    Ok(match family {
        Family::H => build_h(n, profile.as_deref().context("--profile is required")?)?,
        Family::Hk => build_hk(k, n, need_m()?)?,
        Family::Hstar => build_hstar(k, n, need_m()?)?,
        Family::Hprime => build_hprime(n, profile3(profile)?)?,
        Family::Counterexample6 => counterexample6(),
        Family::Complete => KPartiteHypergraph::complete(k, n)?,
        Family::Random => {
            if k != 3 {
                bail!("random instances are 3-partite");
            }
            random_instance(n, target.context("--target is required")?, seed)?
        }
    })
}

fn solve(h: &KPartiteHypergraph, mode: SolveMode, seed: u64, node_limit: Option<u64>) -> Result<Value> {
    let equal = h.uniform_class_size().is_some();
    let simple = |m: hypermatch::Matching, optimal: bool, extra: Value| {
        let status = if m.is_perfect() && equal {
            SolveStatus::Perfect
        } else if !equal || optimal {
            SolveStatus::NoPerfect
        } else {
            SolveStatus::Incomplete
        };
        let mut v = json!({
            "version": 1,
            "status": status,
            "matching_size": m.len(),
            "matching": m,
            "optimal": optimal || (m.is_perfect() && equal),
        });
        if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
            a.extend(b);
        }
        v
    };
    let cfg = |mode| SolverConfig {
        seed,
        mode,
        exact_node_limit: node_limit.unwrap_or(SolverConfig::default().exact_node_limit),
        ..SolverConfig::default()
    };
    Ok(match mode {
        SolveMode::Exact => {
            let budget = node_limit.map_or_else(SearchBudget::default, SearchBudget::with_node_limit);
            let r = max_matching_exact(h, &budget);
            simple(r.matching, r.optimal, json!({ "nodes": r.nodes }))
        }
        SolveMode::Greedy => simple(greedy_matching(h, seed), false, json!({})),
        SolveMode::Local => simple(local_search(h, seed, 2)?, false, json!({})),
        SolveMode::Auto | SolveMode::Heuristic | SolveMode::Extremal => {
            let mode = match mode {
                SolveMode::Heuristic => SolverMode::HeuristicOnly,
                SolveMode::Extremal => SolverMode::ExtremalOnly,
                _ => SolverMode::Auto,
            };
            let out = solve_perfect_matching(h, &cfg(mode))?;
            let optimal = out.status == SolveStatus::Perfect
                || matches!(out.certificate, Certificate::ExhaustedSearch { .. });
            json!({
                "version": 1,
                "status": out.status,
                "matching_size": out.matching.len(),
                "matching": out.matching,
                "optimal": optimal,
                "trace": out.trace,
                "certificate": out.certificate,
            })
        }
    })
}

fn parse_template(text: &str, n: usize) -> Result<ExtremalTemplate> {
    let (name, rest) = text.split_once(':').context("template must look like Hprime:d1,d2,d3")?;
    let profile: Vec<usize> = rest
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .context("template profile must be comma-separated integers")?;
    let rule = match name {
        "Hprime" => TemplateRule::UuwUww,
        "H" => TemplateRule::AllMeetingW,
        other => bail!("unknown template family {other}"),
    };
    Ok(ExtremalTemplate::new(n, &profile, rule)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen {
            family,
            n,
            k,
            m,
            profile,
            target,
            seed,
            out,
        } => {
            let h = generate(family, n, k, m, &profile, target, seed)?;
            emit(out.as_deref(), &write_hypergraph(&h))
        }
        Cmd::Solve {
            file,
            mode,
            seed,
            node_limit,
        } => {
            let h = read_graph(&file)?;
            emit_json(None, &solve(&h, mode, seed, node_limit)?)
        }
        Cmd::Analyze {
            file,
            template,
            alpha,
            epsilon,
        } => {
            let h = read_graph(&file)?;
            let n = h.uniform_class_size().context("analysis needs equal class sizes")?;
            let t = match template {
                Some(s) => parse_template(&s, n)?,
                None => best_template(&h)?.context("no H' template applies")?.template,
            };
            let c = closeness(&h, &t)?;
            let g = classify_good_vertices(&h, &t, alpha)?;
            emit_json(
                None,
                &json!({
                    "version": 1,
                    "closeness": c,
                    "close": c.epsilon <= epsilon,
                    "epsilon": epsilon,
                    "goodness": g,
                }),
            )
        }
        Cmd::Mgraph { file, matching, s, out } => {
            if s.len() != 3 {
                bail!("--s needs exactly 3 indices, got {}", s.len());
            }
            let h = read_graph(&file)?;
            let text = fs::read_to_string(&matching).with_context(|| format!("reading {}", matching.display()))?;
            let m = parse_matching(&text, &h)?;
            let s = [VertexRef::new(0, s[0]), VertexRef::new(1, s[1]), VertexRef::new(2, s[2])];
            let g = matching_graph(&h, &m, &s, false)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["a1", "a2", "a3", "count"])?;
            for (t, c) in &g.counts {
                w.write_record([t.0[0].to_string(), t.0[1].to_string(), t.0[2].to_string(), c.to_string()])?;
            }
            emit(out.as_deref(), &String::from_utf8(w.into_inner()?)?)
        }
        Cmd::Absorb {
            file,
            gamma,
            seed,
            strict,
        } => {
            let h = read_graph(&file)?;
            let cfg = AbsorptionConfig {
                gamma,
                seed,
                strict,
                ..AbsorptionConfig::default()
            };
            let out = sample_absorbing_family(&h, &cfg)?;
            let mut v = serde_json::to_value(&out.family)?;
            if let Value::Object(o) = &mut v {
                o.insert("version".into(), json!(1));
                o.insert("success".into(), json!(out.success));
                o.insert("failure".into(), json!(out.failure));
            }
            emit_json(None, &v)
        }
        Cmd::Sweep {
            n,
            trials,
            grid,
            seed,
            out,
        } => {
            let report = threshold_sweep(n, trials, &grid, seed, &SolverConfig::default())?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &report.rows {
                w.serialize(row)?;
            }
            emit(out.as_deref(), &String::from_utf8(w.into_inner()?)?)
        }
        Cmd::VerifyThresholds { n_max, out } => {
            let table = verify_thresholds(n_max)?;
            emit_json(out.as_deref(), &serde_json::to_value(&table)?)
        }
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(2);
    }
}
