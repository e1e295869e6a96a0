use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dgreedy::bounds::{adversarial_search, analyze_graph, canonical_upper_instance_with, sibling_lower_instance_with, SearchMode};
use dgreedy::design::{curve_to_csv, efficiency_curve, optimal_structure};
use dgreedy::greedy::{
    brute_force_opt, run_distributed_greedy, run_generalized_greedy, GreedyOutcome, TiePolicy,
};
use dgreedy::rational::format as fmt;
use dgreedy::submodular::{audit_properties, parse_instance, Instance};
use dgreedy::verify::{run_checks, VerifyOptions};
use dgreedy::{ErrorKind, Execution, InfoGraph};

/// The audited objective violates one of the required properties.
const EXIT_PROPERTY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_CONSISTENCY: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(name = "dgreedy", version, about = "Distributed greedy under information graphs")]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tie {
    Worst,
    First,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Graph numbers, the Sibling Property and the efficiency bracket.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run greedy on an instance and compare with the optimum.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "worst")]
        tie: Tie,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include each agent's observed set, marginal gains and argmax.
        #[arg(long)]
        trace: bool,
    },
    /// Build the worst-case instances for a graph and search for worse ones.
    WorstCase {
        #[arg(long)]
        graph: PathBuf,
        /// Random instances to try besides the constructed ones.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory to write the constructed instance files into.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Best graph on n agents within an edge budget.
    Design {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Guaranteed efficiency of the best design for every edge budget.
    Curve {
        #[arg(long)]
        n: usize,
    },
    /// Replay the bundled fixtures and invariant suites.
    Verify {
        /// Random cases per property suite.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that an instance's objective is normalized, monotone and submodular.
    Audit {
        #[arg(long)]
        instance: PathBuf,
    },
}

/// Rendered output plus the exit status it should produce.
struct Rendered {
    text: String,
    status: u8,
}

impl From<String> for Rendered {
    fn from(text: String) -> Self {
        Rendered { text, status: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(cli.output.as_deref(), &out.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<dgreedy::Error>() {
            return match err.kind() {
                ErrorKind::Input => EXIT_INPUT,
                ErrorKind::Guard => EXIT_GUARD,
                ErrorKind::Consistency => EXIT_CONSISTENCY,
                ErrorKind::Io => EXIT_IO,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_INPUT
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<InfoGraph> {
    InfoGraph::from_json(&read(path)?).with_context(|| format!("in graph file {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("in instance file {}", path.display()))
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!(dgreedy::Error::Input(format!(
            "{command} does not support --format {}",
            f.to_possible_value().expect("no skipped variants").get_name()
        )));
    }
    Ok(f)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("result serializes");
    s.push('\n');
    s
}

fn labels(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Sets that already carry 1-based labels.
fn sets(sets: &[Vec<usize>]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: &Cli) -> Result<Rendered> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    use Format::*;
    match &cli.command {
        Command::Analyze { graph } => {
            let format = pick(cli.format, Table, &[Json, Dot, Table], "analyze")?;
            let g = load_graph(graph)?;
            let a = analyze_graph(&g)?;
            Ok(match format {
                Json => to_json(&a),
                Dot => {
                    let cover: Vec<Vec<usize>> =
                        a.min_clique_cover.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect();
                    g.to_dot(&cover)
                }
                _ => {
                    let b = &a.bounds;
                    let mut s = String::new();
                    writeln!(s, "agents             {}", a.graph.n)?;
                    writeln!(s, "edges              {}", g.edge_count())?;
                    writeln!(s, "α                  {}", a.alpha)?;
                    writeln!(s, "k                  {}", a.clique_cover)?;
                    writeln!(s, "ω                  {}", a.omega)?;
                    writeln!(s, "α*                 {}", fmt(&a.alpha_star))?;
                    writeln!(s, "k*                 {}", fmt(&a.k_star))?;
                    writeln!(
                        s,
                        "LP point           ({})",
                        a.independence_point.iter().map(fmt).collect::<Vec<_>>().join(", ")
                    )?;
                    writeln!(s, "maximal cliques    {}", sets(&a.maximal_cliques))?;
                    writeln!(s, "sibling            {}", a.sibling)?;
                    if let Some(w) = a.sibling_witnesses.iter().find(|w| w.clean).or(a.sibling_witnesses.first()) {
                        writeln!(
                            s,
                            "witness            J = {}, i = {}, w = {}",
                            sets(std::slice::from_ref(&w.independent_set)),
                            w.observed,
                            w.observer
                        )?;
                    }
                    writeln!(
                        s,
                        "bounds             [{}, {}]{}{}",
                        fmt(&b.lower),
                        fmt(&b.upper),
                        if b.lower_tight { " lower tight" } else { "" },
                        if b.upper_tight { " upper tight" } else { "" }
                    )?;
                    if let Some(su) = b.sibling_upper {
                        writeln!(s, "sibling instance   {}", fmt(&su))?;
                    }
                    s
                }
            }
            .into())
        }
        Command::Solve {
            instance,
            graph,
            tie,
            seed,
            trace,
        } => {
            let format = pick(cli.format, Table, &[Json, Table], "solve")?;
            let inst = load_instance(instance)?;
            let g = load_graph(graph)?;
            let policy = match tie {
                Tie::Worst => TiePolicy::WorstCase,
                Tie::First => TiePolicy::FirstIndex,
                Tie::Random => TiePolicy::SeededRandom(*seed),
            };
            let opt = brute_force_opt(&inst, exec)?;
            let full = run_distributed_greedy(&inst, policy)?;
            let partial = run_generalized_greedy(&inst, &g, policy)?;
            let gamma = (!num_is_zero(&opt.value)).then(|| partial.value / opt.value);
            Ok(match format {
                Json => {
                    let strip = |o: &GreedyOutcome| {
                        let mut v = serde_json::to_value(o).expect("outcome serializes");
                        if !trace {
                            v.as_object_mut().expect("object").remove("trace");
                        }
                        v
                    };
                    to_json(&json!({
                        "tie": tie_name(*tie),
                        "seed": seed,
                        "optimal": opt,
                        "distributed_greedy": strip(&full),
                        "generalized_distributed_greedy": strip(&partial),
                        "gamma": gamma.as_ref().map(fmt),
                    }))
                }
                _ => {
                    let mut s = String::new();
                    writeln!(s, "# tie policy: {}, seed: {seed}", tie_name(*tie))?;
                    writeln!(s, "{:<34} {:>8}  profile", "", "value")?;
                    let row = |s: &mut String, name: &str, value: &dgreedy::Rational, profile: &[usize]| {
                        let p: Vec<String> = profile.iter().map(|k| (k + 1).to_string()).collect();
                        writeln!(s, "{name:<34} {:>8}  ({})", fmt(value), p.join(", "))
                    };
                    row(&mut s, "Optimal", &opt.value, &opt.profile)?;
                    row(&mut s, "Distributed Greedy", &full.value, &full.profile)?;
                    row(&mut s, "Generalized Distributed Greedy", &partial.value, &partial.profile)?;
                    match &gamma {
                        Some(g) => writeln!(s, "efficiency {}", fmt(g))?,
                        None => writeln!(s, "efficiency undefined (optimal value is 0)")?,
                    }
                    if *trace {
                        writeln!(s)?;
                        writeln!(s, "agent  observed      gains                 argmax   chosen")?;
                        for step in &partial.trace {
                            writeln!(
                                s,
                                "{:<6} {:<13} {:<21} {:<8} {}",
                                step.agent + 1,
                                labels(&step.observed),
                                step.gains.iter().map(fmt).collect::<Vec<_>>().join(" "),
                                step.argmax.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(","),
                                step.chosen + 1
                            )?;
                        }
                    }
                    s
                }
            }
            .into())
        }
        Command::WorstCase {
            graph,
            budget,
            seed,
            out_dir,
        } => {
            let format = pick(cli.format, Table, &[Json, Table], "worst-case")?;
            let g = load_graph(graph)?;
            let canonical = canonical_upper_instance_with(&g, exec)?;
            let analysis = analyze_graph(&g)?;
            let sibling = if analysis.sibling {
                Some(sibling_lower_instance_with(&g, exec)?)
            } else {
                None
            };
            let search = adversarial_search(&g, SearchMode::Sampled { budget: *budget }, *seed, exec)?;
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let write = |name: &str, inst: &Instance| -> Result<()> {
                    let path = dir.join(name);
                    fs::write(&path, inst.to_json() + "\n").with_context(|| format!("writing {}", path.display()))
                };
                write("canonical_upper.instance.json", &canonical.instance)?;
                if let Some(s) = &sibling {
                    write("sibling_lower.instance.json", &s.instance)?;
                }
                write("search_minimum.instance.json", &search.witness)?;
            }
            Ok(match format {
                Json => to_json(&json!({
                    "seed": seed,
                    "bounds": analysis.bounds,
                    "canonical_upper": canonical,
                    "sibling_lower": sibling,
                    "search": search,
                })),
                _ => {
                    let mut s = String::new();
                    writeln!(s, "# seed: {seed}, sampled instances: {budget}")?;
                    writeln!(
                        s,
                        "bounds [{}, {}]",
                        fmt(&analysis.bounds.lower),
                        fmt(&analysis.bounds.upper)
                    )?;
                    writeln!(s, "{:<22} {:>10} {:>10}  detail", "instance", "predicted", "realized")?;
                    for w in std::iter::once(&canonical).chain(sibling.as_ref()) {
                        let name = match w.construction {
                            dgreedy::bounds::Construction::CanonicalUpper => "canonical upper",
                            dgreedy::bounds::Construction::SiblingLower => "sibling lower",
                            dgreedy::bounds::Construction::Handcrafted => "handcrafted",
                        };
                        writeln!(
                            s,
                            "{name:<22} {:>10} {:>10}  {}{}",
                            fmt(&w.predicted_gamma),
                            fmt(&w.realized.gamma),
                            w.detail,
                            if w.certified() { "" } else { " (not certified)" }
                        )?;
                    }
                    writeln!(
                        s,
                        "search minimum {} from {} ({} evaluated, {} degenerate)",
                        fmt(&search.min_gamma),
                        search.witness_source,
                        search.evaluated,
                        search.degenerate
                    )?;
                    s
                }
            }
            .into())
        }
        Command::Design { n, m } => {
            let format = pick(cli.format, Table, &[Json, Dot, Table], "design")?;
            let d = optimal_structure(*n, *m)?;
            Ok(match format {
                Json => to_json(&d),
                Dot => d.to_dot(),
                _ => {
                    let mut s = String::new();
                    writeln!(s, "agents      {}", d.n)?;
                    writeln!(s, "budget      {}", d.budget)?;
                    writeln!(s, "edges used  {}", d.m_used)?;
                    writeln!(s, "design      {}", d.case_tag.tag())?;
                    writeln!(s, "α           {}", d.r)?;
                    writeln!(s, "guaranteed  {}", fmt(&d.gamma_guaranteed))?;
                    if !d.partition.is_empty() {
                        writeln!(s, "cliques     {}", d.partition.iter().map(|c| labels(c)).collect::<Vec<_>>().join(" "))?;
                    }
                    let edges: Vec<String> = d.graph.edges().map(|(a, b)| format!("{}->{}", a + 1, b + 1)).collect();
                    writeln!(s, "edge list   {}", edges.join(" "))?;
                    s
                }
            }
            .into())
        }
        Command::Curve { n } => {
            let format = pick(cli.format, Csv, &[Json, Csv, Table], "curve")?;
            let curve = efficiency_curve(*n, exec)?;
            Ok(match format {
                Json => to_json(&curve),
                Csv => curve_to_csv(&curve),
                _ => {
                    let mut s = String::new();
                    writeln!(s, "# guaranteed worst-case efficiency of the best design, not measured performance")?;
                    writeln!(s, "{:>5} {:>8} {:>4}  design", "m", "γ", "α")?;
                    for p in &curve {
                        writeln!(s, "{:>5} {:>8} {:>4}  {}", p.m, fmt(&p.gamma), p.r, p.case_tag.tag())?;
                    }
                    s
                }
            }
            .into())
        }
        Command::Verify { budget, seed } => {
            let format = pick(cli.format, Table, &[Json, Table], "verify")?;
            let opts = VerifyOptions {
                seed: *seed,
                samples: *budget,
                exec,
                ..VerifyOptions::default()
            };
            let outcomes = run_checks(&opts);
            let failed = outcomes.iter().any(|o| !o.passed);
            let text = match format {
                Json => to_json(&json!({ "seed": seed, "budget": budget, "checks": outcomes })),
                _ => {
                    let mut s = String::new();
                    writeln!(s, "# seed: {seed}, samples per suite: {budget}")?;
                    for o in &outcomes {
                        writeln!(s, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail)?;
                    }
                    let passed = outcomes.iter().filter(|o| o.passed).count();
                    writeln!(s, "{passed}/{} checks passed", outcomes.len())?;
                    s
                }
            };
            Ok(Rendered {
                text,
                status: if failed { EXIT_CONSISTENCY } else { 0 },
            })
        }
        Command::Audit { instance } => {
            let format = pick(cli.format, Table, &[Json, Table], "audit")?;
            let inst = load_instance(instance)?;
            let report = audit_properties(inst.oracle())?;
            let text = match format {
                Json => to_json(&report),
                _ => {
                    let mut s = String::new();
                    writeln!(s, "ground set  {}", report.ground_size)?;
                    writeln!(s, "normalized  {}", report.normalized)?;
                    writeln!(s, "monotone    {}", report.monotone)?;
                    writeln!(s, "submodular  {}", report.submodular)?;
                    for w in &report.witnesses {
                        writeln!(s, "witness     {}", serde_json::to_string(w)?)?;
                    }
                    s
                }
            };
            Ok(Rendered {
                text,
                status: if report.passed() { 0 } else { EXIT_PROPERTY },
            })
        }
    }
}

fn tie_name(tie: Tie) -> &'static str {
    match tie {
        Tie::Worst => "worst",
        Tie::First => "first",
        Tie::Random => "random",
    }
}

fn num_is_zero(r: &dgreedy::Rational) -> bool {
    *r.numer() == 0
}
