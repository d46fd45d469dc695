//! `pebblekit` command-line front end.
//!
//! Exit codes: 0 success, 1 other failure (including a failed verification
//! suite), 2 usage error, 3 solver budget exhausted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pebblekit::bounds::{self, closed_form, BoundReport, BoundsError, LadderVariant, Quantity, Witness};
use pebblekit::graph::{generate, FamilySpec, Graph};
use pebblekit::pebble::{self, Distribution};
use pebblekit::solver::{Solver, SolverConfig, SolverError};
use pebblekit::tree;
use pebblekit::verify::{run_suite, Suite, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "pebblekit", version, about = "Pebbling numbers, optimal pebbling numbers and their bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// State budget per reachability query.
    #[arg(long, global = true, env = "PEBBLEKIT_MAX_STATES")]
    max_states: Option<u64>,
    /// Worker threads for candidate enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family member in the graph text format.
    Gen(FamilyArgs),
    /// Pebbling number (or rooted pebbling number with --root).
    Pi(GraphQuery),
    /// Optimal pebbling number (or least m-solvable size with --m-fold).
    PiOpt(GraphQuery),
    /// Whether a distribution reaches a root (or every vertex without --root).
    Reachable {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        pebbles: PathBuf,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, default_value_t = 1)]
        m_fold: u64,
    },
    /// Tree pebbling number from an optimal path partition.
    TreePi {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        root: Option<usize>,
    },
    /// Bound reports that apply to a graph or family.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        /// Radius for the girth bounds and construction.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
    /// Apply squishing, smoothing or leaf stripping to a distribution.
    Transform {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        pebbles: PathBuf,
        #[arg(long, value_enum)]
        op: TransformOp,
        /// Thread index (as listed by the thread finder) for squishing;
        /// every thread when omitted.
        #[arg(long)]
        thread: Option<usize>,
        /// Vertex excluded from threads when squishing.
        #[arg(long)]
        root: Option<usize>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum TransformOp {
    Squish,
    Smooth,
    StripLeaves,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct GraphInput {
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct GraphQuery {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    root: Option<usize>,
    #[arg(long, default_value_t = 1)]
    m_fold: u64,
    /// Always run the exhaustive solver, even when a formula applies.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(SolverError),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Other(e)
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::BudgetExhausted { .. } => CliError::Budget(e),
            other => CliError::Other(other.into()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Solver(s) => s.into(),
            BoundsError::Precondition(m) => CliError::Usage(m),
            other => CliError::Other(other.into()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

type Result<T> = std::result::Result<T, CliError>;

/// A command's answer: a JSON `result`, its provenance and a text rendering.
struct Output {
    result: Value,
    provenance: &'static str,
    text: String,
    /// Exit status 1 despite a well-formed answer (failed verification).
    failed: bool,
}

impl Output {
    fn new(result: impl Serialize, provenance: &'static str, text: String) -> Self {
        Output { result: serde_json::to_value(result).expect("serializable"), provenance, text, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let obj = json!({ "result": out.result, "provenance": out.provenance });
                println!("{}", serde_json::to_string_pretty(&obj).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(e)) => {
            eprintln!("budget exhausted: {e} (raise --max-states or PEBBLEKIT_MAX_STATES)");
            ExitCode::from(3)
        }
        Err(CliError::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn solver_config(cli: &Cli) -> Result<SolverConfig> {
    let mut cfg = SolverConfig { parallelism: cli.jobs, ..SolverConfig::default() };
    if let Some(m) = cli.max_states {
        cfg.max_states = m;
    }
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    Ok(cfg)
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    v.ok_or_else(|| usage(format!("family {family} needs --{flag}")))
}

fn family_spec(name: &str, n: Option<usize>, k: Option<usize>, r: Option<usize>, s: Option<usize>, m: Option<usize>) -> Result<FamilySpec> {
    let name = name.replace('-', "_");
    Ok(match name.as_str() {
        "path" => FamilySpec::Path { n: need(n, "n", &name)? },
        "cycle" => FamilySpec::Cycle { n: need(n, "n", &name)? },
        "complete" => FamilySpec::Complete { n: need(n, "n", &name)? },
        "hypercube" => FamilySpec::Hypercube { k: need(k, "k", &name)? },
        "clique_ring" => FamilySpec::CliqueRing { n: need(n, "n", &name)?, k: need(k, "k", &name)? },
        "grs" => FamilySpec::Grs { r: need(r, "r", &name)?, s: need(s, "s", &name)? },
        "hrs" => FamilySpec::Hrs { r: need(r, "r", &name)?, s: need(s, "s", &name)? },
        "ladder" => FamilySpec::Ladder { m: need(m, "m", &name)? },
        "circular_ladder" => FamilySpec::CircularLadder { m: need(m, "m", &name)? },
        "moebius" => FamilySpec::Moebius { m: need(m, "m", &name)? },
        "sierpinski_g" => FamilySpec::SierpinskiG { m: need(m, "m", &name)? },
        "sierpinski_h" => FamilySpec::SierpinskiH { m: need(m, "m", &name)? },
        other => return Err(usage(format!("unknown family {other:?}"))),
    })
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(CliError::Other)
}

/// The input graph, plus its family when given by name.
fn load_graph(input: &GraphInput) -> Result<(Graph, Option<FamilySpec>)> {
    match (&input.graph, &input.family) {
        (Some(path), _) => {
            let g = Graph::parse_text(&read_file(path)?).with_context(|| format!("parsing {}", path.display()))?;
            Ok((g, None))
        }
        (None, Some(name)) => {
            let spec = family_spec(name, input.n, input.k, input.r, input.s, input.m)?;
            let g = generate(&spec).map_err(|e| usage(e.to_string()))?;
            Ok((g, Some(spec)))
        }
        (None, None) => Err(usage("one of --graph or --family is required")),
    }
}

fn load_pebbles(path: &Path, g: &Graph) -> Result<Distribution> {
    let d = Distribution::parse_text(g.vertex_count(), &read_file(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(d)
}

fn check_root(g: &Graph, root: Option<usize>) -> Result<()> {
    match root {
        Some(r) if r >= g.vertex_count() => Err(usage(format!("root {r} out of range for {} vertices", g.vertex_count()))),
        _ => Ok(()),
    }
}

fn solver<'g>(g: &'g Graph, cfg: &SolverConfig) -> Result<Solver<'g>> {
    Solver::new(g, cfg.clone()).map_err(|e| match e {
        SolverError::NotConnected => usage("graph must be nonempty and connected"),
        other => other.into(),
    })
}

fn run(cli: &Cli) -> Result<Output> {
    let cfg = solver_config(cli)?;
    match &cli.command {
        Command::Gen(f) => {
            let spec = family_spec(&f.family, f.n, f.k, f.r, f.s, f.m)?;
            let g = generate(&spec).map_err(|e| usage(e.to_string()))?;
            let result = json!({ "family": spec.to_string(), "n": g.vertex_count(), "edges": g.edges() });
            Ok(Output::new(result, "construction", g.to_text()))
        }
        Command::Pi(q) => pi(q, &cfg),
        Command::PiOpt(q) => pi_opt(q, &cfg),
        Command::Reachable { input, pebbles, root, m_fold } => {
            let (g, _) = load_graph(input)?;
            check_root(&g, *root)?;
            let d = load_pebbles(pebbles, &g)?;
            let s = solver(&g, &cfg)?;
            match root {
                Some(r) => {
                    let res = s.reachable(&d, *r, *m_fold)?;
                    let mut text = format!("{}\n", res.reachable);
                    if let Some(w) = &res.witness {
                        for mv in w.moves() {
                            let _ = writeln!(text, "{} {}", mv.from, mv.to);
                        }
                    }
                    Ok(Output::new(res, "exhaustive", text))
                }
                None => {
                    let res = s.is_solvable(&d, *m_fold)?;
                    let mut text = format!("{}\n", res.solvable);
                    if let Some(r) = res.failed_root {
                        let _ = writeln!(text, "unreachable root: {r}");
                    }
                    Ok(Output::new(res, "exhaustive", text))
                }
            }
        }
        Command::TreePi { input, root } => {
            let (g, _) = load_graph(input)?;
            check_root(&g, *root)?;
            if !g.is_tree() {
                return Err(usage("input is not a tree"));
            }
            let (value, partition) = match root {
                Some(r) => {
                    let p = tree::rooted_partition(&g, *r).map_err(|e| usage(e.to_string()))?;
                    (tree::rooted_pebbling_number(&g, *r).map_err(|e| usage(e.to_string()))?, Some(p))
                }
                None if g.vertex_count() == 1 => (1u32.into(), None),
                None => {
                    let p = tree::optimal_partition(&g).map_err(|e| usage(e.to_string()))?;
                    (tree::tree_pebbling_number(&g).map_err(|e| usage(e.to_string()))?, Some(p))
                }
            };
            let mut text = format!("{value}\n");
            if let Some(p) = &partition {
                let _ = writeln!(text, "root {} lengths {:?}", p.root, p.length_list);
            }
            let result = json!({ "value": big_value(&value), "partition": partition });
            Ok(Output::new(result, "formula", text))
        }
        Command::Bounds { input, t } => bounds_reports(input, *t, &cfg),
        Command::Verify { suite, max_n, cases } => {
            let suite: Suite = suite.parse().map_err(|e: pebblekit::verify::UnknownSuite| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                usage(format!("{e}; known suites: {}", names.join(", ")))
            })?;
            let opts = SuiteOptions { max_n: *max_n, cases: *cases, seed: cli.seed, solver: cfg };
            let rep = run_suite(suite, &opts)?;
            let failed = !rep.passed();
            let mut out = Output::new(&rep, "exhaustive", rep.to_string());
            out.failed = failed;
            Ok(out)
        }
        Command::Transform { input, pebbles, op, thread, root } => {
            let (g, _) = load_graph(input)?;
            check_root(&g, *root)?;
            let d = load_pebbles(pebbles, &g)?;
            let out = match op {
                TransformOp::Smooth => pebble::smooth(&g, &d).context("smoothing")?,
                TransformOp::StripLeaves => pebble::strip_leaves(&g, &d).context("stripping leaves")?,
                TransformOp::Squish => {
                    let ths = pebble::threads(&g, *root);
                    let chosen: Vec<&Vec<usize>> = match thread {
                        Some(i) => vec![ths.get(*i).ok_or_else(|| usage(format!("thread {i} does not exist ({} found)", ths.len())))?],
                        None => ths.iter().collect(),
                    };
                    let mut cur = d;
                    for th in chosen {
                        cur = pebble::squish(&g, &cur, th).context("squishing")?;
                    }
                    cur
                }
            };
            let text = out.to_text();
            Ok(Output::new(out, "construction", text))
        }
    }
}

/// A JSON number when it fits in `u64`, otherwise a decimal string.
fn big_value(v: &impl ToString) -> Value {
    let s = v.to_string();
    s.parse::<u64>().map_or(Value::String(s), Value::from)
}

fn recognized_closed_form(spec: Option<&FamilySpec>, q: Quantity) -> Option<BoundReport> {
    spec.and_then(|s| closed_form(s, q).ok())
}

fn pi(q: &GraphQuery, cfg: &SolverConfig) -> Result<Output> {
    let (g, spec) = load_graph(&q.input)?;
    check_root(&g, q.root)?;
    if q.m_fold != 1 {
        return Err(usage("pi supports only --m-fold 1"));
    }
    if !q.exhaustive {
        if q.root.is_none() {
            if let Some(rep) = recognized_closed_form(spec.as_ref(), Quantity::Pebbling) {
                let v = rep.integer_value();
                let text = format!("{v}\n");
                return Ok(Output::new(json!({ "value": big_value(&v), "formula": rep.formula }), "formula", text));
            }
        }
        if g.is_tree() {
            let v = match q.root {
                Some(r) => tree::rooted_pebbling_number(&g, r),
                None => tree::tree_pebbling_number(&g),
            }
            .map_err(|e| CliError::Other(e.into()))?;
            return Ok(Output::new(json!({ "value": big_value(&v), "formula": "sum 2^l_i - m + 1" }), "formula", format!("{v}\n")));
        }
    }
    let s = solver(&g, cfg)?;
    match q.root {
        Some(r) => {
            let res = s.pebbling_number_rooted(r)?;
            let text = format!("{}\nwitness:\n{}", res.value, res.witness.to_text());
            Ok(Output::new(res, "exhaustive", text))
        }
        None => {
            let res = s.pebbling_number()?;
            let text = format!("{}\nroot: {}\nwitness:\n{}", res.value, res.root, res.witness.to_text());
            Ok(Output::new(res, "exhaustive", text))
        }
    }
}

fn pi_opt(q: &GraphQuery, cfg: &SolverConfig) -> Result<Output> {
    let (g, spec) = load_graph(&q.input)?;
    if q.root.is_some() {
        return Err(usage("pi-opt does not take --root"));
    }
    if q.m_fold == 0 {
        return Err(usage("--m-fold must be positive"));
    }
    if !q.exhaustive && q.m_fold == 1 {
        if let Some(rep) = recognized_closed_form(spec.as_ref(), Quantity::OptimalPebbling) {
            let v = rep.integer_value();
            return Ok(Output::new(json!({ "value": big_value(&v), "formula": rep.formula }), "formula", format!("{v}\n")));
        }
    }
    let s = solver(&g, cfg)?;
    let res = if q.m_fold == 1 { s.optimal_pebbling_number()? } else { s.min_m_solvable(q.m_fold)? };
    let text = format!("{}\nwitness:\n{}", res.value, res.witness.to_text());
    Ok(Output::new(res, "exhaustive", text))
}

fn bounds_reports(input: &GraphInput, t: Option<u32>, cfg: &SolverConfig) -> Result<Output> {
    let (g, spec) = load_graph(input)?;
    let mut reports: Vec<BoundReport> = Vec::new();
    for q in [Quantity::Pebbling, Quantity::OptimalPebbling] {
        if let Some(r) = recognized_closed_form(spec.as_ref(), q) {
            reports.push(r);
        }
    }
    let dist_report = |d: Distribution, formula: &str| {
        BoundReport::new(Quantity::OptimalPebbling, bounds::BoundKind::Upper, pebblekit::rational::integer(d.size()), formula)
            .with_witness(Witness::Distribution(d))
    };
    match spec {
        Some(FamilySpec::Hypercube { k }) => reports.push(bounds::hypercube_lower_bound(k as u32)),
        Some(FamilySpec::Hrs { r, s }) => {
            reports.push(bounds::clique_chain_lower_bound(r));
            if s >= 3 {
                reports.push(dist_report(bounds::hrs_distribution(r, s)?, "4 ceil(r/5)").param("r", r).param("s", s));
            }
        }
        Some(FamilySpec::Grs { r, s }) => {
            reports.push(bounds::clique_chain_lower_bound(r));
            if s >= 3 {
                reports.push(dist_report(bounds::grs_distribution(r, s)?, "4 ceil(r/5)").param("r", r).param("s", s));
            }
        }
        Some(FamilySpec::Ladder { m }) | Some(FamilySpec::CircularLadder { m }) | Some(FamilySpec::Moebius { m }) => {
            let variant = match spec {
                Some(FamilySpec::Ladder { .. }) => LadderVariant::Linear,
                Some(FamilySpec::CircularLadder { .. }) => LadderVariant::Circular,
                _ => LadderVariant::Moebius,
            };
            reports.push(dist_report(bounds::ladder_distribution(m, variant)?, "rung groups of 3 and 4").param("m", m));
        }
        Some(FamilySpec::SierpinskiH { m }) if m >= 3 => {
            let s = bounds::sierpinski_distribution(m, cfg)?;
            reports.push(dist_report(s.distribution, "2*3^(m-2)").param("m", m));
        }
        _ => {}
    }
    let n = g.vertex_count();
    reports.push(bounds::two_thirds_bound(n));
    if g.is_tree() {
        reports.push(dist_report(bounds::tree_two_thirds_distribution(&g, cfg)?, "ceil(2n/3) tree construction").param("n", n));
    }
    let k = g.min_degree();
    if k >= 1 {
        reports.push(bounds::mindeg_upper_distribution(&g)?);
    }
    if let (Some(t), Some(girth)) = (t, g.girth()) {
        if girth > 2 * t as usize && k >= 1 {
            let (simple, refined) = bounds::girth_bounds(n as u64, k as u64, t)?;
            reports.push(simple);
            if let Some(r) = refined {
                reports.push(r);
                if let Ok(d) = bounds::biggirth_distribution(&g, t as usize) {
                    reports.push(dist_report(d, "girth construction").param("t", i64::from(t)));
                }
            }
        } else {
            return Err(usage(format!("girth {girth} is below 2t+1 = {}", 2 * t + 1)));
        }
    }
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{r}");
    }
    Ok(Output::new(&reports, "formula", text))
}
