use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dyncover::harness::{
    aggregate, gen_bipartite_reconfig, gen_pd_adversarial, gen_random, read_csv, run_experiment, write_gnuplot,
    Algo, ExperimentConfig, OracleMode, WorkloadSpec,
};
use dyncover::io::{load_instance, save_instance, Instance};
use dyncover::static_solvers::{
    dual_lower_bound, exact_cover_default, greedy_cover, harmonic, primal_dual_cover, ElementWeights, PdMode,
};
use dyncover::transform::Mode;
use dyncover::{CoverSolution, SetSystem, UniverseState, UpdateStep};

#[derive(Parser)]
#[command(name = "dyncover", version, about = "Dynamic set cover with bounded worst-case recourse")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Replay a trace through a dynamic algorithm, optionally wrapped by the transformation.
    Run(RunArgs),
    /// Solve the state reached at the end of the trace with a static algorithm.
    SolveStatic(SolveArgs),
    /// Validate an instance file and its trace.
    Check(CheckArgs),
    /// Aggregate a per-step CSV written by `run`.
    Report(ReportArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum Generator {
    Random,
    PdAdversarial,
    Bipartite,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "random")]
    generator: Generator,
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    f: usize,
    #[arg(long = "C", default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 500)]
    steps: usize,
    #[arg(long, default_value_t = 0.6)]
    insert_ratio: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; `.json` selects the JSON format. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum TransformArg {
    None,
    Lf,
    Hf,
}

#[derive(Copy, Clone, ValueEnum)]
enum AlgoArg {
    LevelGreedy,
    LazyPd,
    Recompute,
}

#[derive(Copy, Clone, ValueEnum)]
enum OracleArg {
    Auto,
    Exact,
    Dual,
    Off,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "level-greedy")]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "none")]
    transform: TransformArg,
    /// Add a cheapest containing set on every insertion, even if covered.
    #[arg(long)]
    strict_naive: bool,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long = "in")]
    input: PathBuf,
    /// Run structural audits every k steps; 0 disables them.
    #[arg(long, default_value_t = 1)]
    audit_every: u64,
    #[arg(long, value_enum, default_value = "auto")]
    oracle: OracleArg,
    /// Seed recorded in the summary.
    #[arg(long)]
    seed: Option<u64>,
    /// Per-step CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary JSON; printed to stdout when omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Gnuplot data file.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum StaticAlgo {
    Greedy,
    PdAll,
    PdFirst,
    Exact,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "greedy")]
    algo: StaticAlgo,
    #[arg(long = "in")]
    input: PathBuf,
    /// Replay only the first k steps. An instance without a trace is solved
    /// with every element alive.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// Per-step CSV written by `run --out`.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::SolveStatic(a) => solve_static(a),
        Command::Check(a) => check(a),
        Command::Report(a) => report(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn writer(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit_json(path: Option<&Path>, value: &Value) -> CliResult<()> {
    let mut w = writer(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn gen(a: GenArgs) -> CliResult<bool> {
    let (system, trace) = match a.generator {
        Generator::Random => gen_random(&WorkloadSpec {
            n: a.n,
            m: a.m,
            f: a.f,
            c: a.c,
            steps: a.steps,
            insert_ratio: a.insert_ratio,
            seed: a.seed,
        })?,
        Generator::PdAdversarial => gen_pd_adversarial(a.n, a.f)?,
        Generator::Bipartite => {
            let (system, _, _) = gen_bipartite_reconfig(a.n)?;
            let trace = system.elements().map(UpdateStep::insert).collect();
            (system, trace)
        }
    };
    match &a.out {
        Some(p) if p.extension().is_some_and(|x| x == "json") => save_instance(p, &system, &trace)?,
        out => {
            let mut w = writer(out.as_deref())?;
            writeln!(w, "# generator seed {}", a.seed)?;
            w.write_all(dyncover::io::to_text(&system, &trace).as_bytes())?;
            w.flush()?;
        }
    }
    Ok(true)
}

fn run(a: RunArgs) -> CliResult<bool> {
    let Instance { system, trace } = load_instance(&a.input)?;
    let config = ExperimentConfig {
        algo: match a.algo {
            AlgoArg::LevelGreedy => Algo::LevelGreedy,
            AlgoArg::LazyPd => Algo::LazyPd,
            AlgoArg::Recompute => Algo::Recompute,
        },
        transform: match a.transform {
            TransformArg::None => None,
            TransformArg::Lf => Some(Mode::Lf),
            TransformArg::Hf => Some(Mode::Hf),
        },
        strict_naive: a.strict_naive,
        epsilon: a.epsilon,
        audit_every: a.audit_every,
        oracle: match a.oracle {
            OracleArg::Auto => OracleMode::Auto,
            OracleArg::Exact => OracleMode::Exact,
            OracleArg::Dual => OracleMode::Dual,
            OracleArg::Off => OracleMode::Off,
        },
        seed: a.seed,
        keep_rows: a.out.is_some() || a.gnuplot.is_some(),
    };
    let result = run_experiment(&system, &trace, &config)?;
    if let Some(p) = &a.out {
        result.write_csv(BufWriter::new(File::create(p)?))?;
    }
    if let Some(p) = &a.gnuplot {
        write_gnuplot(&result.rows, BufWriter::new(File::create(p)?))?;
    }
    emit_json(a.summary.as_deref(), &serde_json::to_value(&result.summary)?)?;
    for f in result.summary.failure_samples.iter().take(5) {
        eprintln!("step {}: {} violated: {}", f.step, f.property, f.detail);
    }
    Ok(result.passed())
}

fn final_state(system: &SetSystem, trace: &[UpdateStep], steps: Option<usize>) -> CliResult<UniverseState> {
    if trace.is_empty() {
        return Ok(UniverseState::with_alive(system, system.elements())?);
    }
    let mut u = UniverseState::new(system.num_elements(), system.capacity());
    for &step in &trace[..steps.unwrap_or(trace.len()).min(trace.len())] {
        u.apply(step)?;
    }
    Ok(u)
}

fn weights_json(system: &SetSystem, w: &ElementWeights) -> Value {
    w.nonzero()
        .map(|(e, v)| (system.element_label(e).to_string(), json!(v)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn solve_static(a: SolveArgs) -> CliResult<bool> {
    let Instance { system, trace } = load_instance(&a.input)?;
    let u = final_state(&system, &trace, a.steps)?;
    let h_n = harmonic(system.capacity());
    let (name, cover, extra, lower_bound): (_, CoverSolution, _, f64) = match a.algo {
        StaticAlgo::Greedy => {
            let (x, q) = greedy_cover(&system, &u)?;
            let lb = q.total() / h_n;
            ("greedy", x, json!({ "charges": weights_json(&system, &q), "h_n": h_n }), lb)
        }
        StaticAlgo::PdAll | StaticAlgo::PdFirst => {
            let (mode, name) = match a.algo {
                StaticAlgo::PdAll => (PdMode::AllTight, "pd-all"),
                _ => (PdMode::FirstTight, "pd-first"),
            };
            let (x, y) = primal_dual_cover(&system, &u, mode)?;
            let lb = dual_lower_bound(&system, &y)?;
            (name, x, json!({ "duals": weights_json(&system, &y) }), lb)
        }
        StaticAlgo::Exact => {
            let x = exact_cover_default(&system, &u)?;
            let cost = x.cost();
            ("exact", x, json!({}), cost)
        }
    };
    let mut report = json!({
        "algo": name,
        "alive": u.num_alive(),
        "cover": cover.iter().map(|s| system.set_label(s)).collect::<Vec<_>>(),
        "cost": cover.cost(),
        "lower_bound": lower_bound,
        "feasible": dyncover::is_cover(&system, &u, &cover),
    });
    if let (Value::Object(r), Value::Object(x)) = (&mut report, extra) {
        r.extend(x);
    }
    emit_json(a.out.as_deref(), &report)?;
    Ok(true)
}

fn check(a: CheckArgs) -> CliResult<bool> {
    let Instance { system, trace } = load_instance(&a.input)?;
    let mut u = UniverseState::new(system.num_elements(), system.capacity());
    let mut max_alive = 0;
    let mut inserts = 0;
    for (i, &step) in trace.iter().enumerate() {
        if let Err(e) = u.apply(step) {
            eprintln!("trace step {}: {e}", i + 1);
            return Ok(false);
        }
        if step.kind == dyncover::UpdateKind::Insert {
            inserts += 1;
        }
        max_alive = max_alive.max(u.num_alive());
    }
    emit_json(
        None,
        &json!({
            "n": system.capacity(),
            "C": system.aspect_ratio(),
            "m": system.num_sets(),
            "elements": system.num_elements(),
            "f": system.frequency(),
            "steps": trace.len(),
            "inserts": inserts,
            "deletes": trace.len() - inserts,
            "max_alive": max_alive,
            "valid": true,
        }),
    )?;
    Ok(true)
}

fn report(a: ReportArgs) -> CliResult<bool> {
    let rows = read_csv(File::open(&a.input)?)?;
    if let Some(p) = &a.gnuplot {
        write_gnuplot(&rows, BufWriter::new(File::create(p)?))?;
    }
    emit_json(a.out.as_deref(), &serde_json::to_value(aggregate(&rows))?)?;
    Ok(true)
}
