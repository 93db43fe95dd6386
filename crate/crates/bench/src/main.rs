//! `mtsp` command-line interface.
//!
//! Exit status: 0 on success, 1 on bad input, 2 when the instance admits no
//! feasible plan (or none was found in time).

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mtsp_bench::compare::{compare_instances, solve_exact_warm, CompareOptions, Method, Window};
use mtsp_bench::experiment::{run_experiment, ExperimentConfig};
use mtsp_bench::law::{law_pipeline, read_summary_csv, table3_rows};
use mtsp_bench::output::{comparison_table, law_table, sample_table, summary_table, Format};
use mtsp_bench::records::PlanRecord;
use mtsp_bench::resolve::load_instance;
use mtsp_bench::BenchError;
use mtsp_core::distlaw::{simulate_min_dist, simulate_pair_dist, Domain};
use mtsp_core::exact::{brute_force_oracle, ExactStatus};
use mtsp_core::heuristics::Heuristic;
use mtsp_core::instance::{generate_uniform_instance, to_csv, to_tsplib, GridSpec, Instance, Rounding};

#[derive(Parser)]
#[command(name = "mtsp", version, about = "Balanced multiple travelling salesman toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a uniform integer-grid instance.
    Generate(GenerateArgs),
    /// Solve one instance with one algorithm; prints a JSON plan record.
    Solve(SolveArgs),
    /// Solve one instance exactly; prints a JSON plan record with status fields.
    SolveExact(SolveExactArgs),
    /// Compare algorithms on instances.
    Compare(CompareArgs),
    /// Run the seeded heuristic experiment grid.
    Experiment(ExperimentArgs),
    /// Fit the distance law to a summary table.
    Law(LawArgs),
    /// Monte Carlo estimate of a pair or nearest-point distance.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RoundingArg {
    None,
    Nearest,
}

impl From<RoundingArg> for Rounding {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::None => Rounding::None,
            RoundingArg::Nearest => Rounding::NearestInteger,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceFormat {
    Tsplib,
    Csv,
}

#[derive(Args)]
struct GenerateArgs {
    /// Node count, depot included.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    grid_max: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = InstanceFormat::Tsplib)]
    format: InstanceFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolverArgs {
    /// Fixture name or path to a TSPLIB / .csv file.
    #[arg(long)]
    instance: String,
    #[arg(long)]
    m: usize,
    /// Seconds for the exact solver.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    /// Cap route and total lengths by the nearest-node plan.
    #[arg(long)]
    heuristic_cuts: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = RoundingArg::None)]
    rounding: RoundingArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    solver: SolverArgs,
    /// nearest, closest, exact or oracle.
    #[arg(long, default_value = "nearest")]
    algorithm: Method,
    /// Minimum customers per route (exact solvers); defaults to the balanced window.
    #[arg(long = "K")]
    min: Option<usize>,
    /// Maximum customers per route (exact solvers).
    #[arg(long = "L")]
    max: Option<usize>,
}

#[derive(Args)]
struct SolveExactArgs {
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long = "K")]
    min: usize,
    #[arg(long = "L")]
    max: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Comma-separated fixture names or paths.
    #[arg(long, value_delimiter = ',', required = true)]
    instance: Vec<String>,
    /// Fleet sizes, e.g. `2,3` or `2-5`.
    #[arg(long, default_value = "2")]
    m: String,
    #[arg(long, value_delimiter = ',', default_value = "exact,nearest,closest")]
    algorithms: Vec<Method>,
    #[arg(long = "K")]
    min: Option<usize>,
    #[arg(long = "L")]
    max: Option<usize>,
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long)]
    heuristic_cuts: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = RoundingArg::None)]
    rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Node counts, e.g. `50-500:50` or `50,100`.
    #[arg(long, default_value = "50-500:50")]
    sizes: String,
    #[arg(long, default_value = "2-7")]
    m: String,
    #[arg(long, default_value_t = 30)]
    samples: usize,
    #[arg(long, default_value_t = 100)]
    grid_max: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "nearest,closest")]
    algorithms: Vec<Heuristic>,
    /// Draw a fresh instance for every fleet size.
    #[arg(long)]
    independent: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-sample totals as CSV.
    #[arg(long)]
    samples_out: Option<PathBuf>,
}

#[derive(Args)]
struct LawArgs {
    /// Summary CSV (`t,m,algorithm,mean,std,samples`); the published table when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SimulationKind {
    Pair,
    Min,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = SimulationKind::Pair)]
    kind: SimulationKind,
    /// Points per repetition for `min`.
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    reps: u64,
    /// `unit`, `int:X`, `rect:WxH` or `ball:DIM:RADIUS`.
    #[arg(long, default_value = "unit", value_parser = parse_domain)]
    domain: Domain,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Histogram CSV (`bin_lo,bin_hi,count`).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["unit"] => Ok(Domain::UnitInterval),
        ["int", x] => x.parse().map(Domain::IntegerRange).map_err(|e| format!("{x:?}: {e}")),
        ["rect", wh] => {
            let (w, h) = wh.split_once('x').ok_or_else(|| format!("expected WxH, got {wh:?}"))?;
            Ok(Domain::Rectangle { width: num(w)?, height: num(h)? })
        }
        ["ball", d, r] => Ok(Domain::Ball { dim: d.parse().map_err(|e| format!("{d:?}: {e}"))?, radius: num(r)? }),
        _ => Err(format!("unknown domain {s:?}")),
    }
}

/// Expands `a,b`, `a-b` and `a-b:step` items into a list of counts.
fn parse_counts(s: &str) -> Result<Vec<usize>, BenchError> {
    let bad = || BenchError::Config(format!("cannot read count list {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let mut out = Vec::new();
    for item in s.split(',').filter(|t| !t.trim().is_empty()) {
        let (span, step) = match item.split_once(':') {
            Some((span, step)) => (span, num(step)?),
            None => (item, 1),
        };
        match span.split_once('-') {
            Some((lo, hi)) if step > 0 => out.extend((num(lo)?..=num(hi)?).step_by(step)),
            None => out.push(num(span)?),
            _ => return Err(bad()),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), BenchError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

enum Outcome {
    Done,
    NoPlan(String),
}

fn solve(
    args: &SolverArgs,
    instance: &Instance<f64>,
    method: Method,
    window: Window,
) -> Result<Outcome, BenchError> {
    let m = args.m;
    let record = match method {
        Method::Nearest | Method::Closest => {
            let h = if method == Method::Nearest { Heuristic::Nearest } else { Heuristic::Closest };
            Some(PlanRecord::from_plan(instance, method.as_str(), &h.run(instance, m)?))
        }
        Method::Exact | Method::Oracle => {
            let bounds = window.bounds(instance.customers(), m);
            let result = if method == Method::Exact {
                let options = CompareOptions {
                    window,
                    time_limit: args.time_limit,
                    heuristic_cuts: args.heuristic_cuts,
                    threads: args.threads,
                };
                solve_exact_warm(instance, m, bounds, &options)?
            } else {
                brute_force_oracle(instance, m, bounds.0, bounds.1)?
            };
            match PlanRecord::from_exact(instance, method.as_str(), &result) {
                Some(r) => Some(r),
                None if result.status == ExactStatus::Infeasible => {
                    return Ok(Outcome::NoPlan(format!("no feasible plan for {} with m = {m}", instance.name())))
                }
                None => return Ok(Outcome::NoPlan(format!("no plan found within {} s", args.time_limit))),
            }
        }
    };
    if let Some(r) = record {
        emit(args.out.as_ref(), &(r.to_json_line() + "\n"))?;
    }
    Ok(Outcome::Done)
}

fn window(min: Option<usize>, max: Option<usize>) -> Result<Window, BenchError> {
    match (min, max) {
        (None, None) => Ok(Window::Balanced),
        (Some(min), Some(max)) => Ok(Window::Explicit { min, max }),
        _ => Err(BenchError::Config("--K and --L must be given together".into())),
    }
}

fn run(cli: Cli) -> Result<Outcome, BenchError> {
    match cli.command {
        Command::Generate(a) => {
            let inst: Instance<f64> = generate_uniform_instance(GridSpec { n: a.n, grid_max: a.grid_max, seed: a.seed })?;
            let text = match a.format {
                InstanceFormat::Tsplib => to_tsplib(&inst)?,
                InstanceFormat::Csv => to_csv(&inst)?,
            };
            emit(a.out.as_ref(), &text)?;
            Ok(Outcome::Done)
        }
        Command::Solve(a) => {
            let inst = load_instance(&a.solver.instance, a.solver.rounding.into())?;
            solve(&a.solver, &inst, a.algorithm, window(a.min, a.max)?)
        }
        Command::SolveExact(a) => {
            let inst = load_instance(&a.solver.instance, a.solver.rounding.into())?;
            solve(&a.solver, &inst, Method::Exact, Window::Explicit { min: a.min, max: a.max })
        }
        Command::Compare(a) => {
            let instances = a
                .instance
                .iter()
                .map(|s| load_instance(s, a.rounding.into()))
                .collect::<Result<Vec<_>, _>>()?;
            let options = CompareOptions {
                window: window(a.min, a.max)?,
                time_limit: a.time_limit,
                heuristic_cuts: a.heuristic_cuts,
                threads: a.threads,
            };
            let rows = compare_instances(&instances, &parse_counts(&a.m)?, &a.algorithms, &options)?;
            emit(a.out.as_ref(), &comparison_table(&rows, a.format)?)?;
            Ok(Outcome::Done)
        }
        Command::Experiment(a) => {
            let config = ExperimentConfig {
                sizes: parse_counts(&a.sizes)?,
                m_values: parse_counts(&a.m)?,
                samples: a.samples,
                grid_max: a.grid_max,
                seed: a.seed,
                algorithms: a.algorithms,
                independent: a.independent,
            };
            let out = run_experiment(&config)?;
            emit(a.out.as_ref(), &summary_table(&out.rows, a.format)?)?;
            if let Some(path) = a.samples_out {
                std::fs::write(path, sample_table(&out.samples)?)?;
            }
            Ok(Outcome::Done)
        }
        Command::Law(a) => {
            let rows = match &a.input {
                Some(path) => read_summary_csv(std::fs::File::open(path)?)?,
                None => table3_rows(),
            };
            emit(a.out.as_ref(), &law_table(&law_pipeline(&rows)?, a.format)?)?;
            Ok(Outcome::Done)
        }
        Command::Simulate(a) => {
            let result = match a.kind {
                SimulationKind::Pair => simulate_pair_dist(a.reps, a.domain, a.seed),
                SimulationKind::Min => simulate_min_dist(a.n, a.reps, a.domain, a.seed),
            }
            .map_err(BenchError::from)?;
            let summary = serde_json::json!({
                "mean": result.mean,
                "std_error": result.std_error,
                "reps": result.reps,
                "seed": result.seed,
            });
            println!("{summary}");
            if let Some(path) = a.out {
                std::fs::write(path, result.histogram.to_csv())?;
            }
            Ok(Outcome::Done)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NoPlan(msg)) => {
            eprintln!("mtsp: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("mtsp: {e}");
            ExitCode::from(if e.is_infeasible() { 2 } else { 1 })
        }
    }
}
