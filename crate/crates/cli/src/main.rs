//! `sinr-sched` command line.
//!
//! Exit codes: 0 success, 1 infeasible schedule, 2 input error, 3 oracle or
//! iteration cap exceeded. `SCHED_ORACLE_MAXN` overrides the oracle caps.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sinr_sched::coloring::degeneracy_order;
use sinr_sched::independence::build_conflict_graph;
use sinr_sched::oracle::{self, CHROMATIC_CAP, OPT_CAP};
use sinr_sched::scheduler::pc_independence;
use sinr_sched::{
    bench, chromatic_exact, generate, hochbaum_color, optimal_schedule_fixed, optimal_schedule_pc, refine, schedule,
    verify, write_csv, BenchOptions, Error, GeneratorSpec, Graph, LengthDist, LinkInstance, ModelKind, PowerAssignment,
    Schedule,
};

#[derive(Parser)]
#[command(name = "sinr-sched", version, about = "SINR link scheduling with mean power")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen {
        /// Generator spec JSON; overrides the flags below.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100.0)]
        side: f64,
        /// `fixed:L`, `uniform:A,B` or `lambda:L[,MIN]`.
        #[arg(long, default_value = "uniform:1,4", value_parser = parse_length)]
        length: LengthDist,
        #[arg(long, default_value = "directed")]
        model: ModelKind,
        #[arg(long, default_value_t = 3.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schedule every link of an instance.
    Schedule {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        model_override: Option<ModelKind>,
        /// Write the scheduler trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Refine a schedule to a signal level.
    Refine {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the conflict graph of an instance as an edge list.
    Graph {
        #[arg(long = "in")]
        input: PathBuf,
        /// Independence parameter; defaults to 3 (directed) or 2 (bidirectional).
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color an edge-list graph.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a schedule against the SINR condition.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        /// Also compute optimal slot counts (small instances only).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum on a small instance or graph.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: OracleMode,
        /// Power assignment for `fixed`.
        #[arg(long, value_enum, default_value_t = FixedPower::Mean)]
        power: FixedPower,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run seeded experiments and emit CSV.
    Bench {
        /// JSON array of generator specs.
        #[arg(long)]
        specs: PathBuf,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Run the oracles on instances within the cap.
        #[arg(long)]
        oracle: bool,
        /// Leave the wall_ms column empty.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Fixed,
    Pc,
    /// Input is an edge-list graph, or an instance whose conflict graph is used.
    Chromatic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixedPower {
    Uniform,
    Mean,
    Linear,
}

enum Failure {
    Infeasible(String),
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Infeasible(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Infeasible(m) | Failure::Input(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } | Error::NoConvergence(_) => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_length(s: &str) -> Result<LengthDist, String> {
    let (kind, args) = s.split_once(':').ok_or("expected KIND:ARGS")?;
    let nums: Vec<f64> =
        args.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x}: {e}"))).collect::<Result<_, _>>()?;
    match (kind, nums.as_slice()) {
        ("fixed", [length]) => Ok(LengthDist::Fixed { length: *length }),
        ("uniform", [min, max]) => Ok(LengthDist::Uniform { min: *min, max: *max }),
        ("lambda", [lambda]) => Ok(LengthDist::Lambda { lambda: *lambda, min: 1.0 }),
        ("lambda", [lambda, min]) => Ok(LengthDist::Lambda { lambda: *lambda, min: *min }),
        _ => Err(format!("unrecognized length distribution {s:?}")),
    }
}

fn read_text(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn write_text(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        _ => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn read_instance(path: &PathBuf) -> CliResult<LinkInstance> {
    Ok(LinkInstance::from_json(&read_text(path)?)?)
}

fn read_schedule(inst: &LinkInstance, path: &PathBuf) -> CliResult<Schedule> {
    Ok(Schedule::from_json(inst, &read_text(path)?)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("json output")
}

/// Caps from `SCHED_ORACLE_MAXN` when set.
fn cap(default: usize) -> CliResult<usize> {
    match std::env::var("SCHED_ORACLE_MAXN") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("SCHED_ORACLE_MAXN must be a count, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen { spec, n, seed, side, length, model, alpha, beta, noise, out } => {
            let spec = match spec {
                Some(p) => serde_json::from_str::<GeneratorSpec>(&read_text(&p)?)
                    .map_err(|e| Failure::Input(format!("generator spec: {e}")))?,
                None => GeneratorSpec::new(n, seed, side, length)
                    .with_model(model)
                    .with_alpha(alpha)
                    .with_beta(beta)
                    .with_noise(noise),
            };
            write_text(out.as_ref(), &generate(&spec)?.to_json())
        }
        Command::Schedule { input, out, model_override, trace } => {
            let mut inst = read_instance(&input)?;
            if let Some(m) = model_override {
                inst = inst.with_model(m);
            }
            let (sched, t) = schedule(&inst)?;
            write_text(out.as_ref(), &sched.to_json(&inst))?;
            if let Some(p) = trace {
                write_text(Some(&p), &pretty(&t))?;
            }
            let report = verify(&inst, &sched)?;
            if report.feasible {
                Ok(())
            } else {
                Err(Failure::Infeasible(format!("infeasible links {:?}", report.infeasible_links)))
            }
        }
        Command::Refine { input, schedule, p, out } => {
            let inst = read_instance(&input)?;
            let sched = read_schedule(&inst, &schedule)?;
            write_text(out.as_ref(), &refine(&inst, &sched, p)?.to_json(&inst))
        }
        Command::Graph { input, q, out } => {
            let inst = read_instance(&input)?;
            let q = q.unwrap_or_else(|| pc_independence(inst.model));
            write_text(out.as_ref(), &build_conflict_graph(&inst, q).to_edge_list())
        }
        Command::Color { input, out } => {
            let g = Graph::parse_edge_list(&read_text(&input)?)?;
            let c = hochbaum_color(&g);
            let (_, delta) = degeneracy_order(&g);
            let mut text = String::new();
            for v in 0..g.vertex_count() {
                text += &format!("{} {}\n", g.label(v), c.colors[v]);
            }
            text += &format!("colors={} delta={delta}\n", c.num_colors);
            write_text(out.as_ref(), &text)
        }
        Command::Verify { input, schedule, oracle, out } => {
            let inst = read_instance(&input)?;
            let sched = read_schedule(&inst, &schedule)?;
            let mut report = verify(&inst, &sched)?;
            if oracle {
                let max = cap(OPT_CAP)?;
                let fixed = optimal_schedule_fixed(&inst, &sched.power, max)?;
                let pc = if inst.noise == 0.0 { Some(optimal_schedule_pc(&inst, max)?) } else { None };
                report = report.with_optima(Some(fixed), pc);
            }
            write_text(out.as_ref(), &report.to_json())?;
            if report.feasible {
                Ok(())
            } else {
                Err(Failure::Infeasible(format!(
                    "schedule infeasible: links {:?}{}",
                    report.infeasible_links,
                    if report.covers_all { "" } else { ", not every link scheduled" }
                )))
            }
        }
        Command::Oracle { input, mode, power, out } => {
            let text = read_text(&input)?;
            let result = match mode {
                OracleMode::Chromatic => {
                    let g = match LinkInstance::from_json(&text) {
                        Ok(inst) => build_conflict_graph(&inst, pc_independence(inst.model)).graph,
                        Err(_) => Graph::parse_edge_list(&text)?,
                    };
                    let k = chromatic_exact(&g, cap(CHROMATIC_CAP)?)?;
                    json!({ "mode": "chromatic", "n": g.vertex_count(), "optimum": k })
                }
                OracleMode::Fixed => {
                    let inst = LinkInstance::from_json(&text)?;
                    let (name, pa) = match power {
                        FixedPower::Uniform => ("uniform", PowerAssignment::uniform(1.0)),
                        FixedPower::Mean => ("mean", PowerAssignment::mean(1.0)),
                        FixedPower::Linear => ("linear", PowerAssignment::linear(1.0)),
                    };
                    let k = optimal_schedule_fixed(&inst, &pa, cap(OPT_CAP)?)?;
                    json!({ "mode": "fixed", "power": name, "n": inst.len(), "optimum": k })
                }
                OracleMode::Pc => {
                    let inst = LinkInstance::from_json(&text)?;
                    let k = optimal_schedule_pc(&inst, cap(OPT_CAP)?)?;
                    json!({ "mode": "pc", "n": inst.len(), "optimum": k })
                }
            };
            write_text(out.as_ref(), &pretty(&result))
        }
        Command::Bench { specs, reps, oracle, no_timing, out } => {
            let specs: Vec<GeneratorSpec> = serde_json::from_str(&read_text(&specs)?)
                .map_err(|e| Failure::Input(format!("generator specs: {e}")))?;
            let oracle_max_n = if oracle { Some(cap(oracle::OPT_CAP)?) } else { None };
            let rows = bench(&specs, &BenchOptions { repetitions: reps, oracle_max_n, timing: !no_timing })?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            write_text(out.as_ref(), &String::from_utf8(buf).expect("csv is utf-8"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sinr-sched: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
