//! `deds`: solve, verify, kernelize and generate directed (p,q)-edge dominating set instances.
//!
//! Exit codes: 0 solved or feasible, 1 infeasible or no-instance, 2 input error,
//! 3 resource limit.

mod bench;
mod gen;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use deds_core::domination::{parse_solution, undominated};
use deds_core::engine::{solve, Engine, SolveOptions, TdSource};
use deds_core::graph::{parse_graph, write_graph};
use deds_core::kernel::{kernelize_01_checked, kernelize_11_checked, Certificate, Verdict};
use deds_core::tournament::Route;
use deds_core::twdp::TreeDecomposition;
use deds_core::{verify, Error, Instance, Result};

#[derive(Parser)]
#[command(name = "deds", version, about = "Directed (p,q)-edge dominating set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a minimum (or approximate) solution.
    Solve(SolveArgs),
    /// Check a solution file against a graph.
    Verify(VerifyArgs),
    /// Reduce a (0,1) or (1,1) instance to a kernel.
    Kernelize(KernelizeArgs),
    /// Write a generated instance plus a JSON lineage sidecar.
    #[command(subcommand)]
    Gen(gen::GenCommand),
    /// Run a named, fixed-seed benchmark suite.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Radii as `P,Q`.
    #[arg(long, value_parser = parse_pq)]
    pq: (usize, usize),
    #[arg(long, default_value = "auto", value_parser = parse_engine)]
    engine: Engine,
    /// Budget; required by fpt01 and fpt11.
    #[arg(long)]
    k: Option<usize>,
    /// Tree decomposition for twdp: a PACE `.td` file or `heuristic`.
    #[arg(long, default_value = "heuristic")]
    td: String,
    /// Tournament route to use instead of the classifier's choice.
    #[arg(long, value_parser = parse_route)]
    force_engine: Option<Route>,
    /// Report elapsed_ms as 0.
    #[arg(long)]
    deterministic: bool,
    /// Seed of the generator that produced the input, echoed in the output.
    #[arg(long)]
    seed: Option<u64>,
    /// Graph file, `-` for stdin.
    file: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_pq)]
    pq: (usize, usize),
    file: PathBuf,
    solution: PathBuf,
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(long, value_parser = parse_pq)]
    pq: (usize, usize),
    #[arg(long)]
    k: usize,
    /// Where to write the reduced graph.
    #[arg(long)]
    out: Option<PathBuf>,
    file: PathBuf,
}

pub(crate) enum Status {
    Yes,
    No,
}

fn parse_pq(s: &str) -> std::result::Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected `P,Q`")?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a non-negative integer"));
    Ok((num(p)?, num(q)?))
}

fn parse_engine(s: &str) -> std::result::Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_route(s: &str) -> std::result::Result<Route, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub(crate) fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
    Ok(text)
}

pub(crate) fn write_output(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path, (p, q): (usize, usize)) -> Result<Instance> {
    let parsed = parse_graph(&read_input(path)?)?;
    Instance::new(parsed.graph, p, q).with_optional(&parsed.optional)
}

/// Writes one JSON line; a closed reader (`| head`) ends the process quietly.
pub(crate) fn print_json(value: &impl Serialize) {
    let line = serde_json::to_string(value).expect("serializable");
    if writeln!(std::io::stdout().lock(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn run_solve(args: SolveArgs) -> Result<Status> {
    let inst = load_instance(&args.file, args.pq)?;
    let td = match args.td.as_str() {
        "heuristic" => TdSource::Heuristic,
        path => TdSource::Given(TreeDecomposition::from_pace(&read_input(Path::new(path))?)?),
    };
    let opts = SolveOptions {
        engine: args.engine,
        k: args.k,
        td,
        route: args.force_engine,
        deterministic: args.deterministic,
        seed: args.seed,
    };
    let report = solve(&inst, &opts)?;
    print_json(&report);
    Ok(if report.feasible { Status::Yes } else { Status::No })
}

#[derive(Serialize)]
struct VerifyReport {
    pq: [usize; 2],
    size: usize,
    feasible: bool,
    undominated: Vec<(usize, usize)>,
}

fn run_verify(args: VerifyArgs) -> Result<Status> {
    let inst = load_instance(&args.file, args.pq)?;
    let arcs = parse_solution(&read_input(&args.solution)?, &inst.graph)?;
    let feasible = verify(&inst, &arcs)?;
    let missed = undominated(&inst, &arcs).into_iter().map(|a| inst.graph.arc(a)).collect();
    print_json(&VerifyReport { pq: [inst.p, inst.q], size: arcs.len(), feasible, undominated: missed });
    Ok(if feasible { Status::Yes } else { Status::No })
}

#[derive(Serialize)]
struct KernelReport {
    pq: [usize; 2],
    k: usize,
    verdict: Verdict,
    k_out: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<PathBuf>,
    certificate: Certificate,
}

fn run_kernelize(args: KernelizeArgs) -> Result<Status> {
    let parsed = parse_graph(&read_input(&args.file)?)?;
    let result = match args.pq {
        (0, 1) => kernelize_01_checked(&parsed.graph, &parsed.optional, args.k)?,
        (1, 1) => kernelize_11_checked(&parsed.graph, &parsed.optional, args.k)?,
        (p, q) => return Err(Error::WrongEngine(format!("kernels exist for (0,1) and (1,1), got ({p},{q})"))),
    };
    if let Some(out) = &args.out {
        write_output(out, &write_graph(&result.reduced.graph, &[]))?;
    }
    let status = if result.verdict == Verdict::RejectedNo { Status::No } else { Status::Yes };
    print_json(&KernelReport {
        pq: [args.pq.0, args.pq.1],
        k: args.k,
        verdict: result.verdict,
        k_out: result.k_out,
        out: args.out,
        certificate: result.certificate,
    });
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Kernelize(a) => run_kernelize(a),
        Command::Gen(c) => gen::run(c),
        Command::Bench(a) => bench::run(a),
    };
    match outcome {
        Ok(Status::Yes) => ExitCode::SUCCESS,
        Ok(Status::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}
