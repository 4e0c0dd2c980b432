use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use k4mf::csp::{encode_maxcut, parse_csp, solve, TransversalMethod};
use k4mf::graph::text::{parse_graph, write_graph};
use k4mf::harness::{gen_k5_union, gen_k6_chain, gen_random_connected, run_suite, Suite, SuiteParams};
use k4mf::oracle::{brute_force_s, exact_s};
use k4mf::potential::greedy_fifth_transversal;
use k4mf::reduction::reduce_core;
use k4mf::{Graph, VertexSet};

#[derive(Parser)]
#[command(name = "k4mf", version, about = "Minimum K4-minor-free transversals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in edge-list format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Test a graph for a K4 minor by reducing it.
    Check {
        file: PathBuf,
        /// Print every reduction step.
        #[arg(long)]
        trace: bool,
    },
    /// Compute a transversal.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::Exact)]
        method: SolveMethod,
        /// Re-verify that the remainder reduces to the empty graph.
        #[arg(long)]
        certify: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = SuiteParams::default().max_n)]
        max_n: usize,
        #[arg(long, default_value_t = SuiteParams::default().samples)]
        samples: usize,
        #[arg(long, default_value_t = SuiteParams::default().seed)]
        seed: u64,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Keep only failing records in the report.
        #[arg(long)]
        failures_only: bool,
    },
    /// Max-2-CSP tools.
    Csp {
        #[command(subcommand)]
        command: CspCommand,
    },
}

#[derive(Subcommand)]
enum CspCommand {
    /// Solve a CSP file by branching on a transversal of its constraint graph.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TransversalArg::Exact)]
        transversal: TransversalArg,
    },
    /// Maximum cut of a graph file.
    Maxcut { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    K5Union,
    K6Chain,
    RandomConnected,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Brute,
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bounds,
    Lemmas,
    Csp,
    Extremal,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransversalArg {
    Exact,
    Greedy,
}

enum Failure {
    Violation(String),
    Input(String),
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn join(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn gen(
    family: Family,
    k: Option<usize>,
    n: Option<usize>,
    m: Option<usize>,
    seed: u64,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Failure::Input(format!("--{flag} is required")));
    let g = match family {
        Family::K5Union => gen_k5_union(need(k, "k")?),
        Family::K6Chain => gen_k6_chain(need(k, "k")?),
        Family::RandomConnected => gen_random_connected(need(n, "n")?, need(m, "m")?, seed),
    }
    .map_err(input)?;
    let text = write_graph(&g);
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check(file: &Path, trace: bool) -> Result<(), Failure> {
    let g = read_graph(file)?;
    let t = reduce_core(&g);
    if trace {
        print!("{}", t.to_log());
    }
    println!("k4-minor-free: {}", if t.end.is_empty() { "yes" } else { "no" });
    println!("reduction steps: {}", t.steps.len());
    Ok(())
}

fn solve_graph(file: &Path, method: SolveMethod, certify: bool) -> Result<(), Failure> {
    let g = read_graph(file)?;
    let result = match method {
        SolveMethod::Brute => brute_force_s(&g).map_err(input)?,
        SolveMethod::Exact => exact_s(&g),
        SolveMethod::Greedy => greedy_fifth_transversal(&g),
    };
    println!("method: {}", result.method);
    println!("size: {}", result.size);
    println!("vertices: {}", join(&result.vertices));
    if certify {
        if result.verify(&g) {
            println!("certificate: ok");
        } else {
            return Err(Failure::Violation("certificate does not verify".into()));
        }
    }
    Ok(())
}

fn verify(
    suite: SuiteArg,
    params: SuiteParams,
    report: Option<PathBuf>,
) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::Bounds => Suite::Bounds,
        SuiteArg::Lemmas => Suite::Lemmas,
        SuiteArg::Csp => Suite::Csp,
        SuiteArg::Extremal => Suite::Extremal,
    };
    let rep = run_suite(suite, &params).map_err(input)?;
    if let Some(path) = report {
        fs::write(&path, rep.to_json()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    let a = &rep.aggregate;
    let slack = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
    println!(
        "suite {}: {} checks, {} failures, slack min {} max {}",
        rep.suite,
        a.count,
        a.failures,
        slack(a.min_slack),
        slack(a.max_slack)
    );
    println!("report digest: {}", rep.digest());
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{} checks failed", a.failures)))
    }
}

fn csp(command: CspCommand) -> Result<(), Failure> {
    match command {
        CspCommand::Solve { file, transversal } => {
            let inst = parse_csp(&read(&file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let method = match transversal {
                TransversalArg::Exact => TransversalMethod::Exact,
                TransversalArg::Greedy => TransversalMethod::Greedy,
            };
            let sol = solve(&inst, method);
            println!("objective: {}", sol.assignment.objective);
            let values: Vec<String> = sol.assignment.values.values().map(|x| x.to_string()).collect();
            println!("assignment: {}", values.join(" "));
            println!("transversal: {}", join(&sol.transversal));
            println!("branches: {}", sol.branches);
        }
        CspCommand::Maxcut { file } => {
            let g = read_graph(&file)?;
            let sol = solve(&encode_maxcut(&g), TransversalMethod::Exact);
            let side: VertexSet = sol
                .assignment
                .values
                .iter()
                .filter(|(_, &x)| x == 1)
                .map(|(&v, _)| v)
                .collect();
            println!("cut: {}", sol.assignment.objective);
            println!("side: {}", join(&side));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            family,
            k,
            n,
            m,
            seed,
            output,
        } => gen(family, k, n, m, seed, output),
        Command::Check { file, trace } => check(&file, trace),
        Command::Solve {
            file,
            method,
            certify,
        } => solve_graph(&file, method, certify),
        Command::Verify {
            suite,
            max_n,
            samples,
            seed,
            report,
            failures_only,
        } => verify(
            suite,
            SuiteParams {
                max_n,
                samples,
                seed,
                failures_only,
            },
            report,
        ),
        Command::Csp { command } => csp(command),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
