//! Command-line interface: load a problem file, run one of the solvers or
//! diagnostics, and render plain-text output.

mod bench;
mod knapsack;
mod problem_file;

pub use bench::{run_bench, BenchReport, BenchRow, BENCH_COLUMNS};
pub use knapsack::{knapsack_instance, SplitMix64};
pub use problem_file::{parse_problem, serialize_problem, ProblemFile, ProblemFileError};

use crate::exactmath::{Int, IntVec};
use crate::genfun::{count, polytope_genfun};
use crate::moilp::{
    box_search_solve, brute_force_pareto, digging_solve, optimize_over_pareto, MoilpError,
    MoilpProblem, ParetoSet,
};
use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Load { path: String, source: ProblemFileError },
    #[error(transparent)]
    Solve(#[from] MoilpError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Parser)]
#[command(
    name = "moilp",
    about = "Exact multiobjective integer linear programming via rational generating functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Dig nondominated monomials out of the substituted generating function.
    Digging,
    /// Bisect the feasible box, counting lattice points exactly.
    Boxsearch,
    /// Enumerate all feasible points (reference implementation).
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Count the lattice points of the feasible region.
    Count { file: PathBuf },
    /// List the vertices of the feasible region.
    Vertices { file: PathBuf },
    /// Print the short rational generating function of the feasible region.
    Genfun { file: PathBuf },
    /// Compute the maximal complete set of nondominated solutions.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Digging)]
        method: Method,
        /// Enumeration node budget for the brute method.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Solve with every method and require identical answers.
    Check {
        file: PathBuf,
        /// Enumeration node budget for the brute-force reference.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Maximize a linear function over the nondominated set.
    Reopt {
        file: PathBuf,
        /// Comma-separated integer weights, one per variable.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Print a generated knapsack instance in problem-file format.
    Generate {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Time the solvers on generated knapsack instances.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<usize>,
        /// Instances per size.
        #[arg(long, default_value_t = 5)]
        instances: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Emit machine-readable CSV instead of the table.
        #[arg(long)]
        csv: bool,
    },
}

pub fn run_command(args: &[String]) -> (u8, String) {
    let mut argv = Vec::with_capacity(args.len() + 1);
    argv.push("moilp".to_string());
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        // Help and version requests land here too; they exit cleanly.
        Err(e) => return (u8::from(e.use_stderr()) * 2, e.render().to_string()),
    };
    match execute(cli.command) {
        Ok(text) => (0, text),
        Err(e) => (1, format!("error: {e}\n")),
    }
}

fn load(path: &Path) -> Result<ProblemFile, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: shown.clone(), source })?;
    parse_problem(&text).map_err(|source| CliError::Load { path: shown, source })
}

fn render_pareto(pareto: &ParetoSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "efficient points ({}):", pareto.points.len());
    for x in &pareto.points {
        let _ = writeln!(out, "{x}");
    }
    let _ = writeln!(out, "nondominated values ({}):", pareto.values.len());
    for y in &pareto.values {
        let _ = writeln!(out, "{y}");
    }
    out
}

fn parse_weights(nu: &str, dim: usize) -> Result<IntVec, CliError> {
    let entries: Vec<Int> = nu
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| CliError::Invalid(format!("bad weight {tok:?} in --nu")))
        })
        .collect::<Result<_, _>>()?;
    if entries.len() != dim {
        return Err(CliError::Invalid(format!(
            "--nu has {} weights, problem has {dim} variables",
            entries.len()
        )));
    }
    Ok(IntVec(entries))
}

fn solve_by(method: Method, prob: &MoilpProblem, budget: u64) -> Result<ParetoSet, MoilpError> {
    match method {
        Method::Digging => digging_solve(prob),
        Method::Boxsearch => box_search_solve(prob),
        Method::Brute => brute_force_pareto(prob, budget),
    }
}

fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Count { file } => {
            let prob = load(&file)?.problem;
            let g = polytope_genfun(prob.constraints()).map_err(MoilpError::from)?;
            Ok(format!("{}\n", count(&g)))
        }
        Command::Vertices { file } => {
            let prob = load(&file)?.problem;
            let mut out = String::new();
            for v in prob.constraints().vertices() {
                let _ = writeln!(out, "{v}");
            }
            Ok(out)
        }
        Command::Genfun { file } => {
            let prob = load(&file)?.problem;
            let g = polytope_genfun(prob.constraints()).map_err(MoilpError::from)?;
            Ok(g.to_text())
        }
        Command::Solve { file, method, budget } => {
            let prob = load(&file)?.problem;
            Ok(render_pareto(&solve_by(method, &prob, budget)?))
        }
        Command::Check { file, budget } => {
            let prob = load(&file)?.problem;
            let digging = digging_solve(&prob)?;
            let boxed = box_search_solve(&prob)?;
            let brute = brute_force_pareto(&prob, budget)?;
            if digging != boxed || digging != brute {
                let sizes = format!(
                    "digging {} / boxsearch {} / brute {}",
                    digging.len(),
                    boxed.len(),
                    brute.len()
                );
                return Err(CliError::Invalid(format!("DISAGREE ({sizes})")));
            }
            Ok(format!("AGREE (|X_E| = {})\n", digging.len()))
        }
        Command::Reopt { file, nu } => {
            let prob = load(&file)?.problem;
            let weights = parse_weights(&nu, prob.dim())?;
            let (best, argmax, pareto) = optimize_over_pareto(&prob, &weights)?;
            let mut out = String::new();
            let _ = writeln!(out, "optimum: {best}");
            let _ = writeln!(out, "attained by ({}):", argmax.len());
            for x in &argmax {
                let _ = writeln!(out, "{x}");
            }
            let _ = writeln!(out, "nondominated set size: {}", pareto.len());
            Ok(out)
        }
        Command::Generate { n, seed } => {
            if n == 0 {
                return Err(CliError::Invalid("--n must be at least 1".into()));
            }
            Ok(serialize_problem(&knapsack_instance(n, seed)))
        }
        Command::Bench { n, instances, seed, csv } => {
            let report = run_bench(&n, instances, seed)?;
            Ok(if csv { report.to_csv() } else { report.table() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (u8, String) {
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        run_command(&owned)
    }

    #[test]
    fn unknown_subcommand_is_a_usage_error() {
        let (code, output) = run(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(output.contains("Usage") || output.contains("usage"), "{output}");
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, output) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(output.contains("moilp"));
        assert!(output.contains("solve"));
    }

    #[test]
    fn missing_file_is_a_runtime_error() {
        let (code, output) = run(&["count", "/no/such/file.prob"]);
        assert_eq!(code, 1);
        assert!(output.starts_with("error: /no/such/file.prob"), "{output}");
    }

    #[test]
    fn bad_weights_are_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.prob");
        std::fs::write(&path, "1 1 1\n1\n4\n1\n").unwrap();
        let (code, output) = run(&["reopt", path.to_str().unwrap(), "--nu", "1,2"]);
        assert_eq!(code, 1);
        assert!(output.contains("--nu has 2 weights"), "{output}");
    }
}
