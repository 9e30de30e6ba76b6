use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use polyset::exact::{zero_vec, Matrix};
use polyset::instances::{build_euler_problem, build_risk_problem};
use polyset::io::{emit_plot_data, parse_problem, parse_rows, serialize_problem, SolutionReport};
use polyset::setopt::{check_existence, solve_with, standard_form, SetOptProblem, SolveOptions, Status};

/// Exact solver for polyhedral convex set optimization problems.
#[derive(Parser)]
#[command(name = "polyset", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a solution (S̄, Ŝ). Reads stdin when FILE is omitted or `-`.
    Solve {
        file: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Write plot data (q = 2 or 3) into this directory.
        #[arg(long, value_name = "D")]
        plot_dir: Option<PathBuf>,
        /// Worker threads for the per-vertex minimizer calls.
        #[arg(long, value_name = "N", default_value_t = 1)]
        jobs: usize,
    },
    /// Decide whether a solution exists.
    Check { file: Option<PathBuf> },
    /// Print the standard form of a problem.
    StdForm { file: Option<PathBuf> },
    /// Generate problem files.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand)]
enum Gen {
    /// Risk-compensation problem from two bid-ask matrices.
    BidAsk {
        #[arg(long, value_name = "F1")]
        pi1: PathBuf,
        #[arg(long, value_name = "F2")]
        pi2: PathBuf,
        /// Number of objectives.
        #[arg(long)]
        q: usize,
        /// Initial portfolio, one row; defaults to 0.
        #[arg(long, value_name = "FILE")]
        xbar: Option<PathBuf>,
    },
    /// Convex hull of the Euler-digit matrix columns.
    Euler,
}

fn read_input(file: Option<&Path>) -> Result<String> {
    match file {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            Ok(s)
        }
    }
}

fn load(file: Option<&Path>) -> Result<SetOptProblem> {
    let text = read_input(file)?;
    let name = file.map_or("<stdin>".into(), |p| p.display().to_string());
    parse_problem(&text).with_context(|| name)
}

fn load_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let rows = parse_rows(&text).with_context(|| path.display().to_string())?;
    let cols = rows.first().map_or(0, Vec::len);
    Ok(Matrix::from_rows(cols, rows))
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Solved => 0,
        Status::NoSolution => 2,
        Status::Infeasible => 3,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve {
            file,
            json,
            plot_dir,
            jobs,
        } => {
            let p = load(file.as_deref())?;
            let sol = solve_with(&p, &SolveOptions { jobs: jobs.max(1) });
            let report = SolutionReport::new(&sol);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if let Some(dir) = plot_dir {
                if sol.status == Status::Solved {
                    for f in emit_plot_data(&p, &sol, &dir)? {
                        eprintln!("wrote {}", f.display());
                    }
                } else {
                    eprintln!("no plot data: status {}", sol.status);
                }
            }
            Ok(status_code(sol.status))
        }
        Command::Check { file } => {
            let p = load(file.as_deref())?;
            let status = if p.f.is_empty() {
                Status::Infeasible
            } else if check_existence(&p) {
                Status::Solved
            } else {
                Status::NoSolution
            };
            println!(
                "{}",
                match status {
                    Status::Solved => "solution exists",
                    Status::NoSolution => "no solution",
                    Status::Infeasible => "infeasible",
                }
            );
            Ok(status_code(status))
        }
        Command::StdForm { file } => {
            let p = load(file.as_deref())?;
            if p.f.is_empty() {
                eprintln!("infeasible: the graph is empty");
                return Ok(status_code(Status::Infeasible));
            }
            let std = standard_form(&p).expect("nonempty graph");
            print!("{}", serialize_problem(&std));
            Ok(0)
        }
        Command::Gen(Gen::BidAsk { pi1, pi2, q, xbar }) => {
            let pi1 = load_matrix(&pi1)?;
            let pi2 = load_matrix(&pi2)?;
            let xbar = match xbar {
                None => zero_vec(pi1.rows()),
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("cannot read {}", path.display()))?;
                    let rows = parse_rows(&text).with_context(|| path.display().to_string())?;
                    match <[_; 1]>::try_from(rows) {
                        Ok([row]) => row,
                        Err(_) => bail!("{}: expected exactly one row", path.display()),
                    }
                }
            };
            let p = build_risk_problem(&pi1, &pi2, q, &xbar)?;
            print!("{}", serialize_problem(&p));
            Ok(0)
        }
        Command::Gen(Gen::Euler) => {
            print!("{}", serialize_problem(&build_euler_problem()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
