use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bicluster::bench::{load_dir, run_bench, BenchMode};
use bicluster::bnc::{build_bgep, build_bgeps, solve, MilpStatus, SeparationMode};
use bicluster::io::{
    generate, read_instance, read_solution, write_generated, write_solution, GenSpec, SolutionDoc,
    SolveStats,
};
use bicluster::mcfp::{solve_iterative, solve_linear, McfpMethod};
use bicluster::oracle::{brute_force_bgeps, brute_force_mcfp};
use bicluster::preprocess::preprocess;
use bicluster::{BipartiteInstance, BncConfig64, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bicluster",
    version,
    about = "Exact bicluster editing and cell formation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance with independent edges.
    Gen {
        /// Rows (U vertices).
        #[arg(short = 'm')]
        rows: usize,
        /// Columns (V vertices).
        #[arg(short = 'n')]
        cols: usize,
        /// Edge probability.
        #[arg(short = 'p')]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Solve an instance exactly.
    Solve {
        problem: Problem,
        file: PathBuf,
        #[arg(long = "sep", value_enum, default_value_t = Sep::Dp)]
        sep: Sep,
        /// Distance-based fixings and pair cuts (bgep only).
        #[arg(long)]
        preprocess: bool,
        #[arg(long, default_value_t = 0)]
        min_rows: usize,
        #[arg(long, default_value_t = 0)]
        min_cols: usize,
        #[arg(long, value_enum, default_value_t = Method::Iterative)]
        method: Method,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check a solution document against an instance and print its scores.
    Eval { file: PathBuf, solution: PathBuf },
    /// Report distance-based fixings and pair cuts.
    Preprocess {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force reference solution for small instances.
    Oracle {
        problem: Problem,
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        min_rows: usize,
        #[arg(long, default_value_t = 0)]
        min_cols: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Solve every instance in a directory under each separation and
    /// preprocessing mode.
    Bench {
        dir: PathBuf,
        #[arg(long)]
        time_limit: Option<f64>,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Bgep,
    Bgeps,
    Mcfp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sep {
    Dp,
    Exhaustive,
    None,
}

impl From<Sep> for SeparationMode {
    fn from(s: Sep) -> Self {
        match s {
            Sep::Dp => SeparationMode::Dp,
            Sep::Exhaustive => SeparationMode::Exhaustive,
            Sep::None => SeparationMode::None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Iterative,
    Linear,
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn load(path: &Path) -> Result<BipartiteInstance, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let g = read_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(match g.name() {
        Some(_) => g,
        None => {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            g.with_name(stem)
        }
    })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn time_limit(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| {
        Duration::try_from_secs_f64(s)
            .ok()
            .filter(|d| !d.is_zero())
            .ok_or_else(|| usage("--time-limit must be a positive number of seconds"))
    })
    .transpose()
}

/// Writes the document and maps "not proven" to exit code 1.
fn finish(doc: &SolutionDoc, output: Option<&Path>) -> Result<u8, Failure> {
    emit(output, &write_solution(doc))?;
    if doc.proven {
        Ok(0)
    } else {
        eprintln!("limit reached before optimality was proven");
        Ok(1)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_solve(
    problem: Problem,
    file: &Path,
    sep: Sep,
    with_pre: bool,
    min_rows: usize,
    min_cols: usize,
    method: Method,
    limit: Option<f64>,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let g = load(file)?;
    let mut config = BncConfig64::default().with_separation(sep.into());
    config.time_limit = time_limit(limit)?;
    if with_pre && !matches!(problem, Problem::Bgep) {
        return Err(usage("--preprocess applies to bgep only"));
    }
    let start = Instant::now();
    match problem {
        Problem::Bgep | Problem::Bgeps => {
            let (model, name) = match problem {
                Problem::Bgep => {
                    let mut model = build_bgep::<f64>(&g);
                    if with_pre {
                        model.apply_preprocess(&preprocess(&g))?;
                    }
                    (model, "bgep")
                }
                _ => (build_bgeps::<f64>(&g, min_cols, min_rows)?, "bgeps"),
            };
            let r = solve(&model, &config)?;
            let stats = SolveStats {
                nodes: r.nodes,
                cuts: r.cuts,
                seconds: start.elapsed().as_secs_f64(),
            };
            match (r.status, &r.solution) {
                (MilpStatus::Infeasible, _) => Err(usage("model is infeasible")),
                (_, None) => {
                    eprintln!(
                        "limit reached without a solution; best bound {}",
                        r.best_bound
                    );
                    Ok(1)
                }
                (status, Some(sol)) => {
                    let doc = SolutionDoc::from_solution(
                        &g,
                        name,
                        sol,
                        stats,
                        status == MilpStatus::Optimal,
                    )?;
                    finish(&doc, output)
                }
            }
        }
        Problem::Mcfp => {
            let r = match method {
                Method::Iterative => solve_iterative(&g, min_cols, min_rows, &config)?,
                Method::Linear => solve_linear(&g, min_cols, min_rows, &config)?,
            };
            let name = match r.method {
                McfpMethod::Iterative => "mcfp-iterative",
                McfpMethod::Linear => "mcfp-linear",
            };
            let stats = SolveStats {
                nodes: r.nodes,
                cuts: r.cuts,
                seconds: r.wall_time.as_secs_f64(),
            };
            let doc = SolutionDoc::from_solution(&g, name, &r.solution, stats, r.proven)?;
            finish(&doc, output)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Gen {
            rows,
            cols,
            prob,
            seed,
            output,
        } => {
            let spec = GenSpec::new(rows, cols, prob, seed);
            let g = generate(&spec)?;
            emit(output.as_deref(), &write_generated(&g, &spec))?;
            Ok(0)
        }
        Command::Solve {
            problem,
            file,
            sep,
            preprocess,
            min_rows,
            min_cols,
            method,
            time_limit,
            output,
        } => run_solve(
            problem,
            &file,
            sep,
            preprocess,
            min_rows,
            min_cols,
            method,
            time_limit,
            output.as_deref(),
        ),
        Command::Eval { file, solution } => {
            let g = load(&file)?;
            let text = std::fs::read_to_string(&solution)
                .map_err(|e| usage(format!("{}: {e}", solution.display())))?;
            let doc = read_solution(&text)?;
            let sol = doc.validate_against(&g)?;
            match doc.efficacy {
                Some(e) => println!("efficacy {e} ({:.2}%)", e.percent()),
                None => println!("efficacy undefined (no edges)"),
            }
            println!(
                "additions {} deletions {} total {}",
                sol.a(),
                sol.d(),
                sol.total()
            );
            Ok(0)
        }
        Command::Preprocess { file, json } => {
            let g = load(&file)?;
            let r = preprocess(&g);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&r.stats).expect("stats serialize")
                );
            } else {
                println!(
                    "fixed {} ({:.2}%)",
                    r.stats.fixed_count, r.stats.fixed_percentage
                );
                println!(
                    "cuts {} ({:.2}%)",
                    r.stats.cut_count, r.stats.cut_percentage
                );
            }
            Ok(0)
        }
        Command::Oracle {
            problem,
            file,
            min_rows,
            min_cols,
            output,
        } => {
            let g = load(&file)?;
            let start = Instant::now();
            let (sol, name) = match problem {
                Problem::Bgep => (brute_force_bgeps(&g, 0, 0)?.1, "oracle-bgep"),
                Problem::Bgeps => (brute_force_bgeps(&g, min_cols, min_rows)?.1, "oracle-bgeps"),
                Problem::Mcfp => (brute_force_mcfp(&g, min_cols, min_rows)?.1, "oracle-mcfp"),
            };
            let stats = SolveStats {
                seconds: start.elapsed().as_secs_f64(),
                ..SolveStats::default()
            };
            finish(
                &SolutionDoc::from_solution(&g, name, &sol, stats, true)?,
                output.as_deref(),
            )
        }
        Command::Bench {
            dir,
            time_limit: limit,
            json,
        } => {
            let instances = load_dir(&dir)?;
            if instances.is_empty() {
                return Err(usage(format!("{}: no .txt instances", dir.display())));
            }
            let report = run_bench(&instances, &BenchMode::defaults(), time_limit(limit)?)?;
            print!("{}", report.to_text());
            if let Some(p) = json {
                emit(Some(&p), &report.to_json())?;
            }
            if report.optima_agree() {
                Ok(0)
            } else {
                eprintln!("modes disagree on: {}", report.disagreements.join(", "));
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
