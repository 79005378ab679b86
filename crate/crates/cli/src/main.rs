use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use mpc_core::generators::{generate, Family, GenSpec};
use mpc_core::graph::{parse_cover, parse_graph, validate_path_cover, width_oracle, write_cover, write_graph};
use mpc_core::maxflow::InitKind;
use mpc_core::sparsify::Presparsify;
use mpc_core::{Dag, MpcError};
use mpc_cli::bench::{run_bench, BenchConfig};
use mpc_cli::{solve, Algo, SolveConfig};

#[derive(Parser)]
#[command(name = "mpc", version, about = "Minimum path cover solvers for DAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file
    Gen {
        /// Dataset family: random, pathpart or tc
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        /// Number of parts (pathpart only)
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Compute a minimum path cover
    Solve {
        graph: PathBuf,
        /// dfs, bfs, blocking, k3 or k2
        #[arg(long, default_value = "k2")]
        algo: Algo,
        /// Initial cover for the flow solvers: naive or greedy
        #[arg(long)]
        init: Option<InitKind>,
        /// none, dfs, greedy or both
        #[arg(long, default_value = "none")]
        presparsify: Presparsify,
        /// Check the layered invariants after every vertex (k2/k3)
        #[arg(long)]
        check_invariants: bool,
        #[arg(long)]
        timeout_s: Option<f64>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Validate a cover against a graph
    Verify {
        graph: PathBuf,
        cover: PathBuf,
        /// Also require the size to equal the width (small graphs only)
        #[arg(long)]
        oracle: bool,
    },
    /// Run a timed sweep and write CSV
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "random")]
        family: Vec<Family>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "k2")]
        algo: Vec<Algo>,
        #[arg(long, value_delimiter = ',', default_value = "naive")]
        init: Vec<InitKind>,
        #[arg(long, value_delimiter = ',', default_value = "none")]
        presparsify: Vec<Presparsify>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long)]
        timeout_s: Option<f64>,
        #[arg(long, short)]
        out: PathBuf,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Validation(String),
    Usage(String),
}

fn read_graph(path: &Path) -> Result<Dag> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn timeout(secs: Option<f64>) -> Result<Option<Duration>> {
    secs.map(|s| Duration::try_from_secs_f64(s).context("invalid --timeout-s"))
        .transpose()
}

fn run(cmd: Command) -> Result<Option<Failure>> {
    match cmd {
        Command::Gen {
            family,
            n,
            m,
            k,
            seed,
            out,
        } => {
            let spec = GenSpec {
                family,
                n,
                m,
                k_parts: k,
                seed,
            };
            let g = match generate(&spec) {
                Ok(g) => g,
                Err(e @ (MpcError::InvalidSpec(_) | MpcError::TooDense { .. })) => {
                    return Ok(Some(Failure::Usage(e.to_string())))
                }
                Err(e) => return Err(e.into()),
            };
            fs::write(&out, write_graph(&g)).with_context(|| format!("writing {}", out.display()))?;
            println!("n={} m={}", g.n(), g.m());
        }
        Command::Solve {
            graph,
            algo,
            init,
            presparsify,
            check_invariants,
            timeout_s,
            out,
        } => {
            if init.is_some() && !algo.uses_init() {
                eprintln!("warning: --init is ignored by {algo}, which starts from the naive cover");
            }
            let g = read_graph(&graph)?;
            let cfg = SolveConfig {
                init: init.unwrap_or(InitKind::Naive),
                presparsify,
                check_invariants,
                timeout: timeout(timeout_s)?,
                ..SolveConfig::new(algo)
            };
            let solved = solve(&g, &cfg)?;
            let report = validate_path_cover(&g, &solved.cover);
            if let Some(out) = out {
                fs::write(&out, write_cover(&solved.cover))
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            println!("k={} time_ms={:.3}", solved.cover.len(), solved.elapsed.as_secs_f64() * 1e3);
            if !report.is_valid() {
                return Ok(Some(Failure::Validation(report.to_string())));
            }
        }
        Command::Verify { graph, cover, oracle } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&cover).with_context(|| format!("reading {}", cover.display()))?;
            let pc = parse_cover(&text).with_context(|| format!("parsing {}", cover.display()))?;
            let report = validate_path_cover(&g, &pc);
            println!("{report}");
            if !report.is_valid() {
                return Ok(Some(Failure::Validation(report.to_string())));
            }
            if oracle {
                let k = width_oracle(&g)?;
                if pc.len() != k {
                    return Ok(Some(Failure::Validation(format!(
                        "cover has {} paths but the width is {k}",
                        pc.len()
                    ))));
                }
                println!("width: {k}");
            }
        }
        Command::Bench {
            family,
            n,
            m,
            k,
            seeds,
            algo,
            init,
            presparsify,
            reps,
            timeout_s,
            out,
        } => {
            if reps == 0 {
                return Ok(Some(Failure::Usage("--reps must be at least 1".into())));
            }
            let cfg = BenchConfig {
                families: family,
                ns: n,
                ms: m,
                k_parts: k,
                seeds,
                algos: algo,
                inits: init,
                presparsify,
                reps,
                timeout: timeout(timeout_s)?,
            };
            let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            let summary = run_bench(&cfg, BufWriter::new(file))?;
            println!("{} rows written to {}", summary.rows, out.display());
            if !summary.mismatches.is_empty() {
                bail!("solvers disagree:\n{}", summary.mismatches.join("\n"));
            }
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Failure::Validation(msg))) => {
            eprintln!("validation failed: {msg}");
            ExitCode::from(1)
        }
        Ok(Some(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
