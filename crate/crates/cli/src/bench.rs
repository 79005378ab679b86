//! Benchmark sweeps: every cell is run `reps` times and written as one CSV
//! row per repetition plus a `mean` row.

use std::io::Write;
use std::time::Duration;

use anyhow::{Context, Result};
use mpc_core::generators::{generate, Family, GenSpec};
use mpc_core::maxflow::InitKind;
use mpc_core::sparsify::Presparsify;
use mpc_core::MpcError;
use serde::{Deserialize, Serialize};

use crate::{solve, Algo, SolveConfig};

/// One CSV row. Width and time are empty for timed-out runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub solver: String,
    pub init: String,
    pub presparsify: String,
    pub family: String,
    pub n: usize,
    pub m: u64,
    pub k_parts: Option<usize>,
    pub seed: u64,
    /// Repetition index, or `mean` for the aggregate row.
    pub rep: String,
    pub width: Option<usize>,
    pub time_ms: Option<f64>,
    pub timed_out: bool,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub ns: Vec<usize>,
    pub ms: Vec<u64>,
    pub k_parts: Option<usize>,
    pub seeds: Vec<u64>,
    pub algos: Vec<Algo>,
    pub inits: Vec<InitKind>,
    pub presparsify: Vec<Presparsify>,
    pub reps: usize,
    pub timeout: Option<Duration>,
}

#[derive(Debug, Default)]
pub struct BenchSummary {
    pub rows: usize,
    /// Instances on which two solvers reported different widths.
    pub mismatches: Vec<String>,
}

/// Runs the sweep sequentially, flushing after every row so an interrupted
/// sweep leaves a readable CSV.
pub fn run_bench(cfg: &BenchConfig, out: impl Write) -> Result<BenchSummary> {
    let mut w = csv::Writer::from_writer(out);
    let mut summary = BenchSummary::default();
    for &family in &cfg.families {
        for &n in &cfg.ns {
            for &m in &cfg.ms {
                for &seed in &cfg.seeds {
                    let spec = GenSpec {
                        family,
                        n,
                        m,
                        k_parts: cfg.k_parts,
                        seed,
                    };
                    let g = generate(&spec).with_context(|| format!("generating {spec:?}"))?;
                    let mut widths = Vec::new();
                    for (algo, init, pre) in cells(cfg) {
                        let solve_cfg = SolveConfig {
                            init,
                            presparsify: pre,
                            timeout: cfg.timeout,
                            ..SolveConfig::new(algo)
                        };
                        let base = BenchRecord {
                            solver: algo.name().into(),
                            init: init.name().into(),
                            presparsify: pre.name().into(),
                            family: family.name().into(),
                            n,
                            m,
                            k_parts: (family == Family::PathPartition).then_some(cfg.k_parts).flatten(),
                            seed,
                            rep: String::new(),
                            width: None,
                            time_ms: None,
                            timed_out: false,
                        };
                        let mut times = Vec::new();
                        let mut any_timeout = false;
                        for rep in 0..cfg.reps {
                            let mut row = BenchRecord {
                                rep: rep.to_string(),
                                ..base.clone()
                            };
                            match solve(&g, &solve_cfg) {
                                Ok(s) => {
                                    let ms = s.elapsed.as_secs_f64() * 1e3;
                                    row.width = Some(s.cover.len());
                                    row.time_ms = Some(ms);
                                    times.push(ms);
                                    widths.push((algo, s.cover.len()));
                                }
                                Err(MpcError::TimedOut) => {
                                    row.timed_out = true;
                                    any_timeout = true;
                                }
                                Err(e) => return Err(e).context(format!("{algo} on {spec:?}")),
                            }
                            w.serialize(&row)?;
                            w.flush()?;
                            summary.rows += 1;
                        }
                        let mean = BenchRecord {
                            rep: "mean".into(),
                            width: (!any_timeout).then(|| widths.last().map(|&(_, k)| k)).flatten(),
                            time_ms: (!any_timeout && !times.is_empty())
                                .then(|| times.iter().sum::<f64>() / times.len() as f64),
                            timed_out: any_timeout,
                            ..base
                        };
                        w.serialize(&mean)?;
                        w.flush()?;
                        summary.rows += 1;
                    }
                    if let Some(&(first, k)) = widths.first() {
                        if let Some(&(other, k2)) = widths.iter().find(|&&(_, x)| x != k) {
                            summary
                                .mismatches
                                .push(format!("{spec:?}: {first} gives {k}, {other} gives {k2}"));
                        }
                    }
                }
            }
        }
    }
    Ok(summary)
}

/// Solver cells of one instance. Algorithms without an initial cover run
/// once, labelled `naive`.
fn cells(cfg: &BenchConfig) -> Vec<(Algo, InitKind, Presparsify)> {
    let mut out = Vec::new();
    for &algo in &cfg.algos {
        for &init in &cfg.inits {
            if !algo.uses_init() && init != InitKind::Naive {
                continue;
            }
            for &pre in &cfg.presparsify {
                out.push((algo, init, pre));
            }
        }
        if !algo.uses_init() && !cfg.inits.contains(&InitKind::Naive) {
            out.extend(cfg.presparsify.iter().map(|&pre| (algo, InitKind::Naive, pre)));
        }
    }
    out
}

/// Reads rows written by [`run_bench`].
pub fn read_records(input: impl std::io::Read) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}
