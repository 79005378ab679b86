//! Solver selection, timed solving and benchmark sweeps behind the `mpc`
//! binary.

pub mod bench;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use mpc_core::maxflow::{initial_cover, mpc_flow_solver_from, InitKind, SolverKind};
use mpc_core::param::{k2_solve_with, k3_solve_with, ParamOptions};
use mpc_core::sparsify::Presparsify;
use mpc_core::{Dag, Deadline, MpcError, PathCover, Result};

/// Every algorithm the tool can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Flow(SolverKind),
    K3,
    K2,
}

impl Algo {
    pub const ALL: [Algo; 5] = [
        Algo::Flow(SolverKind::Dfs),
        Algo::Flow(SolverKind::Bfs),
        Algo::Flow(SolverKind::Blocking),
        Algo::K3,
        Algo::K2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Flow(kind) => kind.name(),
            Algo::K3 => "k3",
            Algo::K2 => "k2",
        }
    }

    /// Whether the algorithm starts from a chosen initial cover.
    pub fn uses_init(self) -> bool {
        matches!(self, Algo::Flow(_))
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = MpcError;
    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| MpcError::InvalidSpec(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub algo: Algo,
    pub init: InitKind,
    pub presparsify: Presparsify,
    pub check_invariants: bool,
    pub timeout: Option<Duration>,
}

impl SolveConfig {
    pub fn new(algo: Algo) -> Self {
        SolveConfig {
            algo,
            init: InitKind::Naive,
            presparsify: Presparsify::None,
            check_invariants: false,
            timeout: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub cover: PathCover,
    /// Wall time of pre-processing plus solving.
    pub elapsed: Duration,
}

/// Runs pre-processing and the selected solver on `g`, timing both. The
/// returned cover is a cover of `g` itself.
pub fn solve(g: &Dag, cfg: &SolveConfig) -> Result<Solved> {
    let start = Instant::now();
    let deadline = match cfg.timeout {
        Some(t) => Deadline::at(start + t),
        None => Deadline::NONE,
    };
    let pre = cfg.presparsify.apply(g);
    deadline.check()?;
    let h = &pre.g_sparse;
    let cover = match cfg.algo {
        Algo::Flow(kind) => {
            // The greedy heuristic already built a greedy cover; reuse it.
            let init = match (cfg.init, pre.greedy_cover) {
                (InitKind::Greedy, Some(pc)) => pc,
                (init, _) => initial_cover(h, init),
            };
            mpc_flow_solver_from(h, &init, kind, deadline)?.0
        }
        Algo::K3 | Algo::K2 => {
            let opts = ParamOptions {
                check_invariants: cfg.check_invariants,
                deadline,
            };
            let run = if cfg.algo == Algo::K3 { k3_solve_with } else { k2_solve_with };
            run(h, &opts)?.0
        }
    };
    Ok(Solved {
        cover,
        elapsed: start.elapsed(),
    })
}
