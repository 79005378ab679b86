//! Minimum-flow MPC solvers: an initial cover (naive or greedy) is turned
//! into a flow and shrunk to a minimum one by repeated augmentation.

mod dinic;
mod greedy;

pub use dinic::blocking_max_flow;
pub use greedy::greedy_cover;
pub(crate) use greedy::{GreedyDp, InLists};

use std::fmt;
use std::str::FromStr;

use crate::deadline::Deadline;
use crate::error::{MpcError, Result};
use crate::flow::{
    apply_residual_path, build_flow_reduction, check_feasible, decompose_flow, path_cover_to_flow,
    Flow, FlowReduction, MaxFlowInstance, ResidualSearch, SearchOrder,
};
use crate::graph::{Dag, PathCover, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitKind {
    Naive,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Dfs,
    Bfs,
    Blocking,
}

impl InitKind {
    pub const ALL: [InitKind; 2] = [InitKind::Naive, InitKind::Greedy];

    pub fn name(self) -> &'static str {
        match self {
            InitKind::Naive => "naive",
            InitKind::Greedy => "greedy",
        }
    }
}

impl SolverKind {
    pub const ALL: [SolverKind; 3] = [SolverKind::Dfs, SolverKind::Bfs, SolverKind::Blocking];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Dfs => "dfs",
            SolverKind::Bfs => "bfs",
            SolverKind::Blocking => "blocking",
        }
    }
}

impl fmt::Display for InitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitKind {
    type Err = MpcError;
    fn from_str(s: &str) -> Result<Self> {
        InitKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| MpcError::InvalidSpec(format!("unknown init `{s}`")))
    }
}

impl FromStr for SolverKind {
    type Err = MpcError;
    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| MpcError::InvalidSpec(format!("unknown solver `{s}`")))
    }
}

/// One singleton path per vertex, in id order.
pub fn naive_cover(g: &Dag) -> PathCover {
    PathCover::new((0..g.n() as Vertex).map(|v| vec![v]).collect())
}

pub fn initial_cover(g: &Dag, init: InitKind) -> PathCover {
    match init {
        InitKind::Naive => naive_cover(g),
        InitKind::Greedy => greedy_cover(g),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MinflowStats {
    /// Residual paths applied (Dfs/Bfs) or augmenting paths pushed (Blocking).
    pub augmentations: u64,
    /// Level graphs built by the blocking-flow solver.
    pub phases: u64,
}

pub fn solve_minflow(r: &FlowReduction, f0: &Flow, kind: SolverKind) -> Result<Flow> {
    solve_minflow_with(r, f0, kind, Deadline::NONE).map(|(f, _)| f)
}

pub fn solve_minflow_with(
    r: &FlowReduction,
    f0: &Flow,
    kind: SolverKind,
    deadline: Deadline,
) -> Result<(Flow, MinflowStats)> {
    check_feasible(r, f0)?;
    let mut stats = MinflowStats::default();
    match kind {
        SolverKind::Dfs | SolverKind::Bfs => {
            let order = if kind == SolverKind::Dfs {
                SearchOrder::DepthFirst
            } else {
                SearchOrder::BreadthFirst
            };
            let mut f = f0.clone();
            let mut search = ResidualSearch::new(r);
            loop {
                deadline.check()?;
                let Some(path) = search.find(r, &f, order) else {
                    break;
                };
                apply_residual_path(r, &mut f, &path)?;
                stats.augmentations += 1;
            }
            Ok((f, stats))
        }
        SolverKind::Blocking => {
            let inst = MaxFlowInstance::from_flow(r, f0);
            let out = blocking_max_flow(&inst, deadline)?;
            stats.augmentations = out.augmentations;
            stats.phases = out.phases;
            let f = inst.apply(f0, &out.net)?;
            debug_assert_eq!(f.size(r), inst.initial_size - out.value);
            Ok((f, stats))
        }
    }
}

/// Minimum path cover through the flow reduction.
pub fn mpc_flow_solver(g: &Dag, init: InitKind, kind: SolverKind) -> Result<PathCover> {
    let start = initial_cover(g, init);
    mpc_flow_solver_from(g, &start, kind, Deadline::NONE).map(|(pc, _)| pc)
}

/// Like [`mpc_flow_solver`], starting from a given valid cover of `g`.
pub fn mpc_flow_solver_from(
    g: &Dag,
    start: &PathCover,
    kind: SolverKind,
    deadline: Deadline,
) -> Result<(PathCover, MinflowStats)> {
    if g.n() == 0 {
        return Ok((PathCover::default(), MinflowStats::default()));
    }
    let r = build_flow_reduction(g);
    let f0 = path_cover_to_flow(&r, g, start)?;
    let (f, stats) = solve_minflow_with(&r, &f0, kind, deadline)?;
    Ok((decompose_flow(&r, &f)?, stats))
}
