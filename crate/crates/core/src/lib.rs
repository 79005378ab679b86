//! Minimum path cover (MPC) solvers for directed acyclic graphs.
//!
//! The crate covers the classic minimum-flow route (a split-vertex flow
//! network solved from a naive or greedy initial cover with DFS, BFS or
//! blocking-flow augmentation), the parameterized solvers that process
//! vertices in topological order with a layered residual traversal, two
//! transitive sparsification heuristics, and seeded dataset generators.
//!
//! ```
//! use mpc_core::graph::{validate_path_cover, Dag};
//! use mpc_core::param::k2_solve;
//!
//! let g = Dag::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
//! let cover = k2_solve(&g).unwrap();
//! assert_eq!(cover.len(), 2);
//! assert!(validate_path_cover(&g, &cover).is_valid());
//! ```

pub mod bitset;
pub mod deadline;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod maxflow;
pub mod param;
pub mod sparsify;

pub use deadline::Deadline;
pub use error::{MpcError, Result};
pub use graph::{Dag, PathCover, Vertex};
