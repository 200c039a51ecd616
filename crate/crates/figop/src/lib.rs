//! Budgeted exploration planning with frontloaded information gain.
//!
//! The crate covers the full pipeline from world modeling to benchmarking:
//!
//! * [`objective`] — the frontloading factor, plain and exponentially
//!   discounted alternatives, and exact path evaluation under a budget.
//! * [`world`] — rolling metric risk grid, global topological map, frontier
//!   detection and clustering, information gain, and the multi-fidelity
//!   complete planning graph.
//! * [`solver`] — guided local search with swap/backward-swap/insert/2-opt
//!   moves and warm starts, plus greedy and exact baselines.
//! * [`sim`] — a deterministic grid-world simulator running the
//!   sense/plan/execute loop with injectable risk fluctuation.
//! * [`bench`] — scenario files, experiment suites, and CSV reporting.
//! * [`instance`] — a standalone text format for solver instances.
//!
//! The `figop` binary exposes the `solve`, `explore`, `expected-ig`,
//! `sensitivity`, and `gen-env` subcommands; the `examples/` directory has
//! one runnable example per capability.

pub mod bench;
pub mod error;
pub mod geom;
pub mod instance;
pub mod objective;
pub mod sim;
pub mod solver;
pub mod world;

pub use error::{FigOpError, Result};
pub use geom::{Cell, Point};
pub use objective::{
    evaluate_path, exp_factor, frontload_factor, ExpDiscountParams, FrontloadParams,
    ObjectiveKind, PathEvaluation,
};
pub use solver::{
    brute_force_solve, seed_from_previous, solve_gls, solve_greedy, GlsParams, PenaltyState,
    Solution, SolveRequest, SolverKind,
};
pub use world::{
    build_figop_graph, cluster_frontiers, estimate_info_gain, CellState, EdgeFidelity,
    FigOpGraph, FrontierCluster, GraphNode, MetricMap, SensorModel, TopoMap, TopoNode,
};
