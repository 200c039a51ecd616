//! World model: rolling metric grid, global topological map, frontier
//! clustering, information gain, and the multi-fidelity planning graph.

pub mod cluster;
pub mod graph;
pub mod grid;
pub mod info_gain;
pub mod topo;

pub use cluster::{attach_metric_cells, cluster_frontiers, FrontierCluster};
pub use graph::{build_figop_graph, EdgeFidelity, FigOpGraph, GraphDiagnostics, GraphNode};
pub use grid::{CellState, MetricMap};
pub use info_gain::{estimate_info_gain, SensorModel};
pub use topo::{NodeKind, TopoMap, TopoNode, TopoNodeId};
