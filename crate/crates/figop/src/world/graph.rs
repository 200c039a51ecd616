//! The complete planning graph over frontier clusters, with multi-fidelity
//! edge costs.

use crate::error::{FigOpError, Result};
use crate::geom::Point;
use crate::world::cluster::FrontierCluster;
use crate::world::grid::MetricMap;
use crate::world::topo::{TopoMap, TopoNodeId};

/// Whether an edge cost came from the up-to-date metric grid or the frozen
/// topological graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeFidelity {
    Metric,
    Topological,
}

impl std::fmt::Display for EdgeFidelity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeFidelity::Metric => write!(f, "metric"),
            EdgeFidelity::Topological => write!(f, "topological"),
        }
    }
}

/// A node of the planning graph. Index 0 is always the root (the robot),
/// which carries zero information gain.
#[derive(Debug, Clone)]
pub struct GraphNode {
    /// Stable external identity, used to match nodes between consecutive
    /// planning episodes (the representative topological node id for cluster
    /// nodes, [`FigOpGraph::ROOT_KEY`] for the root).
    pub key: u64,
    pub position: Point,
    pub info_gain: f64,
}

/// A complete graph over the root and frontier clusters: every node pair has
/// a finite, symmetric cost.
#[derive(Debug, Clone)]
pub struct FigOpGraph {
    nodes: Vec<GraphNode>,
    cost: Vec<f64>,
    fidelity: Vec<EdgeFidelity>,
}

impl FigOpGraph {
    /// Index of the root node.
    pub const ROOT: usize = 0;
    /// External key reserved for the root node.
    pub const ROOT_KEY: u64 = u64::MAX;

    /// Builds a graph from nodes (root first) and explicit pairwise costs.
    /// Costs must be finite and non-negative; the matrix is symmetrized from
    /// the given `(i, j, cost, fidelity)` entries and must cover every pair.
    pub fn from_parts(
        nodes: Vec<GraphNode>,
        edges: &[(usize, usize, f64, EdgeFidelity)],
    ) -> Result<Self> {
        let n = nodes.len();
        if n == 0 {
            return Err(FigOpError::Contract("graph needs at least a root node".into()));
        }
        let mut cost = vec![f64::NAN; n * n];
        let mut fidelity = vec![EdgeFidelity::Metric; n * n];
        for i in 0..n {
            cost[i * n + i] = 0.0;
        }
        for &(i, j, c, f) in edges {
            if i >= n || j >= n || i == j {
                return Err(FigOpError::Contract(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if !c.is_finite() || c < 0.0 {
                return Err(FigOpError::InvalidParameter(format!(
                    "edge ({i}, {j}) cost must be finite and >= 0, got {c}"
                )));
            }
            cost[i * n + j] = c;
            cost[j * n + i] = c;
            fidelity[i * n + j] = f;
            fidelity[j * n + i] = f;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if cost[i * n + j].is_nan() {
                    return Err(FigOpError::Contract(format!(
                        "graph is not complete: missing cost for pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(FigOpGraph {
            nodes,
            cost,
            fidelity,
        })
    }

    /// A graph holding only a root node.
    pub fn root_only(position: Point) -> Self {
        FigOpGraph {
            nodes: vec![GraphNode {
                key: Self::ROOT_KEY,
                position,
                info_gain: 0.0,
            }],
            cost: vec![0.0],
            fidelity: vec![EdgeFidelity::Metric],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // there is always a root
    }

    /// Number of nodes other than the root.
    pub fn non_root_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node(&self, i: usize) -> &GraphNode {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> f64 {
        self.cost[i * self.nodes.len() + j]
    }

    pub fn fidelity(&self, i: usize, j: usize) -> EdgeFidelity {
        self.fidelity[i * self.nodes.len() + j]
    }

    #[inline]
    pub fn info_gain(&self, i: usize) -> f64 {
        self.nodes[i].info_gain
    }

    /// Index of the node with the given external key, if present.
    pub fn index_of_key(&self, key: u64) -> Option<usize> {
        self.nodes.iter().position(|n| n.key == key)
    }
}

/// Clusters that could not be connected to the root by either cost source,
/// reported instead of silently dropped.
#[derive(Debug, Clone, Default)]
pub struct GraphDiagnostics {
    /// Cluster ids excluded from the graph.
    pub unreachable: Vec<usize>,
}

/// Builds the complete planning graph rooted at the robot.
///
/// For each node pair, the cost is taken from the metric grid when both
/// endpoints have an image in the current window and a free path exists
/// between them; otherwise it falls back to the shortest path on the
/// topological graph. `force_topological` routes every edge through the
/// topological graph (the low-fidelity variant).
///
/// Clusters reachable by neither source are excluded and reported in the
/// diagnostics, keeping the cost matrix finite.
pub fn build_figop_graph(
    robot: Point,
    clusters: &[FrontierCluster],
    map: &MetricMap,
    topo: &TopoMap,
    force_topological: bool,
) -> Result<(FigOpGraph, GraphDiagnostics)> {
    let robot_cell = map.cell_at(robot);
    if !map.is_free(robot_cell) {
        return Err(FigOpError::Contract(format!(
            "robot cell {robot_cell} is not a free cell of the metric window"
        )));
    }
    let root_topo: Option<TopoNodeId> = topo.nearest_breadcrumb(robot);

    // Endpoint images: metric cell (if any) and topological node per vertex,
    // vertex 0 being the robot.
    let mut metric_cells = vec![Some(robot_cell)];
    let mut topo_ids: Vec<Option<TopoNodeId>> = vec![root_topo];
    for c in clusters {
        metric_cells.push(c.metric_cell);
        topo_ids.push(Some(c.topo_node));
    }

    let pair_cost = |i: usize, j: usize| -> Result<Option<(f64, EdgeFidelity)>> {
        if !force_topological {
            if let (Some(a), Some(b)) = (metric_cells[i], metric_cells[j]) {
                if let Some(c) = map.metric_cost(a, b)? {
                    return Ok(Some((c, EdgeFidelity::Metric)));
                }
            }
        }
        if let (Some(a), Some(b)) = (topo_ids[i], topo_ids[j]) {
            if let Some(c) = topo.topo_cost(a, b)? {
                return Ok(Some((c, EdgeFidelity::Topological)));
            }
        }
        Ok(None)
    };

    // Keep only clusters connected to the root, then fill the matrix over the
    // kept set. Connectivity to the root is transitive through whichever cost
    // source linked them, so the kept set stays pairwise connected; any pair
    // that still fails drops the later cluster.
    let mut kept: Vec<usize> = Vec::new();
    let mut diagnostics = GraphDiagnostics::default();
    for (ci, cluster) in clusters.iter().enumerate() {
        if pair_cost(0, ci + 1)?.is_some() {
            kept.push(ci);
        } else {
            diagnostics.unreachable.push(cluster.id);
        }
    }

    'pairs: loop {
        for a in 0..kept.len() {
            for b in (a + 1)..kept.len() {
                if pair_cost(kept[a] + 1, kept[b] + 1)?.is_none() {
                    let dropped = kept.remove(b);
                    diagnostics.unreachable.push(clusters[dropped].id);
                    continue 'pairs;
                }
            }
        }
        break;
    }

    let mut nodes = vec![GraphNode {
        key: FigOpGraph::ROOT_KEY,
        position: robot,
        info_gain: 0.0,
    }];
    for &ci in &kept {
        let c = &clusters[ci];
        nodes.push(GraphNode {
            key: c.topo_node,
            position: c.centroid,
            info_gain: c.info_gain,
        });
    }

    let mut edges = Vec::new();
    for a in 0..nodes.len() {
        for b in (a + 1)..nodes.len() {
            let (vi, vj) = (
                if a == 0 { 0 } else { kept[a - 1] + 1 },
                kept[b - 1] + 1,
            );
            let (c, f) = pair_cost(vi, vj)?.expect("kept pairs are connected");
            edges.push((a, b, c, f));
        }
    }

    let graph = FigOpGraph::from_parts(nodes, &edges)?;
    Ok((graph, diagnostics))
}

/// Graph constructors for tests and examples.
pub mod test_graphs {
    use super::*;

    /// A complete graph with the root at the origin and non-root nodes with
    /// the given gains; costs are `(i, j, cost)` over node indices with the
    /// root at index 0. Node positions are synthetic.
    pub fn complete_graph(gains: &[f64], costs: &[(usize, usize, f64)]) -> FigOpGraph {
        let mut nodes = vec![GraphNode {
            key: FigOpGraph::ROOT_KEY,
            position: Point::new(0.0, 0.0),
            info_gain: 0.0,
        }];
        for (i, &g) in gains.iter().enumerate() {
            nodes.push(GraphNode {
                key: i as u64,
                position: Point::new((i + 1) as f64, 0.0),
                info_gain: g,
            });
        }
        let edges: Vec<(usize, usize, f64, EdgeFidelity)> = costs
            .iter()
            .map(|&(i, j, c)| (i, j, c, EdgeFidelity::Metric))
            .collect();
        FigOpGraph::from_parts(nodes, &edges).expect("test graph must be valid")
    }

    /// A random complete instance: `n` non-root nodes, costs uniform in
    /// `cost_range`, gains uniform in `gain_range`.
    pub fn random_instance(
        rng: &mut impl rand::Rng,
        n: usize,
        cost_range: (f64, f64),
        gain_range: (f64, f64),
    ) -> FigOpGraph {
        let gains: Vec<f64> = (0..n).map(|_| rng.gen_range(gain_range.0..gain_range.1)).collect();
        let mut costs = Vec::new();
        for i in 0..=n {
            for j in (i + 1)..=n {
                costs.push((i, j, rng.gen_range(cost_range.0..cost_range.1)));
            }
        }
        complete_graph(&gains, &costs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_parts_rejects_incomplete_and_bad_costs() {
        let nodes = vec![
            GraphNode {
                key: FigOpGraph::ROOT_KEY,
                position: Point::new(0.0, 0.0),
                info_gain: 0.0,
            },
            GraphNode {
                key: 1,
                position: Point::new(1.0, 0.0),
                info_gain: 5.0,
            },
            GraphNode {
                key: 2,
                position: Point::new(2.0, 0.0),
                info_gain: 6.0,
            },
        ];
        let missing = FigOpGraph::from_parts(nodes.clone(), &[(0, 1, 3.0, EdgeFidelity::Metric)]);
        assert!(missing.is_err());
        let bad = FigOpGraph::from_parts(
            nodes.clone(),
            &[
                (0, 1, 3.0, EdgeFidelity::Metric),
                (0, 2, f64::INFINITY, EdgeFidelity::Metric),
                (1, 2, 1.0, EdgeFidelity::Metric),
            ],
        );
        assert!(bad.is_err());
        let ok = FigOpGraph::from_parts(
            nodes,
            &[
                (0, 1, 3.0, EdgeFidelity::Metric),
                (0, 2, 4.0, EdgeFidelity::Topological),
                (1, 2, 1.0, EdgeFidelity::Metric),
            ],
        )
        .unwrap();
        assert_eq!(ok.cost(1, 0), 3.0);
        assert_eq!(ok.cost(2, 1), 1.0);
        assert_eq!(ok.fidelity(2, 0), EdgeFidelity::Topological);
    }

    #[test]
    fn cost_matrix_is_symmetric_with_zero_diagonal() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = test_graphs::random_instance(&mut rng, 8, (10.0, 100.0), (1.0, 50.0));
        for i in 0..g.len() {
            assert_eq!(g.cost(i, i), 0.0);
            for j in 0..g.len() {
                assert_eq!(g.cost(i, j).to_bits(), g.cost(j, i).to_bits());
            }
        }
    }
}
