//! Global sparse topological map: breadcrumbs dropped along the traversed
//! path and frontier nodes, joined by edges whose weights are frozen at
//! creation time.

use std::collections::BTreeMap;

use crate::error::{FigOpError, Result};
use crate::geom::Point;

pub type TopoNodeId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Breadcrumb,
    Frontier,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopoNode {
    pub id: TopoNodeId,
    pub position: Point,
    pub kind: NodeKind,
}

/// Weighted undirected graph over breadcrumb and frontier nodes. Edge weights
/// are set once when an edge is created and never updated afterwards.
#[derive(Debug, Clone, Default)]
pub struct TopoMap {
    nodes: BTreeMap<TopoNodeId, TopoNode>,
    adjacency: BTreeMap<TopoNodeId, Vec<(TopoNodeId, f64)>>,
    next_id: TopoNodeId,
}

impl TopoMap {
    pub fn new() -> Self {
        TopoMap::default()
    }

    pub fn add_node(&mut self, position: Point, kind: NodeKind) -> TopoNodeId {
        let id = self.next_id;
        self.next_id += 1;
        self.nodes.insert(id, TopoNode { id, position, kind });
        self.adjacency.insert(id, Vec::new());
        id
    }

    pub fn remove_node(&mut self, id: TopoNodeId) {
        if self.nodes.remove(&id).is_none() {
            return;
        }
        if let Some(neighbors) = self.adjacency.remove(&id) {
            for (other, _) in neighbors {
                if let Some(list) = self.adjacency.get_mut(&other) {
                    list.retain(|&(n, _)| n != id);
                }
            }
        }
    }

    /// Adds an undirected edge with a frozen weight. Re-adding an existing
    /// edge keeps the original weight.
    pub fn add_edge(&mut self, a: TopoNodeId, b: TopoNodeId, weight: f64) -> Result<()> {
        if a == b {
            return Err(FigOpError::Contract("self edges are not allowed".into()));
        }
        if !self.nodes.contains_key(&a) || !self.nodes.contains_key(&b) {
            return Err(FigOpError::Contract(format!(
                "edge endpoints must exist: {a}, {b}"
            )));
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(FigOpError::InvalidParameter(format!(
                "edge weight must be finite and > 0, got {weight}"
            )));
        }
        if self.adjacency[&a].iter().any(|&(n, _)| n == b) {
            return Ok(());
        }
        self.adjacency.get_mut(&a).unwrap().push((b, weight));
        self.adjacency.get_mut(&b).unwrap().push((a, weight));
        Ok(())
    }

    pub fn node(&self, id: TopoNodeId) -> Option<&TopoNode> {
        self.nodes.get(&id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &TopoNode> {
        self.nodes.values()
    }

    pub fn breadcrumbs(&self) -> impl Iterator<Item = &TopoNode> {
        self.nodes.values().filter(|n| n.kind == NodeKind::Breadcrumb)
    }

    pub fn frontiers(&self) -> impl Iterator<Item = &TopoNode> {
        self.nodes.values().filter(|n| n.kind == NodeKind::Frontier)
    }

    pub fn edge_weight(&self, a: TopoNodeId, b: TopoNodeId) -> Option<f64> {
        self.adjacency
            .get(&a)?
            .iter()
            .find(|&&(n, _)| n == b)
            .map(|&(_, w)| w)
    }

    /// The breadcrumb closest to `p` by Euclidean distance, ties broken by id.
    pub fn nearest_breadcrumb(&self, p: Point) -> Option<TopoNodeId> {
        let mut best: Option<(f64, TopoNodeId)> = None;
        for n in self.breadcrumbs() {
            let d = n.position.distance(p);
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, n.id));
            }
        }
        best.map(|(_, id)| id)
    }

    /// Shortest-path distance over edge weights. `Ok(None)` when the nodes
    /// are disconnected; contract error for unknown ids.
    pub fn topo_cost(&self, from: TopoNodeId, to: TopoNodeId) -> Result<Option<f64>> {
        Ok(self.shortest_path(from, to)?.map(|(d, _)| d))
    }

    /// Shortest path as (distance, node sequence).
    pub fn shortest_path(
        &self,
        from: TopoNodeId,
        to: TopoNodeId,
    ) -> Result<Option<(f64, Vec<TopoNodeId>)>> {
        if !self.nodes.contains_key(&from) || !self.nodes.contains_key(&to) {
            return Err(FigOpError::Contract(format!(
                "unknown topo node id: {from} or {to}"
            )));
        }
        if from == to {
            return Ok(Some((0.0, vec![from])));
        }

        use std::cmp::Ordering;
        use std::collections::BinaryHeap;

        #[derive(PartialEq)]
        struct Entry(f64, TopoNodeId);
        impl Eq for Entry {}
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> Ordering {
                other
                    .0
                    .partial_cmp(&self.0)
                    .unwrap_or(Ordering::Equal)
                    .then(other.1.cmp(&self.1))
            }
        }
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        let mut dist: BTreeMap<TopoNodeId, f64> = BTreeMap::new();
        let mut prev: BTreeMap<TopoNodeId, TopoNodeId> = BTreeMap::new();
        let mut heap = BinaryHeap::new();
        dist.insert(from, 0.0);
        heap.push(Entry(0.0, from));
        while let Some(Entry(d, u)) = heap.pop() {
            if d > *dist.get(&u).unwrap_or(&f64::INFINITY) {
                continue;
            }
            if u == to {
                break;
            }
            for &(v, w) in &self.adjacency[&u] {
                let nd = d + w;
                if nd < *dist.get(&v).unwrap_or(&f64::INFINITY) {
                    dist.insert(v, nd);
                    prev.insert(v, u);
                    heap.push(Entry(nd, v));
                }
            }
        }
        let total = match dist.get(&to) {
            Some(&d) => d,
            None => return Ok(None),
        };
        let mut path = vec![to];
        let mut cur = to;
        while let Some(&p) = prev.get(&cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(Some((total, path)))
    }
}
