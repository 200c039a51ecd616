//! Warm-start seeding between consecutive planning episodes.

use crate::objective::{evaluate_path, ObjectiveKind};
use crate::solver::Solution;
use crate::world::graph::FigOpGraph;

/// Builds a seed path on `new_graph` from the previous episode's solution.
///
/// Nodes of the previous path that still exist (matched by external key) are
/// kept in order; nodes new to the graph are inserted in front of them, in
/// greedy nearest-first order among themselves; the result is truncated from
/// the tail until it fits the budget.
pub fn seed_from_previous(
    prev: &Solution,
    prev_graph: &FigOpGraph,
    new_graph: &FigOpGraph,
    budget: f64,
) -> Vec<usize> {
    let prev_keys = prev.visited_keys(prev_graph);
    seed_from_keys(&prev_keys, new_graph, budget)
}

/// Same as [`seed_from_previous`] but starting from the previous path's node
/// keys directly.
pub fn seed_from_keys(prev_keys: &[u64], new_graph: &FigOpGraph, budget: f64) -> Vec<usize> {
    let retained: Vec<usize> = prev_keys
        .iter()
        .filter_map(|&k| new_graph.index_of_key(k))
        .collect();

    let mut fresh: Vec<usize> = (1..new_graph.len())
        .filter(|&i| !prev_keys.contains(&new_graph.node(i).key))
        .collect();

    // order the new nodes as a nearest-first chain from the root
    let mut chain = Vec::with_capacity(fresh.len());
    let mut current = FigOpGraph::ROOT;
    while !fresh.is_empty() {
        let (pos, _) = fresh
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                new_graph
                    .cost(current, a)
                    .partial_cmp(&new_graph.cost(current, b))
                    .unwrap()
                    .then(a.cmp(&b))
            })
            .unwrap();
        current = fresh.remove(pos);
        chain.push(current);
    }

    let mut path = vec![FigOpGraph::ROOT];
    path.extend(chain);
    path.extend(retained);

    loop {
        let eval = evaluate_path(&path, new_graph, &ObjectiveKind::Op, budget)
            .expect("seed path is valid by construction");
        if eval.feasible {
            return path;
        }
        path.pop();
    }
}
