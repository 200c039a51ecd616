//! Exhaustive oracle: the factor depends on prefix cost, so visit order
//! matters and every ordered subset must be tried.

use crate::error::{FigOpError, Result};
use crate::objective::{evaluate_path, ObjectiveKind};
use crate::solver::{Solution, SolverKind};
use crate::world::graph::FigOpGraph;

const MAX_NODES: usize = 9;
const TIE: f64 = 1e-12;

/// Enumerates all ordered subsets of non-root nodes (up to 9 of them) and
/// returns the feasible maximum. Ties prefer lower total cost, then the
/// lexicographically smaller node sequence.
pub fn brute_force_solve(
    graph: &FigOpGraph,
    objective: &ObjectiveKind,
    budget: f64,
) -> Result<Solution> {
    let n = graph.non_root_count();
    if n > MAX_NODES {
        return Err(FigOpError::TooLarge(format!(
            "exact enumeration handles at most {MAX_NODES} non-root nodes, got {n}"
        )));
    }

    struct Search<'a> {
        graph: &'a FigOpGraph,
        objective: &'a ObjectiveKind,
        budget: f64,
        path: Vec<usize>,
        used: Vec<bool>,
        best_path: Vec<usize>,
        best_objective: f64,
        best_cost: f64,
    }

    impl Search<'_> {
        fn consider(&mut self, objective: f64, cost: f64) {
            let better = objective > self.best_objective + TIE
                || ((objective - self.best_objective).abs() <= TIE
                    && (cost < self.best_cost - TIE
                        || ((cost - self.best_cost).abs() <= TIE
                            && self.path < self.best_path)));
            if better {
                self.best_path = self.path.clone();
                self.best_objective = objective;
                self.best_cost = cost;
            }
        }

        fn recurse(&mut self, objective: f64, cost: f64) {
            let current = *self.path.last().unwrap();
            for node in 1..self.graph.len() {
                if self.used[node] {
                    continue;
                }
                // prefix sums accumulate exactly like path evaluation does
                let next_cost = cost + self.graph.cost(current, node);
                if next_cost > self.budget {
                    continue;
                }
                let next_objective =
                    objective + self.objective.factor(next_cost) * self.graph.info_gain(node);
                self.used[node] = true;
                self.path.push(node);
                self.consider(next_objective, next_cost);
                self.recurse(next_objective, next_cost);
                self.path.pop();
                self.used[node] = false;
            }
        }
    }

    let mut search = Search {
        graph,
        objective,
        budget,
        path: vec![FigOpGraph::ROOT],
        used: vec![false; graph.len()],
        best_path: vec![FigOpGraph::ROOT],
        best_objective: 0.0,
        best_cost: 0.0,
    };
    search.used[FigOpGraph::ROOT] = true;
    search.recurse(0.0, 0.0);

    let best_path = search.best_path;
    let evaluation = evaluate_path(&best_path, graph, objective, budget)?;
    Ok(Solution {
        path: best_path,
        evaluation,
        iterations: 1,
        solver: SolverKind::BruteForce,
    })
}
