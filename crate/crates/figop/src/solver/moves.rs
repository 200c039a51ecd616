//! Local search move repertoire: node insertion, forward and backward
//! position swaps, and 2-opt segment reversal.
//!
//! Insertion ranks candidates by the penalty-augmented objective; the
//! reordering moves judge the true objective and accept objective-neutral
//! moves only when they strictly shorten the path.

use crate::objective::{evaluate_path, ObjectiveKind, PathEvaluation};
use crate::solver::PenaltyState;
use crate::world::graph::FigOpGraph;

const IMPROVE_EPS: f64 = 1e-12;

pub(crate) struct MoveCtx<'a> {
    pub graph: &'a FigOpGraph,
    pub objective: &'a ObjectiveKind,
    pub budget: f64,
    pub tie_tolerance: f64,
    pub evaluations: u64,
}

impl MoveCtx<'_> {
    pub fn eval(&mut self, path: &[usize]) -> PathEvaluation {
        self.evaluations += 1;
        evaluate_path(path, self.graph, self.objective, self.budget)
            .expect("search paths are valid by construction")
    }

    fn augmented(&self, eval: &PathEvaluation, path: &[usize], penalties: &PenaltyState) -> f64 {
        eval.objective_value - penalties.lambda * penalties.penalized_cost(path, self.graph)
    }

    /// Reordering acceptance: strictly better objective, or an equal
    /// objective (within the tie tolerance) at strictly lower cost.
    fn accepts_reorder(&self, candidate: &PathEvaluation, current: &PathEvaluation) -> bool {
        if !candidate.feasible {
            return false;
        }
        let diff = candidate.objective_value - current.objective_value;
        diff > self.tie_tolerance
            || (diff.abs() <= self.tie_tolerance
                && candidate.total_cost < current.total_cost - IMPROVE_EPS)
    }
}

/// Best feasible single-node insertion that improves the penalty-augmented
/// objective; `None` when no insertion improves.
pub(crate) fn insert_pass(
    path: &[usize],
    ctx: &mut MoveCtx,
    penalties: &PenaltyState,
) -> Option<Vec<usize>> {
    let n = ctx.graph.len();
    let mut visited = vec![false; n];
    for &node in path {
        visited[node] = true;
    }
    let current = ctx.eval(path);
    let current_aug = ctx.augmented(&current, path, penalties);

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut candidate = Vec::with_capacity(path.len() + 1);
    for node in 1..n {
        if visited[node] {
            continue;
        }
        for pos in 1..=path.len() {
            candidate.clear();
            candidate.extend_from_slice(&path[..pos]);
            candidate.push(node);
            candidate.extend_from_slice(&path[pos..]);
            let eval = ctx.eval(&candidate);
            if !eval.feasible {
                continue;
            }
            let aug = ctx.augmented(&eval, &candidate, penalties);
            if aug > current_aug + IMPROVE_EPS
                && best.as_ref().map_or(true, |(b, _)| aug > *b + IMPROVE_EPS)
            {
                best = Some((aug, candidate.clone()));
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Best feasible exchange of one visited node for one unvisited node, judged
/// on the penalty-augmented objective like insertion; `None` when nothing
/// improves. This is the move that lets the search change the visited set
/// when the budget is exhausted.
pub(crate) fn replace_pass(
    path: &[usize],
    ctx: &mut MoveCtx,
    penalties: &PenaltyState,
) -> Option<Vec<usize>> {
    if path.len() <= 1 {
        return None;
    }
    let n = ctx.graph.len();
    let mut visited = vec![false; n];
    for &node in path {
        visited[node] = true;
    }
    let current = ctx.eval(path);
    let current_aug = ctx.augmented(&current, path, penalties);

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut candidate = path.to_vec();
    for pos in 1..path.len() {
        let original = candidate[pos];
        for node in 1..n {
            if visited[node] {
                continue;
            }
            candidate[pos] = node;
            let eval = ctx.eval(&candidate);
            if eval.feasible {
                let aug = ctx.augmented(&eval, &candidate, penalties);
                if aug > current_aug + IMPROVE_EPS
                    && best.as_ref().map_or(true, |(b, _)| aug > *b + IMPROVE_EPS)
                {
                    best = Some((aug, candidate.clone()));
                }
            }
        }
        candidate[pos] = original;
    }
    best.map(|(_, p)| p)
}

/// One first-improvement pass of position exchanges over the path, scanning
/// forward (`reverse = false`) or from the tail toward the root
/// (`reverse = true`). Mutates `path` in place; returns whether any exchange
/// was accepted.
pub(crate) fn swap_pass(path: &mut Vec<usize>, ctx: &mut MoveCtx, reverse: bool) -> bool {
    if path.len() <= 2 {
        return false;
    }
    let mut current = ctx.eval(path);
    let mut accepted = false;
    let positions: Vec<(usize, usize)> = if reverse {
        let mut v = Vec::new();
        for i in (2..path.len()).rev() {
            for j in (1..i).rev() {
                v.push((j, i));
            }
        }
        v
    } else {
        let mut v = Vec::new();
        for i in 1..path.len() {
            for j in (i + 1)..path.len() {
                v.push((i, j));
            }
        }
        v
    };
    for (i, j) in positions {
        path.swap(i, j);
        let eval = ctx.eval(path);
        if ctx.accepts_reorder(&eval, &current) {
            current = eval;
            accepted = true;
        } else {
            path.swap(i, j);
        }
    }
    accepted
}

/// One first-improvement pass of single-node relocations: pull a node out of
/// its position and reinsert it elsewhere. Same acceptance rule as the
/// swaps. Relocation covers order changes that pairwise exchanges cannot
/// reach one accepted move at a time.
pub(crate) fn relocate_pass(path: &mut Vec<usize>, ctx: &mut MoveCtx) -> bool {
    if path.len() <= 2 {
        return false;
    }
    let mut current = ctx.eval(path);
    let mut accepted = false;
    for from in 1..path.len() {
        for to in 1..path.len() {
            if to == from {
                continue;
            }
            let node = path.remove(from);
            path.insert(to, node);
            let eval = ctx.eval(path);
            if ctx.accepts_reorder(&eval, &current) {
                current = eval;
                accepted = true;
            } else {
                let node = path.remove(to);
                path.insert(from, node);
            }
        }
    }
    accepted
}

/// Cost compression: relocations and reversals accepted purely for strictly
/// lower total cost, objective ignored. Run after restarts to squeeze slack
/// out of the route so that further insertions fit the budget; the objective
/// moves afterwards repair any ordering damage.
pub(crate) fn compress_pass(path: &mut Vec<usize>, ctx: &mut MoveCtx) -> bool {
    if path.len() <= 2 {
        return false;
    }
    let mut current = ctx.eval(path).total_cost;
    let mut accepted = false;
    for from in 1..path.len() {
        for to in 1..path.len() {
            if to == from {
                continue;
            }
            let node = path.remove(from);
            path.insert(to, node);
            let cost = ctx.eval(path).total_cost;
            if cost < current - IMPROVE_EPS {
                current = cost;
                accepted = true;
            } else {
                let node = path.remove(to);
                path.insert(from, node);
            }
        }
    }
    for i in 1..path.len().saturating_sub(1) {
        for j in (i + 1)..path.len() {
            path[i..=j].reverse();
            let cost = ctx.eval(path).total_cost;
            if cost < current - IMPROVE_EPS {
                current = cost;
                accepted = true;
            } else {
                path[i..=j].reverse();
            }
        }
    }
    accepted
}

/// One first-improvement pass of inner segment reversals (2-opt). Same
/// acceptance rule as the swaps.
pub(crate) fn two_opt_pass(path: &mut Vec<usize>, ctx: &mut MoveCtx) -> bool {
    if path.len() <= 3 {
        return false;
    }
    let mut current = ctx.eval(path);
    let mut accepted = false;
    for i in 1..path.len() - 1 {
        for j in (i + 1)..path.len() {
            path[i..=j].reverse();
            let eval = ctx.eval(path);
            if ctx.accepts_reorder(&eval, &current) {
                current = eval;
                accepted = true;
            } else {
                path[i..=j].reverse();
            }
        }
    }
    accepted
}

fn ctx_for<'a>(
    graph: &'a FigOpGraph,
    objective: &'a ObjectiveKind,
    budget: f64,
) -> MoveCtx<'a> {
    MoveCtx {
        graph,
        objective,
        budget,
        tie_tolerance: 1e-9,
        evaluations: 0,
    }
}

/// Best single-node insertion under the penalty-augmented objective;
/// returns the input path when nothing improves.
pub fn local_move_insert(
    path: &[usize],
    graph: &FigOpGraph,
    objective: &ObjectiveKind,
    budget: f64,
    penalties: &PenaltyState,
) -> Vec<usize> {
    let mut ctx = ctx_for(graph, objective, budget);
    insert_pass(path, &mut ctx, penalties).unwrap_or_else(|| path.to_vec())
}

/// One forward swap pass; returns the (possibly unchanged) path.
pub fn local_move_swap(
    path: &[usize],
    graph: &FigOpGraph,
    objective: &ObjectiveKind,
    budget: f64,
) -> Vec<usize> {
    let mut ctx = ctx_for(graph, objective, budget);
    let mut p = path.to_vec();
    swap_pass(&mut p, &mut ctx, false);
    p
}

/// One backward swap pass (tail toward root); returns the (possibly
/// unchanged) path.
pub fn local_move_backward_swap(
    path: &[usize],
    graph: &FigOpGraph,
    objective: &ObjectiveKind,
    budget: f64,
) -> Vec<usize> {
    let mut ctx = ctx_for(graph, objective, budget);
    let mut p = path.to_vec();
    swap_pass(&mut p, &mut ctx, true);
    p
}

/// One 2-opt pass; returns the (possibly unchanged) path.
pub fn local_move_two_opt(
    path: &[usize],
    graph: &FigOpGraph,
    objective: &ObjectiveKind,
    budget: f64,
) -> Vec<usize> {
    let mut ctx = ctx_for(graph, objective, budget);
    let mut p = path.to_vec();
    two_opt_pass(&mut p, &mut ctx);
    p
}
