//! Objective shapes for budgeted information-gathering paths.
//!
//! A path on a [`FigOpGraph`] collects each visited node's information gain,
//! weighted by a factor of the action cost accumulated up to that node. Three
//! factor shapes are supported:
//!
//! * frontloaded: `1 + k1 / (1 + exp((a - k2) / k3))`, a reversed logistic
//!   that inflates near-term gain and converges to 1 for distant nodes,
//! * plain orienteering: constant 1,
//! * exponential discount: `gamma^(a / k)`.

use crate::error::{FigOpError, Result};
use crate::world::graph::FigOpGraph;

/// Shaping parameters of the frontloading factor: amplitude `k1`, inflection
/// point `k2` (meters of action cost), steepness `k3` (meters).
///
/// `k1 = 0` is allowed and reduces the factor to a constant 1, i.e. the plain
/// orienteering objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontloadParams {
    k1: f64,
    k2: f64,
    k3: f64,
}

impl FrontloadParams {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Result<Self> {
        if !k1.is_finite() || k1 < 0.0 {
            return Err(FigOpError::InvalidParameter(format!(
                "frontload amplitude k1 must be finite and >= 0, got {k1}"
            )));
        }
        if !k2.is_finite() || k2 <= 0.0 {
            return Err(FigOpError::InvalidParameter(format!(
                "frontload inflection k2 must be finite and > 0, got {k2}"
            )));
        }
        if !k3.is_finite() || k3 <= 0.0 {
            return Err(FigOpError::InvalidParameter(format!(
                "frontload steepness k3 must be finite and > 0, got {k3}"
            )));
        }
        Ok(FrontloadParams { k1, k2, k3 })
    }

    /// The reference parameterization used throughout the benchmarks:
    /// `k1 = 1`, `k2 = 50`, `k3 = 10`.
    pub fn reference() -> Self {
        FrontloadParams {
            k1: 1.0,
            k2: 50.0,
            k3: 10.0,
        }
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn k3(&self) -> f64 {
        self.k3
    }
}

/// Parameters of the exponentially decaying discount `gamma^(a / k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpDiscountParams {
    gamma: f64,
    k: f64,
}

impl ExpDiscountParams {
    pub fn new(gamma: f64, k: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 || gamma > 1.0 {
            return Err(FigOpError::InvalidParameter(format!(
                "discount gamma must be in (0, 1], got {gamma}"
            )));
        }
        if !k.is_finite() || k <= 0.0 {
            return Err(FigOpError::InvalidParameter(format!(
                "discount cost scale k must be finite and > 0, got {k}"
            )));
        }
        Ok(ExpDiscountParams { gamma, k })
    }

    /// The reference discount used in the benchmarks: `gamma = 0.7`, `k = 50`.
    pub fn reference() -> Self {
        ExpDiscountParams { gamma: 0.7, k: 50.0 }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

/// The objective shape applied to a path's node rewards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObjectiveKind {
    /// Frontloaded information gain.
    Fig(FrontloadParams),
    /// Plain orienteering: every node's gain counts fully regardless of cost.
    Op,
    /// Exponentially discounted gain.
    Exp(ExpDiscountParams),
}

impl ObjectiveKind {
    /// Reward multiplier for a node visited at cumulative action cost `a`.
    pub fn factor(&self, a: f64) -> f64 {
        match self {
            ObjectiveKind::Fig(p) => frontload_factor(a, p),
            ObjectiveKind::Op => 1.0,
            ObjectiveKind::Exp(p) => exp_factor(a, p),
        }
    }
}

/// The frontloading factor `1 + k1 * S((a - k2) / k3)` where `S` is the
/// reversed logistic `S(x) = 1 / (1 + e^x)`.
///
/// Strictly decreasing in `a` for `k1 > 0`, bounded in `(1, 1 + k1)`, equal to
/// exactly `1 + k1/2` at `a = k2`, and converging to 1 as `a` grows.
pub fn frontload_factor(a: f64, p: &FrontloadParams) -> f64 {
    1.0 + p.k1 / (1.0 + ((a - p.k2) / p.k3).exp())
}

/// The exponential discount `gamma^(a / k)`, in (0, 1] for `a >= 0`.
pub fn exp_factor(a: f64, p: &ExpDiscountParams) -> f64 {
    p.gamma.powf(a / p.k)
}

/// Result of evaluating a node sequence against a graph and budget.
#[derive(Debug, Clone, PartialEq)]
pub struct PathEvaluation {
    /// Sum over non-root nodes of `factor(prefix cost) * info_gain`.
    pub objective_value: f64,
    /// Total action cost of the path, meters.
    pub total_cost: f64,
    /// True iff `total_cost <= budget`.
    pub feasible: bool,
    /// Cumulative action cost at each visited node, root included (always
    /// starts at 0 and is non-decreasing).
    pub per_node_cumulative_cost: Vec<f64>,
}

impl PathEvaluation {
    /// Evaluation of the root-only path.
    pub fn empty() -> Self {
        PathEvaluation {
            objective_value: 0.0,
            total_cost: 0.0,
            feasible: true,
            per_node_cumulative_cost: vec![0.0],
        }
    }
}

/// Evaluates `path` (node indices into `graph`, starting at the root) under
/// the given objective and budget.
///
/// Infeasible paths are evaluated rather than rejected: local search needs to
/// compare them. The returned `feasible` flag reflects the budget.
pub fn evaluate_path(
    path: &[usize],
    graph: &FigOpGraph,
    objective: &ObjectiveKind,
    budget: f64,
) -> Result<PathEvaluation> {
    if path.is_empty() || path[0] != FigOpGraph::ROOT {
        return Err(FigOpError::Contract(
            "path must start at the graph root".into(),
        ));
    }
    let n = graph.len();
    let mut visited = vec![false; n];
    for &node in path {
        if node >= n {
            return Err(FigOpError::Contract(format!(
                "path references node {node} but graph has {n} nodes"
            )));
        }
        if visited[node] {
            return Err(FigOpError::Contract(format!(
                "path visits node {node} more than once"
            )));
        }
        visited[node] = true;
    }

    let mut cumulative = Vec::with_capacity(path.len());
    cumulative.push(0.0);
    let mut total = 0.0;
    let mut objective_value = 0.0;
    for pair in path.windows(2) {
        total += graph.cost(pair[0], pair[1]);
        cumulative.push(total);
        objective_value += objective.factor(total) * graph.info_gain(pair[1]);
    }

    Ok(PathEvaluation {
        objective_value,
        total_cost: total,
        feasible: total <= budget,
        per_node_cumulative_cost: cumulative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::graph::test_graphs::complete_graph;
    use approx::assert_relative_eq;

    fn reference() -> FrontloadParams {
        FrontloadParams::reference()
    }

    #[test]
    fn factor_at_inflection_is_exact() {
        let f = frontload_factor(50.0, &reference());
        assert!((f - 1.5).abs() < 1e-15);
    }

    #[test]
    fn factor_converges_to_one() {
        let f = frontload_factor(10_000.0, &reference());
        assert!((f - 1.0).abs() < 1e-9);
    }

    #[test]
    fn factor_at_zero_cost() {
        // 1 + 1 / (1 + e^{-5})
        let f = frontload_factor(0.0, &reference());
        assert_relative_eq!(f, 1.9933071490757153, epsilon = 1e-12);
    }

    #[test]
    fn factor_is_strictly_decreasing_on_random_pairs() {
        // Sampled where f64 can still resolve the logistic tail; past
        // roughly k2 + 36*k3 the factor rounds to exactly 1.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = reference();
        for _ in 0..1000 {
            let a = rng.gen_range(0.0..240.0);
            let b = a + rng.gen_range(0.01..100.0);
            assert!(
                frontload_factor(a, &p) > frontload_factor(b, &p),
                "factor must strictly decrease: a={a} b={b}"
            );
        }
    }

    #[test]
    fn factor_bounds_hold() {
        let p = reference();
        for i in 0..2000 {
            let a = i as f64 * 0.2; // up to 400, inside the representable tail
            let f = frontload_factor(a, &p);
            assert!(f > 1.0 && f < 2.0, "bounds violated at a={a}: {f}");
        }
        // far past the tail the factor saturates at exactly 1
        assert_eq!(frontload_factor(1e6, &p), 1.0);
    }

    #[test]
    fn tail_is_flat_past_twenty_steepness_units() {
        let p = reference();
        let cutoff = p.k2() + 20.0 * p.k3();
        for i in 0..500 {
            let a = cutoff + i as f64;
            assert!((frontload_factor(a, &p) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn sensitivity_peaks_at_inflection() {
        // Finite-difference derivative magnitude over a dense grid is largest
        // at the inflection point k2.
        let p = reference();
        let h = 1e-4;
        let grid: Vec<f64> = (0..4000).map(|i| i as f64 * 0.05).collect();
        let mut best_a = f64::NAN;
        let mut best_mag = -1.0;
        for &a in &grid {
            let d = (frontload_factor(a + h, &p) - frontload_factor(a - h, &p)) / (2.0 * h);
            if d.abs() > best_mag {
                best_mag = d.abs();
                best_a = a;
            }
        }
        assert!(
            (best_a - p.k2()).abs() <= 0.05 + 1e-9,
            "max sensitivity at {best_a}, expected {}",
            p.k2()
        );
    }

    #[test]
    fn exp_factor_reference_points() {
        let p = ExpDiscountParams::reference();
        assert_relative_eq!(exp_factor(0.0, &p), 1.0, epsilon = 1e-15);
        assert_relative_eq!(exp_factor(50.0, &p), 0.7, epsilon = 1e-12);
        assert_relative_eq!(exp_factor(100.0, &p), 0.49, epsilon = 1e-12);
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(FrontloadParams::new(-1.0, 50.0, 10.0).is_err());
        assert!(FrontloadParams::new(1.0, 0.0, 10.0).is_err());
        assert!(FrontloadParams::new(1.0, 50.0, -2.0).is_err());
        assert!(FrontloadParams::new(f64::NAN, 50.0, 10.0).is_err());
        assert!(FrontloadParams::new(0.0, 50.0, 10.0).is_ok());
        assert!(ExpDiscountParams::new(0.0, 50.0).is_err());
        assert!(ExpDiscountParams::new(1.1, 50.0).is_err());
        assert!(ExpDiscountParams::new(0.7, 0.0).is_err());
        assert!(ExpDiscountParams::new(1.0, 50.0).is_ok());
    }

    /// root -> A -> B with a(root,A)=50, a(A,B)=50, IG(A)=10, IG(B)=20.
    fn two_node_graph() -> FigOpGraph {
        complete_graph(&[10.0, 20.0], &[(0, 1, 50.0), (0, 2, 100.0), (1, 2, 50.0)])
    }

    #[test]
    fn hand_evaluated_two_node_path() {
        let g = two_node_graph();
        let fig = ObjectiveKind::Fig(reference());
        let eval = evaluate_path(&[0, 1, 2], &g, &fig, 200.0).unwrap();
        // 10 * F(50) + 20 * F(100) = 10 * 1.5 + 20 * (1 + S(5))
        let expected = 10.0 * 1.5 + 20.0 * (1.0 + 1.0 / (1.0 + 5.0f64.exp()));
        assert_relative_eq!(eval.objective_value, expected, epsilon = 1e-12);
        assert_relative_eq!(eval.objective_value, 35.133858, epsilon = 1e-6);
        assert!(eval.feasible);
        assert_eq!(eval.per_node_cumulative_cost, vec![0.0, 50.0, 100.0]);
    }

    #[test]
    fn root_only_path_is_zero() {
        let g = two_node_graph();
        let eval = evaluate_path(&[0], &g, &ObjectiveKind::Op, 10.0).unwrap();
        assert_eq!(eval.objective_value, 0.0);
        assert_eq!(eval.total_cost, 0.0);
        assert!(eval.feasible);
    }

    #[test]
    fn op_objective_sums_plain_gains() {
        let g = two_node_graph();
        let eval = evaluate_path(&[0, 1, 2], &g, &ObjectiveKind::Op, 200.0).unwrap();
        assert_eq!(eval.objective_value, 30.0);
    }

    #[test]
    fn zero_amplitude_reduces_to_op_bitwise() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let gains: Vec<f64> = (0..6).map(|_| rng.gen_range(1.0..50.0)).collect();
        let mut costs = Vec::new();
        for i in 0..=6usize {
            for j in (i + 1)..=6usize {
                costs.push((i, j, rng.gen_range(5.0..80.0)));
            }
        }
        let g = complete_graph(&gains, &costs);
        let fig0 = ObjectiveKind::Fig(FrontloadParams::new(0.0, 50.0, 10.0).unwrap());
        let op = ObjectiveKind::Op;
        for _ in 0..200 {
            let mut nodes: Vec<usize> = (1..=6).collect();
            for i in (1..nodes.len()).rev() {
                nodes.swap(i, rng.gen_range(0..=i));
            }
            let len = rng.gen_range(0..=6);
            let mut path = vec![0];
            path.extend_from_slice(&nodes[..len]);
            let a = evaluate_path(&path, &g, &fig0, 150.0).unwrap();
            let b = evaluate_path(&path, &g, &op, 150.0).unwrap();
            assert_eq!(a.objective_value.to_bits(), b.objective_value.to_bits());
            assert_eq!(a.total_cost.to_bits(), b.total_cost.to_bits());
        }
    }

    #[test]
    fn infeasible_path_still_evaluates() {
        let g = two_node_graph();
        let eval = evaluate_path(&[0, 1, 2], &g, &ObjectiveKind::Op, 60.0).unwrap();
        assert!(!eval.feasible);
        assert_eq!(eval.objective_value, 30.0);
        assert_eq!(eval.total_cost, 100.0);
    }

    #[test]
    fn contract_errors() {
        let g = two_node_graph();
        assert!(evaluate_path(&[1, 2], &g, &ObjectiveKind::Op, 100.0).is_err());
        assert!(evaluate_path(&[0, 1, 1], &g, &ObjectiveKind::Op, 100.0).is_err());
        assert!(evaluate_path(&[0, 9], &g, &ObjectiveKind::Op, 100.0).is_err());
        assert!(evaluate_path(&[], &g, &ObjectiveKind::Op, 100.0).is_err());
    }
}
