//! Independent oracles shared by the integration tests. These restate the
//! contracts from scratch and must stay decoupled from the library's own
//! implementation paths.

use figop::world::grid::{CellState, MetricMap};
use figop::{Cell, Point};

/// Array-scan Dijkstra over explicitly enumerated 8-connected steps; each
/// step costs its Euclidean length times the mean risk of its endpoints.
pub fn oracle_grid_cost(map: &MetricMap, from: Cell, to: Cell) -> Option<f64> {
    let w = map.width();
    let h = map.height();
    let origin = map.origin();
    let idx = |c: Cell| -> Option<usize> {
        let lx = c.x - origin.x;
        let ly = c.y - origin.y;
        if lx < 0 || ly < 0 || lx as usize >= w || ly as usize >= h {
            None
        } else {
            Some(ly as usize * w + lx as usize)
        }
    };
    let cell_of = |i: usize| Cell::new(origin.x + (i % w) as i32, origin.y + (i / w) as i32);

    let fi = idx(from)?;
    let ti = idx(to)?;
    let n = w * h;
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[fi] = 0.0;
    for _ in 0..n {
        let mut u = usize::MAX;
        let mut best = f64::INFINITY;
        for i in 0..n {
            if !done[i] && dist[i] < best {
                best = dist[i];
                u = i;
            }
        }
        if u == usize::MAX {
            break;
        }
        done[u] = true;
        let cu = cell_of(u);
        let ru = match map.state(cu) {
            Some(CellState::Free { risk }) => risk,
            _ => continue,
        };
        for dy in -1i32..=1 {
            for dx in -1i32..=1 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let cv = Cell::new(cu.x + dx, cu.y + dy);
                let v = match idx(cv) {
                    Some(v) => v,
                    None => continue,
                };
                let rv = match map.state(cv) {
                    Some(CellState::Free { risk }) => risk,
                    _ => continue,
                };
                let len = if dx != 0 && dy != 0 {
                    map.resolution() * std::f64::consts::SQRT_2
                } else {
                    map.resolution()
                };
                let nd = dist[u] + len * (0.5 * (ru + rv));
                if nd < dist[v] {
                    dist[v] = nd;
                }
            }
        }
    }
    if dist[ti].is_infinite() {
        None
    } else {
        Some(dist[ti])
    }
}

/// Reference DBSCAN as a partition over point indices: connected components
/// of core points on the eps-graph, border points attached in scan order,
/// remaining points promoted to singletons.
pub fn reference_dbscan_partition(pts: &[Point], eps: f64, min_pts: usize) -> Vec<Vec<u64>> {
    let n = pts.len();
    let neigh: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| pts[i].distance(pts[j]) <= eps).collect())
        .collect();
    let core: Vec<bool> = (0..n).map(|i| neigh[i].len() >= min_pts).collect();
    let mut label: Vec<i64> = vec![-1; n];
    let mut next = 0i64;
    for i in 0..n {
        if !core[i] || label[i] >= 0 {
            continue;
        }
        let id = next;
        next += 1;
        label[i] = id;
        let mut stack = vec![i];
        while let Some(u) = stack.pop() {
            for &v in &neigh[u] {
                if label[v] < 0 {
                    label[v] = id;
                    if core[v] {
                        stack.push(v);
                    }
                }
            }
        }
    }
    for l in label.iter_mut() {
        if *l < 0 {
            *l = next;
            next += 1;
        }
    }
    (0..next)
        .map(|c| {
            (0..n as u64)
                .filter(|&i| label[i as usize] == c)
                .collect::<Vec<u64>>()
        })
        .filter(|v| !v.is_empty())
        .collect()
}
