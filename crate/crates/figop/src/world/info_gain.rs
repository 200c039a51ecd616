//! Expected-area estimate for frontier segments: breadth of the segment
//! times a sensing-depth factor.

use std::collections::BTreeSet;

use crate::error::{FigOpError, Result};
use crate::geom::{Cell, NEIGHBORS_8};
use crate::world::grid::MetricMap;

/// Omnidirectional range sensor. `r_sense` is the reliable mapping range;
/// `long_range` is the farther distance at which open space can still be
/// sighted (used only to boost the depth estimate of frontiers leading into
/// it); `depth_boost` is the gain multiplier for such frontiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorModel {
    pub r_sense: f64,
    pub long_range: f64,
    pub rays_per_scan: usize,
    pub depth_boost: f64,
}

impl SensorModel {
    pub fn new(r_sense: f64, long_range: f64, rays_per_scan: usize, depth_boost: f64) -> Result<Self> {
        if !(r_sense > 0.0) || !(long_range > r_sense) {
            return Err(FigOpError::InvalidParameter(format!(
                "sensor needs 0 < r_sense < long_range, got {r_sense}, {long_range}"
            )));
        }
        if rays_per_scan == 0 {
            return Err(FigOpError::InvalidParameter("rays_per_scan must be >= 1".into()));
        }
        if !(depth_boost >= 1.0) {
            return Err(FigOpError::InvalidParameter(format!(
                "depth_boost must be >= 1, got {depth_boost}"
            )));
        }
        Ok(SensorModel {
            r_sense,
            long_range,
            rays_per_scan,
            depth_boost,
        })
    }
}

impl Default for SensorModel {
    fn default() -> Self {
        SensorModel {
            r_sense: 10.0,
            long_range: 25.0,
            rays_per_scan: 720,
            depth_boost: 2.0,
        }
    }
}

/// Expected uncovered area behind a frontier segment, m^2:
/// `cell_count * resolution * r_sense * depth_factor`, where the depth factor
/// is `depth_boost` when the segment connects through unknown space to a
/// long-range open-space sighting within `long_range`, and 1 otherwise.
pub fn estimate_info_gain(segment: &[Cell], map: &MetricMap, sensor: &SensorModel) -> f64 {
    assert!(!segment.is_empty(), "segments are non-empty by construction");
    let breadth = segment.len() as f64 * map.resolution();
    let depth_factor = if has_long_range_association(segment, map, sensor) {
        sensor.depth_boost
    } else {
        1.0
    };
    breadth * sensor.r_sense * depth_factor
}

/// Breadth-first walk from the segment through unknown cells of the window,
/// bounded by `long_range`, looking for a long-range sighting hint.
fn has_long_range_association(segment: &[Cell], map: &MetricMap, sensor: &SensorModel) -> bool {
    if map.hints().is_empty() {
        return false;
    }
    let max_steps = (sensor.long_range / map.resolution()).floor() as u32;
    let mut frontier: Vec<Cell> = segment.to_vec();
    let mut visited: BTreeSet<Cell> = segment.iter().copied().collect();
    for _ in 0..max_steps {
        let mut next = Vec::new();
        for c in frontier.drain(..) {
            for &(dx, dy) in &NEIGHBORS_8 {
                let nb = Cell::new(c.x + dx, c.y + dy);
                if visited.contains(&nb) {
                    continue;
                }
                if !map.state(nb).map_or(false, |s| s.is_unknown()) {
                    continue;
                }
                if map.hints().contains(&nb) {
                    return true;
                }
                visited.insert(nb);
                next.push(nb);
            }
        }
        if next.is_empty() {
            return false;
        }
        frontier = next;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::grid::CellState;

    fn map_with_seam() -> (MetricMap, Vec<Cell>) {
        // left half free, right half unknown; frontier at x = 9
        let mut m = MetricMap::with_dimensions(Cell::new(0, 0), 20, 10, 0.5).unwrap();
        for y in 0..10 {
            for x in 0..10 {
                m.set_state(Cell::new(x, y), CellState::Free { risk: 1.0 });
            }
        }
        let segment: Vec<Cell> = (0..10).map(|y| Cell::new(9, y)).collect();
        (m, segment)
    }

    #[test]
    fn breadth_times_range_without_association() {
        let (m, segment) = map_with_seam();
        let sensor = SensorModel::default();
        let ig = estimate_info_gain(&segment, &m, &sensor);
        // 10 cells * 0.5 m * r_sense
        assert!((ig - 10.0 * 0.5 * sensor.r_sense).abs() < 1e-12);
    }

    #[test]
    fn association_doubles_the_estimate() {
        let (mut m, segment) = map_with_seam();
        let sensor = SensorModel::default();
        m.add_hint(Cell::new(15, 5));
        let ig = estimate_info_gain(&segment, &m, &sensor);
        assert!((ig - 2.0 * 10.0 * 0.5 * sensor.r_sense).abs() < 1e-12);
    }

    #[test]
    fn hint_beyond_long_range_does_not_count() {
        let mut m = MetricMap::with_dimensions(Cell::new(0, 0), 200, 4, 0.5).unwrap();
        for y in 0..4 {
            for x in 0..4 {
                m.set_state(Cell::new(x, y), CellState::Free { risk: 1.0 });
            }
        }
        let segment = vec![Cell::new(3, 0), Cell::new(3, 1), Cell::new(3, 2), Cell::new(3, 3)];
        let sensor = SensorModel::default();
        // 25 m at 0.5 m per cell = 50 steps; put the hint past that
        m.add_hint(Cell::new(3 + 60, 1));
        let ig = estimate_info_gain(&segment, &m, &sensor);
        assert!((ig - 4.0 * 0.5 * sensor.r_sense).abs() < 1e-12);
    }

    #[test]
    fn occupied_space_blocks_association() {
        let (mut m, segment) = map_with_seam();
        let sensor = SensorModel::default();
        for y in 0..10 {
            m.set_state(Cell::new(12, y), CellState::Occupied);
        }
        // wall spans the whole height, hint behind it
        m.add_hint(Cell::new(15, 5));
        let ig = estimate_info_gain(&segment, &m, &sensor);
        assert!((ig - 10.0 * 0.5 * sensor.r_sense).abs() < 1e-12);
    }

    #[test]
    fn sensor_validation() {
        assert!(SensorModel::new(10.0, 25.0, 720, 2.0).is_ok());
        assert!(SensorModel::new(10.0, 10.0, 720, 2.0).is_err());
        assert!(SensorModel::new(0.0, 25.0, 720, 2.0).is_err());
        assert!(SensorModel::new(10.0, 25.0, 0, 2.0).is_err());
        assert!(SensorModel::new(10.0, 25.0, 720, 0.5).is_err());
    }
}
