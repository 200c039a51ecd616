//! Rolling metric grid: occupancy, traversal risk, risk-weighted shortest
//! paths, and frontier extraction.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use crate::error::{FigOpError, Result};
use crate::geom::{Cell, Point, NEIGHBORS_8};

/// Occupancy state of one grid cell. Risk is a traversal weight >= 1 and is
/// defined only for free cells (1 = nominal ground).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellState {
    Unknown,
    Free { risk: f64 },
    Occupied,
}

impl CellState {
    pub fn is_free(&self) -> bool {
        matches!(self, CellState::Free { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, CellState::Unknown)
    }
}

/// A fixed-size grid window anchored to the global cell lattice. Re-centering
/// shifts the window without resizing it: cells that stay inside keep their
/// states, cells that enter start unknown.
#[derive(Debug, Clone)]
pub struct MetricMap {
    resolution: f64,
    width: usize,
    height: usize,
    /// Global cell coordinate of the local (0, 0) cell.
    origin: Cell,
    cells: Vec<CellState>,
    /// Cells sighted beyond the reliable sensing range, kept as hints for
    /// depth association. Global coordinates, pruned when the window moves
    /// far away or the cell becomes known.
    hints: BTreeSet<Cell>,
}

impl MetricMap {
    /// A square window of side `2 * half_extent` meters centered near `center`.
    pub fn new(center: Point, half_extent: f64, resolution: f64) -> Result<Self> {
        if !(resolution > 0.0) || !(half_extent > 0.0) {
            return Err(FigOpError::InvalidParameter(format!(
                "window needs positive half_extent and resolution, got {half_extent}, {resolution}"
            )));
        }
        let side = ((2.0 * half_extent) / resolution).round().max(1.0) as usize;
        let mut map = MetricMap {
            resolution,
            width: side,
            height: side,
            origin: Cell::new(0, 0),
            cells: vec![CellState::Unknown; side * side],
            hints: BTreeSet::new(),
        };
        map.origin = map.origin_for(center);
        Ok(map)
    }

    /// A window with explicit dimensions, used for whole-map snapshots.
    pub fn with_dimensions(
        origin: Cell,
        width: usize,
        height: usize,
        resolution: f64,
    ) -> Result<Self> {
        if width == 0 || height == 0 || !(resolution > 0.0) {
            return Err(FigOpError::InvalidParameter(
                "grid dimensions and resolution must be positive".into(),
            ));
        }
        Ok(MetricMap {
            resolution,
            width,
            height,
            origin,
            cells: vec![CellState::Unknown; width * height],
            hints: BTreeSet::new(),
        })
    }

    fn origin_for(&self, center: Point) -> Cell {
        let cc = self.cell_at(center);
        Cell::new(
            cc.x - (self.width as i32) / 2,
            cc.y - (self.height as i32) / 2,
        )
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn origin(&self) -> Cell {
        self.origin
    }

    /// Global cell containing the world point.
    pub fn cell_at(&self, p: Point) -> Cell {
        Cell::new(
            (p.x / self.resolution).floor() as i32,
            (p.y / self.resolution).floor() as i32,
        )
    }

    /// World position of the cell center.
    pub fn cell_center(&self, c: Cell) -> Point {
        Point::new(
            (c.x as f64 + 0.5) * self.resolution,
            (c.y as f64 + 0.5) * self.resolution,
        )
    }

    pub fn contains(&self, c: Cell) -> bool {
        let lx = c.x - self.origin.x;
        let ly = c.y - self.origin.y;
        lx >= 0 && ly >= 0 && (lx as usize) < self.width && (ly as usize) < self.height
    }

    fn index(&self, c: Cell) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let lx = (c.x - self.origin.x) as usize;
        let ly = (c.y - self.origin.y) as usize;
        Some(ly * self.width + lx)
    }

    fn cell_of_index(&self, i: usize) -> Cell {
        Cell::new(
            self.origin.x + (i % self.width) as i32,
            self.origin.y + (i / self.width) as i32,
        )
    }

    /// State of a cell, or `None` when the cell is outside the window.
    pub fn state(&self, c: Cell) -> Option<CellState> {
        self.index(c).map(|i| self.cells[i])
    }

    pub fn is_free(&self, c: Cell) -> bool {
        matches!(self.state(c), Some(CellState::Free { .. }))
    }

    pub fn set_state(&mut self, c: Cell, s: CellState) {
        if let Some(i) = self.index(c) {
            self.cells[i] = s;
            if !matches!(s, CellState::Unknown) {
                self.hints.remove(&c);
            }
        }
    }

    /// Risk of a free cell.
    pub fn risk(&self, c: Cell) -> Option<f64> {
        match self.state(c)? {
            CellState::Free { risk } => Some(risk),
            _ => None,
        }
    }

    /// Applies `f` to the risk of every free cell, in row-major order.
    pub fn map_risks(&mut self, mut f: impl FnMut(f64) -> f64) {
        for cell in self.cells.iter_mut() {
            if let CellState::Free { risk } = cell {
                *risk = f(*risk);
            }
        }
    }

    pub fn add_hint(&mut self, c: Cell) {
        if self.state(c).map_or(false, |s| s.is_unknown()) {
            self.hints.insert(c);
        }
    }

    pub fn hints(&self) -> &BTreeSet<Cell> {
        &self.hints
    }

    /// Shifts the window so it is centered near `new_center`. States of cells
    /// that remain inside the window are preserved at their world positions;
    /// cells entering the window start unknown.
    pub fn recenter(&mut self, new_center: Point) {
        let new_origin = self.origin_for(new_center);
        if new_origin == self.origin {
            return;
        }
        let mut next = vec![CellState::Unknown; self.width * self.height];
        for ly in 0..self.height {
            for lx in 0..self.width {
                let global = Cell::new(new_origin.x + lx as i32, new_origin.y + ly as i32);
                if let Some(i) = self.index(global) {
                    next[ly * self.width + lx] = self.cells[i];
                }
            }
        }
        self.origin = new_origin;
        self.cells = next;
        // hints follow the window: keep only cells that are still inside it
        let kept: Vec<Cell> = self.hints.iter().copied().filter(|&c| self.contains(c)).collect();
        self.hints = kept.into_iter().collect();
    }

    /// Minimum risk-weighted travel cost between two free cells over
    /// 8-connected free paths: each step costs its Euclidean length times the
    /// mean risk of its two endpoint cells. `Ok(None)` when no free path
    /// exists.
    pub fn metric_cost(&self, from: Cell, to: Cell) -> Result<Option<f64>> {
        Ok(self.dijkstra(from, to)?.map(|(cost, _)| cost))
    }

    /// Like [`metric_cost`](Self::metric_cost) but also returns the cell path.
    pub fn metric_route(&self, from: Cell, to: Cell) -> Result<Option<(f64, Vec<Cell>)>> {
        Ok(self
            .dijkstra(from, to)?
            .map(|(cost, path)| (cost, path.expect("route requested"))))
    }

    fn dijkstra(&self, from: Cell, to: Cell) -> Result<Option<(f64, Option<Vec<Cell>>)>> {
        let (fi, ti) = match (self.index(from), self.index(to)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(FigOpError::Contract(format!(
                    "metric cost endpoints must lie in the window: {from}, {to}"
                )))
            }
        };
        if !self.cells[fi].is_free() || !self.cells[ti].is_free() {
            return Err(FigOpError::Contract(format!(
                "metric cost endpoints must be free cells: {from}, {to}"
            )));
        }
        if fi == ti {
            return Ok(Some((0.0, Some(vec![from]))));
        }

        #[derive(PartialEq)]
        struct Entry(f64, usize);
        impl Eq for Entry {}
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> Ordering {
                // min-heap on cost, deterministic tiebreak on index
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

        let n = self.cells.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut prev = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[fi] = 0.0;
        heap.push(Entry(0.0, fi));
        let w = self.width as i32;
        let h = self.height as i32;

        while let Some(Entry(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            if u == ti {
                break;
            }
            let ru = match self.cells[u] {
                CellState::Free { risk } => risk,
                _ => continue,
            };
            let ux = (u % self.width) as i32;
            let uy = (u / self.width) as i32;
            for &(dx, dy) in &NEIGHBORS_8 {
                let vx = ux + dx;
                let vy = uy + dy;
                if vx < 0 || vy < 0 || vx >= w || vy >= h {
                    continue;
                }
                let v = (vy as usize) * self.width + vx as usize;
                let rv = match self.cells[v] {
                    CellState::Free { risk } => risk,
                    _ => continue,
                };
                let len = if dx != 0 && dy != 0 {
                    self.resolution * std::f64::consts::SQRT_2
                } else {
                    self.resolution
                };
                let nd = d + len * (0.5 * (ru + rv));
                if nd < dist[v] {
                    dist[v] = nd;
                    prev[v] = u;
                    heap.push(Entry(nd, v));
                }
            }
        }

        if dist[ti].is_infinite() {
            return Ok(None);
        }
        let mut path = Vec::new();
        let mut cur = ti;
        while cur != usize::MAX {
            path.push(self.cell_of_index(cur));
            if cur == fi {
                break;
            }
            cur = prev[cur];
        }
        path.reverse();
        Ok(Some((dist[ti], Some(path))))
    }

    /// Frontier segments: maximal 8-connected components of free cells that
    /// are 8-adjacent to at least one unknown cell of the window. Segments
    /// and their cells come out in row-major order.
    pub fn detect_frontiers(&self) -> Vec<Vec<Cell>> {
        let w = self.width as i32;
        let h = self.height as i32;
        let is_frontier = |i: usize| -> bool {
            if !self.cells[i].is_free() {
                return false;
            }
            let x = (i % self.width) as i32;
            let y = (i / self.width) as i32;
            NEIGHBORS_8.iter().any(|&(dx, dy)| {
                let nx = x + dx;
                let ny = y + dy;
                nx >= 0
                    && ny >= 0
                    && nx < w
                    && ny < h
                    && self.cells[(ny as usize) * self.width + nx as usize].is_unknown()
            })
        };

        let mut mask: Vec<bool> = (0..self.cells.len()).map(is_frontier).collect();
        let mut segments = Vec::new();
        for start in 0..mask.len() {
            if !mask[start] {
                continue;
            }
            let mut component = Vec::new();
            let mut queue = vec![start];
            mask[start] = false;
            while let Some(i) = queue.pop() {
                component.push(i);
                let x = (i % self.width) as i32;
                let y = (i / self.width) as i32;
                for &(dx, dy) in &NEIGHBORS_8 {
                    let nx = x + dx;
                    let ny = y + dy;
                    if nx < 0 || ny < 0 || nx >= w || ny >= h {
                        continue;
                    }
                    let ni = (ny as usize) * self.width + nx as usize;
                    if mask[ni] {
                        mask[ni] = false;
                        queue.push(ni);
                    }
                }
            }
            component.sort_unstable();
            segments.push(component.into_iter().map(|i| self.cell_of_index(i)).collect());
        }
        segments
    }

    /// Serializes the window as plain text: first line `width height
    /// resolution`, then one row per line, `#` occupied, `.` free, `?`
    /// unknown, row-major from the window origin.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.width, self.height, self.resolution);
        for y in 0..self.height {
            for x in 0..self.width {
                out.push(match self.cells[y * self.width + x] {
                    CellState::Unknown => '?',
                    CellState::Free { .. } => '.',
                    CellState::Occupied => '#',
                });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the plain-text grid format. Free cells get risk 1.
    pub fn from_text(text: &str) -> Result<Self> {
        let (width, height, resolution, states) = parse_grid_text(text)?;
        let mut map = MetricMap::with_dimensions(Cell::new(0, 0), width, height, resolution)?;
        map.cells = states;
        Ok(map)
    }
}

/// Shared parser for the plain-text grid format.
pub(crate) fn parse_grid_text(text: &str) -> Result<(usize, usize, f64, Vec<CellState>)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| FigOpError::parse(1, "empty grid file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(FigOpError::parse(1, "header must be `width height resolution`"));
    }
    let width: usize = fields[0]
        .parse()
        .map_err(|_| FigOpError::parse(1, format!("bad width `{}`", fields[0])))?;
    let height: usize = fields[1]
        .parse()
        .map_err(|_| FigOpError::parse(1, format!("bad height `{}`", fields[1])))?;
    let resolution: f64 = fields[2]
        .parse()
        .map_err(|_| FigOpError::parse(1, format!("bad resolution `{}`", fields[2])))?;
    if width == 0 || height == 0 || !(resolution > 0.0) {
        return Err(FigOpError::parse(1, "grid dimensions and resolution must be positive"));
    }

    let mut states = Vec::with_capacity(width * height);
    let mut rows = 0usize;
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if rows == height {
            return Err(FigOpError::parse(idx + 1, "more rows than the header declares"));
        }
        if line.chars().count() != width {
            return Err(FigOpError::parse(
                idx + 1,
                format!("row has {} cells, expected {width}", line.chars().count()),
            ));
        }
        for (col, ch) in line.chars().enumerate() {
            states.push(match ch {
                '.' => CellState::Free { risk: 1.0 },
                '#' => CellState::Occupied,
                '?' => CellState::Unknown,
                other => {
                    return Err(FigOpError::parse(
                        idx + 1,
                        format!("unexpected cell character `{other}` in column {}", col + 1),
                    ))
                }
            });
        }
        rows += 1;
    }
    if rows != height {
        return Err(FigOpError::parse(
            rows + 1,
            format!("grid has {rows} rows, header declares {height}"),
        ));
    }
    Ok((width, height, resolution, states))
}
