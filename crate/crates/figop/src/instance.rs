//! Standalone instance files: a complete graph plus budget in a line-based
//! text format.
//!
//! ```text
//! figop v1 <n> <budget>
//! <id> <ig> <x> <y>            (n node lines, ids 1..=n; the root is id 0)
//! <i> <j> <cost> <fidelity>    (one line per unordered pair, fidelity
//!                               `metric` or `topological`)
//! ```

use crate::error::{FigOpError, Result};
use crate::geom::Point;
use crate::world::graph::{EdgeFidelity, FigOpGraph, GraphNode};

/// A parsed instance: the graph plus its action cost budget.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: FigOpGraph,
    pub budget: f64,
}

/// Parses the `figop v1` instance format. Errors carry the offending line.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| FigOpError::parse(1, "empty instance file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "figop" || fields[1] != "v1" {
        return Err(FigOpError::parse(
            line_no,
            "header must be `figop v1 <n> <budget>`",
        ));
    }
    let n: usize = fields[2]
        .parse()
        .map_err(|_| FigOpError::parse(line_no, format!("bad node count `{}`", fields[2])))?;
    let budget: f64 = fields[3]
        .parse()
        .map_err(|_| FigOpError::parse(line_no, format!("bad budget `{}`", fields[3])))?;
    if !(budget > 0.0) {
        return Err(FigOpError::parse(line_no, "budget must be > 0"));
    }

    let mut nodes = vec![GraphNode {
        key: FigOpGraph::ROOT_KEY,
        position: Point::new(0.0, 0.0),
        info_gain: 0.0,
    }];
    for expected_id in 1..=n {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| FigOpError::parse(expected_id + 1, "missing node line"))?;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(FigOpError::parse(line_no, "node line must be `id ig x y`"));
        }
        let id: usize = f[0]
            .parse()
            .map_err(|_| FigOpError::parse(line_no, format!("bad node id `{}`", f[0])))?;
        if id != expected_id {
            return Err(FigOpError::parse(
                line_no,
                format!("node ids must be 1..={n} in order, expected {expected_id}, got {id}"),
            ));
        }
        let ig: f64 = f[1]
            .parse()
            .map_err(|_| FigOpError::parse(line_no, format!("bad info gain `{}`", f[1])))?;
        if !(ig >= 0.0) {
            return Err(FigOpError::parse(line_no, "info gain must be >= 0"));
        }
        let x: f64 = f[2]
            .parse()
            .map_err(|_| FigOpError::parse(line_no, format!("bad x `{}`", f[2])))?;
        let y: f64 = f[3]
            .parse()
            .map_err(|_| FigOpError::parse(line_no, format!("bad y `{}`", f[3])))?;
        nodes.push(GraphNode {
            key: id as u64,
            position: Point::new(x, y),
            info_gain: ig,
        });
    }

    let mut edges = Vec::new();
    for (line_no, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(FigOpError::parse(
                line_no,
                "cost line must be `i j cost fidelity`",
            ));
        }
        let i: usize = f[0]
            .parse()
            .map_err(|_| FigOpError::parse(line_no, format!("bad node index `{}`", f[0])))?;
        let j: usize = f[1]
            .parse()
            .map_err(|_| FigOpError::parse(line_no, format!("bad node index `{}`", f[1])))?;
        let cost: f64 = f[2]
            .parse()
            .map_err(|_| FigOpError::parse(line_no, format!("bad cost `{}`", f[2])))?;
        let fidelity = match f[3] {
            "metric" => EdgeFidelity::Metric,
            "topological" => EdgeFidelity::Topological,
            other => {
                return Err(FigOpError::parse(
                    line_no,
                    format!("fidelity must be `metric` or `topological`, got `{other}`"),
                ))
            }
        };
        if i > n || j > n || i == j {
            return Err(FigOpError::parse(
                line_no,
                format!("cost pair ({i}, {j}) out of range for n={n}"),
            ));
        }
        if !(cost >= 0.0) || !cost.is_finite() {
            return Err(FigOpError::parse(line_no, "cost must be finite and >= 0"));
        }
        edges.push((i, j, cost, fidelity));
    }

    let graph = FigOpGraph::from_parts(nodes, &edges).map_err(|e| match e {
        FigOpError::Contract(msg) => FigOpError::parse(1, msg),
        other => other,
    })?;
    Ok(Instance { graph, budget })
}

/// Serializes an instance in the `figop v1` format.
pub fn write_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = format!("figop v1 {} {}\n", g.non_root_count(), instance.budget);
    for i in 1..g.len() {
        let node = g.node(i);
        out.push_str(&format!(
            "{} {} {} {}\n",
            i, node.info_gain, node.position.x, node.position.y
        ));
    }
    for i in 0..g.len() {
        for j in (i + 1)..g.len() {
            out.push_str(&format!("{} {} {} {}\n", i, j, g.cost(i, j), g.fidelity(i, j)));
        }
    }
    out
}
