//! Two-dimensional bubble models of proper interval graphs.
//!
//! A model places every vertex in a bubble `B[i][j]` (row `i`, column `j`,
//! both 1-based). Two vertices are adjacent iff they share a column, or
//! `j(u) = j(v) + 1` and `i(u) < i(v)`.
//!
//! Text format (compact form, empty bubbles omitted):
//!
//! ```text
//! col 1
//! bub 1: 0 4
//! bub 3: 2
//! col 2
//! bub 2: 1 3
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::interval::IntervalRep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("graph is not a proper interval graph: {reason} (witness {witness:?})")]
    NotProperInterval { reason: String, witness: Vec<Vertex> },
    #[error("invalid bubble model: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A non-empty bubble of a column, with its row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelBubble {
    pub row: usize,
    pub members: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Column {
    /// Strictly increasing rows.
    pub bubbles: Vec<ModelBubble>,
}

impl Column {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.bubbles.iter().flat_map(|b| b.members.iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

/// Compact bubble model: columns `1..=k`, each listing its non-empty bubbles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BubbleModel {
    pub columns: Vec<Column>,
}

impl BubbleModel {
    /// Validates that the bubbles near-partition `0..n` and rows are well-formed.
    pub fn new(columns: Vec<Column>) -> Result<Self, ModelError> {
        let bm = BubbleModel { columns };
        bm.validate()?;
        Ok(bm)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let mut seen: Vec<bool> = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let mut last_row = 0;
            for b in &col.bubbles {
                if b.row == 0 || b.row <= last_row {
                    return Err(ModelError::Invalid(format!(
                        "column {} has rows out of order at row {}",
                        j + 1,
                        b.row
                    )));
                }
                last_row = b.row;
                if b.members.is_empty() {
                    return Err(ModelError::Invalid(format!(
                        "empty bubble stored at ({}, {})",
                        b.row,
                        j + 1
                    )));
                }
                for &v in &b.members {
                    if v >= seen.len() {
                        seen.resize(v + 1, false);
                    }
                    if std::mem::replace(&mut seen[v], true) {
                        return Err(ModelError::Invalid(format!("vertex {v} appears twice")));
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|&x| !x) {
            return Err(ModelError::Invalid(format!("vertex {v} is missing")));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.columns.iter().flat_map(|c| &c.bubbles).map(|b| b.members.len()).sum()
    }

    /// `(row, column)` of each vertex, both 1-based.
    pub fn coordinates(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.vertex_count()];
        for (j, col) in self.columns.iter().enumerate() {
            for b in &col.bubbles {
                for &v in &b.members {
                    out[v] = (b.row, j + 1);
                }
            }
        }
        out
    }
}

/// The graph a bubble model describes.
pub fn graph_of_bubble_model(bm: &BubbleModel) -> Graph {
    let mut g = Graph::empty(bm.vertex_count());
    for (j, col) in bm.columns.iter().enumerate() {
        let verts = col.vertices();
        for (a, &u) in verts.iter().enumerate() {
            for &v in &verts[a + 1..] {
                g.add_edge(u, v).expect("model vertices are distinct");
            }
        }
        if let Some(next) = bm.columns.get(j + 1) {
            // u in column j+1, v in column j: adjacent iff row(u) < row(v)
            for bu in &next.bubbles {
                for bv in col.bubbles.iter().filter(|bv| bu.row < bv.row) {
                    for &u in &bu.members {
                        for &v in &bv.members {
                            g.add_edge(u, v).expect("model vertices are distinct");
                        }
                    }
                }
            }
        }
    }
    g
}

/// Maximum number of non-empty bubbles in a column.
pub fn p_value(bm: &BubbleModel) -> usize {
    bm.columns.iter().map(|c| c.bubbles.len()).max().unwrap_or(0)
}

/// Interval type of a vertex in an extended model. Carried as data only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    Closed = 1,
    Open = 2,
    ClosedOpen = 3,
    OpenClosed = 4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrantAnnotation {
    pub tags: Vec<Quadrant>,
}

impl QuadrantAnnotation {
    pub fn from_intervals(rep: &IntervalRep) -> Self {
        let tags = rep
            .intervals
            .iter()
            .map(|iv| match (iv.left_closed, iv.right_closed) {
                (true, true) => Quadrant::Closed,
                (false, false) => Quadrant::Open,
                (true, false) => Quadrant::ClosedOpen,
                (false, true) => Quadrant::OpenClosed,
            })
            .collect();
        QuadrantAnnotation { tags }
    }

    pub fn fits(&self, bm: &BubbleModel) -> bool {
        self.tags.len() == bm.vertex_count()
    }

    /// Members of bubble `(row, column)` carrying tag `q`.
    pub fn quadrant(&self, bm: &BubbleModel, row: usize, column: usize, q: Quadrant) -> Vec<Vertex> {
        bm.columns
            .get(column.wrapping_sub(1))
            .and_then(|c| c.bubbles.iter().find(|b| b.row == row))
            .map(|b| b.members.iter().copied().filter(|&v| self.tags[v] == q).collect())
            .unwrap_or_default()
    }
}

/// Builds a bubble model of `g` with the identity vertex map, or reports that
/// `g` is not a proper interval graph.
pub fn build_bubble_model(g: &Graph) -> Result<BubbleModel, ModelError> {
    let n = g.n();
    if n == 0 {
        return Ok(BubbleModel::default());
    }
    let order = proper_interval_order(g)?;
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let reach: Vec<usize> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&w| pos[w]).max().unwrap_or(0).max(pos[v]))
        .collect();

    // greedy maximal cliques from the left: column j+1 starts right after the
    // reach of column j's first vertex
    let mut columns: Vec<Vec<usize>> = Vec::new(); // positions
    let mut start = 0;
    while start < n {
        let end = reach[start];
        columns.push((start..=end).collect());
        start = end + 1;
    }

    let rows = assign_rows(g, &order, &columns)?;

    let mut model_columns = Vec::with_capacity(columns.len());
    for col in &columns {
        let mut by_row: Vec<(usize, Vertex)> = col.iter().map(|&p| (rows[p], order[p])).collect();
        by_row.sort_unstable();
        let mut bubbles: Vec<ModelBubble> = Vec::new();
        for (row, v) in by_row {
            match bubbles.last_mut() {
                Some(b) if b.row == row => b.members.push(v),
                _ => bubbles.push(ModelBubble {
                    row,
                    members: vec![v],
                }),
            }
        }
        for b in &mut bubbles {
            b.members.sort_unstable();
        }
        model_columns.push(Column { bubbles });
    }
    let bm = BubbleModel::new(model_columns)?;

    let rebuilt = graph_of_bubble_model(&bm);
    if &rebuilt != g {
        let witness = g
            .edges()
            .find(|&(u, v)| !rebuilt.has_edge(u, v))
            .or_else(|| rebuilt.edges().find(|&(u, v)| !g.has_edge(u, v)))
            .map(|(u, v)| vec![u, v])
            .unwrap_or_default();
        return Err(ModelError::NotProperInterval {
            reason: "model does not reproduce the graph".into(),
            witness,
        });
    }
    Ok(bm)
}

/// Rows solving the difference constraints between consecutive columns:
/// for `u` in column `j+1` and `v` in column `j`, `row(u) < row(v)` iff `uv ∈ E`.
fn assign_rows(
    g: &Graph,
    order: &[Vertex],
    columns: &[Vec<usize>],
) -> Result<Vec<usize>, ModelError> {
    let n = order.len();
    // (from, to, weight): row[to] >= row[from] + weight
    let mut constraints: Vec<(usize, usize, usize)> = Vec::new();
    for pair in columns.windows(2) {
        let (left, right) = (&pair[0], &pair[1]);
        for &pu in right {
            for &pv in left {
                if g.has_edge(order[pu], order[pv]) {
                    constraints.push((pu, pv, 1));
                } else {
                    constraints.push((pv, pu, 0));
                }
            }
        }
    }
    let mut rows = vec![1usize; n];
    for _round in 0..=n {
        let mut changed = false;
        for &(from, to, w) in &constraints {
            if rows[to] < rows[from] + w {
                rows[to] = rows[from] + w;
                changed = true;
            }
        }
        if !changed {
            let mut distinct: Vec<usize> = rows.clone();
            distinct.sort_unstable();
            distinct.dedup();
            return Ok(rows
                .iter()
                .map(|r| distinct.binary_search(r).unwrap() + 1)
                .collect());
        }
    }
    let witness = constraints
        .iter()
        .find(|&&(from, to, w)| rows[to] < rows[from] + w)
        .map(|&(a, b, _)| vec![order[a], order[b]])
        .unwrap_or_default();
    Err(ModelError::NotProperInterval {
        reason: "row constraints are cyclic".into(),
        witness,
    })
}

/// An ordering in which every closed neighborhood is consecutive, found by
/// three lexicographic BFS sweeps per component.
pub fn proper_interval_order(g: &Graph) -> Result<Vec<Vertex>, ModelError> {
    let mut order = Vec::with_capacity(g.n());
    for comp in g.connected_components() {
        let first = lex_bfs(g, &comp, None);
        let second = lex_bfs(g, &comp, Some(&first));
        let third = lex_bfs(g, &comp, Some(&second));
        order.extend(third);
    }
    if let Some(witness) = find_umbrella(g, &order) {
        return Err(ModelError::NotProperInterval {
            reason: "no umbrella-free vertex ordering".into(),
            witness,
        });
    }
    Ok(order)
}

/// Lexicographic BFS over `component`. With `previous`, ties go to the vertex
/// that comes last in `previous` (the `+` variant); otherwise to the smallest id.
fn lex_bfs(g: &Graph, component: &[Vertex], previous: Option<&[Vertex]>) -> Vec<Vertex> {
    let k = component.len();
    let mut rank_in_prev = std::collections::HashMap::new();
    if let Some(prev) = previous {
        for (i, &v) in prev.iter().enumerate() {
            rank_in_prev.insert(v, i);
        }
    }
    let mut labels: std::collections::HashMap<Vertex, Vec<usize>> =
        component.iter().map(|&v| (v, Vec::new())).collect();
    let mut visited = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(k);
    for step in 0..k {
        let next = component
            .iter()
            .copied()
            .filter(|v| !visited.contains(v))
            .max_by(|&a, &b| {
                labels[&a].cmp(&labels[&b]).then_with(|| match previous {
                    Some(_) => rank_in_prev[&a].cmp(&rank_in_prev[&b]),
                    None => b.cmp(&a),
                })
            })
            .unwrap();
        visited.insert(next);
        out.push(next);
        for &w in g.neighbors(next) {
            if !visited.contains(&w) {
                if let Some(l) = labels.get_mut(&w) {
                    l.push(k - step);
                }
            }
        }
    }
    out
}

/// Returns `[u, v, w]` with `u < v < w` in `order`, `uw ∈ E` and `uv` or `vw`
/// missing, if such an umbrella exists.
pub fn find_umbrella(g: &Graph, order: &[Vertex]) -> Option<Vec<Vertex>> {
    let mut pos = vec![0; g.n()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    // umbrella-free iff every closed neighborhood is consecutive
    for (p, &x) in order.iter().enumerate() {
        let lo = g.neighbors(x).iter().map(|&w| pos[w]).min().unwrap_or(p).min(p);
        let hi = g.neighbors(x).iter().map(|&w| pos[w]).max().unwrap_or(p).max(p);
        for q in lo..=hi {
            if q != p && !g.has_edge(x, order[q]) {
                return Some(if q > p {
                    vec![x, order[q], order[hi]]
                } else {
                    vec![order[lo], order[q], x]
                });
            }
        }
    }
    None
}

pub fn parse_bubble_model(text: &str) -> Result<BubbleModel, ModelError> {
    let err = |line: usize, msg: String| ModelError::Parse { line, msg };
    let mut columns: Vec<Column> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("col ") {
            let j: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(lineno, format!("bad column index `{rest}`")))?;
            if j != columns.len() + 1 {
                return Err(err(lineno, format!("expected column {}, got {j}", columns.len() + 1)));
            }
            columns.push(Column::default());
        } else if let Some(rest) = line.strip_prefix("bub ") {
            let col = columns
                .last_mut()
                .ok_or_else(|| err(lineno, "bubble before first column".into()))?;
            let (row, ids) = rest
                .split_once(':')
                .ok_or_else(|| err(lineno, "expected `bub <i>: <ids>`".into()))?;
            let row: usize = row
                .trim()
                .parse()
                .map_err(|_| err(lineno, format!("bad row `{row}`")))?;
            let members = ids
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| err(lineno, format!("bad vertex id `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            col.bubbles.push(ModelBubble { row, members });
        } else {
            return Err(err(lineno, format!("unrecognized line `{line}`")));
        }
    }
    BubbleModel::new(columns)
}

pub fn write_bubble_model(bm: &BubbleModel) -> String {
    let mut out = String::new();
    for (j, col) in bm.columns.iter().enumerate() {
        writeln!(out, "col {}", j + 1).unwrap();
        for b in &col.bubbles {
            write!(out, "bub {}:", b.row).unwrap();
            for v in &b.members {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}
