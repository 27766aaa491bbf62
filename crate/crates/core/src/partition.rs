//! Bubble partitions: vertex partitions into unions of bubbles whose quotient
//! is a tree.
//!
//! Text format, one line per part:
//!
//! ```text
//! part 0: 0 1 4
//! part 1: 2 3
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::bubble_model::BubbleModel;
use crate::graph::{ContractedGraph, Graph, Vertex};
use crate::interval::IntervalRep;
use crate::mis::independence_number;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} is not covered by any part")]
    Uncovered(Vertex),
    #[error("vertex {0} appears in more than one part")]
    Overlap(Vertex),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("part {part} splits bubble {bubble}")]
    NotBubbleUnion { part: usize, bubble: usize },
    #[error("part quotient has a cycle through parts {0:?}")]
    QuotientHasCycle(Vec<usize>),
    #[error("part quotient is disconnected")]
    QuotientDisconnected,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A validated bubble partition together with its tree `T(𝒱)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BubblePartition {
    /// Sorted vertex sets.
    pub parts: Vec<Vec<Vertex>>,
    pub part_of: Vec<usize>,
    /// Sorted bubble ids per part.
    pub part_bubbles: Vec<Vec<usize>>,
    /// Adjacency lists of the quotient tree.
    pub tree: Vec<Vec<usize>>,
}

impl BubblePartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_path(&self) -> bool {
        self.tree.iter().all(|ns| ns.len() <= 2)
    }

    /// Parent of every part when the tree is rooted at `root`, plus a
    /// top-down (BFS) order of the parts.
    pub fn rooted(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let t = order[i];
            i += 1;
            for &c in &self.tree[t] {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(t);
                    order.push(c);
                }
            }
        }
        (parent, order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionStats {
    /// `max α(G[V_i])`.
    pub alpha: usize,
    /// `max |V_i⁻|`.
    pub width: usize,
}

/// Checks that `parts` is a bubble partition of `g` and builds its tree.
pub fn validate(
    g: &Graph,
    cg: &ContractedGraph,
    parts: Vec<Vec<Vertex>>,
) -> Result<BubblePartition, PartitionError> {
    let n = g.n();
    let mut part_of = vec![usize::MAX; n];
    let mut parts = parts;
    for (i, part) in parts.iter_mut().enumerate() {
        if part.is_empty() {
            return Err(PartitionError::EmptyPart(i));
        }
        part.sort_unstable();
        for &v in part.iter() {
            if v >= n {
                return Err(PartitionError::VertexOutOfRange { vertex: v, n });
            }
            if part_of[v] != usize::MAX {
                return Err(PartitionError::Overlap(v));
            }
            part_of[v] = i;
        }
    }
    if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
        return Err(PartitionError::Uncovered(v));
    }
    if parts.is_empty() {
        return Err(PartitionError::QuotientDisconnected);
    }

    let mut part_bubbles = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let bubbles = cg.bubbles_of(part);
        for &b in &bubbles {
            if cg.bubbles[b].members.iter().any(|&v| part_of[v] != i) {
                return Err(PartitionError::NotBubbleUnion { part: i, bubble: b });
            }
        }
        part_bubbles.push(bubbles);
    }

    let k = parts.len();
    let mut quotient = Graph::empty(k);
    for (u, v) in g.edges() {
        let (a, b) = (part_of[u], part_of[v]);
        if a != b {
            quotient.ensure_edge(a, b).expect("part ids in range");
        }
    }
    if !quotient.is_connected() {
        return Err(PartitionError::QuotientDisconnected);
    }
    if quotient.m() != k - 1 {
        return Err(PartitionError::QuotientHasCycle(find_cycle(&quotient)));
    }
    let tree = (0..k).map(|t| quotient.neighbors(t).to_vec()).collect();
    Ok(BubblePartition {
        parts,
        part_of,
        part_bubbles,
        tree,
    })
}

/// Some cycle of a connected graph with more than `n - 1` edges.
fn find_cycle(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![0];
    depth[0] = 0;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push(w);
            } else if w != parent[u] && parent[w] != u {
                // non-tree edge u-w: walk both ends up to their meeting point
                let (mut a, mut b) = (u, w);
                let (mut left, mut right) = (vec![a], vec![b]);
                while a != b {
                    if depth[a] >= depth[b] {
                        a = parent[a];
                        left.push(a);
                    } else {
                        b = parent[b];
                        right.push(b);
                    }
                }
                right.pop();
                left.extend(right.into_iter().rev());
                return left;
            }
        }
    }
    Vec::new()
}

/// Exact `α(𝒱)` and `w(𝒱)`.
pub fn stats(g: &Graph, bp: &BubblePartition) -> PartitionStats {
    let alpha = bp
        .parts
        .iter()
        .map(|p| independence_number(g, p))
        .max()
        .unwrap_or(0);
    let width = bp.part_bubbles.iter().map(Vec::len).max().unwrap_or(0);
    PartitionStats { alpha, width }
}

/// One part per non-empty column of a bubble model of `g`.
///
/// Columns are cliques, so the result has `α = 1` and width `p(G)`. Fails
/// only with `QuotientDisconnected` when `g` is disconnected.
pub fn columns_partition(
    g: &Graph,
    cg: &ContractedGraph,
    bm: &BubbleModel,
) -> Result<BubblePartition, PartitionError> {
    let parts: Vec<Vec<Vertex>> = bm
        .columns
        .iter()
        .map(|c| c.vertices())
        .filter(|v| !v.is_empty())
        .collect();
    validate(g, cg, parts)
}

/// Groups whole twin classes into consecutive clique blocks while sweeping by
/// left endpoint, then validates the grouping.
pub fn left_endpoint_partition(
    rep: &IntervalRep,
    g: &Graph,
    cg: &ContractedGraph,
) -> Result<BubblePartition, PartitionError> {
    let key = |v: Vertex| {
        let iv = &rep.intervals[v];
        (iv.left, !iv.left_closed, iv.right, !iv.right_closed)
    };
    let mut classes: Vec<&[Vertex]> = cg.bubbles.iter().map(|b| b.members.as_slice()).collect();
    classes.sort_by_key(|members| members.iter().map(|&v| key(v)).min());

    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    for members in classes {
        let fits = parts.last().is_some_and(|block: &Vec<Vertex>| {
            block.iter().all(|&u| members.iter().all(|&v| g.has_edge(u, v)))
        });
        if fits {
            parts.last_mut().unwrap().extend_from_slice(members);
        } else {
            parts.push(members.to_vec());
        }
    }
    validate(g, cg, parts)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BwError {
    #[error("graph has {n} vertices, exhaustive search limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("no bubble partition with independence number at most {alpha}")]
    NoPartition { alpha: usize },
}

pub const DEFAULT_BW_LIMIT: usize = 10;

/// Minimum width over all bubble partitions with `α(𝒱) ≤ alpha_max`, by
/// enumerating set partitions of the bubbles.
pub fn exhaustive_bw(
    g: &Graph,
    cg: &ContractedGraph,
    alpha_max: usize,
    n_limit: usize,
) -> Result<(usize, BubblePartition), BwError> {
    if g.n() > n_limit {
        return Err(BwError::TooLarge {
            n: g.n(),
            limit: n_limit,
        });
    }
    let nb = cg.bubble_count();
    if nb == 0 || !g.is_connected() {
        return Err(BwError::NoPartition { alpha: alpha_max });
    }
    let mut search = BwSearch {
        cg,
        alpha_max,
        assign: vec![usize::MAX; nb],
        blocks: Vec::new(),
        best_width: usize::MAX,
        best: None,
    };
    search.run(0);
    let assign = search.best.ok_or(BwError::NoPartition { alpha: alpha_max })?;
    let k = assign.iter().max().unwrap() + 1;
    let mut parts = vec![Vec::new(); k];
    for (b, &p) in assign.iter().enumerate() {
        parts[p].extend_from_slice(&cg.bubbles[b].members);
    }
    let bp = validate(g, cg, parts).expect("search only keeps tree-shaped partitions");
    Ok((search.best_width, bp))
}

struct BwSearch<'a> {
    cg: &'a ContractedGraph,
    alpha_max: usize,
    assign: Vec<usize>,
    /// Bubble ids per block.
    blocks: Vec<Vec<usize>>,
    best_width: usize,
    best: Option<Vec<usize>>,
}

impl BwSearch<'_> {
    fn run(&mut self, b: usize) {
        let width = self.blocks.iter().map(Vec::len).max().unwrap_or(0);
        if width >= self.best_width {
            return;
        }
        if self.quotient_has_cycle(b) {
            return;
        }
        if b == self.assign.len() {
            if self.quotient_connected() {
                self.best_width = width;
                self.best = Some(self.assign.clone());
            }
            return;
        }
        // restricted growth: bubble b joins an existing block or opens the next one
        for block in 0..=self.blocks.len() {
            if block == self.blocks.len() {
                self.blocks.push(Vec::new());
            }
            self.blocks[block].push(b);
            self.assign[b] = block;
            if self.block_alpha(block) <= self.alpha_max {
                self.run(b + 1);
            }
            self.assign[b] = usize::MAX;
            self.blocks[block].pop();
            if self.blocks[block].is_empty() {
                self.blocks.pop();
            }
        }
    }

    fn block_alpha(&self, block: usize) -> usize {
        // bubbles are cliques, so α of the union equals α over bubbles in G⁻
        independence_number(&self.cg.base, &self.blocks[block])
    }

    fn quotient(&self, assigned: usize) -> Graph {
        let mut q = Graph::empty(self.blocks.len());
        for a in 0..assigned {
            for &c in self.cg.base.neighbors(a) {
                if c < assigned && self.assign[a] != self.assign[c] {
                    q.ensure_edge(self.assign[a], self.assign[c]).unwrap();
                }
            }
        }
        q
    }

    /// Edges only accumulate as bubbles get assigned, so a cycle among the
    /// first `assigned` bubbles is permanent.
    fn quotient_has_cycle(&self, assigned: usize) -> bool {
        let q = self.quotient(assigned);
        let comps = q.connected_components().len();
        q.m() + comps > q.n()
    }

    fn quotient_connected(&self) -> bool {
        self.quotient(self.assign.len()).is_connected()
    }
}

pub fn parse_partition(text: &str) -> Result<Vec<Vec<Vertex>>, PartitionError> {
    let err = |line: usize, msg: String| PartitionError::Parse { line, msg };
    let mut parts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("part ")
            .ok_or_else(|| err(lineno, format!("unrecognized line `{line}`")))?;
        let (idx_text, ids) = rest
            .split_once(':')
            .ok_or_else(|| err(lineno, "expected `part <idx>: <ids>`".into()))?;
        let part_idx: usize = idx_text
            .trim()
            .parse()
            .map_err(|_| err(lineno, format!("bad part index `{idx_text}`")))?;
        if part_idx != parts.len() {
            return Err(err(lineno, format!("expected part {}, got {part_idx}", parts.len())));
        }
        let members = ids
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(lineno, format!("bad vertex id `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        parts.push(members);
    }
    Ok(parts)
}

pub fn write_partition(parts: &[Vec<Vertex>]) -> String {
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        write!(out, "part {i}:").unwrap();
        for v in part {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bubble_model::{build_bubble_model, p_value};
    use crate::graph::twin_classes;
    use crate::interval::{intersection_graph, parse_intervals};

    fn check(g: &Graph, parts: Vec<Vec<Vertex>>) -> Result<BubblePartition, PartitionError> {
        validate(g, &twin_classes(g), parts)
    }

    #[test]
    fn trivial_partition_is_a_single_node() {
        let g = Graph::petersen();
        let bp = check(&g, vec![(0..10).collect()]).unwrap();
        assert_eq!(bp.tree, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn path_split() {
        let bp = check(&Graph::path(4), vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        assert!(bp.is_path());
        assert_eq!(bp.tree, vec![vec![1], vec![0, 2], vec![1]]);
    }

    #[test]
    fn six_cycle_in_pairs_is_a_triangle() {
        let err = check(&Graph::cycle(6), vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap_err();
        match err {
            PartitionError::QuotientHasCycle(c) => {
                let mut c = c;
                c.sort_unstable();
                assert_eq!(c, vec![0, 1, 2]);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn validation_errors() {
        let k3 = Graph::complete(3);
        assert_eq!(
            check(&k3, vec![vec![0], vec![1, 2]]).unwrap_err(),
            PartitionError::NotBubbleUnion { part: 0, bubble: 0 }
        );
        assert_eq!(check(&k3, vec![vec![0, 1]]).unwrap_err(), PartitionError::Uncovered(2));
        assert_eq!(check(&k3, vec![vec![0, 1, 2], vec![1]]).unwrap_err(), PartitionError::Overlap(1));
        assert_eq!(check(&k3, vec![vec![0, 1, 2], vec![]]).unwrap_err(), PartitionError::EmptyPart(1));
        let two = Graph::empty(2);
        assert_eq!(check(&two, vec![vec![0], vec![1]]).unwrap_err(), PartitionError::QuotientDisconnected);
    }

    #[test]
    fn stats_examples() {
        let g = Graph::star(3);
        let bp = check(&g, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(stats(&g, &bp), PartitionStats { alpha: 3, width: 4 });
        let g = Graph::path(4);
        let bp = check(&g, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(stats(&g, &bp).alpha, 1);
    }

    #[test]
    fn columns_of_complete_and_path() {
        let g = Graph::complete(5);
        let cg = twin_classes(&g);
        let bp = columns_partition(&g, &cg, &build_bubble_model(&g).unwrap()).unwrap();
        assert_eq!(bp.len(), 1);

        let g = Graph::path(4);
        let cg = twin_classes(&g);
        let bm = build_bubble_model(&g).unwrap();
        let bp = columns_partition(&g, &cg, &bm).unwrap();
        assert!(bp.is_path());
        assert_eq!(stats(&g, &bp), PartitionStats { alpha: 1, width: p_value(&bm) });
    }

    #[test]
    fn left_endpoint_partition_of_the_claw() {
        let rep = parse_intervals("0 [0,1]\n1 (1,2)\n2 [2,3]\n3 [1,2]\n").unwrap();
        let g = intersection_graph(&rep).unwrap();
        let cg = twin_classes(&g);
        let bp = left_endpoint_partition(&rep, &g, &cg).unwrap();
        assert_eq!(stats(&g, &bp).alpha, 1);
        assert_eq!(bp.parts, vec![vec![0, 3], vec![1], vec![2]]);
    }

    #[test]
    fn left_endpoint_partition_edge_cases() {
        let rep = parse_intervals("0 [0,1]\n1 [0,1]\n2 [0,1]\n").unwrap();
        let g = intersection_graph(&rep).unwrap();
        let bp = left_endpoint_partition(&rep, &g, &twin_classes(&g)).unwrap();
        assert_eq!(bp.len(), 1);

        let rep = parse_intervals("0 [0,1]\n1 [3,4]\n").unwrap();
        let g = intersection_graph(&rep).unwrap();
        assert_eq!(
            left_endpoint_partition(&rep, &g, &twin_classes(&g)).unwrap_err(),
            PartitionError::QuotientDisconnected
        );
    }

    #[test]
    fn exhaustive_small_cases() {
        let g = Graph::complete(4);
        let (w, bp) = exhaustive_bw(&g, &twin_classes(&g), 1, 10).unwrap();
        assert_eq!((w, bp.len()), (1, 1));

        let g = Graph::cycle(4);
        let (w, bp) = exhaustive_bw(&g, &twin_classes(&g), 1, 10).unwrap();
        assert_eq!(w, 2);
        assert_eq!(stats(&g, &bp).alpha, 1);

        // universal vertex 0 joined to a path 1..=7
        let mut g = Graph::path(8);
        for v in 2..8 {
            g.add_edge(0, v).unwrap();
        }
        assert_eq!(
            exhaustive_bw(&g, &twin_classes(&g), 1, 10).unwrap_err(),
            BwError::NoPartition { alpha: 1 }
        );
        assert!(exhaustive_bw(&g, &twin_classes(&g), 2, 10).is_ok());

        assert!(matches!(
            exhaustive_bw(&Graph::path(11), &twin_classes(&Graph::path(11)), 1, 10),
            Err(BwError::TooLarge { .. })
        ));
    }

    #[test]
    fn partition_text_round_trip() {
        let text = "part 0: 0 1 4\npart 1: 2 3\n";
        let parts = parse_partition(text).unwrap();
        assert_eq!(write_partition(&parts), text);
        assert!(parse_partition("part 1: 0\n").is_err());
        assert!(parse_partition("prt 0: 0\n").is_err());
    }
}
