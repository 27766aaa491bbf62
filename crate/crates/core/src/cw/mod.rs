//! Clique-width expressions.
//!
//! Nodes live in an arena where every child id is smaller than its parent's;
//! the root is the last node. `Eta(l, l)` is allowed and turns label class
//! `l` into a clique.

mod construct;
mod format;
mod maxcut;
mod normalize;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use construct::from_bubble_partition;
pub use format::{parse_expression, write_expression};
pub use maxcut::{
    maxcut_cw_tight, maxcut_cw_vectors, tight_vector_bound, CwSolution, CwStats, MAX_TABLE_ENTRIES,
};
pub use normalize::{
    check_abd, check_normalized, find_certificate_with, minimal_abd_alpha, AbdReport, NodeAbd, Violation,
};

pub type Label = usize;
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CwNode {
    Intro { label: Label, vertex: Vertex },
    Union(NodeId, NodeId),
    /// Joins every vertex labelled `.0` with every vertex labelled `.1`.
    Eta(Label, Label, NodeId),
    /// Relabels `from` to `to`.
    Rho { from: Label, to: Label, child: NodeId },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CwError {
    #[error("empty expression")]
    Empty,
    #[error("node {node}: {reason}")]
    Malformed { node: NodeId, reason: String },
    #[error("vertex {0} is introduced more than once")]
    DuplicateVertex(Vertex),
    #[error("vertex ids must be 0..{n}; {missing} is never introduced")]
    MissingVertex { missing: Vertex, n: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("eta node {node} joins classes that are already partly adjacent")]
    PartialEta { node: NodeId },
    #[error("node {node} needs a table of {entries} entries (limit {limit})")]
    TableTooLarge { node: NodeId, entries: u128, limit: u128 },
    #[error("certificate does not fit this expression: {0}")]
    BadCertificate(String),
    #[error("expression is not normalized: {0}")]
    NotNormalized(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CwExpression {
    nodes: Vec<CwNode>,
}

impl CwExpression {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: CwNode) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn intro(&mut self, label: Label, vertex: Vertex) -> NodeId {
        self.push(CwNode::Intro { label, vertex })
    }

    pub fn union(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(CwNode::Union(a, b))
    }

    pub fn eta(&mut self, i: Label, j: Label, child: NodeId) -> NodeId {
        self.push(CwNode::Eta(i, j, child))
    }

    pub fn rho(&mut self, from: Label, to: Label, child: NodeId) -> NodeId {
        self.push(CwNode::Rho { from, to, child })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[CwNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> CwNode {
        self.nodes[id]
    }

    pub fn root(&self) -> Option<NodeId> {
        self.nodes.len().checked_sub(1)
    }

    pub fn children(&self, id: NodeId) -> Vec<NodeId> {
        match self.nodes[id] {
            CwNode::Intro { .. } => vec![],
            CwNode::Union(a, b) => vec![a, b],
            CwNode::Eta(_, _, c) | CwNode::Rho { child: c, .. } => vec![c],
        }
    }

    /// Every label mentioned anywhere, `ℒ(T)`.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for node in &self.nodes {
            match *node {
                CwNode::Intro { label, .. } => {
                    out.insert(label);
                }
                CwNode::Eta(i, j, _) | CwNode::Rho { from: i, to: j, .. } => {
                    out.insert(i);
                    out.insert(j);
                }
                CwNode::Union(..) => {}
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.labels().len()
    }

    /// Appends a copy of `other` with vertex `v` renamed to `rename[v]`, and
    /// returns the id of the copied root.
    pub fn graft(&mut self, other: &CwExpression, rename: &[Vertex]) -> Option<NodeId> {
        let offset = self.nodes.len();
        for node in &other.nodes {
            let copy = match *node {
                CwNode::Intro { label, vertex } => CwNode::Intro {
                    label,
                    vertex: rename[vertex],
                },
                CwNode::Union(a, b) => CwNode::Union(a + offset, b + offset),
                CwNode::Eta(i, j, c) => CwNode::Eta(i, j, c + offset),
                CwNode::Rho { from, to, child } => CwNode::Rho {
                    from,
                    to,
                    child: child + offset,
                },
            };
            self.nodes.push(copy);
        }
        other.root().map(|r| r + offset)
    }

    /// Checks that the arena is a single tree rooted at the last node.
    pub fn check_tree(&self) -> Result<(), CwError> {
        let root = self.root().ok_or(CwError::Empty)?;
        let mut parent = vec![None; self.len()];
        for id in 0..self.len() {
            for c in self.children(id) {
                if c >= id {
                    return Err(CwError::Malformed {
                        node: id,
                        reason: format!("child {c} does not precede its parent"),
                    });
                }
                if parent[c].replace(id).is_some() {
                    return Err(CwError::Malformed {
                        node: c,
                        reason: "node has two parents".into(),
                    });
                }
            }
        }
        match (0..root).find(|&id| parent[id].is_none()) {
            Some(id) => Err(CwError::Malformed {
                node: id,
                reason: "node is not reachable from the root".into(),
            }),
            None => Ok(()),
        }
    }

    /// Parent of every node; `None` for the root.
    pub fn parents(&self) -> Vec<Option<NodeId>> {
        let mut parent = vec![None; self.len()];
        for id in 0..self.len() {
            for c in self.children(id) {
                parent[c] = Some(id);
            }
        }
        parent
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub label_of: Vec<Label>,
}

impl LabeledGraph {
    /// `V_ℓ` for every label in use.
    pub fn classes(&self) -> BTreeMap<Label, Vec<Vertex>> {
        let mut out: BTreeMap<Label, Vec<Vertex>> = BTreeMap::new();
        for (v, &l) in self.label_of.iter().enumerate() {
            out.entry(l).or_default().push(v);
        }
        out
    }
}

pub fn evaluate(expr: &CwExpression) -> Result<LabeledGraph, CwError> {
    let tr = trace(expr)?;
    let root = expr.root().unwrap();
    let mut label_of = vec![0; tr.graph.n()];
    for (&l, vs) in &tr.classes[root] {
        for &v in vs {
            label_of[v] = l;
        }
    }
    Ok(LabeledGraph {
        graph: tr.graph,
        label_of,
    })
}

/// Per-node view of an evaluated expression.
#[derive(Debug, Clone)]
pub struct Trace {
    /// `G_r`.
    pub graph: Graph,
    /// Non-empty label classes `V_{t,ℓ}`, each sorted.
    pub classes: Vec<BTreeMap<Label, Vec<Vertex>>>,
    /// Edges first created at each node (only Eta nodes create edges).
    pub new_edges: Vec<usize>,
    /// Node at which each edge of `G_r` was created.
    pub created_at: HashMap<(Vertex, Vertex), NodeId>,
    pub parent: Vec<Option<NodeId>>,
    enter: Vec<usize>,
    exit: Vec<usize>,
}

impl Trace {
    pub fn vertices(&self, t: NodeId) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.classes[t].values().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn vertex_count(&self, t: NodeId) -> usize {
        self.classes[t].values().map(Vec::len).sum()
    }

    /// Whether `a` lies in the subtree of `t`.
    pub fn in_subtree(&self, a: NodeId, t: NodeId) -> bool {
        self.enter[t] <= self.enter[a] && self.exit[a] <= self.exit[t]
    }

    /// Whether edge `uv` of `G_r` is already present in `G_t`.
    pub fn has_edge_at(&self, t: NodeId, u: Vertex, v: Vertex) -> bool {
        let key = (u.min(v), u.max(v));
        self.created_at.get(&key).is_some_and(|&a| self.in_subtree(a, t))
    }
}

/// Evaluates bottom-up and records every intermediate labelled graph.
pub fn trace(expr: &CwExpression) -> Result<Trace, CwError> {
    expr.check_tree()?;
    let mut n = 0;
    let mut seen = HashSet::new();
    for node in expr.nodes() {
        if let CwNode::Intro { vertex, .. } = *node {
            if !seen.insert(vertex) {
                return Err(CwError::DuplicateVertex(vertex));
            }
            n += 1;
        }
    }
    if let Some(missing) = (0..n).find(|v| !seen.contains(v)) {
        return Err(CwError::MissingVertex { missing, n });
    }

    let mut graph = Graph::empty(n);
    let mut classes: Vec<BTreeMap<Label, Vec<Vertex>>> = Vec::with_capacity(expr.len());
    let mut new_edges = vec![0; expr.len()];
    let mut created_at = HashMap::new();
    for (id, node) in expr.nodes().iter().enumerate() {
        let cls = match *node {
            CwNode::Intro { label, vertex } => BTreeMap::from([(label, vec![vertex])]),
            CwNode::Union(a, b) => {
                let mut out = classes[a].clone();
                for (&l, vs) in &classes[b] {
                    let e = out.entry(l).or_default();
                    e.extend_from_slice(vs);
                    e.sort_unstable();
                }
                out
            }
            CwNode::Eta(i, j, c) => {
                let cls = classes[c].clone();
                let empty = Vec::new();
                let (vi, vj) = (cls.get(&i).unwrap_or(&empty), cls.get(&j).unwrap_or(&empty));
                for &u in vi {
                    for &v in vj {
                        if u != v && graph.ensure_edge(u, v).expect("ids in range") {
                            new_edges[id] += 1;
                            created_at.insert((u.min(v), u.max(v)), id);
                        }
                    }
                }
                cls
            }
            CwNode::Rho { from, to, child } => {
                let mut cls = classes[child].clone();
                if from != to {
                    if let Some(moved) = cls.remove(&from) {
                        let e = cls.entry(to).or_default();
                        e.extend(moved);
                        e.sort_unstable();
                    }
                }
                cls
            }
        };
        classes.push(cls);
    }

    let parent = expr.parents();
    let (mut enter, mut exit) = (vec![0; expr.len()], vec![0; expr.len()]);
    let mut clock = 0;
    let mut stack = vec![(expr.root().unwrap(), false)];
    while let Some((t, done)) = stack.pop() {
        if done {
            exit[t] = clock;
            clock += 1;
            continue;
        }
        enter[t] = clock;
        clock += 1;
        stack.push((t, true));
        for c in expr.children(t) {
            stack.push((c, false));
        }
    }
    Ok(Trace {
        graph,
        classes,
        new_edges,
        created_at,
        parent,
        enter,
        exit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let mut e = CwExpression::new();
        let a = e.intro(1, 0);
        let b = e.intro(2, 1);
        let u = e.union(a, b);
        e.eta(1, 2, u);
        let lg = evaluate(&e).unwrap();
        assert_eq!(lg.graph, Graph::complete(2));
        assert_eq!(lg.label_of, vec![1, 2]);
        assert_eq!(e.width(), 2);
    }

    #[test]
    fn clique_gadget() {
        let mut e = CwExpression::new();
        let mut acc = e.intro(3, 0);
        for v in 1..5 {
            let x = e.intro(3, v);
            acc = e.union(acc, x);
        }
        e.eta(3, 3, acc);
        let lg = evaluate(&e).unwrap();
        assert_eq!(lg.graph, Graph::complete(5));
        assert!(lg.label_of.iter().all(|&l| l == 3));
        assert_eq!(e.width(), 1);
    }

    #[test]
    fn relabel_single_vertex() {
        let mut e = CwExpression::new();
        let a = e.intro(1, 0);
        e.rho(1, 2, a);
        assert_eq!(evaluate(&e).unwrap().label_of, vec![2]);
    }

    #[test]
    fn eta_is_idempotent() {
        let mut e = CwExpression::new();
        let a = e.intro(0, 0);
        let b = e.intro(1, 1);
        let u = e.union(a, b);
        let x = e.eta(0, 1, u);
        e.eta(1, 0, x);
        let tr = trace(&e).unwrap();
        assert_eq!(tr.graph.m(), 1);
        assert_eq!(tr.new_edges, vec![0, 0, 0, 1, 0]);
        assert!(tr.has_edge_at(4, 0, 1));
        assert!(!tr.has_edge_at(2, 0, 1));
    }

    #[test]
    fn errors() {
        assert_eq!(evaluate(&CwExpression::new()).unwrap_err(), CwError::Empty);

        let mut e = CwExpression::new();
        let a = e.intro(0, 0);
        let b = e.intro(0, 0);
        e.union(a, b);
        assert_eq!(evaluate(&e).unwrap_err(), CwError::DuplicateVertex(0));

        let mut e = CwExpression::new();
        e.intro(0, 1);
        assert_eq!(evaluate(&e).unwrap_err(), CwError::MissingVertex { missing: 0, n: 1 });

        let mut e = CwExpression::new();
        let a = e.intro(0, 0);
        e.intro(0, 1);
        e.rho(0, 1, a);
        assert!(matches!(evaluate(&e), Err(CwError::Malformed { .. })));

        let mut e = CwExpression::new();
        let a = e.intro(0, 0);
        e.union(a, a);
        assert!(matches!(evaluate(&e), Err(CwError::Malformed { .. })));
    }
}
