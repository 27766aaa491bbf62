//! Structural checks on expressions: the normal form assumed by the tight
//! DP, and per-node `(α, β, δ)` certificates.

use std::collections::HashMap;

use crate::graph::{twin_classes, ContractedGraph, Vertex};
use crate::mis::independence_number;

use super::{trace, CwError, CwExpression, CwNode, Label, NodeId, Trace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A union operand misses an edge of `G` between two of its vertices.
    NotInduced { node: NodeId, u: Vertex, v: Vertex },
    /// `V(G_t)` contains part of a bubble.
    BubbleSplit { node: NodeId, bubble: usize },
    /// A bubble inside `G_t` carries more than one label.
    TwinLabels { node: NodeId, bubble: usize },
}

/// A node whose vertices are a proper, single-labelled subset of one bubble:
/// the inside of a clique gadget, which folds into one normalized leaf.
fn inside_gadget(tr: &Trace, cg: &ContractedGraph, t: NodeId) -> bool {
    if tr.classes[t].len() != 1 {
        return false;
    }
    let vs = tr.classes[t].values().next().unwrap();
    let b = cg.bubble_of[vs[0]];
    vs.iter().all(|&v| cg.bubble_of[v] == b) && vs.len() < cg.bubble_size(b)
}

/// All violations of the normal form, by node id. Nodes inside clique
/// gadgets are exempt.
pub fn check_normalized(expr: &CwExpression) -> Result<Vec<Violation>, CwError> {
    let tr = trace(expr)?;
    let cg = twin_classes(&tr.graph);
    let g = &tr.graph;
    let mut out = Vec::new();
    for t in 0..expr.len() {
        if inside_gadget(&tr, &cg, t) {
            continue;
        }
        let vs = tr.vertices(t);
        let mut label_of = HashMap::new();
        for (&l, class) in &tr.classes[t] {
            for &v in class {
                label_of.insert(v, l);
            }
        }
        for b in cg.bubbles_of(&vs) {
            let members = &cg.bubbles[b].members;
            if members.iter().any(|v| !label_of.contains_key(v)) {
                out.push(Violation::BubbleSplit { node: t, bubble: b });
            } else if members.iter().any(|v| label_of[v] != label_of[&members[0]]) {
                out.push(Violation::TwinLabels { node: t, bubble: b });
            }
        }
        let under_union = tr.parent[t].is_some_and(|p| matches!(expr.node(p), CwNode::Union(..)));
        if under_union {
            'pairs: for &u in &vs {
                for &v in g.neighbors(u) {
                    if u < v && label_of.contains_key(&v) && !tr.has_edge_at(t, u, v) {
                        out.push(Violation::NotInduced { node: t, u, v });
                        break 'pairs;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeAbd {
    pub node: NodeId,
    /// The exempted labels `L_t`; on failure, the closest candidate found.
    pub lt: Vec<Label>,
    /// Independence number of the non-exempt vertices.
    pub alpha: usize,
    /// Largest bubble count of a non-exempt label class.
    pub beta: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbdReport {
    pub alpha: usize,
    pub beta: usize,
    pub delta: usize,
    pub nodes: Vec<NodeAbd>,
    pub verdict: bool,
}

impl AbdReport {
    pub fn failures(&self) -> impl Iterator<Item = &NodeAbd> {
        self.nodes.iter().filter(|n| !n.ok)
    }
}

/// Every `(L_t, α, β)` candidate per node, with `|L_t| ≤ δ`, smallest sets
/// first and lexicographic within a size.
fn candidates(tr: &Trace, cg: &ContractedGraph, delta: usize) -> Vec<Vec<(Vec<Label>, usize, usize)>> {
    let g = &tr.graph;
    let mut alpha_cache: HashMap<Vec<Vertex>, usize> = HashMap::new();
    let mut out = Vec::with_capacity(tr.classes.len());
    for classes in &tr.classes {
        let labels: Vec<Label> = classes.keys().copied().collect();
        let bubbles: Vec<usize> = classes.values().map(|c| cg.bubbles_of(c).len()).collect();
        let mut node = Vec::new();
        for size in 0..=delta.min(labels.len()) {
            for pick in combinations(labels.len(), size) {
                let mut rest: Vec<Vertex> = Vec::new();
                let mut beta = 0;
                for (i, l) in labels.iter().enumerate() {
                    if !pick.contains(&i) {
                        rest.extend_from_slice(&classes[l]);
                        beta = beta.max(bubbles[i]);
                    }
                }
                rest.sort_unstable();
                let alpha = *alpha_cache
                    .entry(rest)
                    .or_insert_with_key(|rest| independence_number(g, rest));
                node.push((pick.iter().map(|&i| labels[i]).collect(), alpha, beta));
            }
        }
        out.push(node);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn report(
    cands: Vec<Vec<(Vec<Label>, usize, usize)>>,
    alpha: usize,
    beta: usize,
    delta: usize,
) -> AbdReport {
    let nodes: Vec<NodeAbd> = cands
        .into_iter()
        .enumerate()
        .map(|(node, list)| {
            let pass = list.iter().find(|(_, a, b)| *a <= alpha && *b <= beta);
            let (lt, a, b) = match pass {
                Some(c) => c.clone(),
                None => list
                    .iter()
                    .min_by_key(|(_, a, b)| (a.saturating_sub(alpha), b.saturating_sub(beta)))
                    .cloned()
                    .expect("the empty set is always a candidate"),
            };
            NodeAbd {
                node,
                lt,
                alpha: a,
                beta: b,
                ok: pass.is_some(),
            }
        })
        .collect();
    let verdict = nodes.iter().all(|n| n.ok);
    AbdReport {
        alpha,
        beta,
        delta,
        nodes,
        verdict,
    }
}

/// Searches, per node, for `L_t` with `|L_t| ≤ δ` such that the other labels
/// induce independence number `≤ α` and hold `≤ β` bubbles each.
pub fn check_abd(expr: &CwExpression, alpha: usize, beta: usize, delta: usize) -> Result<AbdReport, CwError> {
    let tr = trace(expr)?;
    let cg = twin_classes(&tr.graph);
    Ok(report(candidates(&tr, &cg, delta), alpha, beta, delta))
}

/// The smallest `α` for which `check_abd(expr, α, β, δ)` passes, with its
/// report; `None` if no `α` works because of the bubble condition.
pub fn minimal_abd_alpha(expr: &CwExpression, beta: usize, delta: usize) -> Result<Option<AbdReport>, CwError> {
    let tr = trace(expr)?;
    let cg = twin_classes(&tr.graph);
    let cands = candidates(&tr, &cg, delta);
    let mut alpha = 0;
    for list in &cands {
        match list.iter().filter(|(_, _, b)| *b <= beta).map(|(_, a, _)| *a).min() {
            Some(a) => alpha = alpha.max(a),
            None => return Ok(None),
        }
    }
    Ok(Some(report(cands, alpha, beta, delta)))
}

/// A passing certificate with the given `δ`: smallest workable `β ≥ 1`,
/// then smallest `α` for it.
pub fn find_certificate_with(expr: &CwExpression, delta: usize) -> Result<AbdReport, CwError> {
    let tr = trace(expr)?;
    let cg = twin_classes(&tr.graph);
    let cands = candidates(&tr, &cg, delta);
    // the smallest β every node can meet, but at least 1: with β = 0 the
    // per-node vector bound collapses to 0 although one vector always exists
    let beta = cands
        .iter()
        .map(|list| list.iter().map(|(_, _, b)| *b).min().unwrap_or(0))
        .max()
        .unwrap_or(0)
        .max(1);
    let alpha = cands
        .iter()
        .map(|list| {
            list.iter()
                .filter(|(_, _, b)| *b <= beta)
                .map(|(_, a, _)| *a)
                .min()
                .expect("some candidate meets the smallest feasible β")
        })
        .max()
        .unwrap_or(0);
    Ok(report(cands, alpha, beta, delta))
}
