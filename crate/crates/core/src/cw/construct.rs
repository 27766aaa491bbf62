//! Clique-width expression from a bubble partition.
//!
//! Labels: `0` for finished vertices, `1..=w` for the bubbles of the current
//! part and `w+1..=2w` for the bubbles of the child being attached.

use crate::graph::{ContractedGraph, Vertex};
use crate::partition::BubblePartition;

use super::{CwExpression, Label, NodeId};

/// Builds an expression of width at most `2w + 1` whose value is `G`, with
/// the tree of `bp` rooted at part 0.
///
/// The edges of a part are added bubble by bubble right after each union
/// rather than all at the end, so every union operand is an induced subgraph.
pub fn from_bubble_partition(cg: &ContractedGraph, bp: &BubblePartition) -> CwExpression {
    let w = bp.part_bubbles.iter().map(Vec::len).max().unwrap_or(0);
    let own = |i: usize| -> Label { 1 + i };
    let attached = |i: usize| -> Label { 1 + w + i };

    let (parent, order) = bp.rooted(0);
    let mut children = vec![Vec::new(); bp.len()];
    for &t in &order[1..] {
        children[parent[t].unwrap()].push(t);
    }

    let mut e = CwExpression::new();
    let mut built: Vec<Option<NodeId>> = vec![None; bp.len()];
    for &t in order.iter().rev() {
        let bubbles = &bp.part_bubbles[t];
        let mut acc = clique(&mut e, &cg.bubbles[bubbles[0]].members, own(0));
        for (i, &b) in bubbles.iter().enumerate().skip(1) {
            let gadget = clique(&mut e, &cg.bubbles[b].members, own(i));
            acc = e.union(acc, gadget);
            for (j, &b2) in bubbles[..i].iter().enumerate() {
                if cg.base.has_edge(b2, b) {
                    acc = e.eta(own(j), own(i), acc);
                }
            }
        }
        for &c in &children[t] {
            let theirs = &bp.part_bubbles[c];
            let mut sub = built[c].take().expect("children are built first");
            for j in 0..theirs.len() {
                sub = e.rho(own(j), attached(j), sub);
            }
            acc = e.union(acc, sub);
            for (i, &b) in bubbles.iter().enumerate() {
                for (j, &b2) in theirs.iter().enumerate() {
                    if cg.base.has_edge(b, b2) {
                        acc = e.eta(own(i), attached(j), acc);
                    }
                }
            }
            for j in 0..theirs.len() {
                acc = e.rho(attached(j), 0, acc);
            }
        }
        built[t] = Some(acc);
    }
    e
}

/// `η_{ℓ,ℓ}(ℓ(v₁) ∪ … ∪ ℓ(v_k))`; a lone vertex needs no join.
fn clique(e: &mut CwExpression, members: &[Vertex], label: Label) -> NodeId {
    let mut acc = e.intro(label, members[0]);
    for &v in &members[1..] {
        let x = e.intro(label, v);
        acc = e.union(acc, x);
    }
    if members.len() > 1 {
        acc = e.eta(label, label, acc);
    }
    acc
}
