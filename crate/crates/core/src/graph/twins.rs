use std::collections::HashMap;

use super::{Cut, Graph, Vertex};

/// A maximal class of true twins (equal closed neighborhoods). Always a clique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bubble {
    pub id: usize,
    /// Sorted, non-empty.
    pub members: Vec<Vertex>,
}

impl Bubble {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `G⁻`: every bubble of `G` contracted to a single vertex.
///
/// Bubble ids are ordered by smallest member, so vertex `b` of `base` is
/// `bubbles[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedGraph {
    pub base: Graph,
    pub bubble_of: Vec<usize>,
    pub bubbles: Vec<Bubble>,
}

impl ContractedGraph {
    pub fn bubble_count(&self) -> usize {
        self.bubbles.len()
    }

    pub fn bubble_size(&self, b: usize) -> usize {
        self.bubbles[b].members.len()
    }

    /// Sorted, duplicate-free bubble ids touched by `vertices`.
    pub fn bubbles_of(&self, vertices: &[Vertex]) -> Vec<usize> {
        let mut out: Vec<usize> = vertices.iter().map(|&v| self.bubble_of[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Bubbles `b` with `∅ ⊊ b ∩ S ⊊ b`.
    pub fn crossed_bubbles(&self, c: &Cut) -> Vec<usize> {
        self.bubbles
            .iter()
            .filter(|b| {
                let inside = b.members.iter().filter(|&&v| c.contains(v)).count();
                inside > 0 && inside < b.members.len()
            })
            .map(|b| b.id)
            .collect()
    }
}

/// Partitions `V(g)` into maximal true-twin classes and builds `G⁻`.
pub fn twin_classes(g: &Graph) -> ContractedGraph {
    let mut class_of_fingerprint: HashMap<Vec<Vertex>, usize> = HashMap::new();
    let mut bubble_of = vec![0; g.n()];
    let mut bubbles: Vec<Bubble> = Vec::new();
    // vertices are visited in increasing order, so ids follow smallest members
    for v in g.vertices() {
        let id = *class_of_fingerprint
            .entry(g.closed_neighborhood(v))
            .or_insert_with(|| {
                bubbles.push(Bubble {
                    id: bubbles.len(),
                    members: Vec::new(),
                });
                bubbles.len() - 1
            });
        bubbles[id].members.push(v);
        bubble_of[v] = id;
    }
    let mut base = Graph::empty(bubbles.len());
    for b in &bubbles {
        let rep = b.members[0];
        for &w in g.neighbors(rep) {
            let other = bubble_of[w];
            if other > b.id {
                base.ensure_edge(b.id, other).expect("bubble ids in range");
            }
        }
    }
    ContractedGraph {
        base,
        bubble_of,
        bubbles,
    }
}

/// Whether the bubbles crossed by `c` form an independent set of `G⁻`.
pub fn is_tight(cg: &ContractedGraph, c: &Cut) -> bool {
    let crossed = cg.crossed_bubbles(c);
    crossed
        .iter()
        .enumerate()
        .all(|(i, &a)| crossed[i + 1..].iter().all(|&b| !cg.base.has_edge(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_one_bubble() {
        let cg = twin_classes(&Graph::complete(3));
        assert_eq!(cg.bubbles.len(), 1);
        assert_eq!(cg.bubbles[0].members, vec![0, 1, 2]);
        assert_eq!(cg.base.n(), 1);
        assert_eq!(cg.base.m(), 0);
    }

    #[test]
    fn path_is_twin_free() {
        let cg = twin_classes(&Graph::path(3));
        assert_eq!(cg.bubbles.len(), 3);
        assert_eq!(cg.base, Graph::path(3));
    }

    #[test]
    fn claw_leaves_are_false_twins_only() {
        let g = Graph::star(3);
        // pairwise closed neighborhoods: center {0,1,2,3}, leaf i {0,i}
        for u in 0..4 {
            for v in u + 1..4 {
                assert_ne!(g.closed_neighborhood(u), g.closed_neighborhood(v));
            }
        }
        let cg = twin_classes(&g);
        assert_eq!(cg.bubbles.len(), 4);
        assert!(cg.bubbles.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn tightness() {
        let cg = twin_classes(&Graph::complete(4));
        assert!(is_tight(&cg, &Cut::empty(4)));
        assert!(is_tight(&cg, &Cut::from_members(4, [0, 1])));

        // K4 with a missing edge between the two halves' pendant: bubbles {0,1} and {2,3}
        // joined completely, plus vertex 4 adjacent to {2,3} only.
        let g = Graph::from_edges(
            5,
            [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        let cg = twin_classes(&g);
        assert_eq!(cg.bubbles.len(), 3);
        assert!(cg.base.has_edge(cg.bubble_of[0], cg.bubble_of[2]));
        assert!(!is_tight(&cg, &Cut::from_members(5, [0, 2])));
        assert!(is_tight(&cg, &Cut::from_members(5, [0, 2, 3])));
    }
}
