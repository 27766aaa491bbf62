use super::{ContractedGraph, Graph, GraphError, Vertex};

/// A cut, given by its side `S`. The complement is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Cut {
    in_s: Vec<bool>,
}

impl Cut {
    /// The empty side on a universe of `n` vertices.
    pub fn empty(n: usize) -> Self {
        Cut { in_s: vec![false; n] }
    }

    pub fn from_members<I: IntoIterator<Item = Vertex>>(n: usize, members: I) -> Self {
        let mut c = Cut::empty(n);
        for v in members {
            c.insert(v);
        }
        c
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        Cut::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1))
    }

    pub fn insert(&mut self, v: Vertex) {
        if v >= self.in_s.len() {
            self.in_s.resize(v + 1, false);
        }
        self.in_s[v] = true;
    }

    pub fn remove(&mut self, v: Vertex) {
        if let Some(x) = self.in_s.get_mut(v) {
            *x = false;
        }
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.in_s.get(v).copied().unwrap_or(false)
    }

    pub fn members(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.in_s.iter().enumerate().filter(|(_, &x)| x).map(|(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.in_s.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `V \ S` for a universe of `n` vertices.
    pub fn complement(&self, n: usize) -> Cut {
        Cut::from_members(n, (0..n).filter(|&v| !self.contains(v)))
    }

    /// Largest member id, if any.
    pub fn max_member(&self) -> Option<Vertex> {
        self.in_s.iter().rposition(|&x| x)
    }
}

fn check_range(g: &Graph, c: &Cut) -> Result<(), GraphError> {
    match c.max_member() {
        Some(v) if v >= g.n() => Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() }),
        _ => Ok(()),
    }
}

/// Number of edges with exactly one endpoint in `S`.
pub fn cut_size(g: &Graph, c: &Cut) -> Result<usize, GraphError> {
    check_range(g, c)?;
    Ok(g.edges().filter(|&(u, v)| c.contains(u) != c.contains(v)).count())
}

/// `|N(U) \ S| - |N(U) ∩ S|` for the given neighbor set `N(U)`.
pub fn marginal_contribution(u_neighbors: &[Vertex], c: &Cut) -> i64 {
    u_neighbors
        .iter()
        .map(|&w| if c.contains(w) { -1 } else { 1 })
        .sum()
}

/// Predicted change of the cut size when `ell` vertices of bubble `b1` outside
/// `S` move into `S` and `ell` vertices of the adjacent bubble `b2` leave `S`.
///
/// Edges inside the clique `b1 ∪ b2` keep their cut status, so only the
/// neighbors outside both bubbles contribute.
pub fn transfer_delta(
    g: &Graph,
    cg: &ContractedGraph,
    b1: usize,
    b2: usize,
    c: &Cut,
    ell: usize,
) -> Result<i64, GraphError> {
    check_range(g, c)?;
    let nb = cg.bubbles.len();
    if b1 >= nb || b2 >= nb || b1 == b2 || !cg.base.has_edge(b1, b2) {
        return Err(GraphError::BubblesNotAdjacent(b1, b2));
    }
    let (out1, in2) = transfer_capacity(cg, b1, b2, c);
    if ell > out1.min(in2) {
        return Err(GraphError::InfeasibleTransfer {
            ell,
            max: out1.min(in2),
        });
    }
    let outside = |b: usize| -> Vec<Vertex> {
        let rep = cg.bubbles[b].members[0];
        g.neighbors(rep)
            .iter()
            .copied()
            .filter(|&w| cg.bubble_of[w] != b1 && cg.bubble_of[w] != b2)
            .collect()
    };
    let d1 = marginal_contribution(&outside(b1), c);
    let d2 = marginal_contribution(&outside(b2), c);
    Ok(ell as i64 * (d1 - d2))
}

/// `(|B1 \ S|, |B2 ∩ S|)`.
fn transfer_capacity(cg: &ContractedGraph, b1: usize, b2: usize, c: &Cut) -> (usize, usize) {
    let out1 = cg.bubbles[b1].members.iter().filter(|&&v| !c.contains(v)).count();
    let in2 = cg.bubbles[b2].members.iter().filter(|&&v| c.contains(v)).count();
    (out1, in2)
}

/// Performs the transfer scored by [`transfer_delta`], moving the lowest ids first.
pub fn apply_transfer(cg: &ContractedGraph, b1: usize, b2: usize, c: &Cut, ell: usize) -> Cut {
    let mut out = c.clone();
    for &v in cg.bubbles[b1].members.iter().filter(|&&v| !c.contains(v)).take(ell) {
        out.insert(v);
    }
    for &v in cg.bubbles[b2].members.iter().filter(|&&v| c.contains(v)).take(ell) {
        out.remove(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::twin_classes;

    #[test]
    fn complete_graph_half_split() {
        let g = Graph::complete(4);
        assert_eq!(cut_size(&g, &Cut::from_members(4, [0, 1])).unwrap(), 4);
        assert_eq!(cut_size(&g, &Cut::empty(4)).unwrap(), 0);
    }

    #[test]
    fn alternating_c4_cuts_everything() {
        let g = Graph::cycle(4);
        assert_eq!(cut_size(&g, &Cut::from_members(4, [0, 2])).unwrap(), 4);
    }

    #[test]
    fn out_of_range_member_is_an_error() {
        let g = Graph::path(3);
        assert!(matches!(
            cut_size(&g, &Cut::from_members(5, [4])),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn marginal_contribution_basics() {
        let c = Cut::from_members(4, [0, 1]);
        assert_eq!(marginal_contribution(&[0, 1], &c), -2);
        assert_eq!(marginal_contribution(&[], &c), 0);
        let comp = c.complement(4);
        assert_eq!(marginal_contribution(&[0, 1, 2], &comp), -marginal_contribution(&[0, 1, 2], &c));
    }

    #[test]
    fn transfer_zero_and_errors() {
        // two adjacent bubbles {0,1} and {2,3}, plus a pendant 4 on bubble {2,3}
        let g = Graph::from_edges(
            5,
            [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        let cg = twin_classes(&g);
        let b01 = cg.bubble_of[0];
        let b23 = cg.bubble_of[2];
        let c = Cut::from_members(5, [2]);
        assert_eq!(transfer_delta(&g, &cg, b01, b23, &c, 0).unwrap(), 0);
        assert!(matches!(
            transfer_delta(&g, &cg, b01, b23, &c, 2),
            Err(GraphError::InfeasibleTransfer { ell: 2, max: 1 })
        ));
        let b4 = cg.bubble_of[4];
        assert!(transfer_delta(&g, &cg, b01, b4, &c, 0).is_err());
    }

    #[test]
    fn transfer_matches_recount_on_small_case() {
        let g = Graph::from_edges(
            5,
            [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        let cg = twin_classes(&g);
        let (b01, b23) = (cg.bubble_of[0], cg.bubble_of[2]);
        let c = Cut::from_members(5, [2, 3]);
        let before = cut_size(&g, &c).unwrap() as i64;
        let moved = apply_transfer(&cg, b01, b23, &c, 1);
        let after = cut_size(&g, &moved).unwrap() as i64;
        assert_eq!(transfer_delta(&g, &cg, b01, b23, &c, 1).unwrap(), after - before);
    }
}
