//! Exact maximum independent set by branch and bound.
//!
//! Only meant for the small vertex sets that show up as partition parts and
//! label classes.

use crate::graph::{Graph, Vertex};

/// `α(G[vertices])`.
pub fn independence_number(g: &Graph, vertices: &[Vertex]) -> usize {
    max_independent_set(g, vertices).len()
}

/// A maximum independent set of `G[vertices]`, sorted.
pub fn max_independent_set(g: &Graph, vertices: &[Vertex]) -> Vec<Vertex> {
    let mut cand: Vec<Vertex> = vertices.to_vec();
    cand.sort_unstable();
    cand.dedup();
    let mut best = Vec::new();
    let mut current = Vec::new();
    branch(g, cand, &mut current, &mut best);
    best.sort_unstable();
    best
}

fn branch(g: &Graph, mut cand: Vec<Vertex>, current: &mut Vec<Vertex>, best: &mut Vec<Vertex>) {
    // isolated candidates (within cand) can always be taken
    let mut taken = 0;
    loop {
        let degree_in = |v: Vertex, cand: &[Vertex]| {
            cand.iter().filter(|&&w| w != v && g.has_edge(v, w)).count()
        };
        let Some(pos) = cand.iter().position(|&v| degree_in(v, &cand) <= 1) else {
            break;
        };
        // degree <= 1: taking v is always at least as good as taking its neighbor
        let v = cand.swap_remove(pos);
        current.push(v);
        taken += 1;
        cand.retain(|&w| !g.has_edge(v, w));
    }

    if current.len() + cand.len() <= best.len() {
        current.truncate(current.len() - taken);
        return;
    }
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        current.truncate(current.len() - taken);
        return;
    }

    let pivot = *cand
        .iter()
        .max_by_key(|&&v| cand.iter().filter(|&&w| g.has_edge(v, w)).count())
        .unwrap();

    // take the pivot
    let with: Vec<Vertex> = cand
        .iter()
        .copied()
        .filter(|&w| w != pivot && !g.has_edge(pivot, w))
        .collect();
    current.push(pivot);
    branch(g, with, current, best);
    current.pop();

    // drop the pivot
    cand.retain(|&w| w != pivot);
    branch(g, cand, current, best);

    current.truncate(current.len() - taken);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &Graph, vertices: &[Vertex]) -> usize {
        let k = vertices.len();
        (0u32..1 << k)
            .filter(|&mask| {
                (0..k).all(|i| {
                    mask >> i & 1 == 0
                        || (i + 1..k).all(|j| mask >> j & 1 == 0 || !g.has_edge(vertices[i], vertices[j]))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_families() {
        assert_eq!(independence_number(&Graph::complete(5), &[0, 1, 2, 3, 4]), 1);
        assert_eq!(independence_number(&Graph::star(3), &[0, 1, 2, 3]), 3);
        assert_eq!(independence_number(&Graph::cycle(7), &(0..7).collect::<Vec<_>>()), 3);
        assert_eq!(independence_number(&Graph::petersen(), &(0..10).collect::<Vec<_>>()), 4);
        assert_eq!(independence_number(&Graph::path(4), &[]), 0);
    }

    #[test]
    fn agrees_with_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let all: Vec<_> = (0..n).collect();
            let set = max_independent_set(&g, &all);
            assert_eq!(set.len(), brute(&g, &all));
            assert!(set.iter().all(|&a| set.iter().all(|&b| a == b || !g.has_edge(a, b))));
        }
    }
}
