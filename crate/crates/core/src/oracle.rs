//! Brute-force MaxCut ground truth and seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{twin_classes, Cut, Graph};
use crate::interval::{intersection_graph, rat, Interval, IntervalRep};

pub const DEFAULT_ORACLE_LIMIT: usize = 24;
/// Hard ceiling: cut masks are `u64` and enumeration is `2^(n-1)`.
const MAX_ORACLE_LIMIT: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub max_cut_size: usize,
    /// First maximum cut found in Gray-code order.
    pub witness: Cut,
    /// Largest cut size over tight cuts only.
    pub max_tight_cut_size: usize,
    /// A tight cut of size `max_cut_size`, if one exists.
    pub tight_witness: Option<Cut>,
}

pub fn brute_force_maxcut(g: &Graph) -> Result<OracleResult, OracleError> {
    brute_force_maxcut_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

/// Enumerates the `2^(n-1)` cuts with vertex 0 outside `S`, updating the cut
/// size incrementally along a Gray code.
pub fn brute_force_maxcut_with_limit(g: &Graph, limit: usize) -> Result<OracleResult, OracleError> {
    let n = g.n();
    let limit = limit.min(MAX_ORACLE_LIMIT);
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if n <= 1 {
        return Ok(OracleResult {
            max_cut_size: 0,
            witness: Cut::empty(n),
            max_tight_cut_size: 0,
            tight_witness: Some(Cut::empty(n)),
        });
    }
    let adj: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let cg = twin_classes(g);
    let bubble_masks: Vec<u64> = cg
        .bubbles
        .iter()
        .map(|b| b.members.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let bubble_adj: Vec<u64> = (0..cg.bubble_count())
        .map(|b| cg.base.neighbors(b).iter().fold(0u64, |m, &c| m | 1 << c))
        .collect();
    let tight = |s: u64| -> bool {
        let mut crossed = 0u64;
        for (b, &mask) in bubble_masks.iter().enumerate() {
            let inside = s & mask;
            if inside != 0 && inside != mask {
                if bubble_adj[b] & crossed != 0 {
                    return false;
                }
                crossed |= 1 << b;
            }
        }
        true
    };

    let mut s: u64 = 0;
    let mut size: usize = 0;
    let (mut best, mut best_mask) = (0usize, 0u64);
    let (mut best_tight, mut best_tight_mask) = (0usize, 0u64);
    let steps: u64 = 1 << (n - 1);
    for i in 1..steps {
        let v = i.trailing_zeros() as usize + 1;
        let bit = 1u64 << v;
        let same_side = if s & bit == 0 {
            (adj[v] & !s).count_ones()
        } else {
            (adj[v] & s).count_ones()
        } as usize;
        let degree = adj[v].count_ones() as usize;
        // flipping v cuts the edges to its old side and uncuts the rest
        size = size + same_side - (degree - same_side);
        s ^= bit;
        if size > best {
            best = size;
            best_mask = s;
        }
        if size > best_tight && tight(s) {
            best_tight = size;
            best_tight_mask = s;
        }
    }
    Ok(OracleResult {
        max_cut_size: best,
        witness: Cut::from_mask(n, best_mask),
        max_tight_cut_size: best_tight,
        tight_witness: (best_tight == best).then(|| Cut::from_mask(n, best_tight_mask)),
    })
}

/// Number of distinct left-endpoint grid points per unit length.
const GRID: i64 = 4;

fn random_lefts(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<i64> {
    // average degree is about 2n / span, so span ≈ 2 / density units
    let density = density.clamp(1e-3, 1.0);
    let span_units = (2.0 / density).max(1.0);
    let slots = ((span_units * GRID as f64).round() as i64).max(1);
    (0..n).map(|_| rng.gen_range(0..slots)).collect()
}

fn shuffled_ids(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    ids
}

/// Random closed unit intervals with left endpoints on a `1/4` grid; vertex
/// ids are shuffled so they carry no positional information.
pub fn gen_proper_interval(n: usize, density: f64, seed: u64) -> (Graph, IntervalRep) {
    gen_mixed_unit_with(n, density, seed, 0.0)
}

/// Like [`gen_proper_interval`], but each end is open with probability 1/2.
pub fn gen_mixed_unit(n: usize, density: f64, seed: u64) -> (Graph, IntervalRep) {
    gen_mixed_unit_with(n, density, seed, 0.5)
}

/// Endpoints come from the main stream; end flags from an independent stream,
/// so `open_prob = 0` yields exactly the proper-interval instance.
pub fn gen_mixed_unit_with(n: usize, density: f64, seed: u64, open_prob: f64) -> (Graph, IntervalRep) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lefts = random_lefts(&mut rng, n, density);
    let ids = shuffled_ids(&mut rng, n);
    let mut flag_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut intervals = vec![Interval::closed(rat(0, 1), rat(1, 1)); n];
    for (k, &left) in lefts.iter().enumerate() {
        let (lc, rc) = if open_prob > 0.0 {
            (!flag_rng.gen_bool(open_prob), !flag_rng.gen_bool(open_prob))
        } else {
            (true, true)
        };
        intervals[ids[k]] = Interval::unit(rat(left, GRID), lc, rc);
    }
    let rep = IntervalRep { intervals };
    let g = intersection_graph(&rep).expect("unit intervals are valid");
    (g, rep)
}

/// `G(n, p)` with a fixed seed.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// A connected random graph: a random spanning tree plus `G(n, p)` edges.
pub fn gen_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    let order = shuffled_ids(&mut rng, n);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        g.add_edge(order[i], parent).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random graph with planted true twins: a random skeleton on `k` classes
/// whose vertices are blown up into cliques of random size.
pub fn gen_blown_up(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut class_of = Vec::with_capacity(n);
    let mut classes = 0;
    while class_of.len() < n {
        let size = rng.gen_range(1..=3).min(n - class_of.len());
        class_of.extend(std::iter::repeat_n(classes, size));
        classes += 1;
    }
    let skeleton = gen_connected(classes, p, rng.gen());
    let ids = shuffled_ids(&mut rng, n);
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            let (ca, cb) = (class_of[a], class_of[b]);
            if ca == cb || skeleton.has_edge(ca, cb) {
                g.add_edge(ids[a], ids[b]).unwrap();
            }
        }
    }
    g
}
