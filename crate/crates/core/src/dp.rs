//! Tight-cut dynamic program over the tree of a bubble partition.
//!
//! A configuration of a part `U` records, per bubble of `U`, how many of its
//! vertices lie in `S`. Bubbles are twin classes, so these counts determine
//! every cut quantity; crossed bubbles (neither empty nor full) must form an
//! independent set of `G⁻`.
//!
//! Internally a configuration is just the count vector aligned with the
//! part's sorted bubble ids, and tables are ordered lexicographically by that
//! vector. Ties keep the first (smallest) encoding.

use thiserror::Error;

use crate::graph::{ContractedGraph, Cut, Graph, Vertex};
use crate::mis::independence_number;
use crate::partition::{validate, BubblePartition, PartitionError};

/// Per-part cap on `|Γ(U)|`.
pub const MAX_CONFIGURATIONS: usize = 4_000_000;
/// Per-node cap on child tuples examined by the product-form [`solve`].
pub const MAX_PRODUCT_TUPLES: u128 = 200_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("part {part} has {bubbles} bubbles; configuration masks hold at most 64")]
    TooWide { part: usize, bubbles: usize },
    #[error("part {part} has more than {limit} configurations")]
    TooManyConfigurations { part: usize, limit: usize },
    #[error("node {part} would examine {tuples} child tuples (limit {limit})")]
    ProductTooLarge { part: usize, tuples: u128, limit: u128 },
    #[error("root {root} is not a part (partition has {parts})")]
    BadRoot { root: usize, parts: usize },
}

/// `γ(S, U)` with bubble ids of the underlying [`ContractedGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    /// Crossed bubbles `𝓘`, sorted.
    pub crossed: Vec<usize>,
    /// `s_B` for each entry of `crossed`.
    pub counts: Vec<usize>,
    /// Bubbles entirely inside `S`, sorted.
    pub fully_in: Vec<usize>,
}

impl Configuration {
    /// Number of vertices of `bubble` inside `S`.
    pub fn in_count(&self, cg: &ContractedGraph, bubble: usize) -> usize {
        if let Ok(i) = self.crossed.binary_search(&bubble) {
            self.counts[i]
        } else if self.fully_in.binary_search(&bubble).is_ok() {
            cg.bubble_size(bubble)
        } else {
            0
        }
    }
}

/// `|U|^(2α(G[U])+1) · 2^|U⁻|`, saturating.
pub fn configuration_bound(g: &Graph, cg: &ContractedGraph, part: &[Vertex]) -> u128 {
    let alpha = independence_number(g, part) as u32;
    let width = cg.bubbles_of(part).len() as u32;
    (part.len() as u128)
        .checked_pow(2 * alpha + 1)
        .and_then(|x| 1u128.checked_shl(width).and_then(|p| x.checked_mul(p)))
        .unwrap_or(u128::MAX)
}

/// All of `Γ(U)` for a union of bubbles `U`, in lexicographic order of the
/// per-bubble count vector.
pub fn enumerate_configurations(
    g: &Graph,
    cg: &ContractedGraph,
    part: &[Vertex],
) -> Result<Vec<Configuration>, DpError> {
    let local = LocalPart::new(cg, cg.bubbles_of(part), 0)?;
    debug_assert!(local.configs.len() as u128 <= configuration_bound(g, cg, part));
    Ok(local
        .configs
        .iter()
        .map(|counts| local.to_configuration(counts))
        .collect())
}

/// Edges between `U` and `U'` separated when their bubbles hold the given
/// in-`S` counts.
pub fn cross_edges(
    cg: &ContractedGraph,
    part: &[Vertex],
    other: &[Vertex],
    gamma: &Configuration,
    gamma_other: &Configuration,
) -> usize {
    let (bs, bo) = (cg.bubbles_of(part), cg.bubbles_of(other));
    let mut total = 0;
    for &b in &bs {
        let (size, c) = (cg.bubble_size(b), gamma.in_count(cg, b));
        for &b2 in &bo {
            if b != b2 && cg.base.has_edge(b, b2) {
                let (size2, c2) = (cg.bubble_size(b2), gamma_other.in_count(cg, b2));
                total += c * (size2 - c2) + (size - c) * c2;
            }
        }
    }
    total
}

/// Edges inside `U` separated by `γ`.
pub fn inner_edges(cg: &ContractedGraph, part: &[Vertex], gamma: &Configuration) -> usize {
    let bs = cg.bubbles_of(part);
    let mut total = 0;
    for (i, &b) in bs.iter().enumerate() {
        let (size, c) = (cg.bubble_size(b), gamma.in_count(cg, b));
        total += c * (size - c);
        for &b2 in &bs[i + 1..] {
            if cg.base.has_edge(b, b2) {
                let (size2, c2) = (cg.bubble_size(b2), gamma.in_count(cg, b2));
                total += c * (size2 - c2) + (size - c) * c2;
            }
        }
    }
    total
}

/// Instrumentation gathered during one run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    /// `|Γ(V_t)|` per part.
    pub configurations: Vec<usize>,
    /// The counting bound per part.
    pub bounds: Vec<u128>,
    /// Child-configuration combinations examined.
    pub evaluations: u64,
}

impl DpStats {
    pub fn total_configurations(&self) -> u64 {
        self.configurations.iter().map(|&c| c as u64).sum()
    }

    pub fn within_bounds(&self) -> bool {
        self.configurations
            .iter()
            .zip(&self.bounds)
            .all(|(&c, &b)| c as u128 <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpSolution {
    pub max_cut_size: usize,
    pub cut: Cut,
    pub stats: DpStats,
}

/// Theorem-style evaluation: every tuple of child configurations is tried
/// jointly for each parent configuration.
pub fn solve(g: &Graph, cg: &ContractedGraph, bp: &BubblePartition) -> Result<DpSolution, DpError> {
    run(g, cg, bp, 0, Mode::Product)
}

/// Children are maximized one at a time, which gives the same optimum at a
/// per-node cost that is a sum over children rather than a product.
pub fn solve_independent_children(
    g: &Graph,
    cg: &ContractedGraph,
    bp: &BubblePartition,
) -> Result<DpSolution, DpError> {
    run(g, cg, bp, 0, Mode::Sum)
}

/// [`solve_independent_children`] with the tree rooted at `root`.
pub fn solve_rooted(
    g: &Graph,
    cg: &ContractedGraph,
    bp: &BubblePartition,
    root: usize,
) -> Result<DpSolution, DpError> {
    run(g, cg, bp, root, Mode::Sum)
}

/// Validates `parts` before solving.
pub fn solve_parts(g: &Graph, cg: &ContractedGraph, parts: Vec<Vec<Vertex>>) -> Result<DpSolution, DpError> {
    let bp = validate(g, cg, parts)?;
    solve_independent_children(g, cg, &bp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Product,
    Sum,
}

/// A part with local bubble indices.
struct LocalPart {
    bubbles: Vec<usize>,
    sizes: Vec<usize>,
    /// Count vectors, lexicographically sorted.
    configs: Vec<Vec<usize>>,
    /// Crossed-bubble mask per configuration.
    crossed: Vec<u64>,
    inner: Vec<usize>,
}

impl LocalPart {
    fn new(cg: &ContractedGraph, bubbles: Vec<usize>, part: usize) -> Result<Self, DpError> {
        let k = bubbles.len();
        if k > 64 {
            return Err(DpError::TooWide { part, bubbles: k });
        }
        let sizes: Vec<usize> = bubbles.iter().map(|&b| cg.bubble_size(b)).collect();
        let adj: Vec<u64> = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| j != i && cg.base.has_edge(bubbles[i], bubbles[j]))
                    .fold(0u64, |m, j| m | 1 << j)
            })
            .collect();

        let mut configs = Vec::new();
        let mut current = vec![0; k];
        let mut overflow = false;
        enumerate(&sizes, &adj, 0, 0, &mut current, &mut configs, &mut overflow);
        if overflow {
            return Err(DpError::TooManyConfigurations {
                part,
                limit: MAX_CONFIGURATIONS,
            });
        }
        let crossed = configs
            .iter()
            .map(|c| crossed_mask(c, &sizes))
            .collect();
        let inner = configs
            .iter()
            .map(|c| {
                let mut total = 0;
                for i in 0..k {
                    total += c[i] * (sizes[i] - c[i]);
                    for j in i + 1..k {
                        if adj[i] >> j & 1 == 1 {
                            total += c[i] * (sizes[j] - c[j]) + (sizes[i] - c[i]) * c[j];
                        }
                    }
                }
                total
            })
            .collect();
        Ok(LocalPart {
            bubbles,
            sizes,
            configs,
            crossed,
            inner,
        })
    }

    fn to_configuration(&self, counts: &[usize]) -> Configuration {
        let mut out = Configuration {
            crossed: Vec::new(),
            counts: Vec::new(),
            fully_in: Vec::new(),
        };
        for (i, &c) in counts.iter().enumerate() {
            if c == self.sizes[i] {
                out.fully_in.push(self.bubbles[i]);
            } else if c > 0 {
                out.crossed.push(self.bubbles[i]);
                out.counts.push(c);
            }
        }
        out
    }
}

fn crossed_mask(counts: &[usize], sizes: &[usize]) -> u64 {
    counts
        .iter()
        .zip(sizes)
        .enumerate()
        .filter(|(_, (&c, &s))| c > 0 && c < s)
        .fold(0u64, |m, (i, _)| m | 1 << i)
}

fn enumerate(
    sizes: &[usize],
    adj: &[u64],
    i: usize,
    crossed: u64,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    overflow: &mut bool,
) {
    if *overflow {
        return;
    }
    if i == sizes.len() {
        if out.len() == MAX_CONFIGURATIONS {
            *overflow = true;
        } else {
            out.push(current.clone());
        }
        return;
    }
    // ascending counts keep the output lexicographically sorted
    let can_cross = adj[i] & crossed == 0;
    for c in 0..=sizes[i] {
        let is_crossed = c > 0 && c < sizes[i];
        if is_crossed && !can_cross {
            continue;
        }
        current[i] = c;
        let mask = if is_crossed { crossed | 1 << i } else { crossed };
        enumerate(sizes, adj, i + 1, mask, current, out, overflow);
    }
    current[i] = 0;
}

/// Precomputed interaction between a parent part and one child part.
struct Link {
    /// Bubble adjacency between the parts: `(parent local, child local)`.
    pairs: Vec<(usize, usize)>,
    /// Per child configuration: parent bubbles adjacent to its crossed bubbles.
    blocked: Vec<u64>,
}

impl Link {
    fn new(cg: &ContractedGraph, parent: &LocalPart, child: &LocalPart) -> Self {
        let mut pairs = Vec::new();
        for (i, &b) in parent.bubbles.iter().enumerate() {
            for (j, &b2) in child.bubbles.iter().enumerate() {
                if cg.base.has_edge(b, b2) {
                    pairs.push((i, j));
                }
            }
        }
        let blocked = child
            .crossed
            .iter()
            .map(|&mask| {
                pairs
                    .iter()
                    .filter(|&&(_, j)| mask >> j & 1 == 1)
                    .fold(0u64, |m, &(i, _)| m | 1 << i)
            })
            .collect();
        Link { pairs, blocked }
    }

    /// Separated edges between the parts, or `None` if the union of both
    /// configurations would cross two adjacent bubbles.
    fn term(&self, parent: &LocalPart, a: usize, child: &LocalPart, b: usize) -> Option<usize> {
        if parent.crossed[a] & self.blocked[b] != 0 {
            return None;
        }
        let (ca, cb) = (&parent.configs[a], &child.configs[b]);
        Some(
            self.pairs
                .iter()
                .map(|&(i, j)| ca[i] * (child.sizes[j] - cb[j]) + (parent.sizes[i] - ca[i]) * cb[j])
                .sum(),
        )
    }
}

fn run(
    g: &Graph,
    cg: &ContractedGraph,
    bp: &BubblePartition,
    root: usize,
    mode: Mode,
) -> Result<DpSolution, DpError> {
    let k = bp.len();
    if root >= k {
        return Err(DpError::BadRoot { root, parts: k });
    }
    let parts = bp
        .part_bubbles
        .iter()
        .enumerate()
        .map(|(t, bs)| LocalPart::new(cg, bs.clone(), t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut stats = DpStats {
        configurations: parts.iter().map(|p| p.configs.len()).collect(),
        bounds: bp.parts.iter().map(|p| configuration_bound(g, cg, p)).collect(),
        evaluations: 0,
    };

    let (parent, order) = bp.rooted(root);
    let mut children = vec![Vec::new(); k];
    for &t in &order[1..] {
        children[parent[t].unwrap()].push(t);
    }

    // values are dropped once the parent has consumed them; choices stay for
    // reconstruction
    let mut value: Vec<Option<Vec<usize>>> = vec![None; k];
    let mut choice: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k];
    for &t in order.iter().rev() {
        let part = &parts[t];
        let kids = &children[t];
        let links: Vec<Link> = kids.iter().map(|&c| Link::new(cg, part, &parts[c])).collect();
        let (vals, picks) = match mode {
            Mode::Sum => combine_sum(part, kids, &parts, &links, &value, &mut stats),
            Mode::Product => combine_product(t, part, kids, &parts, &links, &value, &mut stats)?,
        };
        for &c in kids {
            value[c] = None;
        }
        value[t] = Some(vals);
        choice[t] = picks;
    }

    let root_vals = value[root].take().unwrap();
    // max_by_key keeps the last maximum, so scan backwards to prefer the
    // smallest encoding
    let (best_idx, &best) = root_vals
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|&(_, v)| *v)
        .expect("every part has a configuration");

    let mut cut = Cut::empty(g.n());
    let mut stack = vec![(root, best_idx)];
    while let Some((t, idx)) = stack.pop() {
        let part = &parts[t];
        for (i, &c) in part.configs[idx].iter().enumerate() {
            for &v in &cg.bubbles[part.bubbles[i]].members[..c] {
                cut.insert(v);
            }
        }
        for (ci, &c) in children[t].iter().enumerate() {
            stack.push((c, choice[t][idx][ci]));
        }
    }
    Ok(DpSolution {
        max_cut_size: best,
        cut,
        stats,
    })
}

type Table = (Vec<usize>, Vec<Vec<usize>>);

fn combine_sum(
    part: &LocalPart,
    kids: &[usize],
    parts: &[LocalPart],
    links: &[Link],
    value: &[Option<Vec<usize>>],
    stats: &mut DpStats,
) -> Table {
    let n_cfg = part.configs.len();
    let mut vals = Vec::with_capacity(n_cfg);
    let mut picks = Vec::with_capacity(n_cfg);
    for a in 0..n_cfg {
        let mut total = Some(part.inner[a]);
        let mut pick = Vec::with_capacity(kids.len());
        stats.evaluations += 1.max(kids.iter().map(|&c| parts[c].configs.len() as u64).sum());
        for (ci, &c) in kids.iter().enumerate() {
            let child_vals = value[c].as_ref().unwrap();
            let mut best: Option<(usize, usize)> = None;
            for (b, &cv) in child_vals.iter().enumerate() {
                if let Some(term) = links[ci].term(part, a, &parts[c], b) {
                    let v = term + cv;
                    if best.is_none_or(|(bv, _)| v > bv) {
                        best = Some((v, b));
                    }
                }
            }
            match best {
                Some((v, b)) => {
                    total = total.map(|t| t + v);
                    pick.push(b);
                }
                None => {
                    total = None;
                    break;
                }
            }
        }
        // a fully-in or fully-out child is always compatible, so `total` is set
        vals.push(total.expect("child configuration without crossed bubbles exists"));
        picks.push(pick);
    }
    (vals, picks)
}

fn combine_product(
    t: usize,
    part: &LocalPart,
    kids: &[usize],
    parts: &[LocalPart],
    links: &[Link],
    value: &[Option<Vec<usize>>],
    stats: &mut DpStats,
) -> Result<Table, DpError> {
    let n_cfg = part.configs.len();
    let radix: Vec<usize> = kids.iter().map(|&c| parts[c].configs.len()).collect();
    let tuples = radix
        .iter()
        .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
        .and_then(|p| p.checked_mul(n_cfg as u128))
        .unwrap_or(u128::MAX);
    if tuples > MAX_PRODUCT_TUPLES {
        return Err(DpError::ProductTooLarge {
            part: t,
            tuples,
            limit: MAX_PRODUCT_TUPLES,
        });
    }
    let mut vals = Vec::with_capacity(n_cfg);
    let mut picks = Vec::with_capacity(n_cfg);
    for a in 0..n_cfg {
        let mut tuple = vec![0usize; kids.len()];
        let mut best: Option<(usize, Vec<usize>)> = None;
        loop {
            stats.evaluations += 1;
            let mut total = Some(part.inner[a]);
            for (ci, &c) in kids.iter().enumerate() {
                let b = tuple[ci];
                total = match (total, links[ci].term(part, a, &parts[c], b)) {
                    (Some(acc), Some(term)) => Some(acc + term + value[c].as_ref().unwrap()[b]),
                    _ => None,
                };
            }
            if let Some(v) = total {
                if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, tuple.clone()));
                }
            }
            // odometer, last child fastest: tuples come in lexicographic order
            let mut pos = kids.len();
            let done = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < radix[pos] {
                    break false;
                }
                tuple[pos] = 0;
            };
            if done {
                break;
            }
        }
        let (v, tuple) = best.expect("the all-out child tuple is always compatible");
        vals.push(v);
        picks.push(tuple);
    }
    Ok((vals, picks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bubble_model::build_bubble_model;
    use crate::graph::{cut_size, is_tight, twin_classes};
    use crate::oracle::{brute_force_maxcut, gen_proper_interval};
    use crate::partition::columns_partition;

    fn configs_of(g: &Graph, part: &[Vertex]) -> Vec<Configuration> {
        enumerate_configurations(g, &twin_classes(g), part).unwrap()
    }

    #[test]
    fn single_bubble_of_three() {
        let g = Graph::complete(3);
        let cs = configs_of(&g, &[0, 1, 2]);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[0].fully_in, Vec::<usize>::new());
        assert_eq!((cs[1].crossed.clone(), cs[1].counts.clone()), (vec![0], vec![1]));
        assert_eq!((cs[2].crossed.clone(), cs[2].counts.clone()), (vec![0], vec![2]));
        assert_eq!(cs[3].fully_in, vec![0]);
    }

    #[test]
    fn singleton_and_pair_of_singletons() {
        assert_eq!(configs_of(&Graph::empty(1), &[0]).len(), 2);
        assert_eq!(configs_of(&Graph::path(3), &[0, 1]).len(), 4);
    }

    #[test]
    fn crossed_bubbles_must_be_independent() {
        // two adjacent bubbles of size 2 each (0,1) and (2,3), plus a tail 3-4 making them distinct
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let cg = twin_classes(&g);
        let part = [0, 1, 2, 3];
        let cs = enumerate_configurations(&g, &cg, &part).unwrap();
        // 3·3 count pairs minus the single both-crossed pair
        assert_eq!(cs.len(), 8);
        assert!(cs.iter().all(|c| c.crossed.len() <= 1));
        assert!(cs.len() as u128 <= configuration_bound(&g, &cg, &part));
    }

    #[test]
    fn cross_edges_by_definition() {
        // B = {0,1} fully adjacent to B' = {2,3,4}; the two are separate bubbles
        // because 5 hangs off B' only
        let mut edges = vec![(0, 1), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)];
        for u in 0..2 {
            for v in 2..5 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(6, edges).unwrap();
        let cg = twin_classes(&g);
        let (b, b2) = (cg.bubble_of[0], cg.bubble_of[2]);
        let gamma = Configuration { crossed: vec![b], counts: vec![1], fully_in: vec![] };
        let gamma2 = Configuration { crossed: vec![], counts: vec![], fully_in: vec![b2] };
        assert_eq!(cross_edges(&cg, &[0, 1], &[2, 3, 4], &gamma, &gamma2), 3);

        // explicit assignment: S = {0, 2, 3, 4}
        let s = Cut::from_members(6, [0, 2, 3, 4]);
        let direct = (0..2)
            .flat_map(|u| (2..5).map(move |v| (u, v)))
            .filter(|&(u, v)| s.contains(u) != s.contains(v))
            .count();
        assert_eq!(direct, 3);

        let all_in = Configuration { crossed: vec![], counts: vec![], fully_in: vec![b] };
        assert_eq!(cross_edges(&cg, &[0, 1], &[2, 3, 4], &all_in, &gamma2), 0);
        assert_eq!(cross_edges(&cg, &[0, 1], &[5], &gamma, &gamma2), 0);
    }

    #[test]
    fn complete_graphs_trivial_partition() {
        for n in 1..=8 {
            let g = Graph::complete(n);
            let sol = solve_parts(&g, &twin_classes(&g), vec![(0..n).collect()]).unwrap();
            assert_eq!(sol.max_cut_size, (n / 2) * n.div_ceil(2));
        }
    }

    #[test]
    fn four_cycle_two_cliques() {
        let g = Graph::cycle(4);
        let cg = twin_classes(&g);
        let bp = validate(&g, &cg, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let a = solve(&g, &cg, &bp).unwrap();
        let b = solve_independent_children(&g, &cg, &bp).unwrap();
        assert_eq!(a.max_cut_size, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn proper_interval_graphs_match_oracle() {
        for seed in 0..150 {
            let n = 4 + (seed as usize % 13);
            let (g, _) = gen_proper_interval(n, 0.35, seed);
            let expected = brute_force_maxcut(&g).unwrap().max_cut_size;
            let got: usize = g
                .connected_components()
                .iter()
                .map(|comp| {
                    let h = g.induced(comp);
                    let cg = twin_classes(&h);
                    let bp = columns_partition(&h, &cg, &build_bubble_model(&h).unwrap()).unwrap();
                    let sol = solve_independent_children(&h, &cg, &bp).unwrap();
                    assert_eq!(cut_size(&h, &sol.cut).unwrap(), sol.max_cut_size);
                    assert!(is_tight(&cg, &sol.cut));
                    assert!(sol.stats.within_bounds());
                    sol.max_cut_size
                })
                .sum();
            assert_eq!(got, expected, "seed {seed}");
        }
    }

    #[test]
    fn root_invariance() {
        let (g, _) = gen_proper_interval(14, 0.4, 3);
        let comp = g.connected_components().into_iter().max_by_key(Vec::len).unwrap();
        let h = g.induced(&comp);
        let cg = twin_classes(&h);
        let bp = columns_partition(&h, &cg, &build_bubble_model(&h).unwrap()).unwrap();
        let base = solve_rooted(&h, &cg, &bp, 0).unwrap().max_cut_size;
        for root in 0..bp.len() {
            assert_eq!(solve_rooted(&h, &cg, &bp, root).unwrap().max_cut_size, base);
        }
        assert!(matches!(solve_rooted(&h, &cg, &bp, bp.len()), Err(DpError::BadRoot { .. })));
    }

    #[test]
    fn star_of_cliques_counters() {
        // center clique {0,1} with three pendant cliques of size 2
        let mut g = Graph::empty(8);
        for u in 0..8 {
            for v in u + 1..8 {
                if u / 2 == v / 2 || u / 2 == 0 {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let cg = twin_classes(&g);
        let bp = validate(&g, &cg, vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]]).unwrap();
        let prod = solve(&g, &cg, &bp).unwrap();
        let sum = solve_independent_children(&g, &cg, &bp).unwrap();
        assert_eq!(prod.max_cut_size, brute_force_maxcut(&g).unwrap().max_cut_size);
        assert_eq!(prod.max_cut_size, sum.max_cut_size);
        assert_eq!(prod.cut, sum.cut);
        assert!(sum.stats.evaluations < prod.stats.evaluations);
    }
}
