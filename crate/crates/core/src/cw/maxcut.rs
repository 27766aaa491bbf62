//! MaxCut over clique-width expressions by label-count vectors.
//!
//! A table at node `t` maps `s` (one count per label present in `G_t`) to the
//! largest cut of `G_t` with `|S ∩ V_{t,ℓ}| = s_ℓ`. The tight variant keeps
//! only vectors that some tight cut could produce, given per-node exempt
//! label sets `L_t`.

use std::collections::{HashMap, HashSet};

use crate::graph::{twin_classes, ContractedGraph};

use super::normalize::{check_normalized, AbdReport};
use super::{trace, CwError, CwExpression, CwNode, Label, NodeId, Trace};

/// Cap on vectors held at one node.
pub const MAX_TABLE_ENTRIES: u128 = 20_000_000;

type Vector = Vec<u32>;
type Table = HashMap<Vector, usize>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CwStats {
    /// Entries in the table of each node.
    pub table_sizes: Vec<usize>,
    /// Tight variant only: candidate vectors enumerated per node.
    pub vector_counts: Vec<usize>,
    /// Tight variant only: the per-node counting bound.
    pub bounds: Vec<u128>,
}

impl CwStats {
    pub fn within_bounds(&self) -> bool {
        self.vector_counts
            .iter()
            .zip(&self.bounds)
            .all(|(&c, &b)| c as u128 <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwSolution {
    pub max_cut_size: usize,
    pub stats: CwStats,
}

/// Full-vector DP over every count vector.
pub fn maxcut_cw_vectors(expr: &CwExpression) -> Result<CwSolution, CwError> {
    let tr = trace(expr)?;
    for t in 0..expr.len() {
        let entries = tr.classes[t]
            .values()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128 + 1))
            .unwrap_or(u128::MAX);
        if entries > MAX_TABLE_ENTRIES {
            return Err(CwError::TableTooLarge {
                node: t,
                entries,
                limit: MAX_TABLE_ENTRIES,
            });
        }
    }
    let mut stats = CwStats::default();
    let best = run(expr, &tr, &mut stats, |_| Ok(None))?;
    Ok(CwSolution {
        max_cut_size: best,
        stats,
    })
}

/// `(β(w−δ))^(α+1) · n_t^α · 2^(β(w−δ)) · n_t^δ`, saturating.
pub fn tight_vector_bound(alpha: usize, beta: usize, delta: usize, width: usize, n_t: usize) -> u128 {
    let free = (beta * width.saturating_sub(delta)) as u128;
    let n = n_t as u128;
    let pow = |b: u128, e: usize| b.checked_pow(e as u32);
    (|| {
        pow(free, alpha + 1)?
            .checked_mul(pow(n, alpha)?)?
            .checked_mul(1u128.checked_shl(free.try_into().ok()?)?)?
            .checked_mul(pow(n, delta)?)
    })()
    .unwrap_or(u128::MAX)
}

/// Tight-vector DP. `cert` must be a passing [`AbdReport`] for `expr`, and
/// `expr` must be normalized.
pub fn maxcut_cw_tight(expr: &CwExpression, cert: &AbdReport) -> Result<CwSolution, CwError> {
    if cert.nodes.len() != expr.len() {
        return Err(CwError::BadCertificate(format!(
            "{} node entries for {} nodes",
            cert.nodes.len(),
            expr.len()
        )));
    }
    if !cert.verdict {
        return Err(CwError::BadCertificate("verdict is false".into()));
    }
    if let Some(n) = cert.nodes.iter().find(|n| n.lt.len() > cert.delta) {
        return Err(CwError::BadCertificate(format!("node {} exempts too many labels", n.node)));
    }
    let violations = check_normalized(expr)?;
    if let Some(v) = violations.first() {
        return Err(CwError::NotNormalized(format!(
            "{v:?} and {} more",
            violations.len() - 1
        )));
    }

    let tr = trace(expr)?;
    let cg = twin_classes(&tr.graph);
    let width = expr.width();
    let mut stats = CwStats::default();
    let mut counts = vec![0; expr.len()];
    let mut bounds = vec![0; expr.len()];
    let best = run(expr, &tr, &mut stats, |t| {
        let allowed = tight_vectors(&tr, &cg, t, &cert.nodes[t].lt)?;
        counts[t] = allowed.len();
        bounds[t] = tight_vector_bound(cert.alpha, cert.beta, cert.delta, width, tr.vertex_count(t));
        Ok(Some(allowed))
    })?;
    stats.vector_counts = counts;
    stats.bounds = bounds;
    Ok(CwSolution {
        max_cut_size: best,
        stats,
    })
}

/// Count vectors of cuts of `G_t` that cross only pairwise non-adjacent
/// bubbles of `G` outside the `exempt` classes, with free counts on `exempt`.
fn tight_vectors(
    tr: &Trace,
    cg: &ContractedGraph,
    t: NodeId,
    exempt: &[Label],
) -> Result<HashSet<Vector>, CwError> {
    let classes = &tr.classes[t];
    // (label index, piece size, bubble) for every bubble piece of a non-exempt class
    let mut pieces = Vec::new();
    let mut free = Vec::new();
    for (idx, (l, vs)) in classes.iter().enumerate() {
        if exempt.contains(l) {
            free.push((idx, vs.len() as u32));
            continue;
        }
        let mut by_bubble: Vec<(usize, u32)> = Vec::new();
        for &v in vs {
            let b = cg.bubble_of[v];
            match by_bubble.iter_mut().find(|(bb, _)| *bb == b) {
                Some((_, size)) => *size += 1,
                None => by_bubble.push((b, 1)),
            }
        }
        pieces.extend(by_bubble.into_iter().map(|(b, size)| (idx, size, b)));
    }

    let mut out = HashSet::new();
    let mut s = vec![0u32; classes.len()];
    let mut crossed: Vec<usize> = Vec::new();
    let mut steps: u128 = 0;
    guess(cg, &pieces, &free, 0, &mut crossed, &mut s, &mut out, &mut steps);
    if steps > MAX_TABLE_ENTRIES {
        return Err(CwError::TableTooLarge {
            node: t,
            entries: steps,
            limit: MAX_TABLE_ENTRIES,
        });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn guess(
    cg: &ContractedGraph,
    pieces: &[(usize, u32, usize)],
    free: &[(usize, u32)],
    i: usize,
    crossed: &mut Vec<usize>,
    s: &mut Vector,
    out: &mut HashSet<Vector>,
    steps: &mut u128,
) {
    *steps += 1;
    if *steps > MAX_TABLE_ENTRIES {
        return;
    }
    if i < pieces.len() {
        let (idx, size, b) = pieces[i];
        let already = crossed.contains(&b);
        let can_cross = already || crossed.iter().all(|&c| !cg.base.has_edge(b, c));
        for c in 0..=size {
            let partial = c > 0 && c < size;
            if partial && !can_cross {
                continue;
            }
            let mark = partial && !already;
            if mark {
                crossed.push(b);
            }
            s[idx] += c;
            guess(cg, pieces, free, i + 1, crossed, s, out, steps);
            s[idx] -= c;
            if mark {
                crossed.pop();
            }
        }
        return;
    }
    let j = i - pieces.len();
    if j < free.len() {
        let (idx, size) = free[j];
        for c in 0..=size {
            s[idx] = c;
            guess(cg, pieces, free, i + 1, crossed, s, out, steps);
        }
        s[idx] = 0;
        return;
    }
    out.insert(s.clone());
}

/// Bottom-up table computation. `allowed(t)` may restrict the vectors kept
/// at node `t`; it is called once per node, in post-order.
fn run<F>(expr: &CwExpression, tr: &Trace, stats: &mut CwStats, mut allowed: F) -> Result<usize, CwError>
where
    F: FnMut(NodeId) -> Result<Option<HashSet<Vector>>, CwError>,
{
    let labels: Vec<Vec<Label>> = tr.classes.iter().map(|c| c.keys().copied().collect()).collect();
    let sizes: Vec<Vec<u32>> = tr
        .classes
        .iter()
        .map(|c| c.values().map(|v| v.len() as u32).collect())
        .collect();
    let position = |t: NodeId, l: Label| labels[t].binary_search(&l).ok();

    let mut tables: Vec<Option<Table>> = vec![None; expr.len()];
    stats.table_sizes = vec![0; expr.len()];
    for t in 0..expr.len() {
        let keep = allowed(t)?;
        let ok = |s: &Vector| keep.as_ref().is_none_or(|k| k.contains(s));
        let mut table = Table::new();
        let offer = |s: Vector, value: usize, table: &mut Table| {
            if ok(&s) {
                let e = table.entry(s).or_insert(value);
                *e = (*e).max(value);
            }
        };
        match expr.node(t) {
            CwNode::Intro { .. } => {
                offer(vec![0], 0, &mut table);
                offer(vec![1], 0, &mut table);
            }
            CwNode::Union(a, b) => {
                let ta = tables[a].take().unwrap();
                let tb = tables[b].take().unwrap();
                let pa: Vec<usize> = labels[a].iter().map(|&l| position(t, l).unwrap()).collect();
                let pb: Vec<usize> = labels[b].iter().map(|&l| position(t, l).unwrap()).collect();
                for (va, &xa) in &ta {
                    for (vb, &xb) in &tb {
                        let mut s = vec![0; labels[t].len()];
                        for (k, &c) in va.iter().enumerate() {
                            s[pa[k]] += c;
                        }
                        for (k, &c) in vb.iter().enumerate() {
                            s[pb[k]] += c;
                        }
                        offer(s, xa + xb, &mut table);
                    }
                }
            }
            CwNode::Eta(i, j, c) => {
                let tc = tables[c].take().unwrap();
                let added = tr.new_edges[t];
                let (pi, pj) = (position(c, i), position(c, j));
                let gain: Box<dyn Fn(&Vector) -> usize> = match (pi, pj) {
                    _ if added == 0 => Box::new(|_| 0),
                    (Some(pi), Some(pj)) => {
                        let (ni, nj) = (sizes[c][pi], sizes[c][pj]);
                        let full = if pi == pj {
                            ni as usize * (ni as usize - 1) / 2
                        } else {
                            ni as usize * nj as usize
                        };
                        if added != full {
                            return Err(CwError::PartialEta { node: t });
                        }
                        if pi == pj {
                            Box::new(move |s: &Vector| (s[pi] * (ni - s[pi])) as usize)
                        } else {
                            Box::new(move |s: &Vector| (s[pi] * (nj - s[pj]) + (ni - s[pi]) * s[pj]) as usize)
                        }
                    }
                    _ => unreachable!("edges were added, so both classes exist"),
                };
                for (s, x) in tc {
                    let v = x + gain(&s);
                    offer(s, v, &mut table);
                }
            }
            CwNode::Rho { from, to, child } => {
                let tc = tables[child].take().unwrap();
                let map: Vec<usize> = labels[child]
                    .iter()
                    .map(|&l| position(t, if l == from { to } else { l }).unwrap())
                    .collect();
                for (v, x) in tc {
                    let mut s = vec![0; labels[t].len()];
                    for (k, &c) in v.iter().enumerate() {
                        s[map[k]] += c;
                    }
                    offer(s, x, &mut table);
                }
            }
        }
        stats.table_sizes[t] = table.len();
        tables[t] = Some(table);
    }
    let root = expr.root().ok_or(CwError::Empty)?;
    Ok(tables[root]
        .take()
        .unwrap()
        .into_values()
        .max()
        .expect("the all-zero vector is always kept"))
}
