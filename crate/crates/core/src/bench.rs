//! Instance families and per-instance measurements for benchmarking.

use std::fmt::Write as _;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bubble_model::{graph_of_bubble_model, BubbleModel, Column, ModelBubble};
use crate::graph::Graph;
use crate::oracle::{brute_force_maxcut_with_limit, gen_proper_interval};
use crate::pipeline::{bubble_dp_auto, cw_tight_run, cw_vectors_run, expression_for_graph, PipelineError};

/// A proper interval graph on `n` vertices whose columns each hold `p`
/// bubbles of size 1 or 2 (the last column may hold fewer), with shuffled ids.
///
/// For `p ≥ 2` consecutive columns overlap and the graph is connected; for
/// `p = 1` it is a disjoint union of cliques.
pub fn gen_forced_p(n: usize, p: usize, seed: u64) -> Graph {
    assert!(p >= 1, "p must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let mut next = ids.into_iter();
    let mut columns = Vec::new();
    let mut left = n;
    while left > 0 {
        let mut col = Column::default();
        for row in 1..=p {
            if left == 0 {
                break;
            }
            let size = rng.gen_range(1..=2).min(left);
            left -= size;
            col.bubbles.push(ModelBubble {
                row,
                members: {
                    let mut m: Vec<usize> = next.by_ref().take(size).collect();
                    m.sort_unstable();
                    m
                },
            });
        }
        columns.push(col);
    }
    graph_of_bubble_model(&BubbleModel { columns })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ProperInterval,
    ForcedP,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ProperInterval => "proper-interval",
            Family::ForcedP => "forced-p",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    BubbleDp,
    CwTight,
    CwVectors,
    Oracle,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::BubbleDp => "bubble-dp",
            Algo::CwTight => "cw-tight",
            Algo::CwVectors => "cw-vectors",
            Algo::Oracle => "oracle",
        }
    }

    pub const ALL: [Algo; 4] = [Algo::BubbleDp, Algo::CwTight, Algo::CwVectors, Algo::Oracle];
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    /// `p` requested from the forced-p family.
    pub target_p: Option<usize>,
    pub seed: u64,
    pub m: usize,
    /// Measured `p(G)`.
    pub p: usize,
    pub alpha: usize,
    pub width: usize,
    pub max_cut_size: usize,
    /// Wall time per algorithm, in [`Algo::ALL`] order; `None` if not run.
    pub times: [Option<Duration>; 4],
    pub configurations: u64,
    pub evaluations: u64,
    pub config_bound_ok: bool,
    pub tight_vectors: Option<u64>,
    pub tight_bound_violations: Option<usize>,
    pub cw_table_entries: Option<u64>,
    /// All algorithms that ran agree.
    pub agree: bool,
}

pub struct BenchConfig {
    pub algos: Vec<Algo>,
    pub density: f64,
    pub oracle_limit: usize,
}

pub fn instance(family: Family, n: usize, p: Option<usize>, seed: u64, density: f64) -> Graph {
    match family {
        Family::ProperInterval => gen_proper_interval(n, density, seed).0,
        Family::ForcedP => gen_forced_p(n, p.unwrap_or(2), seed),
    }
}

pub fn run_instance(
    family: Family,
    n: usize,
    target_p: Option<usize>,
    seed: u64,
    cfg: &BenchConfig,
) -> Result<BenchRow, PipelineError> {
    let g = instance(family, n, target_p, seed, cfg.density);
    let dp = bubble_dp_auto(&g)?;
    let mut row = BenchRow {
        family,
        n,
        target_p,
        seed,
        m: g.m(),
        p: dp.p.unwrap_or(0),
        alpha: dp.alpha,
        width: dp.width,
        max_cut_size: dp.max_cut_size,
        times: [None; 4],
        configurations: dp.configurations,
        evaluations: dp.evaluations,
        config_bound_ok: dp.bound_ok,
        tight_vectors: None,
        tight_bound_violations: None,
        cw_table_entries: None,
        agree: true,
    };
    if cfg.algos.contains(&Algo::BubbleDp) {
        row.times[0] = Some(dp.elapsed);
    }
    let needs_expr = cfg.algos.iter().any(|a| matches!(a, Algo::CwTight | Algo::CwVectors));
    let expr = if needs_expr { Some(expression_for_graph(&g)?) } else { None };
    if cfg.algos.contains(&Algo::CwTight) {
        let run = cw_tight_run(expr.as_ref().unwrap())?;
        row.times[1] = Some(run.elapsed);
        row.tight_vectors = Some(run.tight_vectors);
        row.tight_bound_violations = Some(run.bound_violations);
        row.agree &= run.max_cut_size == dp.max_cut_size;
    }
    if cfg.algos.contains(&Algo::CwVectors) {
        let run = cw_vectors_run(expr.as_ref().unwrap())?;
        row.times[2] = Some(run.elapsed);
        row.cw_table_entries = Some(run.table_entries);
        row.agree &= run.max_cut_size == dp.max_cut_size;
    }
    if cfg.algos.contains(&Algo::Oracle) && g.n() <= cfg.oracle_limit {
        let start = std::time::Instant::now();
        let r = brute_force_maxcut_with_limit(&g, cfg.oracle_limit).expect("size checked");
        row.times[3] = Some(start.elapsed());
        row.agree &= r.max_cut_size == dp.max_cut_size;
    }
    Ok(row)
}

pub const TABLE_HEADER: &str = "family\tn\ttarget_p\tseed\tm\tp\talpha\tw\tmax_cut\tbubble_dp_ms\tcw_tight_ms\tcw_vectors_ms\toracle_ms\tconfigurations\tevaluations\tconfig_bound_ok\ttight_vectors\ttight_bound_violations\tcw_table_entries\tagree";

pub fn write_table(rows: &[BenchRow]) -> String {
    fn opt<T: ToString>(x: Option<T>) -> String {
        x.map_or_else(|| "-".to_string(), |v| v.to_string())
    }
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        let ms = r
            .times
            .iter()
            .map(|t| opt(t.map(|d| format!("{:.3}", d.as_secs_f64() * 1e3))))
            .collect::<Vec<_>>()
            .join("\t");
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.family.name(),
            r.n,
            opt(r.target_p),
            r.seed,
            r.m,
            r.p,
            r.alpha,
            r.width,
            r.max_cut_size,
            ms,
            r.configurations,
            r.evaluations,
            r.config_bound_ok,
            opt(r.tight_vectors),
            opt(r.tight_bound_violations),
            opt(r.cw_table_entries),
            r.agree,
        )
        .unwrap();
    }
    out
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bubble_model::{build_bubble_model, p_value};

    #[test]
    fn forced_p_is_realized() {
        for p in 1..=6 {
            for seed in 0..5 {
                let g = gen_forced_p(40, p, seed);
                assert_eq!(g.n(), 40);
                assert_eq!(g.is_connected(), p >= 2);
                let measured = g
                    .connected_components()
                    .iter()
                    .map(|c| p_value(&build_bubble_model(&g.induced(c)).unwrap()))
                    .max()
                    .unwrap();
                assert_eq!(measured, p, "p={p} seed={seed}");
            }
        }
    }

    #[test]
    fn slope_of_a_line() {
        assert!((slope(&[1.0, 2.0, 3.0], &[3.0, 5.0, 7.0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_row_table() {
        let cfg = BenchConfig {
            algos: Algo::ALL.to_vec(),
            density: 0.4,
            oracle_limit: 20,
        };
        let row = run_instance(Family::ProperInterval, 5, None, 1, &cfg).unwrap();
        assert!(row.agree);
        let table = write_table(&[row]);
        assert_eq!(table.lines().count(), 2);
        let cols = TABLE_HEADER.split('\t').count();
        assert!(table.lines().all(|l| l.split('\t').count() == cols));
    }
}
