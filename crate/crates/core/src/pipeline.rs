//! End-to-end routes from a graph to a maximum cut.
//!
//! Partitions and the bubble DP need a connected graph, so the automatic
//! routes work component by component and add up the results.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bubble_model::{build_bubble_model, p_value, BubbleModel, ModelError};
use crate::cw::{
    find_certificate_with, from_bubble_partition, maxcut_cw_tight, maxcut_cw_vectors, AbdReport, CwError,
    CwExpression,
};
use crate::dp::{solve_independent_children, DpError};
use crate::graph::{cut_size, is_tight, twin_classes, ContractedGraph, Cut, Graph, Vertex};
use crate::interval::{intersection_graph, IntervalError, IntervalRep};
use crate::partition::{
    columns_partition, left_endpoint_partition, stats, validate, BubblePartition, PartitionError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Cw(#[from] CwError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("solver returned an inconsistent cut: {0}")]
    SelfCheck(String),
}

/// A connected component with the bubble partition used for it.
#[derive(Debug, Clone)]
pub struct ComponentPlan {
    /// Original ids; local vertex `i` is `vertices[i]`.
    pub vertices: Vec<Vertex>,
    pub graph: Graph,
    pub cg: ContractedGraph,
    /// Present when the partition is the column partition of this model.
    pub model: Option<BubbleModel>,
    pub partition: BubblePartition,
}

/// Column partitions of the bubble models of every component.
pub fn plan_components(g: &Graph) -> Result<Vec<ComponentPlan>, PipelineError> {
    g.connected_components()
        .into_iter()
        .map(|vertices| {
            let graph = g.induced(&vertices);
            let cg = twin_classes(&graph);
            let model = build_bubble_model(&graph)?;
            let partition = columns_partition(&graph, &cg, &model)?;
            Ok(ComponentPlan {
                vertices,
                graph,
                cg,
                model: Some(model),
                partition,
            })
        })
        .collect()
}

/// Left-endpoint partitions of every component of an interval graph.
pub fn plan_interval_components(rep: &IntervalRep) -> Result<Vec<ComponentPlan>, PipelineError> {
    let g = intersection_graph(rep)?;
    g.connected_components()
        .into_iter()
        .map(|vertices| {
            let graph = g.induced(&vertices);
            let cg = twin_classes(&graph);
            let partition = left_endpoint_partition(&rep.restrict(&vertices), &graph, &cg)?;
            Ok(ComponentPlan {
                vertices,
                graph,
                cg,
                model: None,
                partition,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BubbleRun {
    pub max_cut_size: usize,
    pub cut: Cut,
    /// `max α(V_i)` over all parts used.
    pub alpha: usize,
    /// `max |V_i⁻|` over all parts used.
    pub width: usize,
    /// `p(G)`, when the partition came from bubble models.
    pub p: Option<usize>,
    pub parts: usize,
    pub configurations: u64,
    pub evaluations: u64,
    /// Whether every part respected the configuration-count bound.
    pub bound_ok: bool,
    pub elapsed: Duration,
}

/// Bubble DP on column partitions of every component.
pub fn bubble_dp_auto(g: &Graph) -> Result<BubbleRun, PipelineError> {
    let start = Instant::now();
    let plans = plan_components(g)?;
    bubble_dp_planned(g, &plans, start)
}

/// Bubble DP on left-endpoint partitions of an interval representation.
pub fn bubble_dp_intervals(rep: &IntervalRep) -> Result<BubbleRun, PipelineError> {
    let start = Instant::now();
    let plans = plan_interval_components(rep)?;
    bubble_dp_planned(&intersection_graph(rep)?, &plans, start)
}

fn bubble_dp_planned(g: &Graph, plans: &[ComponentPlan], start: Instant) -> Result<BubbleRun, PipelineError> {
    let mut run = empty_run(g.n());
    for plan in plans {
        if let Some(model) = &plan.model {
            run.p = run.p.max(Some(p_value(model)));
        }
        absorb(&mut run, &plan.graph, &plan.cg, &plan.partition, &plan.vertices)?;
    }
    run.elapsed = start.elapsed();
    self_check(g, &run)?;
    Ok(run)
}

/// Bubble DP on a caller-supplied partition of a connected graph.
pub fn bubble_dp_with_parts(g: &Graph, parts: Vec<Vec<Vertex>>) -> Result<BubbleRun, PipelineError> {
    let start = Instant::now();
    let cg = twin_classes(g);
    let bp = validate(g, &cg, parts)?;
    let mut run = empty_run(g.n());
    let identity: Vec<Vertex> = g.vertices().collect();
    absorb(&mut run, g, &cg, &bp, &identity)?;
    run.elapsed = start.elapsed();
    self_check(g, &run)?;
    Ok(run)
}

fn empty_run(n: usize) -> BubbleRun {
    BubbleRun {
        max_cut_size: 0,
        cut: Cut::empty(n),
        alpha: 0,
        width: 0,
        p: None,
        parts: 0,
        configurations: 0,
        evaluations: 0,
        bound_ok: true,
        elapsed: Duration::ZERO,
    }
}

fn absorb(
    run: &mut BubbleRun,
    g: &Graph,
    cg: &ContractedGraph,
    bp: &BubblePartition,
    rename: &[Vertex],
) -> Result<(), PipelineError> {
    let sol = solve_independent_children(g, cg, bp)?;
    let st = stats(g, bp);
    run.max_cut_size += sol.max_cut_size;
    for v in sol.cut.members() {
        run.cut.insert(rename[v]);
    }
    run.alpha = run.alpha.max(st.alpha);
    run.width = run.width.max(st.width);
    run.parts += bp.len();
    run.configurations += sol.stats.total_configurations();
    run.evaluations += sol.stats.evaluations;
    run.bound_ok &= sol.stats.within_bounds();
    Ok(())
}

fn self_check(g: &Graph, run: &BubbleRun) -> Result<(), PipelineError> {
    let size = cut_size(g, &run.cut).map_err(|e| PipelineError::SelfCheck(e.to_string()))?;
    if size != run.max_cut_size {
        return Err(PipelineError::SelfCheck(format!(
            "cut has size {size}, solver reported {}",
            run.max_cut_size
        )));
    }
    if !is_tight(&twin_classes(g), &run.cut) {
        return Err(PipelineError::SelfCheck("returned cut is not tight".into()));
    }
    Ok(())
}

/// Expression for `g` from column partitions: one construction per
/// component, each relabelled to 0 and joined by unions.
pub fn expression_for_graph(g: &Graph) -> Result<CwExpression, PipelineError> {
    if g.n() == 0 {
        return Err(PipelineError::EmptyGraph);
    }
    Ok(expression_from_plans(&plan_components(g)?))
}

/// Expression for an interval graph from left-endpoint partitions.
pub fn expression_for_intervals(rep: &IntervalRep) -> Result<CwExpression, PipelineError> {
    if rep.is_empty() {
        return Err(PipelineError::EmptyGraph);
    }
    Ok(expression_from_plans(&plan_interval_components(rep)?))
}

fn expression_from_plans(plans: &[ComponentPlan]) -> CwExpression {
    if let [plan] = plans {
        let mut e = CwExpression::new();
        e.graft(&from_bubble_partition(&plan.cg, &plan.partition), &plan.vertices);
        return e;
    }
    let mut e = CwExpression::new();
    let mut acc = None;
    for plan in plans {
        let sub = from_bubble_partition(&plan.cg, &plan.partition);
        let mut root = e.graft(&sub, &plan.vertices).expect("components are non-empty");
        // the root part keeps labels 1..=|V_r⁻|
        for l in 1..=plan.partition.part_bubbles[0].len() {
            root = e.rho(l, 0, root);
        }
        acc = Some(match acc {
            None => root,
            Some(a) => e.union(a, root),
        });
    }
    e
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwRun {
    pub max_cut_size: usize,
    pub width: usize,
    pub nodes: usize,
    pub table_entries: u64,
    /// Tight variant only.
    pub certificate: Option<(usize, usize, usize)>,
    pub tight_vectors: u64,
    pub bound_violations: usize,
    pub elapsed: Duration,
}

pub fn cw_vectors_run(expr: &CwExpression) -> Result<CwRun, PipelineError> {
    let start = Instant::now();
    let sol = maxcut_cw_vectors(expr)?;
    Ok(CwRun {
        max_cut_size: sol.max_cut_size,
        width: expr.width(),
        nodes: expr.len(),
        table_entries: sol.stats.table_sizes.iter().map(|&x| x as u64).sum(),
        certificate: None,
        tight_vectors: 0,
        bound_violations: 0,
        elapsed: start.elapsed(),
    })
}

/// Tight DP with the certificate from [`find_certificate`].
pub fn cw_tight_run(expr: &CwExpression) -> Result<CwRun, PipelineError> {
    let start = Instant::now();
    let cert = find_certificate(expr)?;
    cw_tight_run_with(expr, &cert, start)
}

fn cw_tight_run_with(expr: &CwExpression, cert: &AbdReport, start: Instant) -> Result<CwRun, PipelineError> {
    let sol = maxcut_cw_tight(expr, cert)?;
    Ok(CwRun {
        max_cut_size: sol.max_cut_size,
        width: expr.width(),
        nodes: expr.len(),
        table_entries: sol.stats.table_sizes.iter().map(|&x| x as u64).sum(),
        certificate: Some((cert.alpha, cert.beta, cert.delta)),
        tight_vectors: sol.stats.vector_counts.iter().map(|&x| x as u64).sum(),
        bound_violations: sol
            .stats
            .vector_counts
            .iter()
            .zip(&sol.stats.bounds)
            .filter(|&(&c, &b)| c as u128 > b)
            .count(),
        elapsed: start.elapsed(),
    })
}

/// Certificate with `δ = 1`, the smallest `β` that admits one, and the
/// smallest `α` for that `β`. Single-label expressions use `δ = 0`:
/// exempting the only label leaves `w − δ = 0` and a vacuous bound.
pub fn find_certificate(expr: &CwExpression) -> Result<AbdReport, PipelineError> {
    let delta = if expr.width() <= 1 { 0 } else { 1 };
    Ok(find_certificate_with(expr, delta)?)
}
