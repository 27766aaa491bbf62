use std::fmt;
use std::path::Path;
use std::time::Instant;

use bubblecut::bench::{self, Algo, BenchConfig, Family};
use bubblecut::bubble_model::{build_bubble_model, graph_of_bubble_model, parse_bubble_model, write_bubble_model};
use bubblecut::cw::{evaluate, parse_expression, write_expression, CwError, CwExpression};
use bubblecut::dp::DpError;
use bubblecut::graph::{cut_size, parse_graph, twin_classes, write_graph, Graph};
use bubblecut::interval::{intersection_graph, parse_intervals, write_intervals, IntervalRep};
use bubblecut::oracle::{
    brute_force_maxcut_with_limit, gen_gnp, gen_mixed_unit, gen_proper_interval, DEFAULT_ORACLE_LIMIT,
};
use bubblecut::partition::{
    columns_partition, exhaustive_bw, left_endpoint_partition, parse_partition, stats, validate,
    write_partition, BwError, PartitionError, DEFAULT_BW_LIMIT,
};
use bubblecut::pipeline::{
    bubble_dp_auto, bubble_dp_intervals, bubble_dp_with_parts, cw_tight_run, cw_vectors_run,
    expression_for_graph, expression_for_intervals, CwRun, PipelineError,
};
use bubblecut::bubble_model::ModelError;

use crate::report::RunReport;
use crate::{AlgoArg, ArtifactArgs, BenchArgs, BenchFamily, GenArgs, GenFamily, InputArgs, PartitionArgs, SolveArgs};

/// Solves on graphs up to this size are cross-checked against the oracle.
const VERIFY_LIMIT: usize = 14;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Verification(String),
    Capability(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Verification(m) | Failure::Capability(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<(), Failure>;

fn input<E: fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn capability<E: fmt::Display>(e: E) -> Failure {
    Failure::Capability(e.to_string())
}

/// Maps a pipeline error to an exit class. Partition problems are the
/// caller's fault only when the partition was supplied.
fn classify(e: PipelineError, supplied_partition: bool) -> Failure {
    let partition = |e: PartitionError| match e {
        PartitionError::Parse { .. } => input(e),
        _ if supplied_partition => input(e),
        _ => capability(e),
    };
    match e {
        PipelineError::Model(ModelError::NotProperInterval { .. }) => capability(e),
        PipelineError::Model(_) | PipelineError::Interval(_) | PipelineError::EmptyGraph => input(e),
        PipelineError::Partition(p) | PipelineError::Dp(DpError::Partition(p)) => partition(p),
        PipelineError::Dp(_) => capability(e),
        PipelineError::Cw(
            CwError::NotNormalized(_) | CwError::TableTooLarge { .. } | CwError::BadCertificate(_) | CwError::PartialEta { .. },
        ) => capability(e),
        PipelineError::Cw(_) => input(e),
        PipelineError::SelfCheck(_) => Failure::Verification(e.to_string()),
    }
}

fn oracle_limit() -> usize {
    std::env::var("BUBBLECUT_ORACLE_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes through a temporary sibling so readers never see a partial file.
fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp~");
            std::fs::write(&tmp, text)
                .and_then(|()| std::fs::rename(&tmp, path))
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
    }
}

struct Loaded {
    graph: Graph,
    rep: Option<IntervalRep>,
}

fn load(args: &InputArgs) -> Result<Loaded, Failure> {
    let text = read(&args.input)?;
    if args.intervals {
        let rep = parse_intervals(&text).map_err(input)?;
        let graph = intersection_graph(&rep).map_err(input)?;
        Ok(Loaded { graph, rep: Some(rep) })
    } else {
        Ok(Loaded {
            graph: parse_graph(&text).map_err(input)?,
            rep: None,
        })
    }
}

fn derived_expression(l: &Loaded) -> Result<CwExpression, PipelineError> {
    match &l.rep {
        Some(rep) => expression_for_intervals(rep),
        None => expression_for_graph(&l.graph),
    }
}

pub fn solve(a: &SolveArgs) -> Outcome {
    let l = load(&a.input)?;
    let g = &l.graph;
    let mut r = RunReport {
        instance: a.input.input.display().to_string(),
        n: g.n(),
        m: g.m(),
        cut_check: "n/a",
        oracle_check: "skipped",
        ..Default::default()
    };
    let guard = oracle_limit();
    let start = Instant::now();
    match a.algo {
        AlgoArg::Oracle => {
            r.algo = "oracle";
            let res = brute_force_maxcut_with_limit(g, guard).map_err(capability)?;
            r.max_cut_size = res.max_cut_size;
            if cut_size(g, &res.witness).ok() != Some(res.max_cut_size) {
                return Err(Failure::Verification("oracle witness does not realize its size".into()));
            }
            r.cut = Some(res.witness.members().collect());
            r.cut_check = "pass";
        }
        AlgoArg::BubbleDp => {
            r.algo = "bubble-dp";
            let run = match (&a.partition, &l.rep) {
                (Some(path), _) => {
                    let parts = parse_partition(&read(path)?).map_err(input)?;
                    bubble_dp_with_parts(g, parts).map_err(|e| classify(e, true))?
                }
                (None, Some(rep)) => bubble_dp_intervals(rep).map_err(|e| classify(e, false))?,
                (None, None) => bubble_dp_auto(g).map_err(|e| classify(e, false))?,
            };
            r.max_cut_size = run.max_cut_size;
            r.cut = Some(run.cut.members().collect());
            r.alpha = Some(run.alpha);
            r.width = Some(run.width);
            r.p = run.p;
            r.parts = Some(run.parts);
            r.configurations = Some(run.configurations);
            r.evaluations = Some(run.evaluations);
            r.config_bound_ok = Some(run.bound_ok);
            // the pipeline has already checked size and tightness of the cut
            r.cut_check = "pass";
        }
        AlgoArg::CwVectors | AlgoArg::CwTight => {
            let expr = match &a.expr {
                Some(path) => {
                    let e = parse_expression(&read(path)?).map_err(input)?;
                    let built = evaluate(&e).map_err(input)?.graph;
                    if built != *g {
                        return Err(Failure::Input(format!(
                            "{} does not evaluate to the input graph",
                            path.display()
                        )));
                    }
                    e
                }
                None => derived_expression(&l).map_err(|e| classify(e, false))?,
            };
            let run: CwRun = if a.algo == AlgoArg::CwTight {
                r.algo = "cw-tight";
                cw_tight_run(&expr)
            } else {
                r.algo = "cw-vectors";
                cw_vectors_run(&expr)
            }
            .map_err(|e| classify(e, false))?;
            r.max_cut_size = run.max_cut_size;
            r.expr_width = Some(run.width);
            r.expr_nodes = Some(run.nodes);
            r.table_entries = Some(run.table_entries);
            if let Some((alpha, beta, delta)) = run.certificate {
                r.cert_alpha = Some(alpha);
                r.cert_beta = Some(beta);
                r.cert_delta = Some(delta);
                r.tight_vectors = Some(run.tight_vectors);
                r.tight_bound_violations = Some(run.bound_violations);
            }
        }
    }
    r.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut mismatch = None;
    if !a.no_verify && g.n() <= VERIFY_LIMIT.min(guard) {
        let expected = brute_force_maxcut_with_limit(g, guard).map_err(capability)?.max_cut_size;
        r.oracle_max_cut_size = Some(expected);
        if expected == r.max_cut_size {
            r.oracle_check = "pass";
        } else {
            r.oracle_check = "fail";
            mismatch = Some(expected);
        }
    }
    if a.json {
        println!("{}", r.to_json());
    } else {
        print!("{}", r.to_lines());
    }
    match mismatch {
        Some(expected) => Err(Failure::Verification(format!(
            "{} reported {} but the oracle finds {expected}",
            r.algo, r.max_cut_size
        ))),
        None => Ok(()),
    }
}

fn reload_failure(kind: &str, detail: impl fmt::Display) -> Failure {
    Failure::Verification(format!("emitted {kind} does not re-validate: {detail}"))
}

pub fn model(a: &ArtifactArgs) -> Outcome {
    let l = load(&a.input)?;
    let bm = build_bubble_model(&l.graph).map_err(|e| match e {
        ModelError::NotProperInterval { .. } => capability(e),
        _ => input(e),
    })?;
    let text = write_bubble_model(&bm);
    let back = parse_bubble_model(&text).map_err(|e| reload_failure("bubble model", e))?;
    back.validate().map_err(|e| reload_failure("bubble model", e))?;
    if graph_of_bubble_model(&back) != l.graph || write_bubble_model(&back) != text {
        return Err(reload_failure("bubble model", "round trip changed it"));
    }
    eprintln!("columns={} p={}", bm.columns.len(), bubblecut::bubble_model::p_value(&bm));
    emit(a.output.as_deref(), &text)
}

pub fn partition(a: &PartitionArgs) -> Outcome {
    let l = load(&a.artifact.input)?;
    let g = &l.graph;
    let cg = twin_classes(g);
    let bp = if a.exhaustive {
        match exhaustive_bw(g, &cg, a.alpha, DEFAULT_BW_LIMIT) {
            Ok((_, bp)) => bp,
            Err(e @ (BwError::NoPartition { .. } | BwError::TooLarge { .. })) => return Err(capability(e)),
        }
    } else if let Some(rep) = &l.rep {
        left_endpoint_partition(rep, g, &cg).map_err(capability)?
    } else {
        let bm = build_bubble_model(g).map_err(|e| match e {
            ModelError::NotProperInterval { .. } => capability(e),
            _ => input(e),
        })?;
        columns_partition(g, &cg, &bm).map_err(capability)?
    };
    let text = write_partition(&bp.parts);
    let parts = parse_partition(&text).map_err(|e| reload_failure("partition", e))?;
    let back = validate(g, &cg, parts).map_err(|e| reload_failure("partition", e))?;
    if write_partition(&back.parts) != text {
        return Err(reload_failure("partition", "round trip changed it"));
    }
    let st = stats(g, &bp);
    eprintln!("parts={} alpha={} width={} path={}", bp.len(), st.alpha, st.width, bp.is_path());
    emit(a.artifact.output.as_deref(), &text)
}

pub fn cwd(a: &ArtifactArgs) -> Outcome {
    let l = load(&a.input)?;
    let expr = derived_expression(&l).map_err(|e| classify(e, false))?;
    let text = write_expression(&expr);
    let back = parse_expression(&text).map_err(|e| reload_failure("expression", e))?;
    let built = evaluate(&back).map_err(|e| reload_failure("expression", e))?;
    if built.graph != l.graph || write_expression(&back) != text {
        return Err(reload_failure("expression", "round trip changed it"));
    }
    eprintln!("width={} nodes={}", expr.width(), expr.len());
    emit(a.output.as_deref(), &text)
}

/// `N`, `A..B` or `A..=B`, both ends inclusive.
pub fn parse_range(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("bad range `{s}`; expected N or A..B"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let x = num(s)?;
            (x, x)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

pub fn bench(a: &BenchArgs) -> Outcome {
    let ns = parse_range(&a.n)?;
    let (family, ps) = match a.family {
        BenchFamily::ProperInterval => (Family::ProperInterval, vec![None]),
        BenchFamily::ForcedP => {
            let ps = parse_range(&a.p)?;
            if ps.contains(&0) {
                return Err(Failure::Input("forced p must be at least 1".into()));
            }
            (Family::ForcedP, ps.into_iter().map(Some).collect())
        }
    };
    let cfg = BenchConfig {
        algos: a
            .algos
            .iter()
            .map(|x| match x {
                AlgoArg::BubbleDp => Algo::BubbleDp,
                AlgoArg::CwTight => Algo::CwTight,
                AlgoArg::CwVectors => Algo::CwVectors,
                AlgoArg::Oracle => Algo::Oracle,
            })
            .collect(),
        density: a.density,
        oracle_limit: oracle_limit(),
    };
    let mut rows = Vec::new();
    for &n in &ns {
        for &p in &ps {
            for r in 0..a.repeat {
                let row = bench::run_instance(family, n, p, a.seed + r, &cfg).map_err(|e| classify(e, false))?;
                rows.push(row);
            }
        }
    }
    emit(a.output.as_deref(), &bench::write_table(&rows))?;
    match rows.iter().find(|r| !r.agree) {
        Some(r) => Err(Failure::Verification(format!(
            "algorithms disagree on n={} seed={}",
            r.n, r.seed
        ))),
        None => Ok(()),
    }
}

pub fn gen(a: &GenArgs) -> Outcome {
    let (g, rep) = match a.family {
        GenFamily::ProperInterval => {
            let (g, rep) = gen_proper_interval(a.n, a.density, a.seed);
            (g, Some(rep))
        }
        GenFamily::MixedUnit => {
            let (g, rep) = gen_mixed_unit(a.n, a.density, a.seed);
            (g, Some(rep))
        }
        GenFamily::ForcedP => {
            if a.p == 0 {
                return Err(Failure::Input("forced p must be at least 1".into()));
            }
            (bench::gen_forced_p(a.n, a.p, a.seed), None)
        }
        GenFamily::Gnp => (gen_gnp(a.n, a.density, a.seed), None),
    };
    let text = if a.intervals {
        write_intervals(&rep.ok_or_else(|| Failure::Input("this family has no interval representation".into()))?)
    } else {
        write_graph(&g)
    };
    emit(a.output.as_deref(), &text)
}
