//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). It exits non-zero when a
//! criterion fails, unless that failure is listed in `KNOWN_FAILURES` with
//! its analysis and still reproduces exactly as analysed.

use std::process::Command;
use std::time::{Duration, Instant};

use bubblecut::bench::slope;
use bubblecut::bubble_model::{
    build_bubble_model, graph_of_bubble_model, p_value, parse_bubble_model, write_bubble_model,
};
use bubblecut::cw::{
    check_abd, evaluate, from_bubble_partition, minimal_abd_alpha, parse_expression, write_expression, CwNode,
};
use bubblecut::graph::{parse_graph, twin_classes, write_graph, Graph};
use bubblecut::interval::{intersection_graph, parse_intervals, rat, write_intervals, Interval, IntervalRep};
use bubblecut::oracle::{brute_force_maxcut, gen_blown_up, gen_connected, gen_gnp, gen_mixed_unit, gen_proper_interval};
use bubblecut::partition::{columns_partition, exhaustive_bw, parse_partition, stats, write_partition, BwError};
use bubblecut::pipeline::{bubble_dp_auto, cw_tight_run, cw_vectors_run, expression_for_graph};

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

/// Criteria that cannot hold as stated; the suite still runs them and
/// reports FAIL.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    4,
    "the construction relabels a child's labels to 0 only after the union and η with its parent part, \
     so just below that relabel the non-0 labels cover two whole parts; their independence number can \
     reach 2·α(bp) and one exempt label cannot absorb a part with several bubbles",
)];

fn instances() -> Vec<Graph> {
    (0..500u64)
        .map(|seed| {
            let n = 4 + (seed as usize % 17);
            let density = [0.2, 0.35, 0.5][(seed / 17) as usize % 3];
            gen_proper_interval(n, density, 1000 + seed).0
        })
        .collect()
}

fn components(g: &Graph) -> Vec<Graph> {
    g.connected_components().iter().map(|c| g.induced(c)).collect()
}

fn c1_bubble_dp(gs: &[Graph], oracle: &[usize], bench: &mut Counters) -> (bool, String) {
    let mut bad = Vec::new();
    for (i, g) in gs.iter().enumerate() {
        let run = bubble_dp_auto(g).expect("proper interval input");
        bench.dp_runs += 1;
        bench.dp_bound_failures += usize::from(!run.bound_ok);
        if run.max_cut_size != oracle[i] {
            bad.push(i);
        }
    }
    (bad.is_empty(), format!("{} instances, mismatches {:?}", gs.len(), bad))
}

fn c2_cw(gs: &[Graph], oracle: &[usize], bench: &mut Counters) -> (bool, String) {
    let (mut tight_bad, mut vec_bad) = (Vec::new(), Vec::new());
    for (i, g) in gs.iter().enumerate() {
        let e = expression_for_graph(g).expect("proper interval input");
        let t = cw_tight_run(&e).expect("tight DP runs");
        bench.tight_nodes += t.nodes;
        bench.tight_bound_violations += t.bound_violations;
        if t.max_cut_size != oracle[i] {
            tight_bad.push(i);
        }
        if cw_vectors_run(&e).expect("vector DP runs").max_cut_size != oracle[i] {
            vec_bad.push(i);
        }
    }
    (
        tight_bad.is_empty() && vec_bad.is_empty(),
        format!("{} instances, tight mismatches {:?}, vector mismatches {:?}", gs.len(), tight_bad, vec_bad),
    )
}

fn c3_tight_cuts() -> (bool, String) {
    let mut graphs = Vec::new();
    let mut seed = 0u64;
    while graphs.len() < 240 {
        let n = 2 + (seed as usize % 11);
        let g = if seed.is_multiple_of(2) { gen_connected(n, 0.4, seed) } else { gen_blown_up(n, 0.5, seed) };
        seed += 1;
        if g.n() <= 12 && g.is_connected() {
            graphs.push(g);
        }
    }
    let with_twins = graphs.iter().filter(|g| twin_classes(g).bubble_count() < g.n()).count();
    let bad: Vec<usize> = graphs
        .iter()
        .enumerate()
        .filter(|(_, g)| {
            let r = brute_force_maxcut(g).unwrap();
            r.max_tight_cut_size != r.max_cut_size || r.tight_witness.is_none()
        })
        .map(|(i, _)| i)
        .collect();
    (
        bad.is_empty(),
        format!("{} connected graphs ({} with non-trivial bubbles), failures {:?}", graphs.len(), with_twins, bad),
    )
}

/// Also reports whether every failure matches the known analysis: width and
/// evaluation hold, failures sit at non-leaf nodes, and α never exceeds 2·α(bp).
fn c4_construction(gs: &[Graph], as_analysed: &mut bool) -> (bool, String) {
    let (mut total, mut width_bad, mut eval_bad, mut abd_bad) = (0, 0, 0, 0);
    let mut worst_ratio: (usize, usize) = (0, 1);
    let mut failing_kinds = std::collections::BTreeSet::new();
    for g in gs {
        for c in components(g) {
            let cg = twin_classes(&c);
            let bp = columns_partition(&c, &cg, &build_bubble_model(&c).unwrap()).unwrap();
            let st = stats(&c, &bp);
            let e = from_bubble_partition(&cg, &bp);
            total += 1;
            width_bad += usize::from(e.width() > 2 * st.width + 1);
            eval_bad += usize::from(evaluate(&e).unwrap().graph != c);
            let rep = check_abd(&e, st.alpha, 1, 1).unwrap();
            if !rep.verdict {
                abd_bad += 1;
                for f in rep.failures() {
                    failing_kinds.insert(match e.node(f.node) {
                        CwNode::Intro { .. } => "intro",
                        CwNode::Union(..) => "union",
                        CwNode::Eta(..) => "eta",
                        CwNode::Rho { .. } => "rho",
                    });
                }
                let need = minimal_abd_alpha(&e, 1, 1).unwrap().expect("β = 1 is met").alpha;
                if need * worst_ratio.1 > worst_ratio.0 * st.alpha {
                    worst_ratio = (need, st.alpha);
                }
            }
        }
    }
    *as_analysed = width_bad == 0
        && eval_bad == 0
        && !failing_kinds.contains("intro")
        && worst_ratio.0 <= 2 * worst_ratio.1;
    (
        width_bad == 0 && eval_bad == 0 && abd_bad == 0,
        format!(
            "{total} (component, partition) pairs: width violations {width_bad}, evaluation mismatches {eval_bad}, \
             check_abd(α(bp),1,1) failures {abd_bad} at {failing_kinds:?} nodes; worst case: smallest passing α = {} where α(bp) = {}",
            worst_ratio.0, worst_ratio.1
        ),
    )
}

fn c5_columns(gs: &[Graph]) -> (bool, String) {
    let (mut total, mut bad) = (0, 0);
    for g in gs {
        for c in components(g) {
            let cg = twin_classes(&c);
            let bm = build_bubble_model(&c).unwrap();
            let bp = columns_partition(&c, &cg, &bm).unwrap();
            let st = stats(&c, &bp);
            total += 1;
            if st.alpha != 1 || st.width != p_value(&bm) || !bp.is_path() {
                bad += 1;
            }
        }
    }
    (bad == 0, format!("{total} components, violations {bad}"))
}

fn c6_witnesses() -> (bool, String) {
    let mut edges: Vec<(usize, usize)> = Graph::path(7).edges().collect();
    edges.extend((0..7).map(|v| (v, 7)));
    let up7 = Graph::from_edges(8, edges).unwrap();
    let no_partition = matches!(
        exhaustive_bw(&up7, &twin_classes(&up7), 1, 10),
        Err(BwError::NoPartition { alpha: 1 })
    );
    let c4 = Graph::cycle(4);
    let c4_width = exhaustive_bw(&c4, &twin_classes(&c4), 1, 10).ok().map(|(w, _)| w);

    let claw_rep = IntervalRep::new(vec![
        Interval::closed(rat(0, 1), rat(1, 1)),
        Interval::new(rat(1, 1), rat(2, 1), false, false),
        Interval::closed(rat(2, 1), rat(3, 1)),
        Interval::closed(rat(1, 1), rat(2, 1)),
    ])
    .unwrap();
    let claw = intersection_graph(&claw_rep).unwrap();
    let is_claw = claw == Graph::from_edges(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
    (
        no_partition && c4_width.is_some() && is_claw,
        format!(
            "universal+P7 NoPartition: {no_partition}; C4 width {c4_width:?}; mixed representation gives the claw: {is_claw}"
        ),
    )
}

#[derive(Default)]
struct Counters {
    dp_runs: usize,
    dp_bound_failures: usize,
    tight_nodes: usize,
    tight_bound_violations: usize,
    bench_rows: usize,
    bench_bound_failures: usize,
}

fn c7_bounds(k: &Counters) -> (bool, String) {
    (
        k.dp_bound_failures == 0 && k.bench_bound_failures == 0 && k.tight_bound_violations == 0,
        format!(
            "bubble DP: {} runs + {} bench rows, configuration-bound failures {}; tight DP: {} nodes, vector-bound violations {}",
            k.dp_runs,
            k.bench_rows,
            k.dp_bound_failures + k.bench_bound_failures,
            k.tight_nodes,
            k.tight_bound_violations
        ),
    )
}

fn c8_scaling(k: &mut Counters) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bubblecut"))
        .args(["bench", "--gen", "forced-p", "--n", "48", "--p", "1..8", "--repeat", "3", "--algos", "bubble-dp"])
        .output()
        .expect("bench runs");
    if !out.status.success() {
        return (false, format!("bench failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (cp, cc, ce, cb) = (col("p"), col("configurations"), col("evaluations"), col("config_bound_ok"));
    let (mut ps, mut confs, mut evals) = (Vec::new(), Vec::new(), Vec::new());
    for l in lines {
        let f: Vec<&str> = l.split('\t').collect();
        ps.push(f[cp].parse::<f64>().unwrap());
        confs.push(f[cc].parse::<f64>().unwrap().ln());
        evals.push(f[ce].parse::<f64>().unwrap().ln());
        k.bench_rows += 1;
        k.bench_bound_failures += usize::from(f[cb] != "true");
    }
    let limit = 4f64.ln() * 1.1;
    let (sc, se) = (slope(&ps, &confs), slope(&ps, &evals));
    (
        sc <= limit && se <= limit,
        format!(
            "n=48, p=1..8, {} rows: slope of ln(configurations) {sc:.3}, of ln(evaluations) {se:.3}, limit ln4·1.1 = {limit:.3}",
            ps.len()
        ),
    )
}

fn c9_round_trips() -> (bool, String) {
    const COUNT: u64 = 120;
    let mut failures: Vec<&str> = Vec::new();
    let mut check = |name: &'static str, ok: bool| {
        if !ok && !failures.contains(&name) {
            failures.push(name);
        }
    };
    let mut counts = [0usize; 5];
    for seed in 0..COUNT {
        let n = 1 + (seed as usize % 24);
        let g = if seed.is_multiple_of(2) { gen_gnp(n, 0.3, seed) } else { gen_proper_interval(n, 0.3, seed).0 };
        let t = write_graph(&g);
        check("graph", parse_graph(&t).is_ok_and(|h| h == g && write_graph(&h) == t));
        counts[0] += 1;

        let (_, rep) = gen_mixed_unit(n, 0.3, seed);
        let t = write_intervals(&rep);
        check("intervals", parse_intervals(&t).is_ok_and(|r| r == rep && write_intervals(&r) == t));
        counts[1] += 1;

        let (pg, _) = gen_proper_interval(n, 0.35, seed + 7);
        let bm = build_bubble_model(&pg).unwrap();
        let t = write_bubble_model(&bm);
        check(
            "bubble model",
            parse_bubble_model(&t).is_ok_and(|b| b == bm && write_bubble_model(&b) == t && graph_of_bubble_model(&b) == pg),
        );
        counts[2] += 1;

        let c = components(&pg).into_iter().max_by_key(Graph::n).unwrap();
        let cg = twin_classes(&c);
        let bp = columns_partition(&c, &cg, &build_bubble_model(&c).unwrap()).unwrap();
        let t = write_partition(&bp.parts);
        check("partition", parse_partition(&t).is_ok_and(|p| p == bp.parts && write_partition(&p) == t));
        counts[3] += 1;

        let e = expression_for_graph(&pg).unwrap();
        let t = write_expression(&e);
        check(
            "expression",
            parse_expression(&t).is_ok_and(|f| write_expression(&f) == t && evaluate(&f).unwrap().graph == pg),
        );
        counts[4] += 1;
    }
    (
        failures.is_empty(),
        format!(
            "graph/intervals/bubble model/partition/expression artifacts: {counts:?}; failing formats {failures:?}"
        ),
    )
}

fn main() {
    let suite = Instant::now();
    let gs = instances();
    let oracle: Vec<usize> = gs.iter().map(|g| brute_force_maxcut(g).unwrap().max_cut_size).collect();
    let mut k = Counters::default();
    let mut out = Vec::new();

    let mut timed = |id, title, limit: Option<u64>, f: &mut dyn FnMut() -> (bool, String)| {
        let start = Instant::now();
        let (pass, detail) = f();
        out.push(Outcome {
            id,
            title,
            pass,
            detail,
            elapsed: start.elapsed(),
            limit: limit.map(Duration::from_secs),
        });
    };
    timed(1, "bubble DP equals the oracle", Some(60), &mut || c1_bubble_dp(&gs, &oracle, &mut k));
    timed(2, "clique-width DPs equal the oracle", Some(120), &mut || c2_cw(&gs, &oracle, &mut k));
    timed(3, "a maximum cut is always tight", Some(60), &mut c3_tight_cuts);
    let mut c4_as_analysed = true;
    timed(4, "construction structure", None, &mut || c4_construction(&gs, &mut c4_as_analysed));
    timed(5, "column partitions", None, &mut || c5_columns(&gs));
    timed(6, "bubble-width witnesses", None, &mut c6_witnesses);
    timed(8, "configuration growth within 4^p", Some(300), &mut || c8_scaling(&mut k));
    timed(7, "counting bounds", None, &mut || c7_bounds(&k));
    timed(9, "file format round trips", None, &mut c9_round_trips);
    out.sort_by_key(|o| o.id);

    let mut unexpected = 0;
    for o in &out {
        let in_time = o.limit.is_none_or(|l| o.elapsed <= l);
        let pass = o.pass && in_time;
        let known = KNOWN_FAILURES.iter().find(|(id, _)| *id == o.id);
        let verdict = match (pass, known) {
            (true, _) => "PASS",
            (false, Some(_)) if o.id != 4 || c4_as_analysed => "FAIL (known)",
            (false, _) => {
                unexpected += 1;
                "FAIL"
            }
        };
        let time = match o.limit {
            Some(l) => format!("{:.1}s of {}s", o.elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.1}s", o.elapsed.as_secs_f64()),
        };
        println!("criterion {} [{verdict}] {} ({time}): {}", o.id, o.title, o.detail);
        if let (false, Some((_, why))) = (pass, known) {
            println!("    analysis: {why}");
        }
    }
    println!(
        "acceptance: {}/{} criteria pass, {} unexpected failures, {:.1}s",
        out.iter().filter(|o| o.pass).count(),
        out.len(),
        unexpected,
        suite.elapsed().as_secs_f64()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
