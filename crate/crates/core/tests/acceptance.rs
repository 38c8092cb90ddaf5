//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//!
//! Criteria run on separate threads; lines are printed in criterion order.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use deds_core::approx::{approx_01, approx_11};
use deds_core::engine::{solve, Engine, SolveOptions};
use deds_core::fpt::{solve_01, solve_11};
use deds_core::gen::{
    aim_to_tournament, aim_witness, gen_tournament, is_to_aim, mcc_to_optional, optional_to_full, planted_aim,
    sample_bias, small_corpus, McInstance,
};
use deds_core::graph::{write_graph, Digraph, UndirectedGraph};
use deds_core::kernel::{bound_01_vertices, bound_11_vertices, kernelize_01, kernelize_11, lift_01, Verdict};
use deds_core::oracle::{all_optimal_solutions, branching_min_deds, exact_aim_with_limit, exact_ds, exact_min_deds};
use deds_core::tournament::{construct_22, ds_to_02, solve_t01, solve_t_pq3, solve_t_q2, DEFAULT_Q2_LIMIT};
use deds_core::twdp::{
    elimination_td, heuristic_td, make_nice, signature_bound, solve_twdp_with_stats, TreeDecomposition,
    DEFAULT_MEMORY_LIMIT,
};
use deds_core::{verify, Instance, Tournament};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opt(inst: &Instance) -> usize {
    exact_min_deds(inst, inst.graph.m()).expect("within the oracle limit").expect("all arcs dominate").size()
}

fn corpus() -> Vec<Digraph> {
    small_corpus(300, 7, 14, 1)
}

fn log2_floor(n: usize) -> usize {
    n.ilog2() as usize
}

fn oracle_equivalence() -> Outcome {
    let graphs = corpus();
    let mut runs = 0;
    for (i, g) in graphs.iter().enumerate() {
        for (p, q) in [(0, 1), (1, 1)] {
            let inst = Instance::new(g.clone(), p, q);
            let best = opt(&inst);
            for k in [Some(best), best.checked_sub(1)].into_iter().flatten() {
                let got = if p == 0 { solve_01(g, k) } else { solve_11(g, k) };
                let expect = (k == best).then_some(best);
                check(got.as_ref().map(|s| s.size()) == expect, || {
                    format!("graph {i} ({p},{q}) k={k}: expected {expect:?}, got {:?}", got.as_ref().map(|s| s.size()))
                })?;
                if let Some(s) = &got {
                    check(verify(&inst, &s.arcs).unwrap(), || format!("graph {i} ({p},{q}): infeasible output"))?;
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{} graphs, {runs} branching runs agree with the oracle", graphs.len()))
}

fn treewidth_dp() -> Outcome {
    let graphs = corpus();
    let (mut runs, mut tables) = (0, 0);
    for (i, g) in graphs.iter().enumerate() {
        let u = g.underlying().to_graph();
        let identity: Vec<usize> = (0..g.n()).collect();
        let mut tds = vec![heuristic_td(g), elimination_td(&u, &identity)];
        if g.n() <= 4 {
            tds.push(TreeDecomposition::single_bag(g.n()));
        }
        for p in 0..=2 {
            for q in 0..=2 {
                let inst = Instance::new(g.clone(), p, q);
                let best = opt(&inst);
                for td in &tds {
                    let nice = make_nice(td, &u).map_err(|e| format!("graph {i}: {e}"))?;
                    let (size, sol, stats) =
                        solve_twdp_with_stats(&inst, &nice, DEFAULT_MEMORY_LIMIT).map_err(|e| e.to_string())?;
                    check(size == best && sol.size() == best, || {
                        format!("graph {i} ({p},{q}): dp {size}, oracle {best}")
                    })?;
                    check(verify(&inst, &sol.arcs).unwrap(), || format!("graph {i} ({p},{q}): infeasible witness"))?;
                    for &(bag, count) in &stats.tables {
                        check(count as u128 <= signature_bound(p, q, bag), || {
                            format!("graph {i} ({p},{q}): {count} signatures on a bag of {bag}")
                        })?;
                    }
                    tables += stats.tables.len();
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} runs over heuristic and hand-built decompositions match the oracle; {tables} tables within (4(p+1)(q+1))^|bag|"))
}

fn kernels() -> Outcome {
    let graphs = small_corpus(200, 8, 16, 3);
    let mut runs = 0;
    for (i, g) in graphs.iter().enumerate() {
        for k in 1..=4 {
            for (p, q) in [(0, 1), (1, 1)] {
                let inst = Instance::new(g.clone(), p, q);
                let yes = exact_min_deds(&inst, k).unwrap().is_some();
                let r = if p == 0 { kernelize_01(g, k) } else { kernelize_11(g, k) };
                let bound = if p == 0 { bound_01_vertices(k) } else { bound_11_vertices(k) };
                check(r.certificate.vertices <= bound, || {
                    format!("graph {i} ({p},{q}) k={k}: {} kernel vertices, bound {bound}", r.certificate.vertices)
                })?;
                let reduced = match r.verdict {
                    Verdict::Reduced => exact_min_deds(&r.reduced, r.k_out as usize).unwrap(),
                    _ => None,
                };
                let kyes = match r.verdict {
                    Verdict::RejectedNo => false,
                    Verdict::TriviallyYes => true,
                    Verdict::Reduced => reduced.is_some(),
                };
                check(yes == kyes, || format!("graph {i} ({p},{q}) k={k}: original {yes}, kernel {kyes}"))?;
                if let (0, Some(s)) = (p, &reduced) {
                    let lifted = lift_01(g, &r, s);
                    check(verify(&inst, &lifted.arcs).unwrap() && lifted.size() <= k, || {
                        format!("graph {i} k={k}: lifted solution invalid")
                    })?;
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} kernelizations decide like the oracle; |V'| <= 3k+1 and <= 8k^2+12k throughout"))
}

fn approximation() -> Outcome {
    let graphs = corpus();
    let (mut worst01, mut worst11) = (0.0f64, 0.0f64);
    for (i, g) in graphs.iter().enumerate() {
        for (p, q, factor) in [(0, 1, 3), (1, 1, 8)] {
            let inst = Instance::new(g.clone(), p, q);
            let best = opt(&inst);
            let (sol, _) = if p == 0 { approx_01(g) } else { approx_11(g) };
            check(verify(&inst, &sol.arcs).unwrap(), || format!("graph {i} ({p},{q}): infeasible"))?;
            check(sol.size() <= factor * best, || format!("graph {i} ({p},{q}): {} > {factor} * {best}", sol.size()))?;
            let ratio = sol.size() as f64 / best.max(1) as f64;
            if p == 0 {
                worst01 = worst01.max(ratio);
            } else {
                worst11 = worst11.max(ratio);
            }
        }
    }
    Ok(format!("no violations on {} graphs; worst ratios {worst01:.2} (0,1), {worst11:.2} (1,1)", graphs.len()))
}

fn tournaments() -> Outcome {
    let mut count = 0;
    for n in 3..=7 {
        for seed in 0..100u64 {
            let t = gen_tournament(n, 1000 * n as u64 + seed);
            let g = t.graph();
            let here = |p, q| format!("n={n} seed={seed} ({p},{q})");
            let t01 = solve_t01(&t);
            let o01 = opt(&Instance::new(g.clone(), 0, 1));
            check(t01.size() == n - 1 && o01 == n - 1, || format!("{}: t01 {} oracle {o01}", here(0, 1), t01.size()))?;
            for (p, q) in [(0, 3), (3, 0), (1, 3), (3, 3), (4, 3)] {
                let inst = Instance::new(g.clone(), p, q);
                let s = solve_t_pq3(&t, p, q).map_err(|e| format!("{}: {e}", here(p, q)))?;
                check(verify(&inst, &s.arcs).unwrap() && s.size() == opt(&inst), || here(p, q))?;
            }
            for (p, q) in [(0, 2), (1, 2), (2, 2)] {
                let inst = Instance::new(g.clone(), p, q);
                let s = solve_t_q2(&t, p, q, DEFAULT_Q2_LIMIT).map_err(|e| format!("{}: {e}", here(p, q)))?;
                check(verify(&inst, &s.arcs).unwrap() && s.size() == opt(&inst), || here(p, q))?;
            }
            if t.source().is_none() {
                let ds = exact_ds(g).map_err(|e| e.to_string())?.0;
                let o02 = opt(&Instance::new(g.clone(), 0, 2));
                check(o02 <= ds, || format!("n={n} seed={seed}: OPT(0,2) {o02} > DS {ds}"))?;
                let via = ds_to_02(&t, &t.greedy_dominating_set()).map_err(|e| e.to_string())?;
                check(verify(&Instance::new(g.clone(), 0, 2), &via.arcs).unwrap(), || "ds_to_02 infeasible".into())?;
            }
            count += 1;
        }
    }
    let mut sizes = 0;
    for n in (1..=64).chain([100, 128, 200, 256, 500, 512, 1000, 1024]) {
        for seed in 0..3 {
            let t = gen_tournament(n, seed);
            let d = t.greedy_dominating_set();
            check(d.len() <= log2_floor(n) + 1, || format!("n={n}: greedy DS of {}", d.len()))?;
            if (2..=256).contains(&n) {
                let s = construct_22(&t);
                let bound = 2 * log2_floor(n) + 3;
                check(s.size() <= bound && verify(&Instance::new(t.graph().clone(), 2, 2), &s.arcs).unwrap(), || {
                    format!("n={n}: (2,2) construction of {} (bound {bound})", s.size())
                })?;
            }
            sizes += 1;
        }
    }
    Ok(format!("{count} tournaments (n=3..7) match the oracle on every route; {sizes} dominating-set and (2,2) bound checks up to n=1024"))
}

fn mcc(n: usize, edges: &[(usize, usize)]) -> McInstance {
    McInstance::new(UndirectedGraph::new(2 * n, edges.iter().copied()).unwrap(), 2, n).unwrap()
}

fn reductions() -> Outcome {
    let k = 2;
    let cases = [(2, vec![(0, 2)], true), (2, vec![], false), (4, vec![(1, 5)], true), (4, vec![], false)];
    let mut notes = Vec::new();
    for (n, edges, clique) in cases {
        let r = mcc_to_optional(&mcc(n, &edges)).map_err(|e| e.to_string())?;
        let partial = branching_min_deds(&r.instance, k).map_err(|e| e.to_string())?;
        check(partial.is_some() == clique, || format!("n={n} clique={clique}: optional instance disagrees"))?;
        let full = optional_to_full(&r, &r.s_set).map_err(|e| e.to_string())?;
        let at = branching_min_deds(&full.instance, k + 1).map_err(|e| e.to_string())?;
        check(at.is_some() == clique, || format!("n={n} clique={clique}: full instance disagrees at k+1"))?;
        let best = branching_min_deds(&full.instance, full.instance.graph.m())
            .map_err(|e| e.to_string())?
            .expect("feasible")
            .size();
        let optima = all_optimal_solutions(&full.instance, best).map_err(|e| e.to_string())?;
        let u1u2 = full.lineage.marks["u1u2_arc"];
        check(optima.iter().all(|s| s.contains(&u1u2)), || format!("n={n}: an optimum avoids (u1,u2)"))?;
        notes.push(format!("n={n} {}: opt {best}, {} optima", if clique { "yes" } else { "no" }, optima.len()));
    }
    let k4 = UndirectedGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    for kk in 0..=2 {
        let (h, l) = is_to_aim(&k4, kk).map_err(|e| e.to_string())?;
        let aim = exact_aim_with_limit(&h, h.n()).map_err(|e| e.to_string())?.0;
        check((aim >= l) == (kk <= 1), || format!("K4 k={kk}: AIM {aim}, L {l}"))?;
    }
    notes.push("K4: IS(k) <=> AIM >= n+2m+k for k=0..2".into());
    Ok(notes.join("; "))
}

fn randomized_tournament() -> Outcome {
    let (n, l) = (8, 10);
    let mut hits = 0;
    let mut failures = Vec::new();
    let mut bias = 0.0;
    for seed in 0..20u64 {
        let (g, s) = planted_aim(n, l, seed).map_err(|e| e.to_string())?;
        let r = aim_to_tournament(&g, n, l, seed).map_err(|e| e.to_string())?;
        let t = Tournament::new(r.instance.graph.clone()).map_err(|e| e.to_string())?;
        bias += sample_bias(&t, 50, seed).frequency;
        match aim_witness(&r.instance.graph, &g, n, &s) {
            Some(sol) if verify(&r.instance, &sol.arcs).unwrap() && sol.size() <= r.threshold => hits += 1,
            Some(sol) => failures.push(format!("seed {seed}: witness of {} vs {}", sol.size(), r.threshold)),
            None => failures.push(format!("seed {seed}: no witness")),
        }
    }
    for f in &failures {
        eprintln!("  randomized construction: {f}");
    }
    let msg = format!(
        "{hits}/20 seeds at n=8, L={l} have a (1,1)-solution <= |V(T)|-L/2+1 (constructive witness from the planted matching, verified; 48-vertex instances are beyond exhaustive search); mean no-bias frequency {:.2}",
        bias / 20.0
    );
    if hits >= 18 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn determinism() -> Outcome {
    let g = small_corpus(1, 7, 12, 42).remove(0);
    let t = gen_tournament(6, 42).into_graph();
    let mut runs = 0;
    for engine in Engine::ALL {
        for (p, q) in [(0, 1), (1, 1), (2, 2)] {
            let input = if engine == Engine::Tournament { &t } else { &g };
            let inst = Instance::new(input.clone(), p, q);
            let opts = SolveOptions { k: Some(input.m()), deterministic: true, seed: Some(42), ..SolveOptions::new(engine) };
            let once = solve(&inst, &opts).map(|r| r.to_json());
            let twice = solve(&inst, &opts).map(|r| r.to_json());
            check(once == twice, || format!("{engine} ({p},{q}) differs between runs"))?;
            runs += once.is_ok() as usize;
        }
    }
    let text = |seed| write_graph(&gen_tournament(9, seed).into_graph(), &[]);
    check(text(5) == text(5), || "tournament generator not reproducible".into())?;
    let planted = |seed| {
        let (g, _) = planted_aim(6, 4, seed).unwrap();
        write_graph(&aim_to_tournament(&g, 6, 4, seed).unwrap().instance.graph, &[])
    };
    check(planted(9) == planted(9), || "AIM construction not reproducible".into())?;
    Ok(format!("{runs} engine runs and the seeded generators give byte-identical output twice"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence of fpt01/fpt11", oracle_equivalence),
        ("treewidth DP exactness and signature bound", treewidth_dp),
        ("kernel decisions and size bounds", kernels),
        ("approximation ratios", approximation),
        ("tournament solvers", tournaments),
        ("hardness reductions end to end", reductions),
        ("randomized tournament construction", randomized_tournament),
        ("determinism", determinism),
    ];
    let start = Instant::now();
    let results: Vec<(Outcome, f64)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (out, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("joined")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, secs))) in criteria.iter().zip(results).enumerate() {
        let (tag, detail) = match out {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {} {name} [{secs:.1}s]: {detail}", i + 1);
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
