use proptest::prelude::*;

use deds_core::engine::{solve, Engine, SolveOptions};
use deds_core::fpt::{solve_01, solve_11};
use deds_core::graph::{parse_graph, write_graph};
use deds_core::kernel::{kernelize_01, lift_01, Verdict};
use deds_core::oracle::exact_min_deds;
use deds_core::twdp::{heuristic_td, make_nice, solve_twdp, TreeDecomposition};
use deds_core::{verify, Digraph, Instance};

/// Small simple digraphs: up to 6 vertices, arcs drawn from all ordered pairs.
fn digraph() -> impl Strategy<Value = Digraph> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len().min(10))
            .prop_map(move |arcs| Digraph::new(n, arcs).unwrap())
    })
}

fn opt(inst: &Instance) -> usize {
    exact_min_deds(inst, inst.graph.m()).unwrap().unwrap().size()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn all_arcs_always_dominate(g in digraph(), p in 0usize..4, q in 0usize..4) {
        let all: Vec<usize> = (0..g.m()).collect();
        prop_assert!(verify(&Instance::new(g, p, q), &all).unwrap());
    }

    #[test]
    fn supersets_stay_feasible(g in digraph(), p in 0usize..3, q in 0usize..3, extra in any::<u64>()) {
        let inst = Instance::new(g, p, q);
        let s = exact_min_deds(&inst, inst.graph.m()).unwrap().unwrap();
        let mut arcs = s.arcs.clone();
        arcs.extend((0..inst.graph.m()).filter(|a| extra >> (a % 64) & 1 == 1));
        prop_assert!(verify(&inst, &arcs).unwrap());
    }

    #[test]
    fn reversal_swaps_the_radii(g in digraph(), p in 0usize..3, q in 0usize..3) {
        let inst = Instance::new(g, p, q);
        let s = exact_min_deds(&inst, inst.graph.m()).unwrap().unwrap();
        let rev = inst.reversed();
        prop_assert!(verify(&rev, &s.arcs).unwrap());
        prop_assert_eq!(opt(&rev), s.size());
    }

    #[test]
    fn larger_radii_never_cost_more(g in digraph(), p in 0usize..3, q in 0usize..3) {
        let base = opt(&Instance::new(g.clone(), p, q));
        prop_assert!(opt(&Instance::new(g.clone(), p + 1, q)) <= base);
        prop_assert!(opt(&Instance::new(g, p, q + 1)) <= base);
    }

    #[test]
    fn branching_matches_the_oracle(g in digraph()) {
        for (p, q) in [(0, 1), (1, 1)] {
            let best = opt(&Instance::new(g.clone(), p, q));
            let solve = |k| if p == 0 { solve_01(&g, k) } else { solve_11(&g, k) };
            prop_assert_eq!(solve(best).map(|s| s.size()), Some(best));
            if best > 0 {
                prop_assert!(solve(best - 1).is_none());
            }
        }
    }

    #[test]
    fn dp_matches_the_oracle(g in digraph(), p in 0usize..4, q in 0usize..4) {
        let inst = Instance::new(g, p, q);
        let u = inst.graph.underlying().to_graph();
        let mut tds = vec![heuristic_td(&inst.graph)];
        if inst.graph.n() <= 4 {
            tds.push(TreeDecomposition::single_bag(inst.graph.n()));
        }
        for td in tds {
            let nice = make_nice(&td, &u).unwrap();
            let (size, sol) = match solve_twdp(&inst, &nice) {
                Err(e) if e.is_resource() => continue,
                r => r.unwrap(),
            };
            prop_assert_eq!(size, opt(&inst));
            prop_assert!(verify(&inst, &sol.arcs).unwrap());
        }
    }

    #[test]
    fn kernel01_solutions_lift(g in digraph(), k in 0usize..5) {
        let inst = Instance::new(g.clone(), 0, 1);
        let r = kernelize_01(&g, k);
        if r.verdict == Verdict::Reduced {
            if let Some(s) = exact_min_deds(&r.reduced, r.k_out as usize).unwrap() {
                let lifted = lift_01(&g, &r, &s);
                prop_assert!(verify(&inst, &lifted.arcs).unwrap());
                prop_assert!(lifted.size() <= k);
            }
        }
    }

    #[test]
    fn text_formats_roundtrip(g in digraph(), mask in any::<u16>()) {
        let optional: Vec<usize> = (0..g.m()).filter(|a| mask >> a & 1 == 1).collect();
        let parsed = parse_graph(&write_graph(&g, &optional)).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        prop_assert_eq!(parsed.optional, optional);
        let td = heuristic_td(&g);
        prop_assert_eq!(TreeDecomposition::from_pace(&td.to_pace()).unwrap(), td);
    }

    #[test]
    fn auto_is_exact_and_verified(g in digraph(), p in 0usize..3, q in 0usize..3) {
        let inst = Instance::new(g, p, q);
        let report = solve(&inst, &SolveOptions::new(Engine::Auto)).unwrap();
        prop_assert!(report.feasible);
        prop_assert_eq!(report.size, Some(opt(&inst)));
    }
}
