//! Fixed-seed inputs shared by the benchmarks.

use deds_core::gen::{gen_digraph_with_arcs, gen_tournament};
use deds_core::twdp::{heuristic_td, make_nice, NiceTreeDecomposition};
use deds_core::{Digraph, Instance, Tournament};

pub const SEED: u64 = 0x5eed;

/// Sparse digraph with `2n` arcs.
pub fn sparse(n: usize) -> Digraph {
    gen_digraph_with_arcs(n, 2 * n, SEED + n as u64)
}

pub fn tournament(n: usize) -> Tournament {
    gen_tournament(n, SEED + n as u64)
}

/// A path-like digraph of bounded treewidth: arcs `i -> i+1` and `i -> i+2`.
pub fn ladder(n: usize) -> Digraph {
    let arcs = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).chain((0..n.saturating_sub(2)).map(|i| (i, i + 2)));
    Digraph::new(n, arcs).expect("simple")
}

pub fn nice_heuristic(inst: &Instance) -> NiceTreeDecomposition {
    let td = heuristic_td(&inst.graph);
    make_nice(&td, &inst.graph.underlying().to_graph()).expect("heuristic decompositions are valid")
}
