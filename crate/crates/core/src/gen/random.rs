use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Digraph, Tournament, Vertex};

/// The generator behind every seeded construction in this crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Orients each pair `{i, j}`, `i < j`, as `(i, j)` with probability 1/2.
pub fn gen_tournament(n: usize, seed: u64) -> Tournament {
    let mut r = rng(seed);
    Tournament::from_fn(n, |_, _| r.gen_bool(0.5))
}

/// Each ordered pair of distinct vertices becomes an arc with probability `arc_prob`.
pub fn gen_digraph(n: usize, arc_prob: f64, seed: u64) -> Digraph {
    assert!((0.0..=1.0).contains(&arc_prob), "arc probability {arc_prob} outside [0, 1]");
    let mut r = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(arc_prob) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, arcs).expect("distinct ordered pairs")
}

/// Exactly `m` arcs chosen uniformly among the ordered pairs, listed in pair order.
pub fn gen_digraph_with_arcs(n: usize, m: usize, seed: u64) -> Digraph {
    let pairs: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    assert!(m <= pairs.len(), "{m} arcs do not fit on {n} vertices");
    let mut r = rng(seed);
    let mut picked = sample(&mut r, pairs.len(), m).into_vec();
    picked.sort_unstable();
    Digraph::new(n, picked.into_iter().map(|i| pairs[i])).expect("distinct ordered pairs")
}

/// A corpus of small random digraphs: `n` in `2..=max_n`, at most `max_m` arcs.
pub fn small_corpus(count: usize, max_n: usize, max_m: usize, seed: u64) -> Vec<Digraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=max_n);
            let m = r.gen_range(1..=max_m.min(n * (n - 1)));
            gen_digraph_with_arcs(n, m, r.gen())
        })
        .collect()
}
