//! Constant-factor approximations built around a maximal matching of the
//! not-yet-dominated arcs.

use serde::Serialize;

use crate::domination::{dominated_mask, Solution};
use crate::graph::{maximal_matching, ArcId, Digraph, Vertex};

/// Sources, sinks and the rest. Isolated vertices count as sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSinkPartition {
    pub sources: Vec<Vertex>,
    pub sinks: Vec<Vertex>,
    pub rest: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    S,
    T,
    R,
}

impl SourceSinkPartition {
    pub fn new(g: &Digraph) -> Self {
        let mut p = SourceSinkPartition { sources: Vec::new(), sinks: Vec::new(), rest: Vec::new() };
        for v in 0..g.n() {
            match side(g, v) {
                Side::S => p.sources.push(v),
                Side::T => p.sinks.push(v),
                Side::R => p.rest.push(v),
            }
        }
        p
    }
}

fn side(g: &Digraph, v: Vertex) -> Side {
    if g.is_source(v) {
        Side::S
    } else if g.is_sink(v) {
        Side::T
    } else {
        Side::R
    }
}

/// Sizes of the sets built along the way, for auditing the ratio argument.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ApproxReport {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub matching: usize,
    pub i_plus: usize,
    /// The bound the returned size must respect.
    pub bound: usize,
}

/// Arcs of `g` not dominated by `k`, as a digraph on the same vertices with a map back.
fn residual(g: &Digraph, p: usize, q: usize, k: &[ArcId]) -> (Digraph, Vec<ArcId>) {
    let dom = dominated_mask(g, p, q, k);
    let keep: Vec<ArcId> = (0..g.m()).filter(|&a| !dom.contains(a)).collect();
    let h = Digraph::new(g.n(), keep.iter().map(|&a| g.arc(a))).expect("subgraph of a valid digraph");
    (h, keep)
}

fn first_in(g: &Digraph, v: Vertex) -> ArcId {
    *g.in_arcs(v).first().expect("vertex outside S has an in-arc")
}

fn first_out(g: &Digraph, v: Vertex) -> ArcId {
    *g.out_arcs(v).first().expect("vertex outside T has an out-arc")
}

/// (0,1) solution of size at most `3 * OPT`.
pub fn approx_01(g: &Digraph) -> (Solution, ApproxReport) {
    let sides: Vec<Side> = (0..g.n()).map(|v| side(g, v)).collect();
    let k1: Vec<ArcId> = (0..g.n()).filter(|&v| sides[v] == Side::S).flat_map(|v| g.out_arcs(v).to_vec()).collect();
    let mut out_of_s = vec![false; g.n()];
    for &a in &k1 {
        out_of_s[g.head(a)] = true;
    }
    let k2: Vec<ArcId> = (0..g.n())
        .filter(|&v| sides[v] == Side::R && !out_of_s[v] && g.out_neighbors(v).any(|w| sides[w] == Side::T))
        .map(|v| first_in(g, v))
        .collect();
    let mut k: Vec<ArcId> = k1.iter().chain(&k2).copied().collect();

    let (h, back) = residual(g, 0, 1, &k);
    let view = h.underlying();
    let m: Vec<ArcId> = maximal_matching(&view).into_iter().map(|e| back[view.representative_arc(e)]).collect();
    let mut touched = vec![false; g.n()];
    for &a in &m {
        let (u, v) = g.arc(a);
        touched[u] = true;
        touched[v] = true;
    }
    let mut k3: Vec<ArcId> = m.clone();
    k3.extend(m.iter().map(|&a| first_in(g, g.tail(a))));
    let i_plus: Vec<Vertex> = (0..g.n())
        .filter(|&v| sides[v] == Side::R && !touched[v] && !h.is_sink(v))
        .collect();
    k3.extend(i_plus.iter().map(|&v| first_in(g, v)));
    k.extend(&k3);

    let sol = Solution::new(k, "approx01");
    let report = ApproxReport {
        k1: k1.len(),
        k2: k2.len(),
        k3: k3.len(),
        matching: m.len(),
        i_plus: i_plus.len(),
        bound: k1.len() + k2.len() + 2 * m.len() + i_plus.len(),
    };
    assert!(sol.size() <= report.bound, "|K| = {} exceeds |K1|+|K2|+2|M|+|I+| = {}", sol.size(), report.bound);
    (sol, report)
}

/// (1,1) solution of size at most `8 * OPT`.
pub fn approx_11(g: &Digraph) -> (Solution, ApproxReport) {
    let sides: Vec<Side> = (0..g.n()).map(|v| side(g, v)).collect();
    let k1: Vec<ArcId> = (0..g.m())
        .filter(|&a| {
            let (u, v) = g.arc(a);
            sides[u] == Side::S && sides[v] == Side::T
        })
        .collect();
    let mut k2: Vec<ArcId> = (0..g.n())
        .filter(|&v| sides[v] == Side::R && g.in_neighbors(v).any(|w| sides[w] == Side::S))
        .map(|v| first_out(g, v))
        .collect();
    k2.extend(
        (0..g.n())
            .filter(|&v| sides[v] == Side::R && g.out_neighbors(v).any(|w| sides[w] == Side::T))
            .map(|v| first_in(g, v)),
    );
    let mut k: Vec<ArcId> = k1.iter().chain(&k2).copied().collect();

    let (h, back) = residual(g, 1, 1, &k);
    let view = h.underlying();
    let m: Vec<ArcId> = maximal_matching(&view).into_iter().map(|e| back[view.representative_arc(e)]).collect();
    let mut k3 = m.clone();
    k3.extend(m.iter().map(|&a| first_in(g, g.tail(a))));
    k3.extend(m.iter().map(|&a| first_out(g, g.head(a))));
    k.extend(&k3);

    let sol = Solution::new(k, "approx11");
    let report = ApproxReport {
        k1: k1.len(),
        k2: k2.len(),
        k3: k3.len(),
        matching: m.len(),
        i_plus: 0,
        bound: k1.len() + k2.len() + 3 * m.len(),
    };
    assert!(sol.size() <= report.bound);
    (sol, report)
}
