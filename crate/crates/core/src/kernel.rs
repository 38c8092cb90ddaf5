//! Polynomial kernels for (1,1) and (0,1).

use serde::Serialize;

use crate::domination::{Instance, Solution};
use crate::error::{Error, Result};
use crate::graph::{maximal_matching, ArcId, Digraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Reduced,
    RejectedNo,
    TriviallyYes,
}

/// Sizes and bookkeeping of a kernelization run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub vertices: usize,
    pub arcs: usize,
    /// Edges of the underlying undirected graph of the reduced instance.
    pub edges: usize,
    pub vertex_bound: usize,
    pub edge_bound: usize,
    /// Maximal matching of the underlying graph, as vertex pairs.
    pub matching: Vec<(Vertex, Vertex)>,
    /// `vertex_map[new] = old`; the added sink vertex (0,1) maps to `None`.
    pub vertex_map: Vec<Option<Vertex>>,
    /// `arc_map[new] = old`; arcs into the added vertex map to `None`.
    pub arc_map: Vec<Option<ArcId>>,
    /// Original arcs removed together with a unit of budget (source to sink).
    pub taken: Vec<ArcId>,
    /// Original sinks merged into the added vertex.
    pub merged_sinks: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    pub reduced: Instance,
    /// Budget of the reduced instance; negative when the rules overdraw it.
    pub k_out: i64,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

pub fn bound_11_vertices(k: usize) -> usize {
    8 * k * k + 12 * k
}

/// `C(4k, 2) + 32k^3 + 32k^2`, counted on underlying edges.
pub fn bound_11_edges(k: usize) -> usize {
    let s = 4 * k;
    s * s.saturating_sub(1) / 2 + 32 * k * k * k + 32 * k * k
}

pub fn bound_01_vertices(k: usize) -> usize {
    3 * k + 1
}

fn check_standard(g: &Digraph, optional: &[ArcId]) -> Result<()> {
    if optional.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "kernels apply to instances without optional arcs ({} given on {} arcs)",
            optional.len(),
            g.m()
        )))
    }
}

fn matched_endpoints(g: &Digraph) -> (Vec<bool>, Vec<(Vertex, Vertex)>) {
    let view = g.underlying();
    let m = maximal_matching(&view);
    let mut in_s = vec![false; g.n()];
    let mut pairs = Vec::new();
    for e in m {
        let (u, v) = view.edges()[e];
        in_s[u] = true;
        in_s[v] = true;
        pairs.push((u, v));
    }
    (in_s, pairs)
}

fn certificate(
    g: &Digraph,
    vertex_bound: usize,
    edge_bound: usize,
    matching: Vec<(Vertex, Vertex)>,
    vertex_map: Vec<Option<Vertex>>,
    arc_map: Vec<Option<ArcId>>,
) -> Certificate {
    Certificate {
        vertices: g.n(),
        arcs: g.m(),
        edges: g.underlying().edges().len(),
        vertex_bound,
        edge_bound,
        matching,
        vertex_map,
        arc_map,
        taken: Vec::new(),
        merged_sinks: Vec::new(),
    }
}

fn empty_result(p: usize, q: usize, k: i64, verdict: Verdict, mut cert: Certificate) -> KernelResult {
    let reduced = Instance::new(Digraph::empty(0), p, q).with_budget(k.max(0) as usize);
    cert.vertices = 0;
    cert.arcs = 0;
    cert.edges = 0;
    cert.vertex_map.clear();
    cert.arc_map.clear();
    KernelResult { reduced, k_out: k, verdict, certificate: cert }
}

/// Quadratic-vertex kernel for (1,1). Only the yes/no answer is preserved.
pub fn kernelize_11(g: &Digraph, k: usize) -> KernelResult {
    kernelize_11_checked(g, &[], k).expect("no optional arcs")
}

pub fn kernelize_11_checked(g: &Digraph, optional: &[ArcId], k: usize) -> Result<KernelResult> {
    check_standard(g, optional)?;
    let (vb, eb) = (bound_11_vertices(k), bound_11_edges(k));
    let (in_s, matching) = matched_endpoints(g);
    let base = certificate(g, vb, eb, matching.clone(), Vec::new(), Vec::new());
    if matching.len() > 2 * k {
        return Ok(empty_result(1, 1, k as i64, Verdict::RejectedNo, base));
    }
    if g.m() == 0 {
        return Ok(empty_result(1, 1, k as i64, Verdict::TriviallyYes, base));
    }
    // Keep S and, for each v in S, its k+1 lowest-id in- and out-neighbours outside S.
    let mut keep = in_s.clone();
    for v in (0..g.n()).filter(|&v| in_s[v]) {
        let mut tails: Vec<Vertex> = g.in_neighbors(v).filter(|&u| !in_s[u]).collect();
        let mut heads: Vec<Vertex> = g.out_neighbors(v).filter(|&u| !in_s[u]).collect();
        tails.sort_unstable();
        heads.sort_unstable();
        for &u in tails.iter().take(k + 1).chain(heads.iter().take(k + 1)) {
            keep[u] = true;
        }
    }
    let sub = g.induced(&keep);
    let cert = certificate(
        &sub.graph,
        vb,
        eb,
        matching,
        sub.vertex_map.iter().map(|&v| Some(v)).collect(),
        sub.arc_map.iter().map(|&a| Some(a)).collect(),
    );
    assert!(cert.vertices <= vb, "(1,1) kernel has {} vertices, bound {vb}", cert.vertices);
    assert!(cert.edges <= eb, "(1,1) kernel has {} edges, bound {eb}", cert.edges);
    let reduced = Instance::new(sub.graph, 1, 1).with_budget(k);
    Ok(KernelResult { reduced, k_out: k as i64, verdict: Verdict::Reduced, certificate: cert })
}

/// Linear-vertex kernel for (0,1). Solutions of the reduced instance lift back
/// with [`lift_01`].
pub fn kernelize_01(g: &Digraph, k: usize) -> KernelResult {
    kernelize_01_checked(g, &[], k).expect("no optional arcs")
}

pub fn kernelize_01_checked(g: &Digraph, optional: &[ArcId], k: usize) -> Result<KernelResult> {
    check_standard(g, optional)?;
    // Rule: a source-to-sink arc can only be dominated by itself and dominates nothing else.
    let mut alive = vec![true; g.m()];
    let mut indeg: Vec<usize> = (0..g.n()).map(|v| g.in_degree(v)).collect();
    let mut outdeg: Vec<usize> = (0..g.n()).map(|v| g.out_degree(v)).collect();
    let mut taken = Vec::new();
    while let Some(a) = (0..g.m()).find(|&a| {
        let (s, t) = g.arc(a);
        alive[a] && indeg[s] == 0 && outdeg[t] == 0
    }) {
        let (s, t) = g.arc(a);
        alive[a] = false;
        outdeg[s] -= 1;
        indeg[t] -= 1;
        taken.push(a);
    }
    let k_out = k as i64 - taken.len() as i64;
    let rest_arcs: Vec<ArcId> = (0..g.m()).filter(|&a| alive[a]).collect();
    let h = Digraph::new(g.n(), rest_arcs.iter().map(|&a| g.arc(a))).expect("subgraph of a valid digraph");
    let vb = bound_01_vertices(k_out.max(0) as usize);
    let (in_s, matching) = matched_endpoints(&h);
    let mut base = certificate(&h, vb, vb * vb.saturating_sub(1) / 2, matching.clone(), Vec::new(), Vec::new());
    base.taken = taken.clone();
    if k_out < 0 {
        return Ok(empty_result(0, 1, k_out, Verdict::RejectedNo, base));
    }
    if h.m() == 0 {
        return Ok(empty_result(0, 1, k_out, Verdict::TriviallyYes, base));
    }
    let kk = k_out as usize;
    if matching.len() > kk {
        return Ok(empty_result(0, 1, k_out, Verdict::RejectedNo, base));
    }
    let non_sinks_outside = (0..h.n()).filter(|&v| !in_s[v] && !h.is_sink(v)).count();
    if non_sinks_outside > kk {
        return Ok(empty_result(0, 1, k_out, Verdict::RejectedNo, base));
    }
    let merged: Vec<Vertex> = (0..h.n()).filter(|&v| !in_s[v] && h.is_sink(v)).collect();
    let keep: Vec<bool> = (0..h.n()).map(|v| in_s[v] || !h.is_sink(v)).collect();
    let sub = h.induced(&keep);
    let u = sub.graph.n();
    let mut new_of_old = vec![usize::MAX; h.n()];
    for (new, &old) in sub.vertex_map.iter().enumerate() {
        new_of_old[old] = new;
    }
    let mut arcs = sub.graph.arcs().to_vec();
    let mut arc_map: Vec<Option<ArcId>> = sub.arc_map.iter().map(|&a| Some(rest_arcs[a])).collect();
    for v in (0..h.n()).filter(|&v| in_s[v]) {
        if h.out_neighbors(v).any(|t| !keep[t]) {
            arcs.push((new_of_old[v], u));
            arc_map.push(None);
        }
    }
    let reduced_graph = Digraph::new(u + 1, arcs).expect("arcs into a fresh vertex are new");
    let mut vertex_map: Vec<Option<Vertex>> = sub.vertex_map.iter().map(|&v| Some(v)).collect();
    vertex_map.push(None);
    let mut cert = certificate(&reduced_graph, vb, 0, matching, vertex_map, arc_map);
    cert.edge_bound = vb * vb.saturating_sub(1) / 2;
    cert.taken = taken;
    cert.merged_sinks = merged;
    assert!(cert.vertices <= vb, "(0,1) kernel has {} vertices, bound {vb}", cert.vertices);
    assert!(cert.edges <= cert.edge_bound);
    let reduced = Instance::new(reduced_graph, 0, 1).with_budget(kk);
    Ok(KernelResult { reduced, k_out, verdict: Verdict::Reduced, certificate: cert })
}

/// Maps a (0,1) solution of the reduced instance back to the original graph:
/// an arc `(v, u)` into the merged sink becomes the lowest-index in-arc of `v`,
/// and the arcs removed by the source-to-sink rule are added back.
pub fn lift_01(g: &Digraph, result: &KernelResult, sol: &Solution) -> Solution {
    let cert = &result.certificate;
    let mut arcs: Vec<ArcId> = cert.taken.clone();
    if result.verdict == Verdict::Reduced {
        let r = &result.reduced.graph;
        for &a in &sol.arcs {
            match cert.arc_map[a] {
                Some(orig) => arcs.push(orig),
                None => {
                    let v = cert.vertex_map[r.tail(a)].expect("tail is an original vertex");
                    let into = g.in_arcs(v).first().copied();
                    arcs.push(into.expect("a vertex with an arc to a merged sink is not a source"));
                }
            }
        }
    }
    Solution::new(arcs, "kernel01")
}
