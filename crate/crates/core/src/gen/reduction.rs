use std::collections::BTreeMap;

use serde::Serialize;

use crate::domination::Instance;
use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, UndirectedGraph, Vertex};

/// Multicolored clique input: `k` classes of `n` vertices, vertex `j` of class
/// `i` numbered `i * n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McInstance {
    pub graph: UndirectedGraph,
    pub k: usize,
    pub n: usize,
}

impl McInstance {
    pub fn new(graph: UndirectedGraph, k: usize, n: usize) -> Result<Self> {
        if graph.n() != k * n {
            return Err(Error::Precondition(format!("{} vertices, expected k*n = {}", graph.n(), k * n)));
        }
        if let Some(&(u, v)) = graph.edges().iter().find(|&&(u, v)| u / n == v / n) {
            return Err(Error::Precondition(format!("class {} is not independent: edge {{{u}, {v}}}", u / n)));
        }
        Ok(McInstance { graph, k, n })
    }

    pub fn vertex(&self, class: usize, j: usize) -> Vertex {
        class * self.n + j
    }
}

/// Where a generated instance came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lineage {
    pub construction: String,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Named vertices, arcs and counts of the layout.
    pub marks: BTreeMap<String, usize>,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: Instance,
    /// Target solution size.
    pub threshold: usize,
    pub lineage: Lineage,
    /// Vertices covering every optional arc, each touching only optional arcs.
    pub s_set: Vec<Vertex>,
}

/// Arc list under construction; new vertices are numbered in allocation order.
struct Layout {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    optional: Vec<ArcId>,
}

impl Layout {
    fn fresh(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    fn arc(&mut self, u: Vertex, v: Vertex, optional: bool) -> ArcId {
        if optional {
            self.optional.push(self.arcs.len());
        }
        self.arcs.push((u, v));
        self.arcs.len() - 1
    }

    /// Directed path of `len >= 1` arcs from `from` to `to` through new vertices,
    /// which are appended to `internal`. `from == to` closes a cycle.
    fn path(&mut self, from: Vertex, to: Vertex, len: usize, optional: bool, internal: &mut Vec<Vertex>) {
        let mut at = from;
        for _ in 1..len {
            let w = self.fresh();
            internal.push(w);
            self.arc(at, w, optional);
            at = w;
        }
        self.arc(at, to, optional);
    }
}

/// Optional (3n,3n) instance that has a solution of size `k` iff `mc` has a
/// multicolored clique.
pub fn mcc_to_optional(mc: &McInstance) -> Result<ReductionOutput> {
    let (k, n) = (mc.k, mc.n);
    if n == 0 || n % 2 == 1 {
        return Err(Error::Precondition(format!("class size {n} must be even and positive")));
    }
    let mut lay = Layout { n: k * n, arcs: Vec::new(), optional: Vec::new() };
    let mut s_set = Vec::new();
    let mut scratch = Vec::new();
    for i in 0..k {
        for j in 0..n {
            lay.arc(mc.vertex(i, j), mc.vertex(i, (j + 1) % n), false);
        }
    }
    for i in 0..k {
        let hub = mc.vertex(i, n / 2);
        lay.path(hub, hub, 5 * n + 1, false, &mut scratch);
    }
    let guard_vertices = scratch.len();
    let mut gadgets = 0;
    for i in 0..k {
        for j in i + 1..k {
            for a in 0..n {
                for b in 0..n {
                    if mc.graph.has_edge(mc.vertex(i, a), mc.vertex(j, b)) {
                        continue;
                    }
                    gadgets += 1;
                    let (vi, vj) = (mc.vertex(i, 0), mc.vertex(j, 0));
                    let e = lay.fresh();
                    let f = lay.fresh();
                    lay.arc(e, f, false);
                    if a > 0 {
                        lay.path(vi, e, a + 2 * n, true, &mut s_set);
                    }
                    if b > 0 {
                        lay.path(vj, e, b + 2 * n, true, &mut s_set);
                    }
                    let back = |c: usize| if c > 0 { 3 * n - c + 1 } else { 2 * n + 1 };
                    lay.path(f, vi, back(a), true, &mut s_set);
                    lay.path(f, vj, back(b), true, &mut s_set);
                }
            }
        }
    }
    let g = Digraph::new(lay.n, lay.arcs)?;
    let instance = Instance::new(g, 3 * n, 3 * n).with_optional(&lay.optional)?;
    let marks = BTreeMap::from([
        ("gadgets".to_string(), gadgets),
        ("guard_vertices".to_string(), guard_vertices),
        ("vertices".to_string(), instance.graph.n()),
        ("arcs".to_string(), instance.graph.m()),
        ("optional_arcs".to_string(), lay.optional.len()),
    ]);
    let lineage = Lineage { construction: "mcc_to_optional".into(), n, k, l: None, seed: None, marks };
    Ok(ReductionOutput { instance, threshold: k, lineage, s_set })
}

/// Standard instance with a solution of size `threshold + 1` iff `r` has one of
/// size `threshold`. Adds `u1 -> u2`, `k + 2` paths of `p` arcs into `u1`, and
/// paths of `p - 1` arcs `u2 -> u` and `u -> u1` for every `u` in `s_set`.
pub fn optional_to_full(r: &ReductionOutput, s_set: &[Vertex]) -> Result<ReductionOutput> {
    let inst = &r.instance;
    let g = &inst.graph;
    let radius = inst.p;
    if inst.q != radius || radius < 2 {
        return Err(Error::Precondition(format!("needs p = q >= 2, got ({}, {})", inst.p, inst.q)));
    }
    let mut in_s = vec![false; g.n()];
    for &u in s_set {
        if u >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: g.n() });
        }
        if g.is_source(u) || g.is_sink(u) {
            return Err(Error::Precondition(format!("vertex {u} of S is a source or sink")));
        }
        if let Some(&a) = g.out_arcs(u).iter().chain(g.in_arcs(u)).find(|&&a| !inst.is_optional(a)) {
            return Err(Error::Precondition(format!("mandatory arc {a} touches vertex {u} of S")));
        }
        in_s[u] = true;
    }
    if let Some(a) = inst.optional_arcs().into_iter().find(|&a| {
        let (x, y) = g.arc(a);
        !in_s[x] && !in_s[y]
    }) {
        return Err(Error::Precondition(format!("optional arc {a} avoids S")));
    }
    let k = r.threshold;
    let mut lay = Layout { n: g.n(), arcs: g.arcs().to_vec(), optional: Vec::new() };
    let mut scratch = Vec::new();
    let u1 = lay.fresh();
    let u2 = lay.fresh();
    let u1u2 = lay.arc(u1, u2, false);
    for _ in 0..k + 2 {
        let start = lay.fresh();
        lay.path(start, u1, radius, false, &mut scratch);
    }
    for &u in s_set {
        lay.path(u2, u, radius - 1, false, &mut scratch);
        lay.path(u, u1, radius - 1, false, &mut scratch);
    }
    let full = Instance::new(Digraph::new(lay.n, lay.arcs)?, radius, radius);
    let mut lineage = r.lineage.clone();
    lineage.construction = format!("{}+optional_to_full", lineage.construction);
    lineage.marks.insert("u1".into(), u1);
    lineage.marks.insert("u2".into(), u2);
    lineage.marks.insert("u1u2_arc".into(), u1u2);
    lineage.marks.insert("vertices".into(), full.graph.n());
    lineage.marks.insert("arcs".into(), full.graph.m());
    lineage.marks.remove("optional_arcs");
    Ok(ReductionOutput { instance: full, threshold: k + 1, lineage, s_set: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite_mc(n: usize) -> McInstance {
        let edges = (0..n).flat_map(|a| (0..n).map(move |b| (a, n + b)));
        McInstance::new(UndirectedGraph::new(2 * n, edges).unwrap(), 2, n).unwrap()
    }

    /// Vertex and arc counts from the closed-form description.
    fn expected_counts(mc: &McInstance) -> (usize, usize) {
        let (k, n) = (mc.k, mc.n);
        let mut verts = k * n + k * 5 * n;
        let mut arcs = k * n + k * (5 * n + 1);
        for i in 0..k {
            for j in i + 1..k {
                for a in 0..n {
                    for b in 0..n {
                        if mc.graph.has_edge(mc.vertex(i, a), mc.vertex(j, b)) {
                            continue;
                        }
                        let fwd = |c: usize| if c > 0 { c + 2 * n } else { 0 };
                        let back = |c: usize| if c > 0 { 3 * n - c + 1 } else { 2 * n + 1 };
                        let lens = [fwd(a), fwd(b), back(a), back(b)];
                        let paths = lens.iter().filter(|&&l| l > 0).count();
                        let total: usize = lens.iter().sum();
                        verts += 2 + total - paths;
                        arcs += 1 + total;
                    }
                }
            }
        }
        (verts, arcs)
    }

    #[test]
    fn no_gadgets_without_non_edges() {
        let mc = complete_bipartite_mc(2);
        let r = mcc_to_optional(&mc).unwrap();
        assert_eq!(r.lineage.marks["gadgets"], 0);
        assert_eq!(r.instance.graph.n(), 4 + 2 * 10);
        assert_eq!(r.instance.graph.m(), 4 + 2 * 11);
        assert!(!r.instance.has_optional());
        assert_eq!((r.instance.p, r.instance.q, r.threshold), (6, 6, 2));
    }

    #[test]
    fn counts_match_closed_form() {
        for (n, edges) in [(2, vec![(0, 2)]), (2, vec![]), (4, vec![(0, 4), (1, 5), (3, 7)])] {
            let mc = McInstance::new(UndirectedGraph::new(2 * n, edges).unwrap(), 2, n).unwrap();
            let r = mcc_to_optional(&mc).unwrap();
            assert_eq!((r.instance.graph.n(), r.instance.graph.m()), expected_counts(&mc));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = UndirectedGraph::new(4, [(0, 1)]).unwrap();
        assert!(McInstance::new(g, 2, 2).is_err());
        let mc = McInstance::new(UndirectedGraph::new(6, []).unwrap(), 2, 3).unwrap();
        assert!(mcc_to_optional(&mc).is_err());
    }

    #[test]
    fn full_instance_layout() {
        let mc = McInstance::new(UndirectedGraph::new(4, [(0, 2)]).unwrap(), 2, 2).unwrap();
        let r = mcc_to_optional(&mc).unwrap();
        let s = r.s_set.clone();
        let full = optional_to_full(&r, &s).unwrap();
        assert_eq!(full.threshold, 3);
        assert!(!full.instance.has_optional());
        let g = &full.instance.graph;
        let (u1, u2) = (full.lineage.marks["u1"], full.lineage.marks["u2"]);
        assert_eq!(g.arc(full.lineage.marks["u1u2_arc"]), (u1, u2));
        assert_eq!(g.in_degree(u1), 4 + s.len());
        assert!(optional_to_full(&r, &s[1..]).is_err());
    }
}
