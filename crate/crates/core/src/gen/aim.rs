use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::reduction::{Lineage, ReductionOutput};
use super::rng;
use crate::domination::{Instance, Solution};
use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, Tournament, UndirectedGraph, Vertex};

/// Subdivides every edge of `g` with three vertices and hangs a pendant on each
/// original vertex. `g` has an independent set of size `k` iff the result has an
/// almost induced matching of size `L = n + 2m + k`.
///
/// Layout: originals `0..n`, pendants `n..2n`, then three vertices per edge in edge order.
pub fn is_to_aim(g: &UndirectedGraph, k: usize) -> Result<(UndirectedGraph, usize)> {
    if g.max_degree() > 3 {
        return Err(Error::Precondition(format!("max degree {} exceeds 3", g.max_degree())));
    }
    let (n, m) = (g.n(), g.m());
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|x| (x, n + x)).collect();
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        let base = 2 * n + 3 * e;
        edges.extend([(x, base), (base, base + 1), (base + 1, base + 2), (base + 2, y)]);
    }
    Ok((UndirectedGraph::new(2 * n + 3 * m, edges)?, n + 2 * m + k))
}

fn check_bipartite(g: &UndirectedGraph, n: usize) -> Result<()> {
    if g.n() != 2 * n {
        return Err(Error::Precondition(format!("{} vertices, expected two sides of {n}", g.n())));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| (u < n) == (v < n)) {
        return Err(Error::Precondition(format!("edge {{{u}, {v}}} does not cross the sides")));
    }
    Ok(())
}

/// Tournament on `A' ∪ B' ∪ C` (`A = 0..n`, `B = n..2n`, `C = 2n..6n`) with
/// `a -> b` exactly for the edges of `g` and every other pair oriented at random.
pub fn aim_to_tournament(g: &UndirectedGraph, n: usize, l: usize, seed: u64) -> Result<ReductionOutput> {
    check_bipartite(g, n)?;
    if l % 2 == 1 {
        return Err(Error::Precondition(format!("L = {l} must be even")));
    }
    let total = 6 * n;
    let mut r = rng(seed);
    let t = Tournament::from_fn(total, |u, v| {
        if u < n && (n..2 * n).contains(&v) {
            g.has_edge(u, v)
        } else {
            r.gen_bool(0.5)
        }
    });
    let marks = BTreeMap::from([("c_start".to_string(), 2 * n), ("vertices".to_string(), total)]);
    let lineage = Lineage { construction: "aim_to_tournament".into(), n, k: 0, l: Some(l), seed: Some(seed), marks };
    Ok(ReductionOutput {
        instance: Instance::new(t.into_graph(), 1, 1),
        threshold: (total + 1).saturating_sub(l / 2),
        lineage,
        s_set: Vec::new(),
    })
}

/// Random bipartite graph on sides of `n` (degrees between 1 and 4) with a
/// planted almost induced matching of `l` vertices, half on each side.
pub fn planted_aim(n: usize, l: usize, seed: u64) -> Result<(UndirectedGraph, Vec<Vertex>)> {
    if l % 2 == 1 || l >= 2 * n {
        return Err(Error::Precondition(format!("L = {l} must be even and below 2n = {}", 2 * n)));
    }
    let half = l / 2;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    let mut deg = vec![0usize; 2 * n];
    let add = |edges: &mut Vec<(Vertex, Vertex)>, deg: &mut Vec<usize>, a: Vertex, b: Vertex| {
        edges.push((a.min(b), a.max(b)));
        deg[a] += 1;
        deg[b] += 1;
    };
    let pairs = half / 2;
    for i in 0..pairs {
        add(&mut edges, &mut deg, i, n + i);
    }
    let outside_a: Vec<Vertex> = (half..n).collect();
    let outside_b: Vec<Vertex> = (n + half..2 * n).collect();
    // Vertices of S alone in G[S] hang off a vertex outside S on the other side.
    for i in pairs..half {
        for (v, other) in [(i, &outside_b), (n + i, &outside_a)] {
            let pool: Vec<Vertex> = other.iter().copied().filter(|&w| deg[w] < 4).collect();
            let &w = pool.choose(&mut r).ok_or_else(|| Error::Precondition("degree budget exhausted".into()))?;
            add(&mut edges, &mut deg, v, w);
        }
    }
    for v in outside_a.iter().chain(&outside_b).copied() {
        let wanted = r.gen_range(1..=2);
        let other: Vec<Vertex> = if v < n { (n..2 * n).collect() } else { (0..n).collect() };
        while deg[v] < wanted {
            let pool: Vec<Vertex> = other
                .iter()
                .copied()
                .filter(|&w| deg[w] < 4 && !edges.contains(&(v.min(w), v.max(w))))
                .collect();
            let Some(&w) = pool.choose(&mut r) else { break };
            add(&mut edges, &mut deg, v, w);
        }
    }
    let s: Vec<Vertex> = (0..half).chain(n..n + half).collect();
    Ok((UndirectedGraph::new(2 * n, edges)?, s))
}

/// Builds the (1,1) solution of size `|V(T)| - |S|/2 + 1` that an almost induced
/// matching `s` of `g` induces in the tournament from [`aim_to_tournament`]:
/// the matched arcs, vertex-disjoint paths from the lone vertices of `S ∩ A` to
/// those of `S ∩ B`, and a Hamiltonian path through the rest extended by one arc
/// at each end. `None` when the random part lacks the needed paths or arcs.
pub fn aim_witness(t: &Digraph, g: &UndirectedGraph, n: usize, s: &[Vertex]) -> Option<Solution> {
    let mut in_s = vec![false; t.n()];
    for &v in s {
        in_s[v] = true;
    }
    let s_deg = |v: Vertex| g.neighbors(v).iter().filter(|&&w| in_s[w]).count();
    if s.iter().any(|&v| s_deg(v) > 1) {
        return None;
    }
    let mut used = vec![false; t.n()];
    let mut arcs: Vec<ArcId> = Vec::new();
    for &a in s.iter().filter(|&&v| v < n && s_deg(v) == 1) {
        let b = *g.neighbors(a).iter().find(|&&w| in_s[w]).expect("matched");
        arcs.push(t.find_arc(a, b).expect("edges point from A to B"));
        used[a] = true;
        used[b] = true;
    }
    let lone_a: Vec<Vertex> = s.iter().copied().filter(|&v| v < n && s_deg(v) == 0).collect();
    let lone_b: Vec<Vertex> = s.iter().copied().filter(|&v| v >= n && s_deg(v) == 0).collect();
    if lone_a.len() != lone_b.len() {
        return None;
    }
    let paths = disjoint_paths(t, &lone_a, &lone_b, &in_s)?;
    for path in &paths {
        for w in path.windows(2) {
            arcs.push(t.find_arc(w[0], w[1]).expect("path arc"));
        }
        for &v in path {
            used[v] = true;
        }
    }
    let keep: Vec<bool> = used.iter().map(|&u| !u).collect();
    let rest = t.induced(&keep);
    if rest.graph.n() > 0 {
        let order = Tournament::new(rest.graph.clone()).ok()?.hamiltonian_path();
        let q: Vec<Vertex> = order.iter().map(|&v| rest.vertex_map[v]).collect();
        for w in q.windows(2) {
            arcs.push(t.find_arc(w[0], w[1]).expect("path arc"));
        }
        arcs.push(*t.in_arcs(q[0]).iter().min()?);
        arcs.push(*t.out_arcs(*q.last().expect("nonempty")).iter().min()?);
    }
    Some(Solution::new(arcs, "aim_witness"))
}

/// Vertex-disjoint directed paths pairing all of `from` with all of `to`,
/// internal vertices outside `blocked`, by unit-capacity augmenting paths.
fn disjoint_paths(t: &Digraph, from: &[Vertex], to: &[Vertex], blocked: &[bool]) -> Option<Vec<Vec<Vertex>>> {
    let n = t.n();
    let (src, dst) = (2 * n, 2 * n + 1);
    // Vertex v splits into v_in = 2v and v_out = 2v + 1.
    let mut net = Network::new(2 * n + 2);
    let mut is_end = vec![false; n];
    for &v in from.iter().chain(to) {
        is_end[v] = true;
    }
    for v in 0..n {
        if is_end[v] || !blocked[v] {
            net.add(2 * v, 2 * v + 1);
        }
    }
    for &(u, v) in t.arcs() {
        net.add(2 * u + 1, 2 * v);
    }
    for &a in from {
        net.add(src, 2 * a);
    }
    for &b in to {
        net.add(2 * b + 1, dst);
    }
    if net.max_flow(src, dst) < from.len() {
        return None;
    }
    let mut paths = Vec::new();
    for &a in from {
        let mut path = vec![a];
        let mut at = a;
        while !to.contains(&at) || path.len() == 1 && !to.contains(&a) {
            let next = net.adj[2 * at + 1]
                .iter()
                .map(|&e| &net.edges[e])
                .find(|e| e.flow == 1 && e.to < 2 * n && e.to % 2 == 0)?
                .to
                / 2;
            path.push(next);
            at = next;
        }
        paths.push(path);
    }
    Some(paths)
}

struct Edge {
    to: usize,
    cap: i32,
    flow: i32,
}

struct Network {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { edges: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u].push(self.edges.len());
        self.edges.push(Edge { to: v, cap: 1, flow: 0 });
        self.adj[v].push(self.edges.len());
        self.edges.push(Edge { to: u, cap: 0, flow: 0 });
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let mut prev = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let Edge { to, cap, flow } = self.edges[e];
                    if cap > flow && prev[to] == usize::MAX && to != s {
                        prev[to] = e;
                        queue.push_back(to);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return total;
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.edges[e].flow += 1;
                self.edges[e ^ 1].flow -= 1;
                v = self.edges[e ^ 1].to;
            }
            total += 1;
        }
    }
}

/// Empirical frequency of the no-strong-bias event over random disjoint pairs `X, Y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiasReport {
    pub set_size: usize,
    pub trials: usize,
    pub held: usize,
    pub frequency: f64,
}

/// Samples disjoint `X, Y` of size `ceil((log2 n)^2)` (at most `n / 2`) and checks
/// that some `x` has two out-neighbours in `Y` and some `y` two in-neighbours in `X`.
pub fn sample_bias(t: &Tournament, trials: usize, seed: u64) -> BiasReport {
    let n = t.n();
    let log = if n > 1 { (n as f64).log2() } else { 0.0 };
    let size = ((log * log).ceil() as usize).min(n / 2);
    let mut r = rng(seed);
    let mut vertices: Vec<Vertex> = (0..n).collect();
    let mut held = 0;
    for _ in 0..trials {
        vertices.shuffle(&mut r);
        let (x, y) = (&vertices[..size], &vertices[size..2 * size]);
        let x_ok = x.iter().any(|&u| y.iter().filter(|&&w| t.has_arc(u, w)).count() >= 2);
        let y_ok = y.iter().any(|&w| x.iter().filter(|&&u| t.has_arc(u, w)).count() >= 2);
        held += usize::from(x_ok && y_ok);
    }
    let frequency = if trials == 0 { 0.0 } else { held as f64 / trials as f64 };
    BiasReport { set_size: size, trials, held, frequency }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::verify;
    use crate::oracle::exact_aim;

    #[test]
    fn aim_reduction_sizes() {
        let k2 = UndirectedGraph::new(2, [(0, 1)]).unwrap();
        let (h, l) = is_to_aim(&k2, 1).unwrap();
        assert_eq!((h.n(), h.m(), l), (7, 6, 5));
        assert!(exact_aim(&h).unwrap().0 >= 5);
        let (h, l) = is_to_aim(&UndirectedGraph::new(3, []).unwrap(), 0).unwrap();
        assert_eq!(exact_aim(&h).unwrap().0, 6);
        assert_eq!(l, 3);
        let (h, l) = is_to_aim(&UndirectedGraph::new(3, []).unwrap(), 4).unwrap();
        assert!(exact_aim(&h).unwrap().0 < l);
    }

    #[test]
    fn aim_tournament_layout() {
        let g = UndirectedGraph::new(4, [(0, 2), (1, 3)]).unwrap();
        let r = aim_to_tournament(&g, 2, 2, 5).unwrap();
        let t = &r.instance.graph;
        assert_eq!(t.n(), 12);
        assert!(t.has_arc(0, 2) && t.has_arc(3, 0) && t.has_arc(2, 1));
        assert_eq!(r.threshold, 12);
        assert_eq!(aim_to_tournament(&g, 2, 2, 5).unwrap().instance.graph, *t);
        assert!(aim_to_tournament(&g, 2, 3, 5).is_err());
    }

    #[test]
    fn witness_is_feasible() {
        let mut ok = 0;
        for seed in 0..10 {
            let (g, s) = planted_aim(8, 10, seed).unwrap();
            let r = aim_to_tournament(&g, 8, 10, seed).unwrap();
            if let Some(sol) = aim_witness(&r.instance.graph, &g, 8, &s) {
                assert!(verify(&r.instance, &sol.arcs).unwrap());
                assert!(sol.size() <= r.threshold);
                ok += 1;
            }
        }
        assert!(ok >= 9);
    }

    #[test]
    fn bias_report_is_seeded() {
        let t = crate::gen::gen_tournament(64, 3);
        let a = sample_bias(&t, 20, 1);
        assert!((0.0..=1.0).contains(&a.frequency));
        assert_eq!(a, sample_bias(&t, 20, 1));
    }
}
