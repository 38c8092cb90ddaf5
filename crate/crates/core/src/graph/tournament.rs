use std::ops::Deref;

use super::{Digraph, Vertex};
use crate::error::{Error, Result};

/// A digraph with exactly one arc between every pair of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament(Digraph);

impl Tournament {
    pub fn new(g: Digraph) -> Result<Self> {
        let n = g.n();
        if g.m() != n * n.saturating_sub(1) / 2 {
            return Err(Error::NotATournament(format!("{} arcs on {n} vertices", g.m())));
        }
        for u in 0..n {
            for v in u + 1..n {
                if g.has_arc(u, v) == g.has_arc(v, u) {
                    return Err(Error::NotATournament(format!("pair {{{u}, {v}}}")));
                }
            }
        }
        Ok(Tournament(g))
    }

    /// Builds a tournament from a predicate deciding, for `u < v`, whether the arc is `(u, v)`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(Vertex, Vertex) -> bool) -> Self {
        let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                arcs.push(if forward(u, v) { (u, v) } else { (v, u) });
            }
        }
        Tournament(Digraph::new(n, arcs).expect("one arc per pair"))
    }

    /// The tournament with every arc `(u, v)`, `u < v`.
    pub fn transitive(n: usize) -> Self {
        Tournament::from_fn(n, |_, _| true)
    }

    pub fn graph(&self) -> &Digraph {
        &self.0
    }

    pub fn into_graph(self) -> Digraph {
        self.0
    }

    pub fn reversed(&self) -> Tournament {
        Tournament(self.0.reversed())
    }

    /// The unique vertex of in-degree 0, if any.
    pub fn source(&self) -> Option<Vertex> {
        (0..self.n()).find(|&v| self.is_source(v))
    }

    /// The unique vertex of out-degree 0, if any.
    pub fn sink(&self) -> Option<Vertex> {
        (0..self.n()).find(|&v| self.is_sink(v))
    }

    /// A Hamiltonian path built by insertion: each vertex goes to the end, the
    /// front, or the first gap `(a, b)` with `a -> v -> b`.
    pub fn hamiltonian_path(&self) -> Vec<Vertex> {
        let g = &self.0;
        let mut path: Vec<Vertex> = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            match (path.first(), path.last()) {
                (None, _) | (_, None) => path.push(v),
                (_, Some(&last)) if g.has_arc(last, v) => path.push(v),
                (Some(&first), _) if g.has_arc(v, first) => path.insert(0, v),
                _ => {
                    // path[0] -> v and v -> path[end], so some gap switches direction.
                    let i = (0..path.len() - 1)
                        .find(|&i| g.has_arc(path[i], v) && g.has_arc(v, path[i + 1]))
                        .expect("tournament insertion gap");
                    path.insert(i + 1, v);
                }
            }
        }
        path
    }

    /// Vertex of maximum out-degree, smallest id on ties. It reaches every vertex within two steps.
    pub fn king(&self) -> Vertex {
        assert!(self.n() > 0, "king of an empty tournament");
        let mut best = 0;
        for v in 1..self.n() {
            if self.out_degree(v) > self.out_degree(best) {
                best = v;
            }
        }
        best
    }

    /// Dominating set from repeatedly taking the vertex with most out-neighbours
    /// among the undominated vertices. Size at most `floor(log2 n) + 1`.
    pub fn greedy_dominating_set(&self) -> Vec<Vertex> {
        let n = self.n();
        let mut undominated = vec![true; n];
        let mut left = n;
        let mut set = Vec::new();
        while left > 0 {
            let mut best = None;
            let mut best_deg = 0;
            for v in (0..n).filter(|&v| undominated[v]) {
                let deg = self.out_neighbors(v).filter(|&w| undominated[w]).count();
                if best.is_none() || deg > best_deg {
                    best = Some(v);
                    best_deg = deg;
                }
            }
            let v = best.expect("undominated vertex exists");
            set.push(v);
            undominated[v] = false;
            left -= 1;
            for w in self.0.out_neighbors(v) {
                if undominated[w] {
                    undominated[w] = false;
                    left -= 1;
                }
            }
        }
        set.sort_unstable();
        set
    }
}

impl Deref for Tournament {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.0
    }
}
