//! Directed-graph substrate shared by every solver.

mod distance;
pub(crate) mod io;
mod matching;
mod scc;
mod tournament;

use std::collections::HashMap;

use crate::error::{Error, Result};

pub use distance::{all_pairs_distances, dist_from, dist_to, UNREACHABLE};
pub(crate) use distance::BoundedBfs;
pub use io::{parse_graph, write_graph, ParsedGraph};
pub(crate) use io::content_lines;
pub use matching::{
    maximal_matching, maximum_bipartite_matching, min_edge_cover_bipartite,
    min_edge_cover_with_forced, BipartiteGraph,
};
pub use scc::scc_partition;
pub use tournament::Tournament;

pub type Vertex = usize;
pub type ArcId = usize;

/// A directed graph with stable arc indices.
///
/// Self-loops and parallel arcs are rejected; digons `(u, v)`, `(v, u)` are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    out_adj: Vec<Vec<ArcId>>,
    in_adj: Vec<Vec<ArcId>>,
    index: HashMap<(Vertex, Vertex), ArcId>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            arcs: Vec::new(),
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    /// Builds a digraph; arc `i` of the result is `arcs[i]`.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Digraph::empty(n);
        for (u, v) in arcs {
            g.push_arc(u, v)?;
        }
        Ok(g)
    }

    fn push_arc(&mut self, u: Vertex, v: Vertex) -> Result<ArcId> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.index.contains_key(&(u, v)) {
            return Err(Error::DuplicateArc(u, v));
        }
        let id = self.arcs.len();
        self.arcs.push((u, v));
        self.out_adj[u].push(id);
        self.in_adj[v].push(id);
        self.index.insert((u, v), id);
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcId) -> (Vertex, Vertex) {
        self.arcs[a]
    }

    pub fn tail(&self, a: ArcId) -> Vertex {
        self.arcs[a].0
    }

    pub fn head(&self, a: ArcId) -> Vertex {
        self.arcs[a].1
    }

    /// Outgoing arc indices of `v`, in increasing order.
    pub fn out_arcs(&self, v: Vertex) -> &[ArcId] {
        &self.out_adj[v]
    }

    /// Incoming arc indices of `v`, in increasing order.
    pub fn in_arcs(&self, v: Vertex) -> &[ArcId] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out_adj[v].iter().map(move |&a| self.arcs[a].1)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.in_adj[v].iter().map(move |&a| self.arcs[a].0)
    }

    pub fn find_arc(&self, u: Vertex, v: Vertex) -> Option<ArcId> {
        self.index.get(&(u, v)).copied()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.index.contains_key(&(u, v))
    }

    pub fn is_source(&self, v: Vertex) -> bool {
        self.in_adj[v].is_empty()
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out_adj[v].is_empty()
    }

    /// Reverses every arc. Arc `i` of the result is the reversal of arc `i`.
    pub fn reversed(&self) -> Digraph {
        let arcs = self.arcs.iter().map(|&(u, v)| (v, u));
        Digraph::new(self.n, arcs).expect("reversal preserves validity")
    }

    /// Subgraph induced by the vertices with `keep[v]`, renumbered in increasing order.
    pub fn induced(&self, keep: &[bool]) -> Induced {
        let mut old_to_new = vec![None; self.n];
        let mut new_to_old = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let mut arc_map = Vec::new();
        let mut arcs = Vec::new();
        for (a, &(u, v)) in self.arcs.iter().enumerate() {
            if let (Some(nu), Some(nv)) = (old_to_new[u], old_to_new[v]) {
                arcs.push((nu, nv));
                arc_map.push(a);
            }
        }
        Induced {
            graph: Digraph::new(new_to_old.len(), arcs).expect("induced subgraph is valid"),
            vertex_map: new_to_old,
            arc_map,
        }
    }

    pub fn underlying(&self) -> UndirectedView<'_> {
        UndirectedView::new(self)
    }
}

/// An induced subgraph together with maps back into the parent graph.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Digraph,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<Vertex>,
    /// `arc_map[new] = old`.
    pub arc_map: Vec<ArcId>,
}

/// A simple undirected graph with indexed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl UndirectedGraph {
    /// Builds a simple graph; repeated edges (in either orientation) and loops are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(Error::DuplicateArc(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
            list.push((u, v));
        }
        Ok(UndirectedGraph { n, edges: list, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// The underlying undirected graph of a digraph: `(u, v)` and `(v, u)` collapse to one edge.
///
/// Edges are numbered in order of the first arc that produces them.
#[derive(Clone, Debug)]
pub struct UndirectedView<'g> {
    graph: &'g Digraph,
    edges: Vec<(Vertex, Vertex)>,
    representative: Vec<ArcId>,
    edge_of_arc: Vec<usize>,
}

impl<'g> UndirectedView<'g> {
    pub fn new(graph: &'g Digraph) -> Self {
        let mut edges = Vec::new();
        let mut representative = Vec::new();
        let mut edge_of_arc = vec![usize::MAX; graph.m()];
        for (a, &(u, v)) in graph.arcs().iter().enumerate() {
            if let Some(b) = graph.find_arc(v, u).filter(|&b| b < a) {
                edge_of_arc[a] = edge_of_arc[b];
            } else {
                edge_of_arc[a] = edges.len();
                edges.push((u, v));
                representative.push(a);
            }
        }
        UndirectedView { graph, edges, representative, edge_of_arc }
    }

    pub fn graph(&self) -> &'g Digraph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Edges as `(tail, head)` of their lowest-index arc.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Lowest-index arc realizing edge `e`.
    pub fn representative_arc(&self, e: usize) -> ArcId {
        self.representative[e]
    }

    pub fn edge_of_arc(&self, a: ArcId) -> usize {
        self.edge_of_arc[a]
    }

    pub fn to_graph(&self) -> UndirectedGraph {
        UndirectedGraph::new(self.n(), self.edges.iter().copied()).expect("collapsed edges are simple")
    }
}
