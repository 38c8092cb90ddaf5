use std::collections::VecDeque;

use super::{Digraph, Vertex};

/// Distance sentinel for unreachable vertices; larger than any path length.
pub const UNREACHABLE: usize = usize::MAX;

/// Shortest directed path lengths from `s` (BFS).
pub fn dist_from(g: &Digraph, s: Vertex) -> Vec<usize> {
    bfs(g, s, true)
}

/// Shortest directed path lengths to `t`, i.e. `dist(v, t)` for every `v`.
pub fn dist_to(g: &Digraph, t: Vertex) -> Vec<usize> {
    bfs(g, t, false)
}

/// `d[u][v] = dist(u, v)`.
pub fn all_pairs_distances(g: &Digraph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|s| dist_from(g, s)).collect()
}

fn bfs(g: &Digraph, s: Vertex, forward: bool) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let arcs = if forward { g.out_arcs(u) } else { g.in_arcs(u) };
        for &a in arcs {
            let (t, h) = g.arc(a);
            let w = if forward { h } else { t };
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Reusable state for depth-bounded BFS.
pub(crate) struct BoundedBfs {
    stamp: Vec<u32>,
    current: u32,
    pub(crate) visited: Vec<(Vertex, usize)>,
}

impl BoundedBfs {
    pub(crate) fn new(n: usize) -> Self {
        BoundedBfs { stamp: vec![0; n], current: 0, visited: Vec::new() }
    }

    /// Fills `visited` with the vertices within `limit` steps of `s` (forward or
    /// backward) and their distances, in BFS order.
    pub(crate) fn run(&mut self, g: &Digraph, s: Vertex, limit: usize, forward: bool) {
        self.current += 1;
        let stamp = self.current;
        self.visited.clear();
        self.stamp[s] = stamp;
        self.visited.push((s, 0));
        let mut i = 0;
        while i < self.visited.len() {
            let (u, d) = self.visited[i];
            i += 1;
            if d == limit {
                continue;
            }
            let arcs = if forward { g.out_arcs(u) } else { g.in_arcs(u) };
            for &a in arcs {
                let (t, h) = g.arc(a);
                let w = if forward { h } else { t };
                if self.stamp[w] != stamp {
                    self.stamp[w] = stamp;
                    self.visited.push((w, d + 1));
                }
            }
        }
    }
}
