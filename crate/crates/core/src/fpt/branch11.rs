use super::{keep_best, Stats};
use crate::domination::Solution;
use crate::graph::{min_edge_cover_with_forced, ArcId, BipartiteGraph, Digraph, Vertex};

/// Guessed degree profile of a vertex in the solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mark {
    None,
    /// Positive out-degree, zero in-degree.
    Plus,
    /// Positive in-degree, zero out-degree.
    Minus,
    PlusMinus,
}

impl Mark {
    fn weight(self) -> usize {
        match self {
            Mark::None => 0,
            Mark::Plus | Mark::Minus => 1,
            Mark::PlusMinus => 2,
        }
    }

    fn out_positive(self) -> bool {
        matches!(self, Mark::Plus | Mark::PlusMinus)
    }

    fn in_positive(self) -> bool {
        matches!(self, Mark::Minus | Mark::PlusMinus)
    }
}

struct Search<'g> {
    g: &'g Digraph,
    k: usize,
    marks: Vec<Mark>,
    weight: usize,
    best: Option<Vec<ArcId>>,
    stats: Stats,
}

/// Minimum (1,1)-dominating set of size at most `k`, if one exists.
pub fn solve_11(g: &Digraph, k: usize) -> Option<Solution> {
    solve_11_with_stats(g, k).0
}

pub fn solve_11_with_stats(g: &Digraph, k: usize) -> (Option<Solution>, Stats) {
    let mut s = Search { g, k, marks: vec![Mark::None; g.n()], weight: 0, best: None, stats: Stats::default() };
    s.visit(0);
    let leaf_bound = 3u64.saturating_pow(2 * k as u32);
    assert!(s.stats.leaves <= leaf_bound, "{} leaves exceed 3^(2k) = {leaf_bound}", s.stats.leaves);
    assert!(s.stats.max_depth <= 2 * k);
    (s.best.map(|arcs| Solution::new(arcs, "fpt11")), s.stats)
}

impl Search<'_> {
    /// Explores the node with the current marks; returns false if its measure is negative.
    fn visit(&mut self, depth: usize) -> bool {
        if self.weight > 2 * self.k {
            return false;
        }
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let g = self.g;
        let m = &self.marks;

        let both_unmarked = (0..g.m()).find(|&a| {
            let (u, v) = g.arc(a);
            m[u] == Mark::None && m[v] == Mark::None
        });
        let any_child = if let Some(a) = both_unmarked {
            let (u, v) = g.arc(a);
            let options = [
                vec![(v, Mark::Plus)],
                vec![(v, Mark::PlusMinus)],
                vec![(u, Mark::Minus)],
                vec![(u, Mark::PlusMinus)],
                vec![(u, Mark::Plus), (v, Mark::Minus)],
            ];
            self.branch(&options, depth)
        } else if let Some(w) = self.half_marked_uncovered() {
            let options = [vec![(w, Mark::Plus)], vec![(w, Mark::Minus)], vec![(w, Mark::PlusMinus)]];
            self.branch(&options, depth)
        } else {
            self.stats.leaves += 1;
            self.complete();
            return true;
        };
        if !any_child {
            self.stats.leaves += 1;
        }
        true
    }

    fn branch(&mut self, options: &[Vec<(Vertex, Mark)>], depth: usize) -> bool {
        let mut any = false;
        for opt in options {
            for &(v, mark) in opt {
                self.marks[v] = mark;
                self.weight += mark.weight();
            }
            any |= self.visit(depth + 1);
            for &(v, mark) in opt {
                self.marks[v] = Mark::None;
                self.weight -= mark.weight();
            }
        }
        any
    }

    /// The unmarked endpoint of the lowest-index uncovered arc with exactly one marked endpoint.
    fn half_marked_uncovered(&self) -> Option<Vertex> {
        let m = &self.marks;
        (0..self.g.m()).find_map(|a| {
            let (u, v) = self.g.arc(a);
            let covered = m[u].in_positive() || m[v].out_positive();
            match (m[u], m[v]) {
                _ if covered => None,
                (Mark::None, _) => Some(u),
                (_, Mark::None) => Some(v),
                _ => None,
            }
        })
    }

    /// Cheapest arc set realizing the marks: all of δ(V+, V−) plus a minimum
    /// edge cover of the bipartite graph H between out-positive and in-positive vertices.
    fn complete(&mut self) {
        let g = self.g;
        let m = &self.marks;
        let mut left = vec![usize::MAX; g.n()];
        let mut right = vec![usize::MAX; g.n()];
        let (mut nl, mut nr) = (0, 0);
        for v in 0..g.n() {
            if m[v].out_positive() {
                left[v] = nl;
                nl += 1;
            }
            if m[v].in_positive() {
                right[v] = nr;
                nr += 1;
            }
        }
        let mut edges = Vec::new();
        let mut arc_of = Vec::new();
        let mut forced = Vec::new();
        for (a, &(u, v)) in g.arcs().iter().enumerate() {
            if left[u] != usize::MAX && right[v] != usize::MAX {
                if m[u] == Mark::Plus && m[v] == Mark::Minus {
                    forced.push(edges.len());
                }
                edges.push((left[u], right[v]));
                arc_of.push(a);
            }
        }
        // A guessed-positive side with no arc inside H still has to be realized;
        // its lowest-index arc in that direction (towards an unmarked vertex)
        // does it at cost one. It enters as a forced edge to a fresh pendant.
        let mut has_left = vec![false; nl];
        let mut has_right = vec![false; nr];
        for &(l, r) in &edges {
            has_left[l] = true;
            has_right[r] = true;
        }
        for v in 0..g.n() {
            if left[v] != usize::MAX && !has_left[left[v]] {
                let Some(&a) = g.out_arcs(v).first() else { return };
                forced.push(edges.len());
                edges.push((left[v], nr));
                arc_of.push(a);
                nr += 1;
            }
            if right[v] != usize::MAX && !has_right[right[v]] {
                let Some(&a) = g.in_arcs(v).first() else { return };
                forced.push(edges.len());
                edges.push((nl, right[v]));
                arc_of.push(a);
                nl += 1;
            }
        }
        let h = BipartiteGraph::new(nl, nr, edges);
        let cover = min_edge_cover_with_forced(&h, &forced).expect("every vertex has an edge");
        if cover.len() <= self.k {
            keep_best(&mut self.best, cover.into_iter().map(|e| arc_of[e]).collect());
        }
    }
}
