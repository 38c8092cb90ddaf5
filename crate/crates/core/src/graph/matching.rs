use super::UndirectedView;
use crate::error::{Error, Result};

/// Greedy maximal matching over the view's edges in index order. Returns edge indices.
pub fn maximal_matching(u: &UndirectedView<'_>) -> Vec<usize> {
    let mut used = vec![false; u.n()];
    let mut out = Vec::new();
    for (e, &(a, b)) in u.edges().iter().enumerate() {
        if !used[a] && !used[b] {
            used[a] = true;
            used[b] = true;
            out.push(e);
        }
    }
    out
}

/// Bipartite graph with sides numbered independently: edge `(l, r)` joins left
/// vertex `l` and right vertex `r`.
#[derive(Clone, Debug, Default)]
pub struct BipartiteGraph {
    pub n_left: usize,
    pub n_right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(l, r)| l < n_left && r < n_right));
        BipartiteGraph { n_left, n_right, edges }
    }

    fn left_adj(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_left];
        for (e, &(l, _)) in self.edges.iter().enumerate() {
            adj[l].push(e);
        }
        adj
    }

    /// Lowest-index incident edge per vertex: left side first, then right.
    fn first_edges(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut fl = vec![None; self.n_left];
        let mut fr = vec![None; self.n_right];
        for (e, &(l, r)) in self.edges.iter().enumerate() {
            fl[l].get_or_insert(e);
            fr[r].get_or_insert(e);
        }
        (fl, fr)
    }
}

/// Maximum matching by augmenting paths (Kuhn), restricted to edges for which
/// `allowed` holds. Returns edge indices in increasing order.
fn kuhn(bg: &BipartiteGraph, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let adj = bg.left_adj();
    let mut match_r: Vec<Option<usize>> = vec![None; bg.n_right];
    let mut seen = vec![0usize; bg.n_right];
    for l in 0..bg.n_left {
        augment(bg, &adj, &allowed, l, l + 1, &mut seen, &mut match_r);
    }
    let mut out: Vec<usize> = match_r.into_iter().flatten().collect();
    out.sort_unstable();
    out
}

fn augment(
    bg: &BipartiteGraph,
    adj: &[Vec<usize>],
    allowed: &impl Fn(usize) -> bool,
    l: usize,
    round: usize,
    seen: &mut [usize],
    match_r: &mut [Option<usize>],
) -> bool {
    for &e in &adj[l] {
        if !allowed(e) {
            continue;
        }
        let r = bg.edges[e].1;
        if seen[r] == round {
            continue;
        }
        seen[r] = round;
        let free = match match_r[r] {
            None => true,
            Some(prev) => augment(bg, adj, allowed, bg.edges[prev].0, round, seen, match_r),
        };
        if free {
            match_r[r] = Some(e);
            return true;
        }
    }
    false
}

pub fn maximum_bipartite_matching(bg: &BipartiteGraph) -> Vec<usize> {
    kuhn(bg, |_| true)
}

/// Minimum edge cover: a maximum matching plus the lowest-index incident edge of
/// every unmatched vertex. An isolated vertex yields [`Error::NoCover`] with the
/// vertex numbered left side first (`n_left + r` for right vertex `r`).
pub fn min_edge_cover_bipartite(bg: &BipartiteGraph) -> Result<Vec<usize>> {
    min_edge_cover_with_forced(bg, &[])
}

/// Minimum set of edges that, together with `forced`, touches every vertex.
/// The result includes `forced` and is sorted.
pub fn min_edge_cover_with_forced(bg: &BipartiteGraph, forced: &[usize]) -> Result<Vec<usize>> {
    let mut cov_l = vec![false; bg.n_left];
    let mut cov_r = vec![false; bg.n_right];
    for &e in forced {
        let (l, r) = bg.edges[e];
        cov_l[l] = true;
        cov_r[r] = true;
    }
    let (fl, fr) = bg.first_edges();
    for l in 0..bg.n_left {
        if !cov_l[l] && fl[l].is_none() {
            return Err(Error::NoCover(l));
        }
    }
    for r in 0..bg.n_right {
        if !cov_r[r] && fr[r].is_none() {
            return Err(Error::NoCover(bg.n_left + r));
        }
    }
    let mut chosen: Vec<usize> = forced.to_vec();
    for e in kuhn(bg, |e| {
        let (l, r) = bg.edges[e];
        !cov_l[l] && !cov_r[r]
    }) {
        let (l, r) = bg.edges[e];
        cov_l[l] = true;
        cov_r[r] = true;
        chosen.push(e);
    }
    for l in 0..bg.n_left {
        if !cov_l[l] {
            chosen.push(fl[l].unwrap());
        }
    }
    for r in 0..bg.n_right {
        if !cov_r[r] {
            chosen.push(fr[r].unwrap());
        }
    }
    chosen.sort_unstable();
    chosen.dedup();
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;

    #[test]
    fn greedy_matching_on_path() {
        let g = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(maximal_matching(&g.underlying()), vec![0]);
        assert!(maximal_matching(&Digraph::empty(3).underlying()).is_empty());
    }

    #[test]
    fn covers_of_small_graphs() {
        let k11 = BipartiteGraph::new(1, 1, vec![(0, 0)]);
        assert_eq!(min_edge_cover_bipartite(&k11).unwrap().len(), 1);
        let k22 = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(min_edge_cover_bipartite(&k22).unwrap().len(), 2);
        let star = BipartiteGraph::new(1, 3, vec![(0, 0), (0, 1), (0, 2)]);
        assert_eq!(min_edge_cover_bipartite(&star).unwrap().len(), 3);
    }

    #[test]
    fn isolated_vertex_has_no_cover() {
        let bg = BipartiteGraph::new(2, 1, vec![(0, 0)]);
        assert_eq!(min_edge_cover_bipartite(&bg), Err(Error::NoCover(1)));
    }

    #[test]
    fn augmenting_path_is_found() {
        // Greedy would match (0,0) and strand left 1.
        let bg = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0)]);
        assert_eq!(maximum_bipartite_matching(&bg).len(), 2);
    }

    #[test]
    fn forced_edges_reduce_the_cover() {
        let bg = BipartiteGraph::new(2, 2, vec![(0, 0), (1, 1), (0, 1)]);
        let c = min_edge_cover_with_forced(&bg, &[2]).unwrap();
        assert_eq!(c, vec![0, 1, 2]);
        let c = min_edge_cover_with_forced(&bg, &[0]).unwrap();
        assert_eq!(c, vec![0, 1]);
    }
}
