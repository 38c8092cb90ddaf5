use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Digraph, UndirectedGraph, Vertex};

/// A tree decomposition: bags indexed from 0 and the tree edges between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Vertices of the decomposed graph.
    pub n: usize,
    /// Each bag sorted without repetitions.
    pub bags: Vec<Vec<Vertex>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(n: usize, bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|b| b.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        TreeDecomposition { n, bags, edges }
    }

    /// One bag holding every vertex.
    pub fn single_bag(n: usize) -> Self {
        TreeDecomposition::new(n, vec![(0..n).collect()], Vec::new())
    }

    /// Largest bag size minus one; `-1` for an empty decomposition.
    pub fn width(&self) -> isize {
        self.bags.iter().map(|b| b.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Checks the tree shape and the three decomposition properties against `g`.
    pub fn validate(&self, g: &UndirectedGraph) -> Result<()> {
        let err = |msg: String| Err(Error::Decomposition(msg));
        if self.n != g.n() {
            return err(format!("decomposition is for {} vertices, graph has {}", self.n, g.n()));
        }
        let nb = self.bags.len();
        for &(a, b) in &self.edges {
            if a >= nb || b >= nb || a == b {
                return err(format!("bad tree edge ({a}, {b})"));
            }
        }
        if nb > 0 && self.edges.len() != nb - 1 {
            return err(format!("{} tree edges for {nb} bags; the bags must form a tree", self.edges.len()));
        }
        let adj = self.adjacency();
        if nb > 0 && reachable(&adj, 0, |_| true).iter().filter(|&&r| r).count() != nb {
            return err("tree of bags is not connected".into());
        }
        for bag in &self.bags {
            if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
                return err(format!("bag vertex {v} out of range"));
            }
        }
        let mut holders = vec![Vec::new(); g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                holders[v].push(i);
            }
        }
        // Property 1: every vertex is in some bag.
        if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
            return err(format!("vertex coverage violated: vertex {v} is in no bag"));
        }
        // Property 2: every edge is inside some bag.
        for &(u, v) in g.edges() {
            if !holders[u].iter().any(|&i| self.bags[i].binary_search(&v).is_ok()) {
                return err(format!("edge coverage violated: no bag contains edge {{{u}, {v}}}"));
            }
        }
        // Property 3: the bags holding a vertex are connected in the tree.
        for (v, held) in holders.iter().enumerate() {
            let has = |i: usize| self.bags[i].binary_search(&v).is_ok();
            let seen = reachable(&adj, held[0], has);
            if held.iter().any(|&i| !seen[i]) {
                return err(format!("connectivity violated: bags containing vertex {v} are not connected"));
            }
        }
        Ok(())
    }

    /// PACE `.td` text: 1-based bag ids and vertices.
    pub fn to_pace(&self) -> String {
        let max = self.bags.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = format!("s td {} {} {}\n", self.bags.len(), max, self.n);
        for (i, bag) in self.bags.iter().enumerate() {
            write!(out, "b {}", i + 1).unwrap();
            for v in bag {
                write!(out, " {}", v + 1).unwrap();
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            writeln!(out, "{} {}", a + 1, b + 1).unwrap();
        }
        out
    }

    pub fn from_pace(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let num = |tok: &str, line: usize| tok.parse::<usize>().map_err(|_| perr(line, "expected an integer"));
        let mut header: Option<(usize, usize)> = None;
        let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lno = i + 1;
            let toks: Vec<&str> = raw.split_whitespace().collect();
            match toks.first().copied() {
                None | Some("c") => {}
                Some("s") => {
                    if toks.len() != 5 || toks[1] != "td" {
                        return Err(perr(lno, "header must be `s td <bags> <max-bag> <n>`"));
                    }
                    let nb = num(toks[2], lno)?;
                    header = Some((nb, num(toks[4], lno)?));
                    bags = vec![None; nb];
                }
                Some("b") => {
                    let (nb, n) = header.ok_or_else(|| perr(lno, "bag before header"))?;
                    let id = num(toks.get(1).ok_or_else(|| perr(lno, "missing bag id"))?, lno)?;
                    if id == 0 || id > nb {
                        return Err(perr(lno, "bag id out of range"));
                    }
                    let mut bag = Vec::new();
                    for t in &toks[2..] {
                        let v = num(t, lno)?;
                        if v == 0 || v > n {
                            return Err(perr(lno, "vertex out of range"));
                        }
                        bag.push(v - 1);
                    }
                    bags[id - 1] = Some(bag);
                }
                Some(_) => {
                    let (nb, _) = header.ok_or_else(|| perr(lno, "edge before header"))?;
                    let [a, b] = toks.as_slice() else {
                        return Err(perr(lno, "tree edge must be `<id> <id>`"));
                    };
                    let (a, b) = (num(a, lno)?, num(b, lno)?);
                    if a == 0 || b == 0 || a > nb || b > nb {
                        return Err(perr(lno, "tree edge endpoint out of range"));
                    }
                    edges.push((a - 1, b - 1));
                }
            }
        }
        let (_, n) = header.ok_or_else(|| perr(0, "missing `s td` header"))?;
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::Decomposition(format!("bag {} is never listed", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TreeDecomposition::new(n, bags, edges))
    }
}

fn reachable(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] && allowed(j) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen
}

/// Decomposition from eliminating vertices in `order` on the underlying graph.
pub fn elimination_td(g: &UndirectedGraph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex");
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    for &v in order {
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for &a in &nbrs {
            adj[a].remove(&v);
            for &b in &nbrs {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
    }
    tree_from_elimination(n, order, &position, bags)
}

fn tree_from_elimination(n: usize, order: &[Vertex], position: &[usize], bags: Vec<Vec<Vertex>>) -> TreeDecomposition {
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        match bag.iter().filter(|&&w| w != v).map(|&w| position[w]).min() {
            Some(parent) => edges.push((i, parent)),
            None => roots.push(i),
        }
    }
    // One root per connected component; chaining them keeps a tree.
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(n, bags, edges)
}

/// Min-degree elimination heuristic on the underlying undirected graph.
pub fn heuristic_td(g: &Digraph) -> TreeDecomposition {
    let u = g.underlying().to_graph();
    let n = u.n();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| u.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("vertex left");
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for &a in &nbrs {
            adj[a].remove(&v);
            for &b in &nbrs {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        alive[v] = false;
        order.push(v);
    }
    elimination_td(&u, &order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heuristic_widths() {
        let tree = Digraph::new(5, [(0, 1), (0, 2), (2, 3), (4, 2)]).unwrap();
        assert_eq!(heuristic_td(&tree).width(), 1);
        assert_eq!(heuristic_td(&Digraph::empty(1)).width(), 0);
        let k4 = Digraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(heuristic_td(&k4).width(), 3);
    }

    #[test]
    fn heuristic_is_valid_on_forest() {
        let g = Digraph::new(6, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let td = heuristic_td(&g);
        td.validate(&g.underlying().to_graph()).unwrap();
    }

    #[test]
    fn validation_names_the_property() {
        let g = UndirectedGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let missing = TreeDecomposition::new(3, vec![vec![0, 1]], vec![]);
        assert!(matches!(missing.validate(&g), Err(Error::Decomposition(m)) if m.contains("vertex coverage")));
        let no_edge = TreeDecomposition::new(3, vec![vec![0, 1], vec![2]], vec![(0, 1)]);
        assert!(matches!(no_edge.validate(&g), Err(Error::Decomposition(m)) if m.contains("edge coverage")));
        let split = TreeDecomposition::new(3, vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)]);
        assert!(matches!(split.validate(&g), Err(Error::Decomposition(m)) if m.contains("connectivity")));
    }

    #[test]
    fn pace_roundtrip() {
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let text = td.to_pace();
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        assert_eq!(TreeDecomposition::from_pace(&format!("c hi\n{text}")).unwrap(), td);
    }
}
