//! (p,q)-domination: the relation every solver is checked against.
//!
//! Arc `(u, v)` dominates arc `(x, y)` when they are equal, when
//! `dist(v, x) <= q - 1` (with `q >= 1`), or when `dist(y, u) <= p - 1` (with
//! `p >= 1`). Paths need not be simple, so shortest distances decide.

use std::fmt::Write as _;
use std::time::Duration;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{content_lines, ArcId, BoundedBfs, Digraph};

/// A digraph with domination radii, an optional budget and a set of optional
/// arcs that need not be dominated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Digraph,
    pub p: usize,
    pub q: usize,
    pub budget: Option<usize>,
    optional: Vec<bool>,
}

impl Instance {
    pub fn new(graph: Digraph, p: usize, q: usize) -> Self {
        let optional = vec![false; graph.m()];
        Instance { graph, p, q, budget: None, optional }
    }

    pub fn with_budget(mut self, k: usize) -> Self {
        self.budget = Some(k);
        self
    }

    pub fn with_optional(mut self, arcs: &[ArcId]) -> Result<Self> {
        for &a in arcs {
            if a >= self.graph.m() {
                return Err(Error::Precondition(format!("optional arc {a} out of range")));
            }
            self.optional[a] = true;
        }
        Ok(self)
    }

    pub fn is_optional(&self, a: ArcId) -> bool {
        self.optional[a]
    }

    pub fn has_optional(&self) -> bool {
        self.optional.iter().any(|&o| o)
    }

    pub fn optional_arcs(&self) -> Vec<ArcId> {
        (0..self.graph.m()).filter(|&a| self.optional[a]).collect()
    }

    pub fn mandatory_arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.graph.m()).filter(|&a| !self.optional[a])
    }

    /// The dual instance: arcs reversed (same indices), `p` and `q` swapped.
    pub fn reversed(&self) -> Instance {
        Instance {
            graph: self.graph.reversed(),
            p: self.q,
            q: self.p,
            budget: self.budget,
            optional: self.optional.clone(),
        }
    }
}

/// A set of arcs claimed to dominate every mandatory arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Sorted, without repetitions.
    pub arcs: Vec<ArcId>,
    pub engine: String,
    pub elapsed: Duration,
}

impl Solution {
    pub fn new(mut arcs: Vec<ArcId>, engine: impl Into<String>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        Solution { arcs, engine: engine.into(), elapsed: Duration::ZERO }
    }

    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }
}

/// Arcs dominated by `k_set` in `g` under radii `(p, q)`, as a bitset over arc indices.
pub fn dominated_mask(g: &Digraph, p: usize, q: usize, k_set: &[ArcId]) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.m());
    let mut bfs = BoundedBfs::new(g.n());
    for &a in k_set {
        mark_dominated(g, p, q, a, &mut bfs, &mut out);
    }
    out
}

fn mark_dominated(g: &Digraph, p: usize, q: usize, a: ArcId, bfs: &mut BoundedBfs, out: &mut FixedBitSet) {
    let (u, v) = g.arc(a);
    out.insert(a);
    if q >= 1 {
        bfs.run(g, v, q - 1, true);
        for &(x, _) in &bfs.visited {
            for &b in g.out_arcs(x) {
                out.insert(b);
            }
        }
    }
    if p >= 1 {
        bfs.run(g, u, p - 1, false);
        for &(y, _) in &bfs.visited {
            for &b in g.in_arcs(y) {
                out.insert(b);
            }
        }
    }
}

/// Arcs of `inst.graph` dominated by `k_set`, in increasing order.
pub fn dominated_arcs(inst: &Instance, k_set: &[ArcId]) -> Vec<ArcId> {
    dominated_mask(&inst.graph, inst.p, inst.q, k_set).ones().collect()
}

/// True iff `arcs` dominates every mandatory arc and respects the budget.
pub fn verify(inst: &Instance, arcs: &[ArcId]) -> Result<bool> {
    let m = inst.graph.m();
    if let Some(&a) = arcs.iter().find(|&&a| a >= m) {
        return Err(Error::MalformedSolution(format!("arc index {a} out of range ({m} arcs)")));
    }
    let mut distinct = arcs.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if inst.budget.is_some_and(|k| distinct.len() > k) {
        return Ok(false);
    }
    let dom = dominated_mask(&inst.graph, inst.p, inst.q, &distinct);
    Ok(inst.mandatory_arcs().all(|a| dom.contains(a)))
}

/// Mandatory arcs left undominated by `arcs`.
pub fn undominated(inst: &Instance, arcs: &[ArcId]) -> Vec<ArcId> {
    let dom = dominated_mask(&inst.graph, inst.p, inst.q, arcs);
    inst.mandatory_arcs().filter(|&a| !dom.contains(a)).collect()
}

/// Per-arc domination sets, precomputed for repeated subset tests.
#[derive(Clone, Debug)]
pub struct CoverTable {
    /// `covers[a]`: arcs dominated by `{a}`.
    pub covers: Vec<FixedBitSet>,
    /// `dominators[b]`: arcs `a` with `b` in `covers[a]`, increasing.
    pub dominators: Vec<Vec<ArcId>>,
    /// Mandatory arcs.
    pub mandatory: FixedBitSet,
}

impl CoverTable {
    pub fn new(inst: &Instance) -> Self {
        let g = &inst.graph;
        let m = g.m();
        let mut bfs = BoundedBfs::new(g.n());
        let mut covers = Vec::with_capacity(m);
        let mut dominators = vec![Vec::new(); m];
        for a in 0..m {
            let mut set = FixedBitSet::with_capacity(m);
            mark_dominated(g, inst.p, inst.q, a, &mut bfs, &mut set);
            for b in set.ones() {
                dominators[b].push(a);
            }
            covers.push(set);
        }
        let mut mandatory = FixedBitSet::with_capacity(m);
        for a in inst.mandatory_arcs() {
            mandatory.insert(a);
        }
        CoverTable { covers, dominators, mandatory }
    }

    pub fn m(&self) -> usize {
        self.covers.len()
    }

    pub fn is_feasible(&self, arcs: &[ArcId]) -> bool {
        let mut acc = FixedBitSet::with_capacity(self.m());
        for &a in arcs {
            acc.union_with(&self.covers[a]);
        }
        self.mandatory.is_subset(&acc)
    }
}

/// Solution text: `k <size>` followed by one `u v` line per arc.
pub fn write_solution(g: &Digraph, arcs: &[ArcId]) -> String {
    let mut out = format!("k {}\n", arcs.len());
    for &a in arcs {
        let (u, v) = g.arc(a);
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses the solution text against `g`; arcs not in `g` are malformed.
pub fn parse_solution(text: &str, g: &Digraph) -> Result<Vec<ArcId>> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 0, msg: "missing `k <size>` header".into() })?;
    let size: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["k", s] => s
            .parse()
            .map_err(|_| Error::Parse { line: hl, msg: format!("bad size `{s}`") })?,
        _ => return Err(Error::Parse { line: hl, msg: "header must be `k <size>`".into() }),
    };
    let mut arcs = Vec::with_capacity(size);
    for (lno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return Err(Error::Parse { line: lno, msg: "expected `u v`".into() });
        };
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse { line: lno, msg: format!("bad vertex `{t}`") })
        };
        let (u, v) = (parse(u)?, parse(v)?);
        let a = g
            .find_arc(u, v)
            .ok_or_else(|| Error::MalformedSolution(format!("({u}, {v}) is not an arc")))?;
        arcs.push(a);
    }
    if arcs.len() != size {
        return Err(Error::Parse { line: hl, msg: format!("header announces {size} arcs, found {}", arcs.len()) });
    }
    Ok(arcs)
}
