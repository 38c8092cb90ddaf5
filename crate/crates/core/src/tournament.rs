//! Solvers specialised to tournaments, one per tractability class of (p, q).

use std::collections::VecDeque;
use std::fmt;

use crate::domination::{verify, Instance, Solution};
use crate::error::{Error, Result};
use crate::fpt::solve_11;
use crate::graph::{scc_partition, ArcId, Digraph, Tournament, Vertex};
use crate::oracle::exact_min_deds;

/// Default vertex limit of the quasi-polynomial search.
pub const DEFAULT_Q2_LIMIT: usize = 12;

/// Which tournament solver handles a given (p, q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `p = q = 0`: every arc dominates only itself.
    AllArcs,
    /// `p + q = 1`.
    T01,
    /// `p = q = 1`, NP-hard on tournaments; handled by the general branching.
    Fpt11,
    /// `p = 2` or `q = 2`.
    TQ2,
    /// Everything else: `max(p, q) >= 3` and neither is 2.
    TPq3,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::AllArcs => "all_arcs",
            Route::T01 => "t01",
            Route::Fpt11 => "fpt11",
            Route::TQ2 => "t_q2",
            Route::TPq3 => "t_pq3",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Route::AllArcs, Route::T01, Route::Fpt11, Route::TQ2, Route::TPq3]
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::WrongEngine(format!("unknown tournament route `{s}`")))
    }
}

pub fn classify(p: usize, q: usize) -> Route {
    match (p, q) {
        (0, 0) => Route::AllArcs,
        _ if p + q == 1 => Route::T01,
        (1, 1) => Route::Fpt11,
        _ if p == 2 || q == 2 => Route::TQ2,
        _ => Route::TPq3,
    }
}

/// Optimal (p,q) solution on `t`, by whichever solver `classify` picks.
pub fn solve_tournament(t: &Tournament, p: usize, q: usize) -> Result<Solution> {
    solve_tournament_via(t, p, q, classify(p, q))
}

/// Runs a specific route; routes whose preconditions fail report a wrong-engine error.
pub fn solve_tournament_via(t: &Tournament, p: usize, q: usize, route: Route) -> Result<Solution> {
    let wrong = |what: &str| Err(Error::WrongEngine(format!("{route} needs {what}, got ({p}, {q})")));
    let sol = match route {
        Route::AllArcs if p + q > 0 => return wrong("p = q = 0"),
        Route::T01 if p + q != 1 => return wrong("p + q = 1"),
        Route::Fpt11 if (p, q) != (1, 1) => return wrong("p = q = 1"),
        Route::AllArcs => Solution::new((0..t.m()).collect(), "all_arcs"),
        Route::T01 if q == 1 => solve_t01(t),
        Route::T01 => renamed(solve_t01(&t.reversed()), "t01"),
        Route::Fpt11 => (0..=t.m())
            .find_map(|k| solve_11(t.graph(), k))
            .expect("all arcs always dominate"),
        Route::TQ2 => solve_t_q2(t, p, q, DEFAULT_Q2_LIMIT)?,
        Route::TPq3 => solve_t_pq3(t, p, q)?,
    };
    Ok(sol)
}

fn renamed(sol: Solution, engine: &str) -> Solution {
    Solution::new(sol.arcs, engine)
}

/// (0,1) solution of size exactly `n - 1`: a BFS tree inside the first strong
/// component from its lowest vertex `s`, plus `s`'s arcs to everything else.
pub fn solve_t01(t: &Tournament) -> Solution {
    let n = t.n();
    if n == 0 {
        return Solution::new(Vec::new(), "t01");
    }
    let comps = scc_partition(t.graph());
    let first = &comps[0];
    let s = first[0];
    let mut in_first = vec![false; n];
    for &v in first {
        in_first[v] = true;
    }
    let mut seen = vec![false; n];
    let mut arcs = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(u) = queue.pop_front() {
        for &a in t.out_arcs(u) {
            let w = t.head(a);
            if in_first[w] && !seen[w] {
                seen[w] = true;
                arcs.push(a);
                queue.push_back(w);
            }
        }
    }
    arcs.extend(t.out_arcs(s).iter().copied().filter(|&a| !in_first[t.head(a)]));
    debug_assert_eq!(arcs.len(), n - 1);
    Solution::new(arcs, "t01")
}

fn lowest_in_arc(g: &Digraph, v: Vertex) -> Option<ArcId> {
    g.in_arcs(v).iter().copied().min()
}

fn lowest_out_arc(g: &Digraph, v: Vertex) -> Option<ArcId> {
    g.out_arcs(v).iter().copied().min()
}

/// Optimal solution when `max(p, q) >= 3` and neither radius is 2.
pub fn solve_t_pq3(t: &Tournament, p: usize, q: usize) -> Result<Solution> {
    if p.max(q) < 3 || p == 2 || q == 2 {
        return Err(Error::WrongEngine(format!("t_pq3 needs max(p,q) >= 3 and p,q != 2, got ({p},{q})")));
    }
    if q < 3 {
        // Arc indices survive reversal.
        return solve_t_pq3(&t.reversed(), q, p);
    }
    let named = |arcs: Vec<ArcId>| Ok(Solution::new(arcs, "t_pq3"));
    if t.n() <= 1 {
        return named(Vec::new());
    }
    let king = t.king();
    if let Some(a) = lowest_in_arc(t, king) {
        return named(vec![a]);
    }
    let s = king;
    if p <= 1 {
        return named(t.out_arcs(s).to_vec());
    }
    let Some(sink) = t.sink() else {
        let rking = t.reversed().king();
        return named(vec![lowest_out_arc(t, rking).expect("not a sink")]);
    };
    // Source and sink: (s, sink) is dominated only by itself. Try one more arc
    // before settling for the three-arc construction.
    let st = t.find_arc(s, sink).expect("tournament");
    let inst = Instance::new(t.graph().clone(), p, q);
    if verify(&inst, &[st])? {
        return named(vec![st]);
    }
    for a in (0..t.m()).filter(|&a| a != st) {
        if verify(&inst, &[st, a])? {
            return named(vec![st, a]);
        }
    }
    let middle: Vec<Vertex> = (0..t.n()).filter(|&v| v != s && v != sink).collect();
    let s2 = *middle.iter().max_by_key(|&&v| (t.out_degree(v), std::cmp::Reverse(v))).expect("n >= 3 here");
    let t2 = *middle.iter().max_by_key(|&&v| (t.in_degree(v), std::cmp::Reverse(v))).expect("n >= 3 here");
    named(vec![st, t.find_arc(s, s2).expect("source"), t.find_arc(t2, sink).expect("sink")])
}

/// One lowest-index in-arc per vertex of `d`; a (0,2) solution when `t` has no
/// source and `d` dominates `t`.
pub fn ds_to_02(t: &Tournament, d: &[Vertex]) -> Result<Solution> {
    if let Some(s) = t.source() {
        return Err(Error::Precondition(format!("vertex {s} is a source")));
    }
    let mut dominated = vec![false; t.n()];
    for &v in d {
        if v >= t.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: t.n() });
        }
        dominated[v] = true;
        for w in t.out_neighbors(v) {
            dominated[w] = true;
        }
    }
    if let Some(v) = dominated.iter().position(|&x| !x) {
        return Err(Error::Precondition(format!("vertex {v} is not dominated")));
    }
    let arcs = d.iter().map(|&v| lowest_in_arc(t, v).expect("no source")).collect();
    Ok(Solution::new(arcs, "ds_to_02"))
}

/// `t` plus a new sink `n` receiving an arc from every vertex. On a sourceless `t`,
/// the (p,2) optimum of the result equals the domination number of `t`.
pub fn ds_to_p2_instance(t: &Tournament) -> Tournament {
    let n = t.n();
    let arcs = t.arcs().iter().copied().chain((0..n).map(|v| (v, n)));
    Tournament::new(Digraph::new(n + 1, arcs).expect("fresh sink")).expect("still a tournament")
}

/// Greedy dominating set of `t` minus `drop`, in `t`'s numbering.
fn greedy_ds_without(t: &Tournament, drop: Vertex) -> Vec<Vertex> {
    let keep: Vec<bool> = (0..t.n()).map(|v| v != drop).collect();
    let sub = t.induced(&keep);
    let sub_t = Tournament::new(sub.graph).expect("induced subtournament");
    sub_t.greedy_dominating_set().into_iter().map(|v| sub.vertex_map[v]).collect()
}

/// A (2,2) solution of size at most `2 * floor(log2 n) + 3`.
pub fn construct_22(t: &Tournament) -> Solution {
    let named = |arcs: Vec<ArcId>| Solution::new(arcs, "construct22");
    if t.n() <= 1 {
        return named(Vec::new());
    }
    if t.source().is_none() {
        return named(ds_to_02(t, &t.greedy_dominating_set()).expect("sourceless").arcs);
    }
    if t.sink().is_none() {
        let r = t.reversed();
        return named(ds_to_02(&r, &r.greedy_dominating_set()).expect("sourceless").arcs);
    }
    let (s, sink) = (t.source().unwrap(), t.sink().unwrap());
    let mut arcs = vec![t.find_arc(s, sink).expect("tournament")];
    arcs.extend(greedy_ds_without(t, s).into_iter().map(|v| lowest_in_arc(t, v).expect("only s is a source")));
    let r = t.reversed();
    arcs.extend(greedy_ds_without(&r, sink).into_iter().map(|v| lowest_out_arc(t, v).expect("only sink lacks out-arcs")));
    named(arcs)
}

/// `floor(log2 n)` for `n >= 1`.
fn log2_floor(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// Optimal solution when `p = 2` or `q = 2`, by exhaustive search over arc
/// subsets below the size of an explicit construction.
pub fn solve_t_q2(t: &Tournament, p: usize, q: usize, limit: usize) -> Result<Solution> {
    if p != 2 && q != 2 {
        return Err(Error::WrongEngine(format!("t_q2 needs p = 2 or q = 2, got ({p},{q})")));
    }
    if q != 2 {
        return solve_t_q2(&t.reversed(), q, p, limit);
    }
    let named = |arcs: Vec<ArcId>| Ok(Solution::new(arcs, "t_q2"));
    if t.n() <= 1 {
        return named(Vec::new());
    }
    if let (Some(s), true) = (t.source(), p <= 1) {
        return named(t.out_arcs(s).to_vec());
    }
    if t.n() > limit {
        return Err(Error::Resource(format!("t_q2 search limited to {limit} vertices, got {}", t.n())));
    }
    let upper = if t.source().is_none() {
        ds_to_02(t, &t.greedy_dominating_set())?
    } else {
        construct_22(t)
    };
    let bound = if t.source().is_none() { log2_floor(t.n()) + 1 } else { 2 * log2_floor(t.n()) + 3 };
    assert!(upper.size() <= bound, "construction of size {} exceeds {bound}", upper.size());
    let inst = Instance::new(t.graph().clone(), p, q);
    debug_assert!(verify(&inst, &upper.arcs)?);
    match exact_min_deds(&inst, upper.size().saturating_sub(1))? {
        Some(better) => named(better.arcs),
        None => named(upper.arcs),
    }
}
