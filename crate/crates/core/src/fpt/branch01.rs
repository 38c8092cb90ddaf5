use super::{keep_best, Stats};
use crate::domination::Solution;
use crate::graph::{ArcId, Digraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    /// Undecided (V_r).
    Rest,
    /// In-degree zero in the solution (V_0).
    Zero,
    /// Positive in-degree with a known selected in-arc (V+_F).
    Found,
    /// Positive in-degree, in-arc not yet known (V+_?).
    Open,
}

#[derive(Clone)]
struct State {
    class: Vec<Class>,
    forced: Vec<bool>,
    plus: usize,
}

impl State {
    fn set(&mut self, v: Vertex, c: Class) {
        let was_plus = matches!(self.class[v], Class::Found | Class::Open);
        let is_plus = matches!(c, Class::Found | Class::Open);
        self.plus = self.plus + usize::from(is_plus) - usize::from(was_plus);
        self.class[v] = c;
    }
}

enum Reduced {
    Reject,
    Done,
}

/// A (0,1)-dominating set of size at most `k` that is smallest among the
/// search leaves, if any leaf succeeds.
pub fn solve_01(g: &Digraph, k: usize) -> Option<Solution> {
    solve_01_with_stats(g, k).0
}

pub fn solve_01_with_stats(g: &Digraph, k: usize) -> (Option<Solution>, Stats) {
    let state = State { class: vec![Class::Rest; g.n()], forced: vec![false; g.m()], plus: 0 };
    let mut search = Search { g, k, best: None, stats: Stats::default() };
    search.visit(state, 0);
    let leaf_bound = 2u64.saturating_pow(k as u32);
    assert!(search.stats.leaves <= leaf_bound, "{} leaves exceed 2^k = {leaf_bound}", search.stats.leaves);
    (search.best.map(|arcs| Solution::new(arcs, "fpt01")), search.stats)
}

struct Search<'g> {
    g: &'g Digraph,
    k: usize,
    best: Option<Vec<ArcId>>,
    stats: Stats,
}

impl Search<'_> {
    /// Applies rules 1 to 6 until none changes the state.
    fn reduce(&self, s: &mut State) -> Reduced {
        let g = self.g;
        loop {
            // Rule 1.
            if s.plus > self.k {
                return Reduced::Reject;
            }
            // Rule 2.
            if g.arcs().iter().any(|&(u, v)| s.class[u] == Class::Zero && s.class[v] == Class::Zero) {
                return Reduced::Reject;
            }
            // Rule 3.
            if let Some(v) = (0..g.n()).find(|&v| s.class[v] == Class::Rest && g.is_source(v)) {
                s.set(v, Class::Zero);
                continue;
            }
            // Rule 4: every out-arc of a V_0 vertex must be selected.
            let mut changed = false;
            let zeros: Vec<Vertex> = (0..g.n()).filter(|&u| s.class[u] == Class::Zero).collect();
            for u in zeros {
                for &a in g.out_arcs(u) {
                    let v = g.head(a);
                    if !s.forced[a] {
                        s.forced[a] = true;
                        changed = true;
                    }
                    match s.class[v] {
                        Class::Found => {}
                        Class::Zero => return Reduced::Reject,
                        Class::Rest | Class::Open => {
                            s.set(v, Class::Found);
                            changed = true;
                        }
                    }
                }
            }
            if changed {
                continue;
            }
            // Rule 5.
            if let Some(u) = g
                .arcs()
                .iter()
                .find(|&&(u, v)| s.class[v] == Class::Zero && s.class[u] == Class::Rest)
                .map(|&(u, _)| u)
            {
                s.set(u, Class::Open);
                continue;
            }
            // Rule 6.
            if let Some(u) = (0..g.m())
                .find(|&a| {
                    let (u, v) = g.arc(a);
                    s.class[v] == Class::Found && s.class[u] == Class::Rest && !s.forced[a]
                })
                .map(|a| g.tail(a))
            {
                s.set(u, Class::Open);
                continue;
            }
            return Reduced::Done;
        }
    }

    /// Returns false if the node is rejected before it counts.
    fn visit(&mut self, mut s: State, depth: usize) -> bool {
        if let Reduced::Reject = self.reduce(&mut s) {
            return false;
        }
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let g = self.g;

        let children = if let Some(a) = (0..g.m()).find(|&a| {
            let (u, v) = g.arc(a);
            s.class[u] == Class::Rest && s.class[v] == Class::Rest
        }) {
            let (u, v) = g.arc(a);
            let mut open = s.clone();
            open.set(u, Class::Open);
            let mut take = s;
            take.set(u, Class::Zero);
            take.set(v, Class::Found);
            take.forced[a] = true;
            Some((open, take))
        } else if let Some((u, a1)) = (0..g.n()).filter(|&u| s.class[u] == Class::Open).find_map(|u| {
            let mut from_rest = g.in_arcs(u).iter().copied().filter(|&a| s.class[g.tail(a)] == Class::Rest);
            let first = from_rest.next()?;
            from_rest.next().map(|_| (u, first))
        }) {
            let v1 = g.tail(a1);
            let mut open = s.clone();
            open.set(v1, Class::Open);
            let mut take = s;
            take.set(v1, Class::Zero);
            take.set(u, Class::Found);
            take.forced[a1] = true;
            Some((open, take))
        } else {
            self.stats.leaves += 1;
            self.complete(&s);
            None
        };
        if let Some((a, b)) = children {
            let any = self.visit(a, depth + 1) | self.visit(b, depth + 1);
            if !any {
                self.stats.leaves += 1;
            }
        }
        true
    }

    fn complete(&mut self, s: &State) {
        let g = self.g;
        let mut arcs: Vec<ArcId> = (0..g.m()).filter(|&a| s.forced[a]).collect();
        for v in (0..g.n()).filter(|&v| s.class[v] == Class::Open) {
            let from_rest = g.in_arcs(v).iter().copied().find(|&a| s.class[g.tail(a)] == Class::Rest);
            match from_rest.or_else(|| g.in_arcs(v).first().copied()) {
                Some(a) => arcs.push(a),
                None => return,
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        if arcs.len() <= self.k {
            keep_best(&mut self.best, arcs);
        }
    }
}
