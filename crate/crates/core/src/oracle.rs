//! Exhaustive solvers used as ground truth.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::domination::{CoverTable, Instance, Solution};
use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, UndirectedGraph, Vertex};

/// Default ceiling on the number of arc subsets `exact_min_deds` may test.
pub const DEFAULT_WORK_LIMIT: u64 = 50_000_000;
/// Default vertex limit for `exact_aim` and `exact_ds`.
pub const DEFAULT_VERTEX_LIMIT: usize = 24;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Minimum solution of size at most `k_max`, testing subsets by increasing size
/// and lexicographically within a size. The first feasible subset is returned.
pub fn exact_min_deds(inst: &Instance, k_max: usize) -> Result<Option<Solution>> {
    exact_min_deds_with_limit(inst, k_max, DEFAULT_WORK_LIMIT)
}

pub fn exact_min_deds_with_limit(inst: &Instance, k_max: usize, work_limit: u64) -> Result<Option<Solution>> {
    let table = CoverTable::new(inst);
    let m = table.m();
    let k_max = k_max.min(m).min(inst.budget.unwrap_or(usize::MAX));
    let mut work: u64 = 0;
    for size in 0..=k_max {
        work = work.saturating_add(binomial(m as u64, size as u64));
        if work > work_limit {
            return Err(Error::Resource(format!(
                "exhaustive search over {m} arcs up to size {size} exceeds {work_limit} subsets"
            )));
        }
        if let Some(arcs) = first_feasible_of_size(&table, size) {
            return Ok(Some(Solution::new(arcs, "oracle")));
        }
    }
    Ok(None)
}

fn first_feasible_of_size(table: &CoverTable, size: usize) -> Option<Vec<ArcId>> {
    let m = table.m();
    if size == 0 {
        return table.mandatory.is_clear().then(Vec::new);
    }
    // prefix[i] = union of covers of the first i chosen arcs.
    let mut prefix = vec![FixedBitSet::with_capacity(m); size + 1];
    let mut idx: Vec<usize> = (0..size).collect();
    for i in 0..size {
        let mut next = prefix[i].clone();
        next.union_with(&table.covers[idx[i]]);
        prefix[i + 1] = next;
    }
    loop {
        if table.mandatory.is_subset(&prefix[size]) {
            return Some(idx);
        }
        let i = next_combination(&mut idx, m)?;
        for j in i..size {
            let mut next = prefix[j].clone();
            next.union_with(&table.covers[idx[j]]);
            prefix[j + 1] = next;
        }
    }
}

/// Exact minimum by branching on the dominators of an undominated mandatory arc
/// (the one with fewest dominators). Much faster than plain enumeration on
/// sparse instances; the witness is the first one found, not the
/// lexicographically smallest.
pub fn branching_min_deds(inst: &Instance, k_max: usize) -> Result<Option<Solution>> {
    let table = CoverTable::new(inst);
    let k_max = k_max.min(inst.budget.unwrap_or(usize::MAX));
    let mut budget = DEFAULT_WORK_LIMIT;
    for size in 0..=k_max.min(table.m()) {
        let mut found = None;
        let mut chosen = Vec::new();
        let acc = FixedBitSet::with_capacity(table.m());
        hit(&table, &acc, &mut chosen, size, &mut budget, &mut |s| {
            found = Some(s.to_vec());
            true
        })?;
        if let Some(arcs) = found {
            return Ok(Some(Solution::new(arcs, "oracle")));
        }
    }
    Ok(None)
}

/// Every feasible arc set of exactly `size` arcs when no smaller one exists,
/// each sorted, in lexicographic order.
pub fn all_optimal_solutions(inst: &Instance, size: usize) -> Result<Vec<Vec<ArcId>>> {
    let table = CoverTable::new(inst);
    let mut budget = DEFAULT_WORK_LIMIT;
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    let acc = FixedBitSet::with_capacity(table.m());
    hit(&table, &acc, &mut chosen, size, &mut budget, &mut |s| {
        let mut v = s.to_vec();
        v.sort_unstable();
        found.insert(v);
        false
    })?;
    Ok(found.into_iter().collect())
}

/// Depth-limited hitting-set search. `visit` returns true to stop.
fn hit(
    table: &CoverTable,
    acc: &FixedBitSet,
    chosen: &mut Vec<ArcId>,
    left: usize,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[ArcId]) -> bool,
) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::Resource("branching oracle node limit reached".into()));
    }
    *budget -= 1;
    let mut pick: Option<(usize, ArcId)> = None;
    for b in table.mandatory.ones() {
        if !acc.contains(b) {
            let d = table.dominators[b].len();
            if pick.is_none_or(|(best, _)| d < best) {
                pick = Some((d, b));
            }
        }
    }
    let Some((_, b)) = pick else {
        return Ok(visit(chosen));
    };
    if left == 0 {
        return Ok(false);
    }
    for &a in &table.dominators[b] {
        let mut next = acc.clone();
        next.union_with(&table.covers[a]);
        chosen.push(a);
        let stop = hit(table, &next, chosen, left - 1, budget, visit)?;
        chosen.pop();
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order. Returns the lowest changed position, or `None` after the last subset.
fn next_combination(idx: &mut [usize], n: usize) -> Option<usize> {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return Some(i);
        }
    }
    None
}

fn combinations_by_size(n: usize, mut test: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    for size in 0..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if test(&idx) {
                return Some(idx);
            }
            if next_combination(&mut idx, n).is_none() {
                break;
            }
        }
    }
    None
}

/// Minimum dominating set of a digraph: every vertex outside the set has an
/// in-neighbour inside it.
pub fn exact_ds(g: &Digraph) -> Result<(usize, Vec<Vertex>)> {
    exact_ds_with_limit(g, DEFAULT_VERTEX_LIMIT)
}

pub fn exact_ds_with_limit(g: &Digraph, limit: usize) -> Result<(usize, Vec<Vertex>)> {
    let n = g.n();
    if n > limit.min(63) {
        return Err(Error::Resource(format!("dominating set oracle limited to {limit} vertices, got {n}")));
    }
    let closed: Vec<u64> = (0..n)
        .map(|v| g.out_neighbors(v).fold(1u64 << v, |acc, w| acc | (1 << w)))
        .collect();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let set = combinations_by_size(n, |idx| idx.iter().fold(0u64, |acc, &v| acc | closed[v]) == full)
        .expect("the whole vertex set dominates");
    Ok((set.len(), set))
}

/// Maximum almost induced matching: a vertex set whose induced subgraph has
/// maximum degree at most one.
pub fn exact_aim(g: &UndirectedGraph) -> Result<(usize, Vec<Vertex>)> {
    exact_aim_with_limit(g, DEFAULT_VERTEX_LIMIT)
}

pub fn exact_aim_with_limit(g: &UndirectedGraph, limit: usize) -> Result<(usize, Vec<Vertex>)> {
    let n = g.n();
    if n > limit {
        return Err(Error::Resource(format!("almost induced matching oracle limited to {limit} vertices, got {n}")));
    }
    let mut search = AimSearch {
        g,
        deg: vec![0; n],
        chosen: vec![false; n],
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    let best = search.best;
    Ok((best.len(), best))
}

struct AimSearch<'g> {
    g: &'g UndirectedGraph,
    /// Number of chosen neighbours, for every vertex.
    deg: Vec<usize>,
    chosen: Vec<bool>,
    current: Vec<Vertex>,
    best: Vec<Vertex>,
}

impl AimSearch<'_> {
    fn can_add(&self, v: Vertex) -> bool {
        self.deg[v] <= 1 && self.g.neighbors(v).iter().all(|&w| !self.chosen[w] || self.deg[w] == 0)
    }

    fn run(&mut self, v: Vertex) {
        let n = self.g.n();
        if v == n {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let open = (v..n).filter(|&w| self.can_add(w)).count();
        if self.current.len() + open <= self.best.len() {
            return;
        }
        if self.can_add(v) {
            self.chosen[v] = true;
            self.current.push(v);
            for &w in self.g.neighbors(v) {
                self.deg[w] += 1;
            }
            self.run(v + 1);
            for &w in self.g.neighbors(v) {
                self.deg[w] -= 1;
            }
            self.current.pop();
            self.chosen[v] = false;
        }
        self.run(v + 1);
    }
}
