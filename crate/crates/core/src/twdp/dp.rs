use std::collections::BTreeMap;

use super::{NiceTreeDecomposition, NodeKind};
use crate::domination::{Instance, Solution};
use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, ArcId, Vertex, UNREACHABLE};

/// Default ceiling on the memory held by the DP tables.
pub const DEFAULT_MEMORY_LIMIT: usize = 2 << 30;

/// Per-vertex part of a signature packed into a `u16`:
/// `((f * (p + 1) + b) << 2) | s_f << 1 | s_b`.
type Code = u16;
type Key = Vec<Code>;

#[derive(Clone, Copy)]
struct Codec {
    p: usize,
    q: usize,
}

impl Codec {
    fn enc(self, f: usize, b: usize, sf: bool, sb: bool) -> Code {
        (((f * (self.p + 1) + b) << 2) | (usize::from(sf) << 1) | usize::from(sb)) as Code
    }
    fn f(self, c: Code) -> usize {
        (c as usize >> 2) / (self.p + 1)
    }
    fn b(self, c: Code) -> usize {
        (c as usize >> 2) % (self.p + 1)
    }
}

const SF: Code = 2;
const SB: Code = 1;

#[derive(Clone, Debug)]
enum Back {
    Leaf,
    Child(Key),
    /// Child key and the selected subset of the node's candidate arcs.
    Forget(Key, u64),
    Join(Key, Key),
}

#[derive(Clone, Debug)]
struct Entry {
    count: u32,
    back: Back,
}

type Table = BTreeMap<Key, Entry>;

fn offer(table: &mut Table, key: Key, count: u32, back: impl FnOnce() -> Back) {
    match table.get_mut(&key) {
        Some(e) if e.count <= count => {}
        Some(e) => *e = Entry { count, back: back() },
        None => {
            table.insert(key, Entry { count, back: back() });
        }
    }
}

/// Table sizes seen during a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwdpStats {
    /// `(bag size, number of signatures)` per node, in node order.
    pub tables: Vec<(usize, usize)>,
    pub bytes: usize,
}

impl TwdpStats {
    pub fn max_signatures(&self) -> usize {
        self.tables.iter().map(|&(_, s)| s).max().unwrap_or(0)
    }
}

/// `(4(p+1)(q+1))^bag`, saturating.
pub fn signature_bound(p: usize, q: usize, bag: usize) -> u128 {
    (4 * (p as u128 + 1) * (q as u128 + 1)).saturating_pow(bag as u32)
}

/// Minimum (p,q)-dominating set of `inst` by dynamic programming over `ntd`,
/// a nice decomposition of the underlying undirected graph.
pub fn solve_twdp(inst: &Instance, ntd: &NiceTreeDecomposition) -> Result<(usize, Solution)> {
    let (opt, sol, _) = solve_twdp_with_stats(inst, ntd, DEFAULT_MEMORY_LIMIT)?;
    Ok((opt, sol))
}

pub fn solve_twdp_with_stats(
    inst: &Instance,
    ntd: &NiceTreeDecomposition,
    memory_limit: usize,
) -> Result<(usize, Solution, TwdpStats)> {
    let g = &inst.graph;
    ntd.validate(&g.underlying().to_graph())?;
    // Distances never exceed n - 1, so larger radii behave like n.
    let codec = Codec { p: inst.p.min(g.n()), q: inst.q.min(g.n()) };
    if 4 * (codec.p + 1) * (codec.q + 1) > usize::from(Code::MAX) + 1 {
        return Err(Error::Resource(format!("radii ({}, {}) too large for the signature encoding", inst.p, inst.q)));
    }
    let Some(root) = ntd.root else {
        return Ok((0, Solution::new(Vec::new(), "twdp"), TwdpStats::default()));
    };
    let dist = all_pairs_distances(g);
    let mut dp = Dp { inst, codec, dist, tables: Vec::new(), candidates: Vec::new(), stats: TwdpStats::default() };
    for (i, node) in ntd.nodes.iter().enumerate() {
        let (table, cands) = match node.kind {
            NodeKind::Leaf(_) => (dp.leaf(), Vec::new()),
            NodeKind::Introduce(v) => (dp.introduce(&ntd.nodes[node.children[0]].bag, node.children[0], v), Vec::new()),
            NodeKind::Forget(z) => dp.forget(&ntd.nodes[node.children[0]].bag, node.children[0], z),
            NodeKind::Join => (dp.join(node.children[0], node.children[1]), Vec::new()),
        };
        let bound = signature_bound(inst.p, inst.q, node.bag.len());
        assert!(table.len() as u128 <= bound, "node {i}: {} signatures exceed {bound}", table.len());
        dp.stats.tables.push((node.bag.len(), table.len()));
        dp.stats.bytes += table.len() * (node.bag.len() * 2 * std::mem::size_of::<Code>() + 96);
        if dp.stats.bytes > memory_limit {
            return Err(Error::Resource(format!(
                "DP tables need more than {memory_limit} bytes (width {})",
                ntd.width()
            )));
        }
        dp.tables.push(table);
        dp.candidates.push(cands);
    }
    let entry = dp.tables[root].get(&Vec::new()).expect("selecting every arc is always accepted");
    let opt = entry.count as usize;
    let arcs = dp.trace(ntd, root);
    debug_assert_eq!(arcs.len(), opt);
    Ok((opt, Solution::new(arcs, "twdp"), dp.stats))
}

struct Dp<'a> {
    inst: &'a Instance,
    codec: Codec,
    dist: Vec<Vec<usize>>,
    tables: Vec<Table>,
    /// Arcs between the forgotten vertex and the rest of the child bag, per forget node,
    /// as (arc, tail position, head position) in the child bag.
    candidates: Vec<Vec<(ArcId, usize, usize)>>,
    stats: TwdpStats,
}

impl Dp<'_> {
    fn leaf(&self) -> Table {
        let c = self.codec;
        let mut t = Table::new();
        for f in 0..=c.q {
            for b in 0..=c.p {
                t.insert(vec![c.enc(f, b, f == c.q, b == c.p)], Entry { count: 0, back: Back::Leaf });
            }
        }
        t
    }

    fn introduce(&self, child_bag: &[Vertex], child: usize, v: Vertex) -> Table {
        let c = self.codec;
        let d = &self.dist;
        let pos = child_bag.binary_search(&v).expect_err("introduced vertex is new");
        let mut t = Table::new();
        for (key, e) in &self.tables[child] {
            for f in 0..=c.q {
                for b in 0..=c.p {
                    let mut sf = f == c.q;
                    let mut sb = b == c.p;
                    let mut new = key.clone();
                    for (i, &w) in child_bag.iter().enumerate() {
                        let (fw, bw) = (c.f(key[i]), c.b(key[i]));
                        if d[w][v] != UNREACHABLE {
                            sf |= fw + d[w][v] == f;
                            if bw == b + d[w][v] {
                                new[i] |= SB;
                            }
                        }
                        if d[v][w] != UNREACHABLE {
                            if fw == f + d[v][w] {
                                new[i] |= SF;
                            }
                            sb |= b == bw + d[v][w];
                        }
                    }
                    new.insert(pos, c.enc(f, b, sf, sb));
                    offer(&mut t, new, e.count, || Back::Child(key.clone()));
                }
            }
        }
        t
    }

    fn forget(&self, child_bag: &[Vertex], child: usize, z: Vertex) -> (Table, Vec<(ArcId, usize, usize)>) {
        let c = self.codec;
        let g = &self.inst.graph;
        let pos = child_bag.binary_search(&z).expect("forgotten vertex is in the child bag");
        let at = |v: Vertex| child_bag.binary_search(&v).ok();
        let mut cands: Vec<(ArcId, usize, usize)> = g
            .out_arcs(z)
            .iter()
            .chain(g.in_arcs(z))
            .filter_map(|&a| {
                let (x, y) = g.arc(a);
                Some((a, at(x)?, at(y)?))
            })
            .collect();
        cands.sort_unstable();
        assert!(cands.len() < 64, "bag too large for arc subset enumeration");
        let mut t = Table::new();
        for (key, e) in &self.tables[child] {
            'subsets: for mask in 0u64..(1 << cands.len()) {
                let mut new = key.clone();
                for (j, &(_, ix, iy)) in cands.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        if c.f(key[iy]) != 0 || c.b(key[ix]) != 0 {
                            continue 'subsets;
                        }
                        new[iy] |= SF;
                        new[ix] |= SB;
                    }
                }
                if new[pos] & (SF | SB) != SF | SB {
                    continue;
                }
                for (j, &(a, ix, iy)) in cands.iter().enumerate() {
                    let dominated = mask >> j & 1 == 1 || c.f(key[ix]) < c.q || c.b(key[iy]) < c.p;
                    if !dominated && !self.inst.is_optional(a) {
                        continue 'subsets;
                    }
                }
                new.remove(pos);
                offer(&mut t, new, e.count + mask.count_ones(), || Back::Forget(key.clone(), mask));
            }
        }
        (t, cands)
    }

    fn join(&self, left: usize, right: usize) -> Table {
        let mut by_profile: BTreeMap<Key, Vec<(&Key, u32)>> = BTreeMap::new();
        for (key, e) in &self.tables[right] {
            by_profile.entry(profile(key)).or_default().push((key, e.count));
        }
        let mut t = Table::new();
        for (lk, le) in &self.tables[left] {
            let Some(rights) = by_profile.get(&profile(lk)) else { continue };
            for &(rk, rc) in rights {
                let new: Key = lk.iter().zip(rk).map(|(a, b)| a | b).collect();
                offer(&mut t, new, le.count + rc, || Back::Join(lk.clone(), rk.clone()));
            }
        }
        t
    }

    fn trace(&self, ntd: &NiceTreeDecomposition, root: usize) -> Vec<ArcId> {
        let mut arcs = Vec::new();
        let mut stack = vec![(root, Vec::new())];
        while let Some((i, key)) = stack.pop() {
            let node = &ntd.nodes[i];
            match &self.tables[i][&key].back {
                Back::Leaf => {}
                Back::Child(k) => stack.push((node.children[0], k.clone())),
                Back::Forget(k, mask) => {
                    for (j, &(a, _, _)) in self.candidates[i].iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            arcs.push(a);
                        }
                    }
                    stack.push((node.children[0], k.clone()));
                }
                Back::Join(l, r) => {
                    stack.push((node.children[0], l.clone()));
                    stack.push((node.children[1], r.clone()));
                }
            }
        }
        arcs
    }
}

/// The `(f, b)` part of a key, witness bits cleared.
fn profile(key: &[Code]) -> Key {
    key.iter().map(|&c| c & !(SF | SB)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::verify;
    use crate::graph::Digraph;
    use crate::twdp::{heuristic_td, make_nice};

    fn run(g: &Digraph, p: usize, q: usize) -> (usize, Solution) {
        let td = heuristic_td(g);
        let nice = make_nice(&td, &g.underlying().to_graph()).unwrap();
        solve_twdp(&Instance::new(g.clone(), p, q), &nice).unwrap()
    }

    #[test]
    fn cycle_and_path() {
        let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(run(&c3, 1, 1).0, 1);
        assert_eq!(run(&c3, 0, 0).0, 3);
        assert_eq!(run(&c3, 0, 1).0, 2);
        let path = Digraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (opt, sol) = run(&path, 1, 1);
        assert_eq!(opt, 1);
        assert!(verify(&Instance::new(path, 1, 1), &sol.arcs).unwrap());
    }

    #[test]
    fn empty_graph() {
        assert_eq!(run(&Digraph::empty(0), 1, 1).0, 0);
        assert_eq!(run(&Digraph::empty(3), 2, 2).0, 0);
    }

    #[test]
    fn optional_arcs_are_exempt() {
        let g = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(g.clone(), 0, 0).with_optional(&[1]).unwrap();
        let nice = make_nice(&heuristic_td(&g), &g.underlying().to_graph()).unwrap();
        let (opt, sol) = solve_twdp(&inst, &nice).unwrap();
        assert_eq!((opt, sol.arcs), (1, vec![0]));
    }

    #[test]
    fn memory_ceiling_is_a_resource_error() {
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let nice = make_nice(&heuristic_td(&g), &g.underlying().to_graph()).unwrap();
        let err = solve_twdp_with_stats(&Instance::new(g, 1, 1), &nice, 100).unwrap_err();
        assert!(err.is_resource());
    }
}
