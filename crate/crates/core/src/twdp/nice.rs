use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(Vertex),
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Children always precede their parent in `nodes`,
/// and the root bag is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub n: usize,
    pub nodes: Vec<NiceNode>,
    pub root: Option<usize>,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> isize {
        self.nodes.iter().map(|t| t.bag.len() as isize).max().unwrap_or(0) - 1
    }

    /// The same bags and tree as a plain decomposition.
    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|t| t.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition::new(self.n, bags, edges)
    }

    /// Checks the node-type invariants and the decomposition properties.
    pub fn validate(&self, g: &UndirectedGraph) -> Result<()> {
        let err = |i: usize, msg: &str| Err(Error::Decomposition(format!("node {i}: {msg}")));
        for (i, t) in self.nodes.iter().enumerate() {
            if t.children.iter().any(|&c| c >= i) {
                return err(i, "child listed after its parent");
            }
            let child_bag = |j: usize| &self.nodes[t.children[j]].bag;
            let ok = match (t.kind, t.children.len()) {
                (NodeKind::Leaf(v), 0) => t.bag == [v],
                (NodeKind::Introduce(v), 1) => {
                    t.bag.contains(&v) && !child_bag(0).contains(&v) && without(&t.bag, v) == *child_bag(0)
                }
                (NodeKind::Forget(v), 1) => {
                    !t.bag.contains(&v) && child_bag(0).contains(&v) && without(child_bag(0), v) == t.bag
                }
                (NodeKind::Join, 2) => *child_bag(0) == t.bag && *child_bag(1) == t.bag,
                _ => false,
            };
            if !ok {
                return err(i, &format!("{:?} node breaks its invariant", t.kind));
            }
        }
        if let Some(r) = self.root {
            if !self.nodes[r].bag.is_empty() {
                return err(r, "root bag is not empty");
            }
        }
        self.to_td().validate(g)
    }
}

fn without(bag: &[Vertex], v: Vertex) -> Vec<Vertex> {
    bag.iter().copied().filter(|&w| w != v).collect()
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn introduce(&mut self, top: usize, v: Vertex) -> usize {
        let mut bag = self.nodes[top].bag.clone();
        let pos = bag.binary_search(&v).expect_err("vertex already present");
        bag.insert(pos, v);
        self.push(NodeKind::Introduce(v), bag, vec![top])
    }

    fn forget(&mut self, top: usize, v: Vertex) -> usize {
        let bag = without(&self.nodes[top].bag, v);
        self.push(NodeKind::Forget(v), bag, vec![top])
    }

    /// Forgets then introduces along a chain until the top bag equals `target`.
    fn morph(&mut self, mut top: usize, target: &[Vertex]) -> usize {
        let current = self.nodes[top].bag.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            top = self.forget(top, v);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            top = self.introduce(top, v);
        }
        top
    }

    /// A chain from a leaf that ends with bag `target`.
    fn grow(&mut self, target: &[Vertex]) -> usize {
        let mut top = self.push(NodeKind::Leaf(target[0]), vec![target[0]], Vec::new());
        for &v in &target[1..] {
            top = self.introduce(top, v);
        }
        top
    }
}

/// Converts a valid decomposition of `g` into a nice one of the same width,
/// rooted at bag 0 and closed off by forgetting the root bag.
pub fn make_nice(td: &TreeDecomposition, g: &UndirectedGraph) -> Result<NiceTreeDecomposition> {
    td.validate(g)?;
    let mut b = Builder { nodes: Vec::new() };
    if td.bags.is_empty() {
        return Ok(NiceTreeDecomposition { n: td.n, nodes: b.nodes, root: None });
    }
    let adj = td.adjacency();
    // Iterative post-order from bag 0.
    let mut parent = vec![usize::MAX; td.bags.len()];
    let mut order = Vec::with_capacity(td.bags.len());
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(i) = stack.pop() {
        order.push(i);
        for &j in &adj[i] {
            if parent[j] == usize::MAX {
                parent[j] = i;
                stack.push(j);
            }
        }
    }
    let mut built: Vec<Option<usize>> = vec![None; td.bags.len()];
    for &i in order.iter().rev() {
        let bag = &td.bags[i];
        let mut tops = Vec::new();
        for &j in &adj[i] {
            if parent[j] == i && j != i {
                if let Some(t) = built[j] {
                    if bag.is_empty() {
                        // Close the child off entirely; it joins nothing.
                        let mut t = t;
                        for v in b.nodes[t].bag.clone() {
                            t = b.forget(t, v);
                        }
                        tops.push(t);
                    } else {
                        tops.push(b.morph(t, bag));
                    }
                }
            }
        }
        if bag.is_empty() {
            built[i] = chain_empty(&mut b, tops);
            continue;
        }
        let mut top = match tops.len() {
            0 => b.grow(bag),
            _ => tops[0],
        };
        for &other in tops.iter().skip(1) {
            top = b.push(NodeKind::Join, bag.clone(), vec![top, other]);
        }
        built[i] = Some(top);
    }
    let mut root = built[0];
    if let Some(mut t) = root {
        for v in b.nodes[t].bag.clone() {
            t = b.forget(t, v);
        }
        root = Some(t);
    }
    let nice = NiceTreeDecomposition { n: td.n, nodes: b.nodes, root };
    debug_assert!(nice.validate(g).is_ok());
    Ok(nice)
}

/// Subtrees whose top bags are empty, joined pairwise.
fn chain_empty(b: &mut Builder, tops: Vec<usize>) -> Option<usize> {
    let mut iter = tops.into_iter();
    let mut acc = iter.next()?;
    for t in iter {
        acc = b.push(NodeKind::Join, Vec::new(), vec![acc, t]);
    }
    Some(acc)
}
