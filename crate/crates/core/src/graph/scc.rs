use super::{Digraph, Vertex};

/// Strongly connected components in topological order: every arc between two
/// different components goes from the earlier to the later one. Vertices inside
/// a component are sorted.
pub fn scc_partition(g: &Digraph) -> Vec<Vec<Vertex>> {
    // Iterative Tarjan; components come out in reverse topological order.
    let n = g.n();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    let mut call: Vec<(Vertex, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[v] == usize::MAX {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            let out = g.out_arcs(v);
            if *pos < out.len() {
                let w = g.head(out[*pos]);
                *pos += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.reverse();
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(scc_partition(&g), vec![vec![0], vec![1]]);
    }

    #[test]
    fn cycle_is_one_component() {
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(scc_partition(&g), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn cycle_with_tail() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert_eq!(scc_partition(&g), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn order_respects_arcs_against_index_order() {
        let g = Digraph::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(scc_partition(&g), vec![vec![2], vec![1], vec![0]]);
    }
}
