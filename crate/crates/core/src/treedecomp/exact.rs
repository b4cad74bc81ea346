use super::TreeDecomposition;
use crate::error::Result;
use crate::graph::Graph;
use crate::limits::{guard, Limits, TREEWIDTH_HARD_MAX};
use crate::vset::VertexSet;

/// Exact treewidth by dynamic programming over vertex subsets.
///
/// `TW(S)` is the best possible maximum degree at elimination when the
/// vertices of `S` go first:
/// `TW(S) = min_{v ∈ S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is the
/// set of vertices outside `S ∪ {v}` reachable from `v` through `S`. The
/// treewidth is `TW(V)`. Time `O*(2^n)`, memory one byte per subset.
pub fn exact_treewidth(g: &Graph, limits: &Limits) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    guard("exact treewidth", n, limits.treewidth.min(TREEWIDTH_HARD_MAX))?;
    if n == 0 {
        return Ok((0, TreeDecomposition::single_bag(VertexSet::new())));
    }
    let adj = g.adjacency_masks();
    let q = |s: u64, v: usize| -> u32 {
        let mut seen = adj[v] & s;
        let mut frontier = seen;
        let mut boundary = adj[v];
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            boundary |= adj[u];
            let fresh = adj[u] & s & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        (boundary & !s & !(1 << v)).count_ones()
    };
    let full = (1u64 << n) - 1;
    let mut tw = vec![0u8; 1 << n];
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = (tw[prev as usize] as u32).max(q(prev, v));
            best = best.min(cost);
        }
        tw[s as usize] = best as u8;
    }
    // Peel off the last-eliminated vertex of each prefix.
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = tw[s as usize] as u32;
        let v = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .find(|&v| {
                let prev = s & !(1 << v);
                (tw[prev as usize] as u32).max(q(prev, v)) == target
            })
            .expect("the minimum is attained");
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let width = tw[full as usize] as usize;
    let td = decomposition_from_elimination_order(g, &order);
    debug_assert_eq!(td.width().ok(), Some(width));
    Ok((width, td))
}

/// Maximum number of later neighbours at elimination time.
pub fn elimination_width(g: &Graph, order: &[usize]) -> usize {
    eliminate(g, order).iter().map(|h| h.len()).max().unwrap_or(0)
}

/// Later neighbours of each vertex (indexed by position) in the filled graph.
fn eliminate(g: &Graph, order: &[usize]) -> Vec<VertexSet> {
    let mut fill: Vec<VertexSet> = (0..g.n()).map(|v| g.neighbour_set(v).clone()).collect();
    let mut alive = g.vertices();
    let mut out = Vec::with_capacity(order.len());
    for &v in order {
        alive.remove(v);
        let later = fill[v].intersection(&alive);
        for u in &later {
            fill[u].union_with(&later);
            fill[u].remove(u);
        }
        out.push(later);
    }
    out
}

/// One bag `{v} ∪ later(v)` per vertex; the parent of `v`'s bag is the bag
/// of the earliest-eliminated vertex in `later(v)`. Separate trees are
/// chained onto the final root.
pub fn decomposition_from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    if order.is_empty() {
        return TreeDecomposition::single_bag(VertexSet::new());
    }
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let later = eliminate(g, order);
    let mut td = TreeDecomposition::default();
    for (i, &v) in order.iter().enumerate() {
        let mut bag = later[i].clone();
        bag.insert(v);
        td.add_node(bag);
    }
    let last = order.len() - 1;
    for (i, l) in later.iter().enumerate() {
        match l.iter().map(|u| position[u]).min() {
            Some(parent) => td.add_edge(i, parent),
            None if i != last => td.add_edge(i, last),
            None => {}
        }
    }
    td
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::treedecomp::validate;

    fn tw(g: &Graph) -> usize {
        let (w, td) = exact_treewidth(g, &Limits::default()).unwrap();
        assert_eq!(validate(g, &td), Ok(()));
        assert_eq!(td.width().unwrap(), w);
        w
    }

    #[test]
    fn known_values() {
        assert_eq!(tw(&Graph::empty(0)), 0);
        assert_eq!(tw(&Graph::empty(5)), 0);
        assert_eq!(tw(&path(7)), 1);
        assert_eq!(tw(&random_tree(12, 5)), 1);
        for n in 3..10 {
            assert_eq!(tw(&cycle(n)), 2);
        }
        for n in 1..=8 {
            assert_eq!(tw(&complete(n)), n - 1);
        }
        assert_eq!(tw(&grid(3, 3)), 3);
        assert_eq!(tw(&complete_bipartite(3, 4)), 3);
    }

    #[test]
    fn disconnected_graphs_get_a_tree() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (4, 5)]).unwrap();
        assert_eq!(tw(&g), 2);
    }

    #[test]
    fn guard() {
        assert!(exact_treewidth(&path(21), &Limits::default()).is_err());
        assert!(exact_treewidth(&path(29), &Limits::uniform(100)).is_err());
    }
}
