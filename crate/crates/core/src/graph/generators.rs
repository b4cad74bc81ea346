//! Standard graph families and the seeded random families used by the test
//! corpora. Every random generator is a pure function of its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;

pub fn complete(n: usize) -> Graph {
    Graph::from_edge_iter(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Graph {
    Graph::from_edge_iter(n, (1..n).map(|v| (v - 1, v)))
}

/// The cycle `C_n`; for `n < 3` there is no simple cycle and this is `P_n`.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edge_iter(n, (1..n).map(|v| (v - 1, v)).chain([(0, n - 1)]))
}

/// `rows x cols` grid, vertex `(i, j)` has id `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Graph::from_edge_iter(rows * cols, edges)
}

/// `K_{s,t}` with sides `0..s` and `s..s+t`.
pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    Graph::from_edge_iter(s + t, (0..s).flat_map(|u| (s..s + t).map(move |v| (u, v))))
}

pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// Erdős–Rényi `G(n, p)`, deterministic in `seed`.
pub fn random(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_iter(n, edges)
}

/// Uniform random recursive tree: vertex `v` attaches to a random earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edge_iter(n, edges)
}

/// A random tree plus each remaining pair independently with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let tree = random_tree(n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let p = p.clamp(0.0, 1.0);
    let mut edges: Vec<_> = tree.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_iter(n, edges)
}

/// A random connected series-parallel graph (treewidth at most 2) on `n`
/// vertices, grown from one edge by subdividing edges, adding parallel paths
/// of length 2 to 4, and attaching pendant vertices.
pub fn random_series_parallel(n: usize, seed: u64) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    let mut count = 2;
    while count < n {
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        match rng.gen_range(0..3) {
            0 => {
                let w = count;
                count += 1;
                edges.retain(|&e| e != (u, v));
                edges.extend([(u, w), (w, v)]);
            }
            1 => {
                let len = rng.gen_range(2..=4).min(n - count + 1);
                let mut prev = u;
                for _ in 1..len {
                    edges.push((prev, count));
                    prev = count;
                    count += 1;
                }
                if prev != u {
                    edges.push((prev, v));
                }
            }
            _ => {
                edges.push((u, count));
                count += 1;
            }
        }
    }
    Graph::from_edge_iter(n, edges)
}

/// Iterator over all labelled simple graphs on `n` vertices (`2^(n choose 2)`).
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        Graph::from_edge_iter(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(complete(3).m(), 3);
        assert_eq!(grid(1, 5), path(5));
        assert_eq!(grid(3, 3).m(), 12);
        assert_eq!(cycle(5).m(), 5);
        assert_eq!(complete_bipartite(2, 3).m(), 6);
        assert_eq!(all_labelled_graphs(4).count(), 64);
    }

    #[test]
    fn seeded_families_are_deterministic() {
        assert_eq!(random(12, 0.3, 7), random(12, 0.3, 7));
        assert_eq!(random_tree(20, 3), random_tree(20, 3));
        assert_eq!(random_series_parallel(20, 3), random_series_parallel(20, 3));
        assert_ne!(random(12, 0.3, 7), random(12, 0.3, 8));
    }

    #[test]
    fn connected_families_are_connected() {
        for seed in 0..20 {
            let t = random_tree(15, seed);
            assert!(t.is_connected() && t.m() == 14);
            assert!(random_connected(14, 0.1, seed).is_connected());
            let sp = random_series_parallel(18, seed);
            assert_eq!(sp.n(), 18);
            assert!(sp.is_connected());
        }
    }
}
