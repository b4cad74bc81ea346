//! Simple finite graphs on dense vertex ids, with the metric and structural
//! operations the rest of the crate is built on.

mod formats;
pub mod generators;

use std::collections::VecDeque;
use std::fmt;

pub use formats::{parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6};

use crate::error::{CoarseError, Result};
use crate::vset::VertexSet;

/// Immutable simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    neighbours: Vec<Vec<usize>>,
    adjacency: Vec<VertexSet>,
    edge_count: usize,
}

/// Shortest-path length, or `Infinite` between different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl serde::Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, repeated edges and ids `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adjacency = vec![VertexSet::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(CoarseError::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(CoarseError::InvalidInput(format!("self-loop at {u}")));
            }
            if !adjacency[u].insert(v) {
                return Err(CoarseError::InvalidInput(format!("repeated edge {u} {v}")));
            }
            adjacency[v].insert(u);
        }
        Ok(Self::from_adjacency(adjacency))
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    pub(crate) fn from_edge_iter(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut adjacency = vec![VertexSet::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Self::from_adjacency(adjacency)
    }

    fn from_adjacency(adjacency: Vec<VertexSet>) -> Graph {
        let neighbours: Vec<Vec<usize>> = adjacency.iter().map(VertexSet::to_vec).collect();
        let edge_count = neighbours.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            neighbours,
            adjacency,
            edge_count,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Self::from_adjacency(vec![VertexSet::new(); n])
    }

    pub fn n(&self) -> usize {
        self.neighbours.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.neighbours[v]
    }

    pub fn neighbour_set(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn closed_neighbourhood(&self, v: usize) -> VertexSet {
        let mut s = self.adjacency[v].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbours
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(CoarseError::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Whether `s` is an independent set.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adjacency[v].is_disjoint(s))
    }

    /// Adjacency rows as 64-bit masks; only valid when `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.neighbours
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect()
    }

    /// Breadth-first distances from a set of sources; `None` for unreachable.
    pub fn bfs(&self, sources: &VertexSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for s in sources {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.neighbours[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(&VertexSet::singleton(u))[v].map_or(Distance::Infinite, Distance::Finite))
    }

    /// All-pairs distances, one BFS per vertex.
    pub fn distance_matrix(&self) -> Vec<Vec<Distance>> {
        (0..self.n())
            .map(|u| {
                self.bfs(&VertexSet::singleton(u))
                    .into_iter()
                    .map(|d| d.map_or(Distance::Infinite, Distance::Finite))
                    .collect()
            })
            .collect()
    }

    /// `N^r[centres]`: vertices within distance `r` of some centre.
    pub fn ball(&self, centres: &VertexSet, r: usize) -> Result<VertexSet> {
        self.check_set(centres)?;
        let mut seen = centres.clone();
        let mut frontier = centres.clone();
        for _ in 0..r {
            let mut next = VertexSet::new();
            for u in &frontier {
                next.union_with(&self.adjacency[u]);
            }
            let next = next.difference(&seen);
            if next.is_empty() {
                break;
            }
            seen.union_with(&next);
            frontier = next;
        }
        Ok(seen)
    }

    /// Components of `G - removed`, ordered by their minimum vertex.
    pub fn components(&self, removed: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(removed)?;
        let mut seen = removed.clone();
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.neighbours[u] {
                    if seen.insert(v) {
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
            out.push(comp);
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.components(&VertexSet::new()).is_ok_and(|c| c.len() <= 1)
    }

    /// `G[keep]` with vertices renumbered in ascending order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(keep)?;
        let to_original = keep.to_vec();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in to_original.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| (local[u], local[v]));
        let graph = Graph::from_edge_iter(to_original.len(), edges);
        Ok(InducedSubgraph { graph, to_original })
    }

    /// Disjoint and no edge between them.
    pub fn anti_complete(&self, x: &VertexSet, y: &VertexSet) -> Result<bool> {
        self.check_set(x)?;
        self.check_set(y)?;
        Ok(x.is_disjoint(y) && x.iter().all(|u| self.adjacency[u].is_disjoint(y)))
    }

    /// Searches for an induced `K_{t,t}`.
    ///
    /// Enumerates independent `t`-sets `A` in lexicographic order and looks for
    /// an independent `t`-set inside the common neighbourhood of `A`. This is
    /// `O(n^t)` candidate sets on each side, which is practical up to roughly
    /// `n = 40, t = 3`.
    pub fn find_induced_biclique(&self, t: usize) -> Result<Option<(VertexSet, VertexSet)>> {
        if t == 0 {
            return Err(CoarseError::InvalidInput("K_{t,t} needs t >= 1".into()));
        }
        let mut found = None;
        self.independent_subsets(&self.vertices(), t, &mut |a| {
            let mut common = self.vertices();
            for v in a {
                common = common.intersection(&self.adjacency[*v]);
            }
            if common.len() < t {
                return false;
            }
            let mut inner = None;
            self.independent_subsets(&common, t, &mut |b| {
                inner = Some(b.iter().copied().collect());
                true
            });
            match inner {
                Some(b) => {
                    found = Some((a.iter().copied().collect(), b));
                    true
                }
                None => false,
            }
        });
        Ok(found)
    }

    pub fn is_ktt_free(&self, t: usize) -> Result<bool> {
        Ok(self.find_induced_biclique(t)?.is_none())
    }

    /// Calls `visit` on independent `size`-subsets of `pool` in lexicographic
    /// order until it returns true.
    fn independent_subsets(&self, pool: &VertexSet, size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        fn go(
            g: &Graph,
            pool: &[usize],
            from: usize,
            size: usize,
            chosen: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if chosen.len() == size {
                return visit(chosen);
            }
            for i in from..pool.len() {
                if pool.len() - i < size - chosen.len() {
                    break;
                }
                let v = pool[i];
                if chosen.iter().any(|&c| g.has_edge(c, v)) {
                    continue;
                }
                chosen.push(v);
                if go(g, pool, i + 1, size, chosen, visit) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        go(self, &pool.to_vec(), 0, size, &mut Vec::new(), visit)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n())?;
        f.debug_list().entries(self.edges()).finish()?;
        f.write_str(")")
    }
}

/// An induced subgraph together with the map from its ids back to the host's.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub to_original: Vec<usize>,
}

impl InducedSubgraph {
    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.to_original[v]).collect()
    }

    /// Maps host ids into local ids, dropping vertices outside the subgraph.
    pub fn restrict(&self, original: &VertexSet) -> VertexSet {
        self.to_original
            .iter()
            .enumerate()
            .filter(|(_, v)| original.contains(**v))
            .map(|(i, _)| i)
            .collect()
    }
}

/// The 2-subdivision of a graph: each edge becomes a path of length 3.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: Graph,
    /// The original vertices, which keep their ids `0..n(h)`.
    pub branch_vertices: VertexSet,
}

pub fn two_subdivision(h: &Graph) -> Subdivision {
    let n = h.n();
    let mut edges = Vec::with_capacity(3 * h.m());
    for (i, (u, v)) in h.edges().enumerate() {
        let w1 = n + 2 * i;
        let w2 = w1 + 1;
        edges.extend([(u, w1), (w1, w2), (w2, v)]);
    }
    Subdivision {
        graph: Graph::from_edge_iter(n + 2 * h.m(), edges),
        branch_vertices: VertexSet::full(n),
    }
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn distances() {
        let p = path(3);
        assert_eq!(p.distance(0, 2).unwrap(), Distance::Finite(2));
        assert_eq!(p.distance(1, 1).unwrap(), Distance::Finite(0));
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.distance(0, 3).unwrap(), Distance::Infinite);
        assert!(matches!(p.distance(0, 3), Err(CoarseError::InvalidVertex { .. })));
    }

    #[test]
    fn balls() {
        let p = path(3);
        assert_eq!(p.ball(&set(&[0]), 1).unwrap(), set(&[0, 1]));
        assert_eq!(p.ball(&set(&[0]), 2).unwrap(), set(&[0, 1, 2]));
        assert_eq!(p.ball(&set(&[0, 2]), 0).unwrap(), set(&[0, 2]));
    }

    #[test]
    fn components_ordering() {
        let p = path(3);
        assert_eq!(p.components(&set(&[1])).unwrap(), vec![set(&[0]), set(&[2])]);
        assert_eq!(p.components(&VertexSet::new()).unwrap(), vec![p.vertices()]);
        assert!(p.components(&p.vertices()).unwrap().is_empty());
    }

    #[test]
    fn induced() {
        let k = complete(3).induced_subgraph(&set(&[0, 2])).unwrap();
        assert_eq!(k.graph, complete(2));
        assert_eq!(k.to_original, vec![0, 2]);
        let c = cycle(5).induced_subgraph(&set(&[1, 2, 3])).unwrap();
        assert_eq!(c.graph, path(3));
        let all = cycle(5).induced_subgraph(&cycle(5).vertices()).unwrap();
        assert_eq!(all.graph, cycle(5));
        assert_eq!(all.to_original, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn anti_completeness() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(g.anti_complete(&set(&[0]), &set(&[2])).unwrap());
        assert!(!g.anti_complete(&set(&[0, 2]), &set(&[2])).unwrap());
        assert!(!g.anti_complete(&set(&[0]), &set(&[1])).unwrap());
    }

    #[test]
    fn subdivisions() {
        let p4 = two_subdivision(&complete(2)).graph;
        assert_eq!(p4.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 3), (2, 3)]);
        assert_eq!(p4.distance(0, 1).unwrap(), Distance::Finite(3));
        let c9 = two_subdivision(&complete(3)).graph;
        assert_eq!((c9.n(), c9.m()), (9, 9));
        assert!(c9.vertices().iter().all(|v| c9.degree(v) == 2) && c9.is_connected());
        let k4 = two_subdivision(&complete(4));
        assert_eq!((k4.graph.n(), k4.graph.m()), (16, 18));
        for u in 0..4 {
            for v in u + 1..4 {
                assert_eq!(k4.graph.distance(u, v).unwrap(), Distance::Finite(3));
            }
        }
    }

    #[test]
    fn bicliques() {
        let c4 = cycle(4);
        let (a, b) = c4.find_induced_biclique(2).unwrap().unwrap();
        assert_eq!((a, b), (set(&[0, 2]), set(&[1, 3])));
        assert!(path(7).is_ktt_free(2).unwrap());
        assert!(complete(5).is_ktt_free(2).unwrap());
        assert!(!complete_bipartite(3, 3).is_ktt_free(3).unwrap());
        assert!(complete_bipartite(3, 3)
            .induced_subgraph(&set(&[0, 1, 3]))
            .unwrap()
            .graph
            .is_ktt_free(2)
            .unwrap());
        assert!(c4.is_ktt_free(0).is_err());
        assert!(!path(2).is_ktt_free(1).unwrap());
        assert!(Graph::empty(3).is_ktt_free(1).unwrap());
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }
}
