//! Exact independence number with a canonical witness.
//!
//! Branch and bound on a maximum-degree vertex, pruned by a greedy clique
//! cover (a colouring of the complement), with the degree-0/1 reduction.
//! The vertex set handled by one call is packed into `u128` masks, so a
//! single call accepts at most 128 vertices.

use crate::error::Result;
use crate::graph::Graph;
use crate::limits::guard;
use crate::vset::VertexSet;

pub const MAX_ALPHA_VERTICES: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaResult {
    pub value: usize,
    /// Lexicographically smallest maximum independent set.
    pub witness: VertexSet,
}

/// `alpha(G)` or `alpha(G[restrict])`.
pub fn alpha(g: &Graph, restrict: Option<&VertexSet>) -> Result<AlphaResult> {
    let local = Local::new(g, restrict)?;
    let value = local.size(local.all);
    let witness = local.lex_smallest(value);
    Ok(AlphaResult {
        value,
        witness: witness.into_iter().map(|i| local.ids[i]).collect(),
    })
}

/// Just the number, skipping witness extraction.
pub fn alpha_value(g: &Graph, restrict: Option<&VertexSet>) -> Result<usize> {
    let local = Local::new(g, restrict)?;
    Ok(local.size(local.all))
}

/// `alpha(N[v] ∩ restrict)`.
pub fn alpha_of_closed_neighbourhood(g: &Graph, v: usize, restrict: Option<&VertexSet>) -> Result<usize> {
    g.check_vertex(v)?;
    let mut ball = g.closed_neighbourhood(v);
    if let Some(r) = restrict {
        ball = ball.intersection(r);
    }
    alpha_value(g, Some(&ball))
}

struct Local {
    ids: Vec<usize>,
    adj: Vec<u128>,
    all: u128,
}

impl Local {
    fn new(g: &Graph, restrict: Option<&VertexSet>) -> Result<Local> {
        let ids = match restrict {
            Some(r) => {
                g.check_set(r)?;
                r.to_vec()
            }
            None => (0..g.n()).collect(),
        };
        guard("independence number", ids.len(), MAX_ALPHA_VERTICES)?;
        let mut position = vec![usize::MAX; g.n()];
        for (i, &v) in ids.iter().enumerate() {
            position[v] = i;
        }
        let adj = ids
            .iter()
            .map(|&v| {
                g.neighbours(v)
                    .iter()
                    .filter(|&&u| position[u] != usize::MAX)
                    .fold(0u128, |m, &u| m | 1 << position[u])
            })
            .collect();
        let all = if ids.len() == 128 {
            u128::MAX
        } else {
            (1u128 << ids.len()) - 1
        };
        Ok(Local { ids, adj, all })
    }

    fn size(&self, cand: u128) -> usize {
        let mut best = 0;
        self.search(cand, 0, &mut best);
        best
    }

    fn search(&self, mut cand: u128, mut current: usize, best: &mut usize) {
        loop {
            if cand == 0 {
                *best = (*best).max(current);
                return;
            }
            if current + self.clique_cover(cand) <= *best {
                return;
            }
            // A vertex of degree <= 1 lies in some maximum independent set.
            let mut pivot = None;
            let mut pivot_degree = 0;
            let mut rest = cand;
            let mut reduced = false;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let d = (self.adj[v] & cand).count_ones();
                if d <= 1 {
                    cand &= !(self.adj[v] | 1 << v);
                    current += 1;
                    reduced = true;
                    break;
                }
                if pivot.is_none() || d > pivot_degree {
                    pivot = Some(v);
                    pivot_degree = d;
                }
            }
            if reduced {
                continue;
            }
            let v = pivot.expect("nonempty candidate set");
            self.search(cand & !(self.adj[v] | 1 << v), current + 1, best);
            cand &= !(1 << v);
        }
    }

    /// Number of cliques in a greedy clique partition of `cand`.
    fn clique_cover(&self, cand: u128) -> usize {
        let mut rest = cand;
        let mut count = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let mut clique = 1u128 << v;
            let mut grow = rest & self.adj[v];
            while grow != 0 {
                let u = grow.trailing_zeros() as usize;
                clique |= 1 << u;
                grow &= self.adj[u] & !(1 << u);
            }
            rest &= !clique;
            count += 1;
        }
        count
    }

    /// Greedy ascending scan: keep `v` whenever the remaining later vertices
    /// can still complete a set of the target size.
    fn lex_smallest(&self, value: usize) -> Vec<usize> {
        let mut chosen = Vec::with_capacity(value);
        let mut cand = self.all;
        let mut need = value;
        while need > 0 {
            let v = cand.trailing_zeros() as usize;
            let later = cand & !(self.adj[v] | ((2u128 << v).wrapping_sub(1)));
            if 1 + self.size(later) >= need {
                chosen.push(v);
                need -= 1;
                cand = later;
            } else {
                cand &= !(1 << v);
            }
        }
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn named_graphs() {
        assert_eq!(alpha(&complete(6), None).unwrap().value, 1);
        assert_eq!(alpha(&cycle(5), None).unwrap().value, 2);
        let k33 = alpha(&complete_bipartite(3, 3), None).unwrap();
        assert_eq!(k33.value, 3);
        assert_eq!(k33.witness.to_vec(), vec![0, 1, 2]);
        assert_eq!(alpha(&Graph::empty(0), None).unwrap().value, 0);
    }

    #[test]
    fn lexicographic_witness() {
        // C_6 has maxima {0,2,4} and {1,3,5}.
        assert_eq!(alpha(&cycle(6), None).unwrap().witness.to_vec(), vec![0, 2, 4]);
        // P_4: {0,2}, {0,3}, {1,3}.
        assert_eq!(alpha(&path(4), None).unwrap().witness.to_vec(), vec![0, 2]);
    }

    #[test]
    fn closed_neighbourhoods() {
        assert_eq!(alpha_of_closed_neighbourhood(&star(7), 0, None).unwrap(), 7);
        assert_eq!(alpha_of_closed_neighbourhood(&complete(5), 3, None).unwrap(), 1);
        let c5 = cycle(5);
        let n0 = c5.closed_neighbourhood(0);
        assert_eq!(alpha_of_closed_neighbourhood(&c5, 0, Some(&n0)).unwrap(), 2);
    }

    #[test]
    fn restriction() {
        let g = path(6);
        let r: VertexSet = [1, 2, 3].into_iter().collect();
        let a = alpha(&g, Some(&r)).unwrap();
        assert_eq!((a.value, a.witness.to_vec()), (2, vec![1, 3]));
    }

    #[test]
    fn guard_above_128() {
        assert!(alpha(&Graph::empty(129), None).is_err());
        assert_eq!(alpha(&Graph::empty(128), None).unwrap().value, 128);
    }
}
