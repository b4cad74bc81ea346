//! The classical balanced-separator recursion.
//!
//! `build(U, W)` keeps a tracked set `W ⊆ U` that contains every vertex of
//! `U` with a neighbour outside `U`. It pads `W` to `min(3k + 1, |U|)`
//! vertices, asks for a balanced separator `S` of `W` inside `G[U]` with
//! `|S| <= k`, emits the bag `W ∪ S`, and recurses into each component `C`
//! of `G[U] - S` with `U_C = C ∪ (N(C) ∩ S)` and `W_C = (W ∩ C) ∪ (N(C) ∩ S)`.
//! Since `|W ∩ C| <= |W|/2`, the child's tracked set has at most
//! `(3k + 1)/2 + k <= 3k + 1` vertices, and every bag has at most `4k + 1`.

use serde::Serialize;

use super::TreeDecomposition;
use crate::error::Result;
use crate::graph::Graph;
use crate::limits::{guard, Limits};
use crate::separators::{min_balanced_separator, WEIGHTING_RESTRICTION};
use crate::vset::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicReport {
    pub max_sep_size: usize,
    /// `3k + 1`: tracked-set size the recursion pads to.
    pub tracked_cap: usize,
    /// `4k`: the width the accounting guarantees.
    pub width_bound: usize,
    pub width: usize,
    pub separator_calls: usize,
    pub weighting: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicOutcome {
    Built {
        decomposition: TreeDecomposition,
        report: ClassicReport,
    },
    /// `tracked` has no balanced separator of the allowed size inside `G[piece]`.
    OracleFailure { piece: VertexSet, tracked: VertexSet },
}

pub fn decomposition_from_separator_oracle(g: &Graph, max_sep_size: usize, limits: &Limits) -> Result<ClassicOutcome> {
    if max_sep_size == 0 {
        return Err(crate::error::CoarseError::InvalidInput(
            "max_sep_size must be at least 1".into(),
        ));
    }
    guard("separator-driven decomposition", g.n(), limits.treewidth)?;
    let mut builder = Builder {
        g,
        k: max_sep_size,
        td: TreeDecomposition::default(),
        calls: 0,
    };
    match builder.build(&g.vertices(), VertexSet::new())? {
        Err((piece, tracked)) => Ok(ClassicOutcome::OracleFailure { piece, tracked }),
        Ok(_) => {
            let td = builder.td;
            let report = ClassicReport {
                max_sep_size,
                tracked_cap: 3 * max_sep_size + 1,
                width_bound: 4 * max_sep_size,
                width: td.width()?,
                separator_calls: builder.calls,
                weighting: WEIGHTING_RESTRICTION,
            };
            Ok(ClassicOutcome::Built {
                decomposition: td,
                report,
            })
        }
    }
}

struct Builder<'a> {
    g: &'a Graph,
    k: usize,
    td: TreeDecomposition,
    calls: usize,
}

type Step = std::result::Result<usize, (VertexSet, VertexSet)>;

impl Builder<'_> {
    fn build(&mut self, piece: &VertexSet, mut tracked: VertexSet) -> Result<Step> {
        let cap = 3 * self.k + 1;
        for v in piece.difference(&tracked).iter() {
            if tracked.len() >= cap {
                break;
            }
            tracked.insert(v);
        }
        let sub = self.g.induced_subgraph(piece)?;
        self.calls += 1;
        let Some(local_sep) = min_balanced_separator(&sub.graph, &sub.restrict(&tracked), self.k)? else {
            return Ok(Err((piece.clone(), tracked)));
        };
        let separator = sub.lift(&local_sep);
        let node = self.td.add_node(tracked.union(&separator));
        if piece.len() <= cap {
            return Ok(Ok(node));
        }
        for comp in sub.graph.components(&local_sep)? {
            let comp = sub.lift(&comp);
            let mut attach = VertexSet::new();
            for c in &comp {
                attach.union_with(self.g.neighbour_set(c));
            }
            let attach = attach.intersection(&separator);
            let child_piece = comp.union(&attach);
            let child_tracked = tracked.intersection(&comp).union(&attach);
            match self.build(&child_piece, child_tracked)? {
                Ok(child) => self.td.add_edge(node, child),
                failure => return Ok(failure),
            }
        }
        Ok(Ok(node))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::treedecomp::validate;

    fn built(g: &Graph, k: usize) -> (TreeDecomposition, ClassicReport) {
        match decomposition_from_separator_oracle(g, k, &Limits::default()).unwrap() {
            ClassicOutcome::Built { decomposition, report } => {
                assert_eq!(validate(g, &decomposition), Ok(()));
                (decomposition, report)
            }
            other => panic!("expected a decomposition, got {other:?}"),
        }
    }

    #[test]
    fn paths_with_unit_separators() {
        for n in [1, 2, 5, 10, 17] {
            let (td, report) = built(&path(n), 1);
            assert!(report.width <= 3);
            assert_eq!(td.width().unwrap(), report.width);
        }
        let (td, _) = built(&Graph::empty(1), 1);
        assert_eq!(td.bags.len(), 1);
    }

    #[test]
    fn complete_graph_defeats_small_separators() {
        match decomposition_from_separator_oracle(&complete(5), 2, &Limits::default()).unwrap() {
            ClassicOutcome::OracleFailure { tracked, .. } => assert_eq!(tracked, complete(5).vertices()),
            other => panic!("{other:?}"),
        }
        let (_, report) = built(&complete(5), 3);
        assert_eq!(report.width, 4);
    }

    #[test]
    fn grids_and_disconnected_graphs() {
        let (_, report) = built(&grid(4, 4), 4);
        assert!(report.width <= 16);
        let g = Graph::from_edges(9, &[(0, 1), (1, 2), (3, 4), (5, 6), (6, 7), (7, 8)]).unwrap();
        built(&g, 1);
    }

    #[test]
    fn rejects_zero_budget() {
        assert!(decomposition_from_separator_oracle(&path(3), 0, &Limits::default()).is_err());
    }
}
