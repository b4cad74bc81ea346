//! Exhaustive check that `K_{2k+2}^{(2)}` has no `(k,1)`-centred separator
//! balanced for its branch vertices.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{CoarseError, Result};
use crate::graph::generators::complete;
use crate::graph::{two_subdivision, Distance, Graph};
use crate::separators::{is_balanced, WeightFunction};
use crate::vset::VertexSet;

/// Largest `k` accepted: `k = 2` already means 666 centre sets on 36 vertices.
const MAX_LEMMA_K: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub k: usize,
    pub host_vertices: usize,
    pub branch_vertices: usize,
    /// Nonempty centre sets of size at most `k`.
    pub centre_sets_checked: usize,
    pub balanced_found: usize,
    pub first_balanced: Option<VertexSet>,
    /// Whether the structural facts were checked for every centre set.
    pub facts_checked: bool,
}

pub fn verify_lemma_obsk2k(k: usize) -> Result<LemmaReport> {
    check_k(k)?;
    let h = complete(2 * k + 2);
    let sub = two_subdivision(&h);
    let g = &sub.graph;
    let x = &sub.branch_vertices;

    for (a, b) in x.to_vec().into_iter().tuple_combinations() {
        if g.distance(a, b)? != Distance::Finite(3) {
            return Err(CoarseError::Internal(format!(
                "branch vertices {a} and {b} are not at distance 3"
            )));
        }
    }
    let paths: Vec<(usize, usize, usize, usize)> = h
        .edges()
        .enumerate()
        .map(|(i, (u, v))| (u, v, h.n() + 2 * i, h.n() + 2 * i + 1))
        .collect();

    let mut report = sweep(g, x, k, |centres, separator| {
        let survivors = x.difference(separator);
        if survivors.len() + centres.len() < x.len() {
            return Err(format!("{centres:?}: a ball holds two branch vertices"));
        }
        for &(u, v, w1, w2) in &paths {
            if survivors.contains(u) && survivors.contains(v) && (separator.contains(w1) || separator.contains(w2)) {
                return Err(format!("{centres:?}: path {u}-{w1}-{w2}-{v} meets the separator"));
            }
        }
        let components = g.components(separator).map_err(|e| e.to_string())?;
        if let Some(first) = survivors.first() {
            let home = components
                .iter()
                .find(|c| c.contains(first))
                .expect("survivor lies in a component");
            if !survivors.is_subset(home) {
                return Err(format!("{centres:?}: surviving branch vertices are split"));
            }
        }
        Ok(())
    })?;
    report.facts_checked = true;
    Ok(report)
}

/// The same sweep on the unsubdivided `K_{2k+2}` with every vertex marked.
pub fn lemma_control_unsubdivided(k: usize) -> Result<LemmaReport> {
    check_k(k)?;
    let g = complete(2 * k + 2);
    sweep(&g, &g.vertices(), k, |_, _| Ok(()))
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_LEMMA_K {
        return Err(CoarseError::ScaleGuard {
            operation: "lemma verification",
            size: k,
            limit: MAX_LEMMA_K,
        });
    }
    Ok(())
}

fn sweep<F>(g: &Graph, x: &VertexSet, k: usize, mut facts: F) -> Result<LemmaReport>
where
    F: FnMut(&VertexSet, &VertexSet) -> std::result::Result<(), String>,
{
    let mu = WeightFunction::indicator(g.n(), x);
    let mut report = LemmaReport {
        k,
        host_vertices: g.n(),
        branch_vertices: x.len(),
        centre_sets_checked: 0,
        balanced_found: 0,
        first_balanced: None,
        facts_checked: false,
    };
    for size in 1..=k {
        for centres in (0..g.n()).combinations(size) {
            let centres: VertexSet = centres.into_iter().collect();
            let separator = g.ball(&centres, 1)?;
            report.centre_sets_checked += 1;
            facts(&centres, &separator).map_err(CoarseError::Internal)?;
            if is_balanced(g, &separator, &mu)?.balanced {
                report.balanced_found += 1;
                report.first_balanced.get_or_insert(centres);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let r1 = verify_lemma_obsk2k(1).unwrap();
        assert_eq!(
            (r1.host_vertices, r1.centre_sets_checked, r1.balanced_found),
            (16, 16, 0)
        );
        assert!(r1.facts_checked);
        let r2 = verify_lemma_obsk2k(2).unwrap();
        assert_eq!(
            (r2.host_vertices, r2.centre_sets_checked, r2.balanced_found),
            (36, 666, 0)
        );
    }

    #[test]
    fn control_finds_balls() {
        let c = lemma_control_unsubdivided(1).unwrap();
        assert_eq!(c.centre_sets_checked, 4);
        assert!(c.balanced_found > 0);
        assert_eq!(c.first_balanced, Some(VertexSet::singleton(0)));
    }

    #[test]
    fn unsupported_k() {
        assert!(matches!(verify_lemma_obsk2k(3), Err(CoarseError::ScaleGuard { .. })));
        assert!(verify_lemma_obsk2k(0).is_err());
    }
}
