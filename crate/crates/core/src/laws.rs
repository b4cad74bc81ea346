//! Exhaustive check of `sep <= tw + 1` and `tw <= 4·sep` over every
//! labelled graph up to a given order.

use serde::Serialize;

use crate::error::Result;
use crate::graph::generators::all_labelled_graphs;
use crate::graph::{to_graph6, Graph};
use crate::limits::Limits;
use crate::par::{self, Execution};
use crate::separators::{separation_number_indicator, WEIGHTING_RESTRICTION};
use crate::treedecomp::exact_treewidth;

/// Largest order swept: `n = 7` already means two million graphs.
pub const MAX_LAW_ORDER: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub graph6: String,
    pub sep: usize,
    pub tw: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub max_n: usize,
    pub graphs_checked: usize,
    pub violations: Vec<LawViolation>,
    pub weighting: &'static str,
}

pub fn check_sep_tw_laws(max_n: usize, exec: Execution) -> Result<LawReport> {
    crate::limits::guard("law check", max_n, MAX_LAW_ORDER)?;
    let limits = Limits::default();
    let mut report = LawReport {
        max_n,
        graphs_checked: 0,
        violations: Vec::new(),
        weighting: WEIGHTING_RESTRICTION,
    };
    for n in 0..=max_n {
        let graphs: Vec<Graph> = all_labelled_graphs(n).collect();
        let outcomes = par::map(exec, &graphs, |g| -> Result<Option<LawViolation>> {
            let sep = separation_number_indicator(g, &limits, Execution::Sequential)?;
            let (tw, _) = exact_treewidth(g, &limits)?;
            Ok((sep > tw + 1 || tw > 4 * sep).then(|| LawViolation {
                graph6: to_graph6(g),
                sep,
                tw,
            }))
        });
        report.graphs_checked += graphs.len();
        for outcome in outcomes {
            report.violations.extend(outcome?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let report = check_sep_tw_laws(4, Execution::Parallel).unwrap();
        // 1 + 1 + 2 + 8 + 64 labelled graphs.
        assert_eq!(report.graphs_checked, 76);
        assert!(report.violations.is_empty());
        assert!(check_sep_tw_laws(8, Execution::Sequential).is_err());
    }
}
