//! Balanced separators.
//!
//! `S` is balanced for `μ` when every component of `G - S` carries at most
//! half of `μ(V(G))`; the separator's own weight counts in the total. Weights
//! are exact integers, so the test is `2·μ(C) <= μ(V)`.
//!
//! The "for every weighting" quantifier is decided over 0/1 indicator
//! weightings only. Indicator separation lower-bounds the real-weighted
//! separation number; every report that depends on it says so.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{CoarseError, Result};
use crate::graph::Graph;
use crate::limits::{guard, Limits, SWEEP_HARD_MAX};
use crate::par::{self, Execution};
use crate::vset::VertexSet;

/// Label stamped into reports whose quantifier runs over indicator sets.
pub const WEIGHTING_RESTRICTION: &str = "indicator weightings only";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFunction {
    weights: Vec<u64>,
}

impl WeightFunction {
    pub fn new(weights: Vec<u64>) -> Self {
        WeightFunction { weights }
    }

    pub fn indicator(n: usize, x: &VertexSet) -> Self {
        WeightFunction {
            weights: (0..n).map(|v| x.contains(v) as u64).collect(),
        }
    }

    pub fn uniform(n: usize, w: u64) -> Self {
        WeightFunction { weights: vec![w; n] }
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn of(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.weights[v]).sum()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Parses `vertex weight` lines; unlisted vertices weigh 0.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut weights = vec![0; n];
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [v, w] = fields[..] else {
                return Err(CoarseError::parse(i + 1, 0, "expected `vertex weight`"));
            };
            let v: usize = v
                .parse()
                .map_err(|_| CoarseError::parse(i + 1, 0, format!("bad vertex {v:?}")))?;
            if v >= n {
                return Err(CoarseError::parse(i + 1, 0, format!("vertex {v} out of range 0..{n}")));
            }
            if w.starts_with('-') {
                return Err(CoarseError::parse(i + 1, 0, format!("negative weight {w}")));
            }
            weights[v] = w
                .parse()
                .map_err(|_| CoarseError::parse(i + 1, 0, format!("bad weight {w:?}")))?;
        }
        Ok(WeightFunction { weights })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balance {
    pub balanced: bool,
    pub heaviest_component: Option<VertexSet>,
    pub heaviest_weight: u64,
    pub total_weight: u64,
}

pub fn is_balanced(g: &Graph, s: &VertexSet, mu: &WeightFunction) -> Result<Balance> {
    if mu.len() != g.n() {
        return Err(CoarseError::InvalidInput(format!(
            "weight function covers {} vertices, graph has {}",
            mu.len(),
            g.n()
        )));
    }
    let total = mu.total();
    let mut heaviest: Option<(u64, VertexSet)> = None;
    for comp in g.components(s)? {
        let w = mu.of(&comp);
        if heaviest.as_ref().is_none_or(|(h, _)| w > *h) {
            heaviest = Some((w, comp));
        }
    }
    let heaviest_weight = heaviest.as_ref().map_or(0, |(w, _)| *w);
    Ok(Balance {
        balanced: 2 * heaviest_weight <= total,
        heaviest_component: heaviest.map(|(_, c)| c),
        heaviest_weight,
        total_weight: total,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorWitness {
    pub centres: VertexSet,
    pub radius: usize,
    pub separator: VertexSet,
    pub heaviest_component_weight: u64,
    pub total_weight: u64,
}

/// First centre set, by size then lexicographically, whose `r`-ball is
/// balanced for `μ`. Costs `O(n^k)` balance checks.
pub fn find_centred_balanced_separator(
    g: &Graph,
    mu: &WeightFunction,
    k: usize,
    r: usize,
) -> Result<Option<SeparatorWitness>> {
    let singles: Vec<VertexSet> = (0..g.n())
        .map(|v| g.ball(&VertexSet::singleton(v), r))
        .collect::<Result<_>>()?;
    for size in 0..=k.min(g.n()) {
        for centres in (0..g.n()).combinations(size) {
            let mut separator = VertexSet::new();
            for &c in &centres {
                separator.union_with(&singles[c]);
            }
            let balance = is_balanced(g, &separator, mu)?;
            if balance.balanced {
                return Ok(Some(SeparatorWitness {
                    centres: centres.into_iter().collect(),
                    radius: r,
                    separator,
                    heaviest_component_weight: balance.heaviest_weight,
                    total_weight: balance.total_weight,
                }));
            }
        }
    }
    Ok(None)
}

/// Smallest balanced separator for the indicator of `x` (any vertex set, not
/// necessarily centred), by size then lexicographically, up to `max_size`.
pub fn min_balanced_separator(g: &Graph, x: &VertexSet, max_size: usize) -> Result<Option<VertexSet>> {
    let mu = WeightFunction::indicator(g.n(), x);
    for size in 0..=max_size.min(g.n()) {
        for s in (0..g.n()).combinations(size) {
            let s: VertexSet = s.into_iter().collect();
            if is_balanced(g, &s, &mu)?.balanced {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmitsReport {
    pub admits: bool,
    /// First failing indicator set in ascending bitmask order.
    pub failing_set: Option<VertexSet>,
    pub weightings_checked: u64,
    pub distinct_separators: usize,
    pub weighting: &'static str,
}

/// Whether every indicator weighting has a balanced separator that is a
/// union of at most `k` balls of radius `r`.
pub fn admits_kr_balanced_separators_indicator(
    g: &Graph,
    k: usize,
    r: usize,
    limits: &Limits,
    exec: Execution,
) -> Result<AdmitsReport> {
    let n = g.n();
    guard("indicator sweep", n, limits.admits.min(SWEEP_HARD_MAX))?;
    let masks = MaskGraph::new(g);
    let singles: Vec<u64> = (0..n)
        .map(|v| Ok(to_mask(&g.ball(&VertexSet::singleton(v), r)?)))
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut separators = Vec::new();
    for size in 0..=k.min(n) {
        for centres in (0..n).combinations(size) {
            let s = centres.iter().fold(0u64, |m, &c| m | singles[c]);
            if seen.insert(s) {
                separators.push(masks.components(s));
            }
        }
    }
    let total = 1u64 << n;
    let failing = par::find_first(exec, total as usize, |x| {
        let x = x as u64;
        let weight = x.count_ones();
        !separators
            .iter()
            .any(|comps| comps.iter().all(|c| 2 * (c & x).count_ones() <= weight))
    });
    Ok(AdmitsReport {
        admits: failing.is_none(),
        failing_set: failing.map(|x| from_mask(x as u64)),
        weightings_checked: failing.map_or(total, |x| x as u64 + 1),
        distinct_separators: separators.len(),
        weighting: WEIGHTING_RESTRICTION,
    })
}

/// Indicator separation number: the maximum over `X ⊆ V` of the smallest
/// balanced separator for `X` (any vertex set, radius ignored).
pub fn separation_number_indicator(g: &Graph, limits: &Limits, exec: Execution) -> Result<usize> {
    let n = g.n();
    guard("separation number", n, limits.separation.min(SWEEP_HARD_MAX))?;
    let masks = MaskGraph::new(g);
    // sep(X) <= ceil(|X|/2): drop floor(|X|/2) members of X and keep the rest.
    let max_size = n.div_ceil(2);
    let by_size: Vec<Vec<Vec<u64>>> = (0..=max_size)
        .map(|size| {
            let sets: Vec<u64> = (0..n)
                .combinations(size)
                .map(|c| c.into_iter().fold(0u64, |m, v| m | 1 << v))
                .collect();
            par::map(exec, &sets, |&s| masks.components(s))
        })
        .collect();
    let best = AtomicUsize::new(0);
    let value = par::max_range(exec, 1usize << n, |x| {
        let x = x as u64;
        let weight = x.count_ones();
        let upper = (weight as usize).div_ceil(2);
        let known = best.load(Ordering::Relaxed);
        if upper <= known {
            return 0;
        }
        let balanced = |comps: &Vec<u64>| comps.iter().all(|c| 2 * (c & x).count_ones() <= weight);
        if by_size[..=known].iter().flatten().any(balanced) {
            return 0;
        }
        let size = (known + 1..=upper)
            .find(|&s| by_size[s].iter().any(balanced))
            .expect("X minus half its members is a balanced separator");
        best.fetch_max(size, Ordering::Relaxed);
        size
    });
    Ok(value)
}

/// Bitmask view of a graph on at most 64 vertices.
pub(crate) struct MaskGraph {
    adj: Vec<u64>,
    all: u64,
}

impl MaskGraph {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.n();
        MaskGraph {
            adj: g.adjacency_masks(),
            all: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    /// Components of `G - removed` as masks, ordered by minimum vertex.
    pub(crate) fn components(&self, removed: u64) -> Vec<u64> {
        let mut rest = self.all & !removed;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & rest & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }
}

pub(crate) fn to_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0u64, |m, v| m | 1 << v)
}

pub(crate) fn from_mask(m: u64) -> VertexSet {
    VertexSet::from_mask(m as u128)
}
