//! `(k, r)`-centred sets: `S ⊆ N^r[Ŝ]` with `|Ŝ| <= k`.
//!
//! Distances are taken either in the whole graph (ambient) or in the
//! subgraph induced by a stated vertex set. The two never mix: induced
//! distances dominate ambient ones, so the induced centre number is never
//! smaller.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::limits::guard;
use crate::vset::VertexSet;

/// Largest set a single covering search accepts (`u128` element masks).
pub const MAX_COVERED: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "host")]
pub enum Mode {
    Ambient,
    InducedOn(VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentreCertificate {
    pub centres: VertexSet,
    pub radius: usize,
    pub mode: Mode,
    pub covered: VertexSet,
}

impl CentreCertificate {
    pub fn size(&self) -> usize {
        self.centres.len()
    }

    /// Recomputes the balls and checks `covered ⊆ N^r[centres]` in the
    /// certificate's host.
    pub fn validate(&self, g: &Graph) -> Result<bool> {
        g.check_set(&self.covered)?;
        g.check_set(&self.centres)?;
        match &self.mode {
            Mode::Ambient => Ok(self.covered.is_subset(&g.ball(&self.centres, self.radius)?)),
            Mode::InducedOn(host) => {
                if !self.centres.is_subset(host) || !self.covered.is_subset(host) {
                    return Ok(false);
                }
                let sub = g.induced_subgraph(host)?;
                let ball = sub.graph.ball(&sub.restrict(&self.centres), self.radius)?;
                Ok(self.covered.is_subset(&sub.lift(&ball)))
            }
        }
    }
}

/// Some certificate with at most `k` centres, if one exists. The returned
/// certificate is the optimum one (see [`centre_number`]).
pub fn is_centred(g: &Graph, s: &VertexSet, k: usize, r: usize, mode: &Mode) -> Result<Option<CentreCertificate>> {
    let problem = CoverProblem::new(g, s, r, mode)?;
    Ok(problem.solve(Some(k)).map(|centres| problem.certificate(centres)))
}

/// Minimum number of radius-`r` balls covering `s`, with the
/// lexicographically smallest optimal centre set.
pub fn centre_number(g: &Graph, s: &VertexSet, r: usize, mode: &Mode) -> Result<(usize, CentreCertificate)> {
    let problem = CoverProblem::new(g, s, r, mode)?;
    let centres = problem
        .solve(None)
        .expect("every vertex of s covers itself, so a cover always exists");
    let cert = problem.certificate(centres);
    Ok((cert.size(), cert))
}

/// Exact set cover of the elements of `s` by candidate balls.
struct CoverProblem {
    s: VertexSet,
    radius: usize,
    mode: Mode,
    /// Candidate centres in ascending host id (original ids).
    candidates: Vec<usize>,
    /// Which elements of `s` each candidate covers.
    cover: Vec<u128>,
    universe: u128,
}

impl CoverProblem {
    fn new(g: &Graph, s: &VertexSet, r: usize, mode: &Mode) -> Result<CoverProblem> {
        g.check_set(s)?;
        guard("centre search", s.len(), MAX_COVERED)?;
        let elements = s.to_vec();
        let (host, lift): (Graph, Vec<usize>) = match mode {
            Mode::Ambient => (g.clone(), (0..g.n()).collect()),
            Mode::InducedOn(on) => {
                g.check_set(on)?;
                if !s.is_subset(on) {
                    return Err(crate::error::CoarseError::Precondition(
                        "induced-on host must contain the covered set".into(),
                    ));
                }
                let sub = g.induced_subgraph(on)?;
                (sub.graph, sub.to_original)
            }
        };
        let local_elements: Vec<usize> = elements.iter().map(|&v| local_index(&lift, v)).collect();
        let local_s: VertexSet = local_elements.iter().copied().collect();
        // Only centres whose ball meets s can matter; a BFS from s finds them.
        let near = host.ball(&local_s, r)?;
        let mut candidates = Vec::new();
        let mut cover = Vec::new();
        for c in &near {
            let ball = host.ball(&VertexSet::singleton(c), r)?;
            let mask = local_elements
                .iter()
                .enumerate()
                .filter(|(_, l)| ball.contains(**l))
                .fold(0u128, |m, (i, _)| m | 1 << i);
            candidates.push(lift[c]);
            cover.push(mask);
        }
        let universe = if elements.len() == 128 {
            u128::MAX
        } else {
            (1u128 << elements.len()) - 1
        };
        Ok(CoverProblem {
            s: s.clone(),
            radius: r,
            mode: mode.clone(),
            candidates,
            cover,
            universe,
        })
    }

    fn certificate(&self, centres: VertexSet) -> CentreCertificate {
        CentreCertificate {
            centres,
            radius: self.radius,
            mode: self.mode.clone(),
            covered: self.s.clone(),
        }
    }

    /// Optimal cover size by iterative deepening, capped at `limit`, then the
    /// lexicographically smallest cover of that size.
    fn solve(&self, limit: Option<usize>) -> Option<VertexSet> {
        let cap = limit.unwrap_or(usize::MAX).min(self.s.len());
        let size = (0..=cap).find(|&m| self.coverable(self.universe, m, 0))?;
        let mut uncovered = self.universe;
        let mut from = 0;
        let mut chosen = VertexSet::new();
        for placed in 0..size {
            let pick = (from..self.candidates.len())
                .find(|&i| {
                    self.cover[i] & uncovered != 0
                        && self.coverable(uncovered & !self.cover[i], size - placed - 1, i + 1)
                })
                .expect("a cover of this size exists");
            chosen.insert(self.candidates[pick]);
            uncovered &= !self.cover[pick];
            from = pick + 1;
        }
        Some(chosen)
    }

    /// Can `uncovered` be covered by at most `budget` candidates with index `>= from`?
    fn coverable(&self, uncovered: u128, budget: usize, from: usize) -> bool {
        if uncovered == 0 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let best_gain = self.cover[from..]
            .iter()
            .map(|c| (c & uncovered).count_ones() as usize)
            .max()
            .unwrap_or(0);
        if best_gain * budget < uncovered.count_ones() as usize {
            return false;
        }
        // Branch on the uncovered element with the fewest covering candidates.
        let mut rest = uncovered;
        let mut branch: Option<(usize, usize)> = None;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let options = self.cover[from..].iter().filter(|c| *c >> e & 1 == 1).count();
            if options == 0 {
                return false;
            }
            if branch.is_none_or(|(_, o)| options < o) {
                branch = Some((e, options));
            }
        }
        let (e, _) = branch.expect("uncovered is nonempty");
        (from..self.candidates.len())
            .filter(|&i| self.cover[i] >> e & 1 == 1)
            .any(|i| self.coverable(uncovered & !self.cover[i], budget - 1, from))
    }
}

fn local_index(lift: &[usize], original: usize) -> usize {
    lift.binary_search(&original).expect("covered set lies inside the host")
}
