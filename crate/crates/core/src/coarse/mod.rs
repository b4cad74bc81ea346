//! Centred tree-decompositions from radius-1 balanced separators.
//!
//! [`build_coarse_decomposition`] turns the inductive argument into a
//! recursion on the independence number. At each level:
//!
//! 1. if `α(G)` is at most the base threshold, `V(G)` is a single bag;
//! 2. `X` is padded (ascending ids) until `α(X)` reaches the cap;
//! 3. `Z = Z_G ∪ Z_X` collects the vertices whose closed neighbourhood holds
//!    a large share of `α(G)` or `α(X)`; `G' = G - Z`;
//! 4. `I_G`, `I_X` are the canonical maximum independent sets of `G'` and
//!    of `X ∖ Z`;
//! 5. `S_G = N_{G'}[Ŝ_G]` and `S_X = N_{G'}[Ŝ_X]` are balanced for `I_G` and
//!    `I_X` with `|Ŝ_G|, |Ŝ_X| <= k`; `S = S_G ∪ S_X`;
//! 6. each component `C` of `G' - S` recurses on
//!    `C' = G[C ∪ S ∪ Z]` with `X_C = ((C ∪ S) ∩ X) ∪ Ŝ ∪ Z`;
//! 7. all children hang off one hub bag `N_G[X] ∪ S ∪ Z`.
//!
//! Separators are only requested for the sets the recursion meets, so a
//! graph violating the separator hypothesis shows up as a
//! [`HypothesisFailure`] naming the offending independent set.
//!
//! Bag certificates are computed afterwards by exact covering in the
//! subgraph induced by each bag, at radius 2.

mod lemma;
mod quasi;
mod scan;

pub use lemma::{lemma_control_unsubdivided, verify_lemma_obsk2k, LemmaReport};
pub use num_rational::Rational64;
pub use quasi::{verify_quasi_isometry, QiViolation};
pub use scan::{
    builtin_corpus, conjecture_scan, read_corpus_dir, write_scan_csv, CorpusEntry, RowStatus, ScanRow, SCAN_HEADER,
};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::centred::{centre_number, CentreCertificate, Mode};
use crate::error::{CoarseError, Result};
use crate::graph::Graph;
use crate::independence::{alpha, alpha_value};
use crate::separators::{find_centred_balanced_separator, WeightFunction};
use crate::treedecomp::{validate, TreeDecomposition};
use crate::vset::VertexSet;

/// Thresholds of the construction.
///
/// [`ConstructionParams::literal`] gives the literal values (`20k`, `20dk`,
/// `10dk` with `d = (512·20k)^((2k+2)^(2t))`); they dwarf every graph this
/// crate can hold, so every build with them is a single bag.
/// [`ConstructionParams::desk`] gives small values that make the recursion
/// actually run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub k: usize,
    pub t: usize,
    pub z_fraction_denominator: u64,
    pub base_alpha_threshold: BigUint,
    pub x_alpha_cap: BigUint,
}

impl ConstructionParams {
    pub fn literal(k: usize, t: usize) -> Self {
        let d = formula_d(k, t);
        let dk = &d * BigUint::from(k);
        ConstructionParams {
            k,
            t,
            z_fraction_denominator: 20 * k as u64,
            base_alpha_threshold: &dk * 20u32,
            x_alpha_cap: &dk * 10u32,
        }
    }

    /// `z_fraction_denominator = k`, `x_alpha_cap = base / 2`.
    pub fn desk(k: usize, t: usize, base_alpha_threshold: usize) -> Self {
        ConstructionParams {
            k,
            t,
            z_fraction_denominator: k.max(1) as u64,
            base_alpha_threshold: base_alpha_threshold.into(),
            x_alpha_cap: (base_alpha_threshold / 2).into(),
        }
    }

    pub fn formula_d(&self) -> BigUint {
        formula_d(self.k, self.t)
    }

    /// Whether all three thresholds equal the literal formula values.
    pub fn uses_literal_thresholds(&self) -> bool {
        *self == Self::literal(self.k, self.t)
    }

    pub fn check(&self) -> Result<()> {
        if self.z_fraction_denominator == 0 {
            return Err(CoarseError::InvalidInput("z_fraction_denominator must be >= 1".into()));
        }
        if self.x_alpha_cap > self.base_alpha_threshold {
            return Err(CoarseError::InvalidInput(
                "x_alpha_cap exceeds base_alpha_threshold".into(),
            ));
        }
        Ok(())
    }
}

/// `(512·20k)^((2k+2)^(2t))`, exactly.
pub fn formula_d(k: usize, t: usize) -> BigUint {
    let exponent = BigUint::from(2 * k as u64 + 2).pow(2 * t as u32);
    let exponent = u32::try_from(exponent).expect("exponent of d fits in u32 for supported k, t");
    BigUint::from(512u64 * 20 * k as u64).pow(exponent)
}

fn at_most(value: usize, threshold: &BigUint) -> bool {
    BigUint::from(value) <= *threshold
}

/// The set of independent vertices that no `(k,1)`-centred set separates,
/// found inside the induced subgraph on `subgraph` (original ids).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFailure {
    pub k: usize,
    pub subgraph: VertexSet,
    pub independent_set: VertexSet,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    pub recursion_steps: usize,
    pub base_cases: usize,
    pub guard_trips: usize,
    /// Steps where `α(X_C)` exceeded the cap (allowed only with desk params).
    pub cap_exceeded: usize,
    pub max_depth: usize,
    /// Largest centre count of the hub certificate assembled from `X`, `Ŝ`, `Z`.
    pub hub_accounting_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentredDecomposition {
    pub decomposition: TreeDecomposition,
    /// One radius-2 certificate per node, induced on the bag.
    pub certificates: Vec<CentreCertificate>,
    pub realized_k: usize,
    pub hub_node: usize,
    pub x: VertexSet,
    pub guard_tripped: bool,
    pub stats: BuildStats,
}

/// `Z_G ∪ Z_X` in exact arithmetic: `v ∈ Z_G` iff `den·α(N[v]) >= α(G)`,
/// `v ∈ Z_X` iff `den·α(N[v] ∩ X) >= α(X)`.
pub fn compute_z(g: &Graph, x: &VertexSet, params: &ConstructionParams) -> Result<VertexSet> {
    g.check_set(x)?;
    let den = params.z_fraction_denominator;
    let alpha_g = alpha_value(g, None)? as u64;
    let alpha_x = alpha_value(g, Some(x))? as u64;
    let mut z = VertexSet::new();
    for v in 0..g.n() {
        let ball = g.closed_neighbourhood(v);
        let in_zg = den * alpha_value(g, Some(&ball))? as u64 >= alpha_g;
        if in_zg || den * alpha_value(g, Some(&ball.intersection(x)))? as u64 >= alpha_x {
            z.insert(v);
        }
    }
    Ok(z)
}

/// Adds vertices in ascending order, keeping each one that raises `α(X)`,
/// until `α(X) = target`. Unchanged when `α(x) >= target` already.
pub fn enlarge_x(g: &Graph, x: &VertexSet, target: usize) -> Result<VertexSet> {
    g.check_set(x)?;
    let mut current = alpha_value(g, Some(x))?;
    if current >= target {
        return Ok(x.clone());
    }
    let alpha_g = alpha_value(g, None)?;
    if alpha_g < target {
        return Err(CoarseError::Precondition(format!(
            "cannot raise α(X) to {target}: α(G) = {alpha_g}"
        )));
    }
    let mut out = x.clone();
    for v in 0..g.n() {
        if current == target {
            break;
        }
        if out.contains(v) {
            continue;
        }
        out.insert(v);
        let next = alpha_value(g, Some(&out))?;
        if next > current {
            current = next;
        } else {
            out.remove(v);
        }
    }
    Ok(out)
}

/// Builds a radius-2 centred tree-decomposition of `g` with a bag containing
/// `N[x]`. Requires `α(x) <= x_alpha_cap`.
pub fn build_coarse_decomposition(
    g: &Graph,
    x: &VertexSet,
    params: &ConstructionParams,
) -> Result<CentredDecomposition> {
    params.check()?;
    g.check_set(x)?;
    let alpha_x = alpha_value(g, Some(x))?;
    if !at_most(alpha_x, &params.x_alpha_cap) {
        return Err(CoarseError::Precondition(format!(
            "α(X) = {alpha_x} exceeds x_alpha_cap = {}",
            params.x_alpha_cap
        )));
    }
    let mut builder = Builder {
        params,
        strict: params.uses_literal_thresholds(),
        stats: BuildStats::default(),
    };
    let root = Piece {
        graph: g.clone(),
        ids: (0..g.n()).collect(),
    };
    let (decomposition, hub_node) = builder.build(&root, x.clone(), 0)?;

    if let Err(violations) = validate(g, &decomposition) {
        return Err(CoarseError::Internal(format!(
            "construction produced an invalid decomposition: {violations:?}"
        )));
    }
    let hub_bag = &decomposition.bags[hub_node];
    if !g.ball(x, 1)?.is_subset(hub_bag) {
        return Err(CoarseError::Internal("hub bag misses part of N[X]".into()));
    }
    let certificates = decomposition
        .bags
        .iter()
        .map(|bag| centre_number(g, bag, 2, &Mode::InducedOn(bag.clone())).map(|(_, c)| c))
        .collect::<Result<Vec<_>>>()?;
    let realized_k = certificates.iter().map(CentreCertificate::size).max().unwrap_or(0);
    let stats = builder.stats;
    Ok(CentredDecomposition {
        decomposition,
        certificates,
        realized_k,
        hub_node,
        x: x.clone(),
        guard_tripped: stats.guard_trips > 0,
        stats,
    })
}

/// An induced subgraph of the input, with local-to-original ids.
struct Piece {
    graph: Graph,
    ids: Vec<usize>,
}

impl Piece {
    fn lift(&self, local: &VertexSet) -> VertexSet {
        local.iter().map(|v| self.ids[v]).collect()
    }

    fn sub(&self, keep: &VertexSet) -> Result<(Piece, Vec<usize>)> {
        let sub = self.graph.induced_subgraph(keep)?;
        let ids = sub.to_original.iter().map(|&v| self.ids[v]).collect();
        Ok((Piece { graph: sub.graph, ids }, sub.to_original))
    }
}

struct Builder<'a> {
    params: &'a ConstructionParams,
    strict: bool,
    stats: BuildStats,
}

impl Builder<'_> {
    /// Returns a decomposition of `piece` (original ids) and its hub node,
    /// whose bag contains `N[x]`.
    fn build(&mut self, piece: &Piece, x: VertexSet, depth: usize) -> Result<(TreeDecomposition, usize)> {
        self.stats.recursion_steps += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let g = &piece.graph;
        let alpha_g = alpha_value(g, None)?;
        if at_most(alpha_g, &self.params.base_alpha_threshold) {
            self.stats.base_cases += 1;
            return Ok((TreeDecomposition::single_bag(piece.ids.iter().copied().collect()), 0));
        }

        // The cap is below the base threshold, hence below α(G) <= 128.
        let cap = usize::try_from(&self.params.x_alpha_cap).expect("cap below α(G)");
        let x = enlarge_x(g, &x, cap)?;
        let z = compute_z(g, &x, self.params)?;
        let (reduced, reduced_to_piece) = piece.sub(&g.vertices().difference(&z))?;
        let to_piece = |s: &VertexSet| -> VertexSet { s.iter().map(|v| reduced_to_piece[v]).collect() };
        let x_reduced: VertexSet = (0..reduced.graph.n())
            .filter(|&v| x.contains(reduced_to_piece[v]))
            .collect();

        let i_g = alpha(&reduced.graph, None)?.witness;
        let i_x = alpha(&reduced.graph, Some(&x_reduced))?.witness;
        let mut separator = VertexSet::new();
        let mut centres = VertexSet::new();
        for independent in [&i_g, &i_x] {
            let mu = WeightFunction::indicator(reduced.graph.n(), independent);
            match find_centred_balanced_separator(&reduced.graph, &mu, self.params.k, 1)? {
                Some(w) => {
                    separator.union_with(&w.separator);
                    centres.union_with(&w.centres);
                }
                None => {
                    return Err(CoarseError::Hypothesis(Box::new(HypothesisFailure {
                        k: self.params.k,
                        subgraph: reduced.ids.iter().copied().collect(),
                        independent_set: reduced.lift(independent),
                    })))
                }
            }
        }
        let components = reduced.graph.components(&separator)?;
        let separator = to_piece(&separator);
        let centres = to_piece(&centres);

        let hub_local = g.ball(&x, 1)?.union(&separator).union(&z);
        let hub_bag = piece.lift(&hub_local);
        self.check_hub_accounting(piece, &hub_local, &x, &centres, &z)?;
        let mut td = TreeDecomposition::single_bag(hub_bag.clone());
        let hub = 0;

        for comp in components {
            let comp = to_piece(&comp);
            let child_set = comp.union(&separator).union(&z);
            let child_x = comp.union(&separator).intersection(&x).union(&centres).union(&z);
            let (child_piece, child_to_piece) = piece.sub(&child_set)?;
            let child_alpha = alpha_value(&child_piece.graph, None)?;

            let (child_td, child_hub) = if child_alpha < alpha_g {
                let local_x: VertexSet = (0..child_piece.graph.n())
                    .filter(|&v| child_x.contains(child_to_piece[v]))
                    .collect();
                if !at_most(alpha_value(g, Some(&child_x))?, &self.params.x_alpha_cap) {
                    self.stats.cap_exceeded += 1;
                    if self.strict {
                        return Err(CoarseError::Internal(
                            "α(X_C) exceeds the cap under literal thresholds".into(),
                        ));
                    }
                }
                self.build(&child_piece, local_x, depth + 1)?
            } else {
                if self.strict {
                    return Err(CoarseError::Internal(
                        "α(C') did not drop under literal thresholds".into(),
                    ));
                }
                self.stats.guard_trips += 1;
                (
                    TreeDecomposition::single_bag(child_piece.ids.iter().copied().collect()),
                    0,
                )
            };

            // The hub's trace on C' must sit inside the child's hub bag.
            let trace = hub_bag.intersection(&piece.lift(&child_set));
            if !trace.is_subset(&child_td.bags[child_hub]) {
                return Err(CoarseError::Internal(format!(
                    "N_G[X] ∪ S ∪ Z meets C' outside the child hub: {:?}",
                    trace.difference(&child_td.bags[child_hub])
                )));
            }
            let offset = td.absorb(child_td);
            td.add_edge(hub, offset + child_hub);
        }
        Ok((td, hub))
    }

    /// Checks the certificate assembled from a maximal independent subset of
    /// `X`, the separator centres and a maximal independent subset of `Z`.
    fn check_hub_accounting(
        &mut self,
        piece: &Piece,
        hub_local: &VertexSet,
        x: &VertexSet,
        centres: &VertexSet,
        z: &VertexSet,
    ) -> Result<()> {
        let g = &piece.graph;
        let assembled = greedy_maximal_independent(g, x)
            .union(centres)
            .union(&greedy_maximal_independent(g, z));
        let cert = CentreCertificate {
            centres: assembled.clone(),
            radius: 2,
            mode: Mode::InducedOn(hub_local.clone()),
            covered: hub_local.clone(),
        };
        if !cert.validate(g)? {
            return Err(CoarseError::Internal(
                "assembled hub certificate does not cover the hub bag".into(),
            ));
        }
        self.stats.hub_accounting_bound = self.stats.hub_accounting_bound.max(assembled.len());
        Ok(())
    }
}

fn greedy_maximal_independent(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut chosen = VertexSet::new();
    for v in s {
        if g.neighbour_set(v).is_disjoint(&chosen) {
            chosen.insert(v);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::two_subdivision;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn den(d: u64) -> ConstructionParams {
        ConstructionParams {
            z_fraction_denominator: d,
            ..ConstructionParams::desk(1, 1, 4)
        }
    }

    #[test]
    fn literal_constants() {
        // (512·20)^(4^2) = 10240^16
        assert_eq!(formula_d(1, 1), BigUint::from(10240u32).pow(16));
        assert_eq!(formula_d(1, 1).to_string().len(), 65);
        let p = ConstructionParams::literal(1, 1);
        assert_eq!(p.z_fraction_denominator, 20);
        assert_eq!(p.base_alpha_threshold, formula_d(1, 1) * 20u32);
        assert!(p.uses_literal_thresholds());
        assert!(!ConstructionParams::desk(1, 1, 5).uses_literal_thresholds());
    }

    #[test]
    fn z_examples() {
        let k5 = complete(5);
        assert_eq!(compute_z(&k5, &k5.vertices(), &den(20)).unwrap(), k5.vertices());

        let empty = Graph::empty(30);
        let z = compute_z(&empty, &empty.vertices(), &den(20)).unwrap();
        assert!(z.is_empty());

        // Star with 8 leaves, den 2: α(G) = 8; the centre has α(N[v]) = 8,
        // a leaf has α(N[v]) = 1 and 2·1 < 8.
        let s = star(8);
        assert_eq!(compute_z(&s, &s.vertices(), &den(2)).unwrap(), set(&[0]));
    }

    #[test]
    fn enlarge_examples() {
        let g = cycle(6);
        assert_eq!(enlarge_x(&g, &set(&[0, 3]), 1).unwrap(), set(&[0, 3]));
        assert_eq!(
            enlarge_x(&Graph::empty(6), &VertexSet::new(), 3).unwrap(),
            set(&[0, 1, 2])
        );
        assert_eq!(enlarge_x(&g, &VertexSet::new(), 2).unwrap(), set(&[0, 2]));
        assert!(enlarge_x(&complete(4), &VertexSet::new(), 2).is_err());
    }

    #[test]
    fn base_case_is_one_bag() {
        let g = cycle(7);
        let out = build_coarse_decomposition(&g, &VertexSet::new(), &ConstructionParams::desk(1, 1, 3)).unwrap();
        assert_eq!(out.decomposition.bags, vec![g.vertices()]);
        assert_eq!(out.hub_node, 0);
        assert_eq!(out.certificates[0].radius, 2);
    }

    #[test]
    fn long_path_recurses() {
        let g = path(20);
        let params = ConstructionParams::desk(1, 1, 4);
        let out = build_coarse_decomposition(&g, &set(&[7]), &params).unwrap();
        assert_eq!(validate(&g, &out.decomposition), Ok(()));
        assert!(out.decomposition.bags.len() > 1);
        assert!(g
            .ball(&set(&[7]), 1)
            .unwrap()
            .is_subset(&out.decomposition.bags[out.hub_node]));
        for cert in &out.certificates {
            assert_eq!(cert.radius, 2);
            assert!(cert.validate(&g).unwrap());
        }
        assert!(out.stats.hub_accounting_bound >= 1);
    }

    #[test]
    fn subdivided_k4_violates_the_hypothesis() {
        let sub = two_subdivision(&complete(4));
        let params = ConstructionParams::desk(1, 1, 5);
        match build_coarse_decomposition(&sub.graph, &VertexSet::new(), &params) {
            Err(CoarseError::Hypothesis(f)) => {
                assert_eq!(f.k, 1);
                assert!(sub.graph.is_independent(&f.independent_set));
            }
            other => panic!("expected a hypothesis failure, got {other:?}"),
        }
    }

    #[test]
    fn rejects_oversized_x() {
        let g = Graph::empty(10);
        let params = ConstructionParams::desk(1, 1, 4);
        assert!(matches!(
            build_coarse_decomposition(&g, &set(&[0, 1, 2]), &params),
            Err(CoarseError::Precondition(_))
        ));
        let bad = ConstructionParams {
            z_fraction_denominator: 0,
            ..params
        };
        assert!(build_coarse_decomposition(&g, &VertexSet::new(), &bad).is_err());
    }

    #[test]
    fn literal_thresholds_collapse_to_one_bag() {
        let g = random_tree(25, 3);
        let out = build_coarse_decomposition(&g, &set(&[0]), &ConstructionParams::literal(1, 1)).unwrap();
        assert_eq!(out.decomposition.bags.len(), 1);
    }
}
