//! The JSON document that carries a decomposition, its certificates and the
//! parameters that produced it.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::centred::{CentreCertificate, Mode};
use crate::coarse::{BuildStats, CentredDecomposition, ConstructionParams};
use crate::error::{CoarseError, Result};
use crate::graph::Graph;
use crate::treedecomp::{validate, ClassicReport, TreeDecomposition};
use crate::vset::VertexSet;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocumentKind {
    Coarse,
    Classic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMode {
    Ambient,
    InducedOnBag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub node: usize,
    pub centres: VertexSet,
    pub radius: usize,
    pub mode: CertificateMode,
    pub size: usize,
}

/// Big thresholds travel as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub k: usize,
    pub t: usize,
    pub z_fraction_denominator: u64,
    pub base_alpha_threshold: String,
    pub x_alpha_cap: String,
    pub paper_d: String,
    pub literal_thresholds: bool,
}

impl From<&ConstructionParams> for ParamsRecord {
    fn from(p: &ConstructionParams) -> Self {
        ParamsRecord {
            k: p.k,
            t: p.t,
            z_fraction_denominator: p.z_fraction_denominator,
            base_alpha_threshold: p.base_alpha_threshold.to_string(),
            x_alpha_cap: p.x_alpha_cap.to_string(),
            paper_d: p.formula_d().to_string(),
            literal_thresholds: p.uses_literal_thresholds(),
        }
    }
}

impl ParamsRecord {
    pub fn to_params(&self) -> Result<ConstructionParams> {
        let big = |s: &str| {
            s.parse::<BigUint>()
                .map_err(|_| CoarseError::InvalidInput(format!("{s:?} is not a natural number")))
        };
        Ok(ConstructionParams {
            k: self.k,
            t: self.t,
            z_fraction_denominator: self.z_fraction_denominator,
            base_alpha_threshold: big(&self.base_alpha_threshold)?,
            x_alpha_cap: big(&self.x_alpha_cap)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicRecord {
    pub max_sep_size: usize,
    pub width: usize,
    pub width_bound: usize,
    pub separator_calls: usize,
    pub weighting: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub guard_tripped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub schema_version: String,
    pub kind: DocumentKind,
    pub graph: GraphRecord,
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: Vec<VertexSet>,
    pub hub_node: Option<usize>,
    pub x: Option<VertexSet>,
    pub realized_k: Option<usize>,
    pub certificates: Vec<CertificateRecord>,
    pub params: Option<ParamsRecord>,
    pub classic: Option<ClassicRecord>,
    pub stats: Option<BuildStats>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Valid,
    Centred,
    Hub,
}

impl DecompositionDocument {
    pub fn coarse(
        g: &Graph,
        built: &CentredDecomposition,
        params: &ConstructionParams,
        mut provenance: Provenance,
    ) -> Self {
        provenance.guard_tripped = built.guard_tripped;
        let certificates = built
            .certificates
            .iter()
            .enumerate()
            .map(|(node, c)| CertificateRecord {
                node,
                centres: c.centres.clone(),
                radius: c.radius,
                mode: match c.mode {
                    Mode::Ambient => CertificateMode::Ambient,
                    Mode::InducedOn(_) => CertificateMode::InducedOnBag,
                },
                size: c.size(),
            })
            .collect();
        DecompositionDocument {
            schema_version: SCHEMA_VERSION.into(),
            kind: DocumentKind::Coarse,
            graph: record(g),
            tree_edges: built.decomposition.tree_edges.clone(),
            bags: built.decomposition.bags.clone(),
            hub_node: Some(built.hub_node),
            x: Some(built.x.clone()),
            realized_k: Some(built.realized_k),
            certificates,
            params: Some(params.into()),
            classic: None,
            stats: Some(built.stats.clone()),
            provenance,
        }
    }

    pub fn classic(g: &Graph, td: &TreeDecomposition, report: &ClassicReport, provenance: Provenance) -> Self {
        DecompositionDocument {
            schema_version: SCHEMA_VERSION.into(),
            kind: DocumentKind::Classic,
            graph: record(g),
            tree_edges: td.tree_edges.clone(),
            bags: td.bags.clone(),
            hub_node: None,
            x: None,
            realized_k: None,
            certificates: Vec::new(),
            params: None,
            classic: Some(ClassicRecord {
                max_sep_size: report.max_sep_size,
                width: report.width,
                width_bound: report.width_bound,
                separator_calls: report.separator_calls,
                weighting: report.weighting.into(),
            }),
            stats: None,
            provenance,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DecompositionDocument =
            serde_json::from_str(text).map_err(|e| CoarseError::parse(e.line(), e.column(), e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CoarseError::InvalidInput(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::from_edges(self.graph.n, &self.graph.edges)
    }

    pub fn decomposition(&self) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.clone(),
            tree_edges: self.tree_edges.clone(),
        }
    }

    /// Runs the requested checks against `g`; returns one message per
    /// violation (empty when everything passes).
    pub fn verify(&self, g: &Graph, checks: &[Check]) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if record(g) != self.graph {
            out.push("document graph differs from the supplied graph".to_string());
            return Ok(out);
        }
        for check in checks {
            match check {
                Check::Valid => {
                    if let Err(violations) = validate(g, &self.decomposition()) {
                        out.extend(violations.iter().map(ToString::to_string));
                    }
                }
                Check::Centred => self.check_certificates(g, &mut out)?,
                Check::Hub => self.check_hub(g, &mut out)?,
            }
        }
        Ok(out)
    }

    fn check_certificates(&self, g: &Graph, out: &mut Vec<String>) -> Result<()> {
        let mut seen = vec![false; self.bags.len()];
        for cert in &self.certificates {
            let Some(bag) = self.bags.get(cert.node) else {
                out.push(format!("certificate names missing node {}", cert.node));
                continue;
            };
            seen[cert.node] = true;
            if cert.size != cert.centres.len() {
                out.push(format!(
                    "certificate of node {} states size {} for {} centres",
                    cert.node,
                    cert.size,
                    cert.centres.len()
                ));
            }
            if g.check_set(&cert.centres).is_err() || g.check_set(bag).is_err() {
                out.push(format!(
                    "certificate of node {} names vertices outside the graph",
                    cert.node
                ));
                continue;
            }
            let full = CentreCertificate {
                centres: cert.centres.clone(),
                radius: cert.radius,
                mode: match cert.mode {
                    CertificateMode::Ambient => Mode::Ambient,
                    CertificateMode::InducedOnBag => Mode::InducedOn(bag.clone()),
                },
                covered: bag.clone(),
            };
            if !full.validate(g)? {
                out.push(format!(
                    "certificate of node {} does not cover its bag at radius {}",
                    cert.node, cert.radius
                ));
            }
        }
        for (node, _) in seen.iter().enumerate().filter(|(_, s)| !**s) {
            out.push(format!("node {node} has no certificate"));
        }
        Ok(())
    }

    fn check_hub(&self, g: &Graph, out: &mut Vec<String>) -> Result<()> {
        let (Some(hub), Some(x)) = (self.hub_node, &self.x) else {
            out.push("document has no hub node".into());
            return Ok(());
        };
        let Some(bag) = self.bags.get(hub) else {
            out.push(format!("hub node {hub} does not exist"));
            return Ok(());
        };
        if g.check_set(x).is_err() {
            out.push("X names vertices outside the graph".into());
            return Ok(());
        }
        let missing = g.ball(x, 1)?.difference(bag);
        if !missing.is_empty() {
            out.push(format!("hub bag misses N[X] vertices {:?}", missing));
        }
        Ok(())
    }
}

fn record(g: &Graph) -> GraphRecord {
    GraphRecord {
        n: g.n(),
        edges: g.edges().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarse::build_coarse_decomposition;
    use crate::graph::generators::path;

    fn sample() -> (Graph, DecompositionDocument) {
        let g = path(16);
        let params = ConstructionParams::desk(1, 1, 4);
        let x = VertexSet::singleton(5);
        let built = build_coarse_decomposition(&g, &x, &params).unwrap();
        let doc = DecompositionDocument::coarse(&g, &built, &params, Provenance::default());
        (g, doc)
    }

    #[test]
    fn round_trip_and_verify() {
        let (g, doc) = sample();
        let text = doc.to_json();
        let back = DecompositionDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        assert_eq!(
            back.params.as_ref().unwrap().to_params().unwrap(),
            ConstructionParams::desk(1, 1, 4)
        );
        assert!(back
            .verify(&g, &[Check::Valid, Check::Centred, Check::Hub])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn detects_faults() {
        let (g, mut doc) = sample();
        doc.bags[0] = VertexSet::new();
        assert!(!doc.verify(&g, &[Check::Valid]).unwrap().is_empty());

        let (g, mut doc) = sample();
        let hub = doc.hub_node.unwrap();
        doc.bags[hub].remove(5);
        assert!(!doc.verify(&g, &[Check::Hub]).unwrap().is_empty());

        let (g, mut doc) = sample();
        doc.certificates.pop();
        assert!(!doc.verify(&g, &[Check::Centred]).unwrap().is_empty());
    }

    #[test]
    fn rejects_other_schemas() {
        let (_, mut doc) = sample();
        doc.schema_version = "0".into();
        assert!(DecompositionDocument::from_json(&doc.to_json()).is_err());
        assert!(matches!(
            DecompositionDocument::from_json("{"),
            Err(CoarseError::Parse { .. })
        ));
    }
}
