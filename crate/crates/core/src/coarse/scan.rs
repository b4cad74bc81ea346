//! Empirical scan: which graphs admit `(k,1)`-balanced separators, and how
//! centred the resulting decompositions turn out at radius 2 and radius 1.

use std::io;
use std::path::Path;

use serde::Serialize;

use super::{build_coarse_decomposition, ConstructionParams};
use crate::centred::{centre_number, Mode};
use crate::error::{CoarseError, Result};
use crate::graph::generators::complete;
use crate::graph::generators::{cycle, path, random_tree, star};
use crate::graph::{parse_graph, two_subdivision, Graph};
use crate::limits::Limits;
use crate::par::{self, Execution};
use crate::separators::admits_kr_balanced_separators_indicator;
use crate::vset::VertexSet;

pub const SCAN_HEADER: [&str; 7] = [
    "graph",
    "n",
    "k",
    "admits",
    "realized_k_r2",
    "max_bag_r1_centres",
    "guard_tripped",
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    /// A graph, or the reason it could not be read.
    pub graph: std::result::Result<Graph, String>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        CorpusEntry {
            name: name.into(),
            graph: Ok(graph),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "detail")]
pub enum RowStatus {
    Built {
        realized_k_r2: usize,
        max_bag_r1_centres: usize,
        guard_tripped: bool,
    },
    NotAdmitted,
    HypothesisFailure,
    Skipped(String),
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub graph: String,
    pub n: Option<usize>,
    pub k: usize,
    pub admits: Option<bool>,
    pub status: RowStatus,
}

impl ScanRow {
    fn record(&self) -> [String; 7] {
        let admits = match (self.admits, &self.status) {
            (Some(a), _) => a.to_string(),
            (None, RowStatus::Skipped(_)) => "skipped".into(),
            (None, _) => "error".into(),
        };
        let (realized, r1, guard) = match &self.status {
            RowStatus::Built {
                realized_k_r2,
                max_bag_r1_centres,
                guard_tripped,
            } => (
                realized_k_r2.to_string(),
                max_bag_r1_centres.to_string(),
                guard_tripped.to_string(),
            ),
            RowStatus::NotAdmitted => ("not-run".into(), "not-run".into(), String::new()),
            RowStatus::HypothesisFailure => ("hypothesis-failure".into(), String::new(), String::new()),
            RowStatus::Skipped(why) | RowStatus::Failed(why) => (format!("error: {why}"), String::new(), String::new()),
        };
        [
            self.graph.clone(),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            self.k.to_string(),
            admits,
            realized,
            r1,
            guard,
        ]
    }
}

/// One row per corpus entry and parameter set, in corpus order. Failures
/// become rows; nothing aborts the scan.
pub fn conjecture_scan(
    corpus: &[CorpusEntry],
    params: &[ConstructionParams],
    limits: &Limits,
    exec: Execution,
) -> Vec<ScanRow> {
    let jobs: Vec<(&CorpusEntry, &ConstructionParams)> =
        corpus.iter().flat_map(|e| params.iter().map(move |p| (e, p))).collect();
    par::map(exec, &jobs, |&(entry, p)| scan_one(entry, p, limits))
}

fn scan_one(entry: &CorpusEntry, params: &ConstructionParams, limits: &Limits) -> ScanRow {
    let mut row = ScanRow {
        graph: entry.name.clone(),
        n: None,
        k: params.k,
        admits: None,
        status: RowStatus::Failed(String::new()),
    };
    let g = match &entry.graph {
        Ok(g) => g,
        Err(why) => {
            row.status = RowStatus::Failed(why.clone());
            return row;
        }
    };
    row.n = Some(g.n());
    // Each row is one job; the sweep itself stays sequential.
    match admits_kr_balanced_separators_indicator(g, params.k, 1, limits, Execution::Sequential) {
        Ok(report) => row.admits = Some(report.admits),
        Err(e @ CoarseError::ScaleGuard { .. }) => {
            row.status = RowStatus::Skipped(e.to_string());
            return row;
        }
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    }
    if row.admits == Some(false) {
        row.status = RowStatus::NotAdmitted;
        return row;
    }
    row.status = match measure(g, params) {
        Ok(status) => status,
        Err(CoarseError::Hypothesis(_)) => RowStatus::HypothesisFailure,
        Err(e) => RowStatus::Failed(e.to_string()),
    };
    row
}

fn measure(g: &Graph, params: &ConstructionParams) -> Result<RowStatus> {
    let built = build_coarse_decomposition(g, &VertexSet::new(), params)?;
    let mut r1 = 0;
    for bag in &built.decomposition.bags {
        r1 = r1.max(centre_number(g, bag, 1, &Mode::InducedOn(bag.clone()))?.0);
    }
    Ok(RowStatus::Built {
        realized_k_r2: built.realized_k,
        max_bag_r1_centres: r1,
        guard_tripped: built.guard_tripped,
    })
}

/// Writes the header and one CSV record per row.
pub fn write_scan_csv<W: io::Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CoarseError::InvalidInput(format!("cannot write CSV: {e}"));
    writer.write_record(SCAN_HEADER).map_err(csv_err)?;
    for row in rows {
        writer.write_record(row.record()).map_err(csv_err)?;
    }
    writer
        .flush()
        .map_err(|e| CoarseError::InvalidInput(format!("cannot write CSV: {e}")))
}

/// Named corpora: `trees-cycles` and `lemma` (the same plus `K_4^{(2)}`).
pub fn builtin_corpus(name: &str) -> Option<Vec<CorpusEntry>> {
    let mut corpus = Vec::new();
    match name {
        "trees-cycles" | "lemma" => {
            for n in [4, 8, 12] {
                corpus.push(CorpusEntry::new(format!("path-{n}"), path(n)));
            }
            for n in 3..=14 {
                corpus.push(CorpusEntry::new(format!("cycle-{n}"), cycle(n)));
            }
            corpus.push(CorpusEntry::new("star-9", star(9)));
            for seed in 0..12 {
                let n = 6 + (seed as usize % 9);
                corpus.push(CorpusEntry::new(format!("tree-{n}-seed{seed}"), random_tree(n, seed)));
            }
            if name == "lemma" {
                corpus.push(CorpusEntry::new("k4-subdivided", two_subdivision(&complete(4)).graph));
            }
            Some(corpus)
        }
        _ => None,
    }
}

/// Every regular file in `dir`, by file name; unreadable or unparsable
/// files become entries carrying the reason.
pub fn read_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let read_err = |e: io::Error| CoarseError::InvalidInput(format!("cannot read {}: {e}", dir.display()));
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(read_err)? {
        let entry = entry.map_err(read_err)?;
        if entry.file_type().map_err(read_err)?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files
        .into_iter()
        .map(|p| {
            let name = p
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let graph = std::fs::read_to_string(&p)
                .map_err(|e| e.to_string())
                .and_then(|text| parse_graph(&text).map_err(|e| e.to_string()));
            CorpusEntry { name, graph }
        })
        .collect())
}
