//! Tree-decompositions: the data type, an independent validator, exact
//! treewidth and the classical separator-driven construction.

mod classic;
mod exact;

pub use classic::{decomposition_from_separator_oracle, ClassicOutcome, ClassicReport};
pub use exact::{decomposition_from_elimination_order, elimination_width, exact_treewidth};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoarseError, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn single_bag(bag: VertexSet) -> Self {
        TreeDecomposition {
            bags: vec![bag],
            tree_edges: Vec::new(),
        }
    }

    pub fn add_node(&mut self, bag: VertexSet) -> usize {
        self.bags.push(bag);
        self.bags.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.tree_edges.push((a, b));
    }

    /// Appends `other` with shifted node ids; returns the shift.
    pub fn absorb(&mut self, other: TreeDecomposition) -> usize {
        let offset = self.bags.len();
        self.bags.extend(other.bags);
        self.tree_edges
            .extend(other.tree_edges.into_iter().map(|(a, b)| (a + offset, b + offset)));
        offset
    }

    /// Maximum bag size minus one.
    pub fn width(&self) -> Result<usize> {
        self.bags
            .iter()
            .map(VertexSet::len)
            .max()
            .map(|m| m.saturating_sub(1))
            .ok_or_else(|| CoarseError::InvalidInput("decomposition has no bags".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NoNodes,
    EdgeEndpointOutOfRange { a: usize, b: usize },
    SelfLoop { node: usize },
    WrongEdgeCount { nodes: usize, edges: usize },
    TreeDisconnected,
    BagVertexOutOfRange { node: usize, vertex: usize },
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    VertexSubtreeDisconnected { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "decomposition has no nodes"),
            Violation::EdgeEndpointOutOfRange { a, b } => write!(f, "tree edge {a}-{b} names a missing node"),
            Violation::SelfLoop { node } => write!(f, "tree edge loops at node {node}"),
            Violation::WrongEdgeCount { nodes, edges } => {
                write!(f, "tree on {nodes} nodes has {edges} edges, expected {}", nodes - 1)
            }
            Violation::TreeDisconnected => write!(f, "tree is disconnected"),
            Violation::BagVertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} holds vertex {vertex} outside the graph")
            }
            Violation::VertexUncovered { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Violation::EdgeUncovered { u, v } => write!(f, "edge {u}-{v} is in no bag"),
            Violation::VertexSubtreeDisconnected { vertex } => {
                write!(f, "bags containing vertex {vertex} do not induce a connected subtree")
            }
        }
    }
}

/// Checks every condition of a tree-decomposition of `g`; returns all
/// violations found.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> std::result::Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let nodes = td.bags.len();
    if nodes == 0 {
        return Err(vec![Violation::NoNodes]);
    }
    let mut tree_adj = vec![Vec::new(); nodes];
    for &(a, b) in &td.tree_edges {
        if a >= nodes || b >= nodes {
            violations.push(Violation::EdgeEndpointOutOfRange { a, b });
        } else if a == b {
            violations.push(Violation::SelfLoop { node: a });
        } else {
            tree_adj[a].push(b);
            tree_adj[b].push(a);
        }
    }
    if td.tree_edges.len() != nodes - 1 {
        violations.push(Violation::WrongEdgeCount {
            nodes,
            edges: td.tree_edges.len(),
        });
    }
    if reach(&tree_adj, 0, |_| true).len() != nodes {
        violations.push(Violation::TreeDisconnected);
    }
    for (node, bag) in td.bags.iter().enumerate() {
        for v in bag.iter().filter(|&v| v >= g.n()) {
            violations.push(Violation::BagVertexOutOfRange { node, vertex: v });
        }
    }
    let mut holders = vec![Vec::new(); g.n()];
    for (node, bag) in td.bags.iter().enumerate() {
        for v in bag.iter().filter(|&v| v < g.n()) {
            holders[v].push(node);
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        match hs.first() {
            None => violations.push(Violation::VertexUncovered { vertex: v }),
            Some(&start) => {
                let inside = |x: usize| td.bags[x].contains(v);
                if reach(&tree_adj, start, inside).len() != hs.len() {
                    violations.push(Violation::VertexSubtreeDisconnected { vertex: v });
                }
            }
        }
    }
    for (u, v) in g.edges() {
        if !holders[u].iter().any(|&x| td.bags[x].contains(v)) {
            violations.push(Violation::EdgeUncovered { u, v });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

fn reach(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    let mut out = Vec::new();
    seen[start] = true;
    while let Some(x) = stack.pop() {
        out.push(x);
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out
}
