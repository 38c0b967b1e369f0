//! Graph and layout data model, plus the stimulus pipeline: scale-free
//! generation followed by force-directed placement.

mod ba;
mod fr;
mod io;

use std::collections::BTreeSet;

use crate::error::{MedError, Result};
use crate::geometry::{Point, Segment};

pub use ba::generate_ba;
pub use fr::{fr_layout, FrOptions, DEFAULT_FR_CONSTANT, DEFAULT_ITERATIONS};
pub use io::{load_graph, load_layout, save_graph, save_layout};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Simple undirected graph. Edge ids are indices into `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
}

impl Graph {
    pub fn new(node_count: usize, edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        let mut problems = Vec::new();
        if node_count == 0 {
            problems.push("graph has no nodes".to_string());
        }
        let mut seen = BTreeSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= node_count || v >= node_count {
                problems.push(format!("edge {i} ({u}, {v}) references a missing node"));
            }
            if u == v {
                problems.push(format!("edge {i} is a self-loop on node {u}"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                problems.push(format!("edge {i} duplicates the pair ({u}, {v})"));
            }
        }
        if !problems.is_empty() {
            return Err(MedError::InvalidLayout { problems });
        }
        Ok(Graph { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }
}

/// A straight-line drawing of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutGraph {
    graph: Graph,
    positions: Vec<Point>,
    edge_lengths: Vec<f64>,
}

impl LayoutGraph {
    /// Validates that every node has a finite position, that no two nodes
    /// coincide, and that no edge is degenerate.
    pub fn new(graph: Graph, positions: Vec<Point>) -> Result<Self> {
        let mut problems = Vec::new();
        if positions.len() != graph.node_count() {
            problems.push(format!(
                "{} positions given for {} nodes",
                positions.len(),
                graph.node_count()
            ));
            return Err(MedError::InvalidLayout { problems });
        }
        for (i, p) in positions.iter().enumerate() {
            if !p.is_finite() {
                problems.push(format!("node {i} has a non-finite position"));
            }
        }
        for i in 0..positions.len() {
            for j in i + 1..positions.len() {
                if positions[i] == positions[j] {
                    problems.push(format!("nodes {i} and {j} coincide"));
                }
            }
        }
        if !problems.is_empty() {
            return Err(MedError::InvalidLayout { problems });
        }
        let edge_lengths = graph
            .edges()
            .iter()
            .map(|&(u, v)| positions[u].distance(&positions[v]))
            .collect();
        Ok(LayoutGraph {
            graph,
            positions,
            edge_lengths,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn edge_length(&self, e: EdgeId) -> f64 {
        self.edge_lengths[e]
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    /// Segment of edge `e`, oriented from its first to its second node.
    pub fn segment(&self, e: EdgeId) -> Segment {
        let (u, v) = self.graph.edges()[e];
        Segment::new(self.positions[u], self.positions[v])
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.edge_count()).map(|e| self.segment(e))
    }
}
