//! JSON files for graphs and layouts.
//!
//! Layout: `{"nodes":[{"id":0,"x":12.5,"y":80.0},...],"edges":[[0,1],...]}`
//! Graph:  `{"node_count":50,"edges":[[0,1],...]}`

use serde::{Deserialize, Serialize};

use super::{Graph, LayoutGraph, NodeId};
use crate::error::{MedError, Result};
use crate::geometry::Point;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeRecord {
    id: NodeId,
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutFile {
    nodes: Vec<NodeRecord>,
    edges: Vec<(NodeId, NodeId)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
}

fn to_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("in-memory serialization");
    out.push(b'\n');
    out
}

pub fn save_graph(g: &Graph) -> Vec<u8> {
    to_bytes(&GraphFile {
        node_count: g.node_count(),
        edges: g.edges().to_vec(),
    })
}

pub fn load_graph(bytes: &[u8]) -> Result<Graph> {
    let file: GraphFile = serde_json::from_slice(bytes)?;
    Graph::new(file.node_count, file.edges)
}

pub fn save_layout(layout: &LayoutGraph) -> Vec<u8> {
    let nodes = layout
        .positions()
        .iter()
        .enumerate()
        .map(|(id, p)| NodeRecord { id, x: p.x, y: p.y })
        .collect();
    to_bytes(&LayoutFile {
        nodes,
        edges: layout.graph().edges().to_vec(),
    })
}

/// Parses and validates a layout. Node ids must be exactly `0..n` in any
/// order; every violated invariant is reported at once.
pub fn load_layout(bytes: &[u8]) -> Result<LayoutGraph> {
    let file: LayoutFile = serde_json::from_slice(bytes)?;
    let n = file.nodes.len();
    let mut positions: Vec<Option<Point>> = vec![None; n];
    let mut problems = Vec::new();
    for rec in &file.nodes {
        match positions.get_mut(rec.id) {
            None => problems.push(format!("node id {} outside 0..{n}", rec.id)),
            Some(Some(_)) => problems.push(format!("node id {} appears twice", rec.id)),
            Some(slot) => *slot = Some(Point::new(rec.x, rec.y)),
        }
    }
    if !problems.is_empty() {
        return Err(MedError::InvalidLayout { problems });
    }
    let positions: Vec<Point> = positions.into_iter().map(Option::unwrap).collect();

    match Graph::new(n, file.edges) {
        Ok(graph) => LayoutGraph::new(graph, positions),
        Err(MedError::InvalidLayout { mut problems }) => {
            // Report node-level problems alongside the edge problems.
            let nodes_only = Graph::new(n, vec![]).and_then(|g| LayoutGraph::new(g, positions));
            if let Err(MedError::InvalidLayout { problems: more }) = nodes_only {
                problems.extend(more);
            }
            problems.dedup();
            Err(MedError::InvalidLayout { problems })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{fr_layout, generate_ba, FrOptions};

    #[test]
    fn layout_round_trip() {
        let g = generate_ba(40, 2, 3).unwrap();
        let l = fr_layout(&g, &FrOptions::new(1000.0, 800.0, 50, 3)).unwrap();
        let bytes = save_layout(&l);
        let back = load_layout(&bytes).unwrap();
        assert_eq!(back, l);
        assert_eq!(save_layout(&back), bytes);
    }

    #[test]
    fn graph_round_trip() {
        let g = generate_ba(20, 3, 8).unwrap();
        assert_eq!(load_graph(&save_graph(&g)).unwrap(), g);
    }

    #[test]
    fn duplicate_reversed_edge_is_named() {
        let src = br#"{"nodes":[{"id":0,"x":0,"y":0},{"id":1,"x":1,"y":0}],"edges":[[0,1],[1,0]]}"#;
        let err = load_layout(src).unwrap_err().to_string();
        assert!(err.contains("(1, 0)"), "{err}");
    }

    #[test]
    fn coincident_nodes_are_rejected() {
        let src = br#"{"nodes":[{"id":0,"x":5,"y":5},{"id":1,"x":5,"y":5},{"id":2,"x":1,"y":0}],"edges":[[0,2],[2,2]]}"#;
        let err = load_layout(src).unwrap_err().to_string();
        assert!(err.contains("self-loop"), "{err}");
        assert!(err.contains("nodes 0 and 1 coincide"), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let src = b"{\"nodes\":[\n{\"id\":0,\"x\":1}\n],\"edges\":[]}";
        match load_layout(src).unwrap_err() {
            MedError::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("`y`"), "{message}");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn bad_node_ids() {
        let src = br#"{"nodes":[{"id":0,"x":0,"y":0},{"id":0,"x":1,"y":0}],"edges":[]}"#;
        assert!(load_layout(src)
            .unwrap_err()
            .to_string()
            .contains("appears twice"));
        let src = br#"{"nodes":[{"id":3,"x":0,"y":0}],"edges":[]}"#;
        assert!(load_layout(src)
            .unwrap_err()
            .to_string()
            .contains("outside"));
    }
}
