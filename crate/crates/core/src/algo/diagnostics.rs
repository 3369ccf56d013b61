use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{f_bound, neighborhood_edge_bound, neighborhood_vertex_bound};
use crate::error::Result;
use crate::model::{CrossingIndex, DrawingState, EdgeId, NodeId, NodeKind};

/// The subgraph formed by the edges through one crossing node's disk.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeDiagnostic {
    pub node: NodeId,
    pub n_gamma: usize,
    pub m_gamma: usize,
    pub vertex_bound: f64,
    pub edge_bound: f64,
    pub within_vertex_bound: bool,
    pub within_edge_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticReport {
    pub k: usize,
    pub nodes: Vec<NodeDiagnostic>,
    pub max_crossings: usize,
    pub f_bound: f64,
    pub within_f_bound: bool,
}

impl DiagnosticReport {
    pub fn all_within_vertex_bound(&self) -> bool {
        self.nodes.iter().all(|d| d.within_vertex_bound)
    }
}

/// Per crossing node of the network, the edges whose routes pass through it
/// and their endpoints, against the bounds for parameter `k`.
pub fn neighborhood_diagnostics(state: &DrawingState, k: usize) -> Result<DiagnosticReport> {
    let ceiling = f_bound(k)?;
    let net = state.network();
    let mut through: BTreeMap<NodeId, BTreeSet<EdgeId>> = BTreeMap::new();
    for (e, route) in state.routes().iter().enumerate() {
        for v in route.internal_visits() {
            let node = route.nodes[v];
            if matches!(net.nodes[node], NodeKind::Crossing(..)) {
                through.entry(node).or_default().insert(e);
            }
        }
    }
    let vertex_bound = neighborhood_vertex_bound(k);
    let nodes = through
        .into_iter()
        .map(|(node, edges)| {
            let vertices: BTreeSet<_> = edges.iter().flat_map(|&e| net.graph.edges[e]).collect();
            let (n_gamma, m_gamma) = (vertices.len(), edges.len());
            let edge_bound = neighborhood_edge_bound(k, n_gamma);
            NodeDiagnostic {
                node,
                n_gamma,
                m_gamma,
                vertex_bound,
                edge_bound,
                within_vertex_bound: n_gamma as f64 <= vertex_bound,
                within_edge_bound: m_gamma as f64 <= edge_bound,
            }
        })
        .collect();
    let mut index = CrossingIndex::new(state);
    let max_crossings = index.max_x(state).0;
    Ok(DiagnosticReport {
        k,
        nodes,
        max_crossings,
        f_bound: ceiling,
        within_f_bound: max_crossings as f64 <= ceiling,
    })
}
