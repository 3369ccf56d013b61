//! The fixed planarization of the input drawing.

use serde::{Deserialize, Serialize};

use super::faces::EulerCheck;
use super::{EdgeId, NodeId, SegmentId, VertexId};
use crate::error::{Error, Result};

/// The abstract graph being drawn. Vertices are `0..vertex_count`, edge `i`
/// is `edges[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertex_count: usize,
    pub edges: Vec<[VertexId; 2]>,
}

impl GraphSpec {
    pub fn new(vertex_count: usize, edges: Vec<[VertexId; 2]>) -> Result<Self> {
        let g = GraphSpec { vertex_count, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    /// The endpoint shared by two distinct edges, if any. A simple graph has
    /// at most one.
    pub fn shared_endpoint(&self, e: EdgeId, f: EdgeId) -> Option<VertexId> {
        let [a, b] = self.edges[e];
        let [c, d] = self.edges[f];
        if a == c || a == d {
            Some(a)
        } else if b == c || b == d {
            Some(b)
        } else {
            None
        }
    }

    pub fn adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        e != f && self.shared_endpoint(e, f).is_some()
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if u >= self.vertex_count || v >= self.vertex_count {
                return Err(Error::network(format!("edge {i} has an unknown endpoint")));
            }
            if u == v {
                return Err(Error::network(format!("edge {i} is a loop")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::network(format!("edge {i} is a parallel edge")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    Vertex(VertexId),
    /// The two edges crossing here in the drawing the network was built from,
    /// smaller id first.
    Crossing(EdgeId, EdgeId),
}

impl NodeKind {
    pub fn is_crossing(&self) -> bool {
        matches!(self, NodeKind::Crossing(..))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub a: NodeId,
    pub b: NodeId,
}

impl Segment {
    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// A walk in the network. `segments[i]` joins `nodes[i]` and `nodes[i + 1]`;
/// both lists are needed because the network may have parallel segments.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Route {
    pub nodes: Vec<NodeId>,
    pub segments: Vec<SegmentId>,
}

impl Route {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().expect("route has at least one node")
    }

    pub fn reversed(&self) -> Route {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        let mut segments = self.segments.clone();
        segments.reverse();
        Route { nodes, segments }
    }

    /// Node visits strictly inside the route.
    pub fn internal_visits(&self) -> std::ops::Range<usize> {
        1..self.nodes.len().saturating_sub(1)
    }
}

/// Planarization of a drawing: graph vertices plus one node per crossing,
/// joined by segments, with a counterclockwise rotation at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkN {
    pub graph: GraphSpec,
    pub nodes: Vec<NodeKind>,
    pub segments: Vec<Segment>,
    pub rotation: Vec<Vec<SegmentId>>,
    pub original_routes: Vec<Route>,
    vertex_node: Vec<NodeId>,
    /// Index of each segment in the rotation of its `a` and `b` end.
    rotation_index: Vec<[usize; 2]>,
}

impl NetworkN {
    /// Assembles a network and checks every structural invariant, including
    /// Euler's formula.
    pub fn new(
        graph: GraphSpec,
        nodes: Vec<NodeKind>,
        segments: Vec<Segment>,
        rotation: Vec<Vec<SegmentId>>,
        original_routes: Vec<Route>,
    ) -> Result<Self> {
        let net = Self::assemble(graph, nodes, segments, rotation, original_routes)?;
        net.validate()?;
        Ok(net)
    }

    /// Assembles the lookup tables and checks only what they need (rotation
    /// consistency). Used by `new` and by the validator itself.
    pub(crate) fn assemble(
        graph: GraphSpec,
        nodes: Vec<NodeKind>,
        segments: Vec<Segment>,
        rotation: Vec<Vec<SegmentId>>,
        original_routes: Vec<Route>,
    ) -> Result<Self> {
        graph.validate()?;
        if rotation.len() != nodes.len() {
            return Err(Error::network("rotation must list every node"));
        }
        let mut vertex_node = vec![usize::MAX; graph.vertex_count];
        for (id, kind) in nodes.iter().enumerate() {
            if let NodeKind::Vertex(v) = *kind {
                if v >= graph.vertex_count {
                    return Err(Error::at_node(id, "vertex node of unknown vertex"));
                }
                if vertex_node[v] != usize::MAX {
                    return Err(Error::at_node(id, "vertex has two nodes"));
                }
                vertex_node[v] = id;
            }
        }
        if let Some(v) = vertex_node.iter().position(|&n| n == usize::MAX) {
            return Err(Error::network(format!("vertex {v} has no node")));
        }
        let mut rotation_index = vec![[usize::MAX; 2]; segments.len()];
        for (sid, s) in segments.iter().enumerate() {
            if s.a >= nodes.len() || s.b >= nodes.len() {
                return Err(Error::at_segment(sid, "segment endpoint is not a node"));
            }
            if s.a == s.b {
                return Err(Error::at_segment(sid, "loop segment"));
            }
        }
        for (node, rot) in rotation.iter().enumerate() {
            for (i, &sid) in rot.iter().enumerate() {
                let Some(s) = segments.get(sid) else {
                    return Err(Error::at_node(node, format!("rotation names unknown segment {sid}")));
                };
                let side = if s.a == node {
                    0
                } else if s.b == node {
                    1
                } else {
                    return Err(Error::at_node(node, format!("segment {sid} is not incident")));
                };
                if rotation_index[sid][side] != usize::MAX {
                    return Err(Error::at_node(node, format!("segment {sid} repeated in rotation")));
                }
                rotation_index[sid][side] = i;
            }
        }
        if let Some(sid) = rotation_index
            .iter()
            .position(|r| r[0] == usize::MAX || r[1] == usize::MAX)
        {
            return Err(Error::at_segment(sid, "segment missing from a rotation"));
        }
        Ok(NetworkN {
            graph,
            nodes,
            segments,
            rotation,
            original_routes,
            vertex_node,
            rotation_index,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|k| k.is_crossing()).count()
    }

    pub fn vertex_node(&self, v: VertexId) -> NodeId {
        self.vertex_node[v]
    }

    pub fn is_crossing(&self, node: NodeId) -> bool {
        self.nodes[node].is_crossing()
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.rotation[node].len()
    }

    /// Position of `segment` in the rotation of `node`.
    pub fn rotation_position(&self, node: NodeId, segment: SegmentId) -> usize {
        let s = self.segments[segment];
        if s.a == node {
            self.rotation_index[segment][0]
        } else {
            debug_assert_eq!(s.b, node);
            self.rotation_index[segment][1]
        }
    }

    pub fn euler(&self) -> EulerCheck {
        EulerCheck::of(self)
    }

    /// True when no two segments join the same pair of nodes.
    pub fn is_simple_graph(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.segments
            .iter()
            .all(|s| seen.insert((s.a.min(s.b), s.a.max(s.b))))
    }

    /// Checks a route against the network: a walk from the edge's first
    /// endpoint to its second whose internal nodes are crossing nodes.
    pub fn check_route(&self, edge: EdgeId, route: &Route) -> std::result::Result<(), String> {
        let [u, v] = self.graph.edges[edge];
        if route.nodes.len() != route.segments.len() + 1 {
            return Err(format!("edge {edge}: node and segment counts disagree"));
        }
        if route.first() != self.vertex_node(u) || route.last() != self.vertex_node(v) {
            return Err(format!("edge {edge}: route does not join its endpoints"));
        }
        for (i, &sid) in route.segments.iter().enumerate() {
            let Some(s) = self.segments.get(sid) else {
                return Err(format!("edge {edge}: unknown segment {sid}"));
            };
            let (x, y) = (route.nodes[i], route.nodes[i + 1]);
            if !((s.a == x && s.b == y) || (s.a == y && s.b == x)) {
                return Err(format!("edge {edge}: segment {sid} does not join {x} and {y}"));
            }
        }
        for i in route.internal_visits() {
            if !self.is_crossing(route.nodes[i]) {
                return Err(format!(
                    "edge {edge}: passes through vertex node {} at visit {i}",
                    route.nodes[i]
                ));
            }
        }
        Ok(())
    }

    /// Checks every network invariant: routes, segment usage, crossing-node
    /// shape and Euler's formula.
    pub fn validate(&self) -> Result<()> {
        if self.original_routes.len() != self.graph.edge_count() {
            return Err(Error::network("one original route per edge required"));
        }
        let mut used_by = vec![usize::MAX; self.segments.len()];
        for (e, route) in self.original_routes.iter().enumerate() {
            self.check_route(e, route).map_err(Error::network)?;
            for &sid in &route.segments {
                if used_by[sid] != usize::MAX {
                    return Err(Error::at_segment(sid, "segment used by two original routes"));
                }
                used_by[sid] = e;
            }
        }
        if let Some(sid) = used_by.iter().position(|&e| e == usize::MAX) {
            return Err(Error::at_segment(sid, "segment not used by any route"));
        }
        for (node, kind) in self.nodes.iter().enumerate() {
            let NodeKind::Crossing(e, f) = *kind else { continue };
            let rot = &self.rotation[node];
            if rot.len() != 4 {
                return Err(Error::at_node(node, "crossing node must have degree 4"));
            }
            let owners: Vec<EdgeId> = rot.iter().map(|&s| used_by[s]).collect();
            let alternates = owners[0] == owners[2]
                && owners[1] == owners[3]
                && owners[0] != owners[1]
                && {
                    let mut pair = [owners[0], owners[1]];
                    pair.sort_unstable();
                    pair == [e, f]
                };
            if !alternates {
                return Err(Error::at_node(node, "rotation does not alternate between the crossing edges"));
            }
        }
        let euler = self.euler();
        if !euler.holds() {
            return Err(Error::network(format!("Euler's formula fails: {euler:?}")));
        }
        Ok(())
    }
}
