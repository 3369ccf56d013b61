//! Planarization of the current drawing: every interleaving chord pair
//! becomes a degree-4 node placed inside its disk.

use std::collections::HashMap;

use super::crossings::CrossingIndex;
use super::disk::{boundary, in_ccw_arc};
use super::network::{NetworkN, NodeKind, Route, Segment};
use super::state::DrawingState;
use super::{EdgeId, NodeId, SegmentId};
use crate::error::{Error, Result};

/// Where a crossing node of a planarization came from: the disk node of the
/// source network and the two chords, as `(edge, visit)`, smaller edge first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingOrigin {
    pub disk: NodeId,
    pub chords: [(EdgeId, usize); 2],
}

#[derive(Clone, Debug)]
pub struct Planarization {
    pub network: NetworkN,
    /// Indexed by node id of `network`; `None` for vertex nodes.
    pub origin: Vec<Option<CrossingOrigin>>,
}

/// Builds the planarization of the current drawing. Vertex `v` becomes node
/// `v`; crossing nodes follow in order of first appearance along edges taken
/// by increasing id.
pub fn materialize_planarization(state: &DrawingState) -> Result<Planarization> {
    let net = state.network();
    let graph = net.graph.clone();
    let n = graph.vertex_count;
    let mut index = CrossingIndex::lazy(state);

    let mut nodes: Vec<NodeKind> = (0..n).map(NodeKind::Vertex).collect();
    let mut origin: Vec<Option<CrossingOrigin>> = vec![None; n];
    // (disk node, chord i, chord j) with i < j -> new node id
    let mut crossing_node: HashMap<(NodeId, usize, usize), NodeId> = HashMap::new();
    let mut segments: Vec<Segment> = Vec::new();
    let mut routes: Vec<Route> = Vec::with_capacity(state.edge_count());
    // For each new crossing node: segment before/after along the chord, per chord.
    let mut around: HashMap<NodeId, [(usize, SegmentId, SegmentId); 2]> = HashMap::new();

    for (e, route) in state.routes.iter().enumerate() {
        let [u, _] = graph.edges[e];
        let mut new_nodes = vec![u];
        let mut new_segs = Vec::new();
        // Crossing node just reached, with its chord and incoming segment.
        let mut open: Option<(NodeId, usize, SegmentId)> = None;
        for visit in route.internal_visits() {
            let disk_node = route.nodes[visit];
            let disk = index.disk(state, disk_node);
            let ci = disk
                .diagram
                .chord_of(e, visit)
                .ok_or_else(|| Error::InconsistentState(format!("edge {e} has no chord at visit {visit}")))?;
            let order = disk.orders[ci].clone();
            let chords = disk.diagram.chords.clone();
            for dj in order {
                if chords[dj].edge == e {
                    return Err(Error::InconsistentState(format!(
                        "edge {e} crosses itself at node {disk_node}"
                    )));
                }
                let key = (disk_node, ci.min(dj), ci.max(dj));
                let id = *crossing_node.entry(key).or_insert_with(|| {
                    let id = nodes.len();
                    let other = chords[dj].edge;
                    nodes.push(NodeKind::Crossing(e.min(other), e.max(other)));
                    let mut pair = [(e, visit), (other, chords[dj].visit)];
                    pair.sort_unstable();
                    origin.push(Some(CrossingOrigin {
                        disk: disk_node,
                        chords: pair,
                    }));
                    id
                });
                let sid = segments.len();
                segments.push(Segment {
                    a: *new_nodes.last().unwrap(),
                    b: id,
                });
                new_segs.push(sid);
                close(&mut around, open.take(), sid);
                open = Some((id, ci, sid));
                new_nodes.push(id);
            }
        }
        let [_, v] = graph.edges[e];
        let sid = segments.len();
        segments.push(Segment {
            a: *new_nodes.last().unwrap(),
            b: v,
        });
        new_segs.push(sid);
        close(&mut around, open.take(), sid);
        new_nodes.push(v);
        routes.push(Route {
            nodes: new_nodes,
            segments: new_segs,
        });
    }

    let mut rotation: Vec<Vec<SegmentId>> = vec![Vec::new(); nodes.len()];
    // Vertex rotations follow the boundary order of the vertex disk.
    for (v, rot) in rotation.iter_mut().enumerate().take(n) {
        let node = net.vertex_node(v);
        for p in boundary(state, node) {
            let r = &routes[p.strand.edge];
            let starts_here = state.routes[p.strand.edge].nodes[p.strand.step] == node;
            rot.push(if starts_here { r.segments[0] } else { *r.segments.last().unwrap() });
        }
    }
    for (&(disk_node, i, j), &id) in &crossing_node {
        let disk = index.disk(state, disk_node);
        let (c, d) = (disk.diagram.chords[i], disk.diagram.chords[j]);
        let sides = around
            .get(&id)
            .ok_or_else(|| Error::InconsistentState(format!("crossing node {id} incomplete")))?;
        let find = |chord: usize| {
            sides
                .iter()
                .find(|s| s.0 == chord)
                .map(|s| (s.1, s.2))
                .ok_or_else(|| Error::InconsistentState(format!("crossing node {id} incomplete")))
        };
        let (c_before, c_after) = find(i)?;
        let (d_before, d_after) = find(j)?;
        // The exit of d is left of c iff it lies on the ccw arc from c's exit
        // back to c's entry.
        rotation[id] = if in_ccw_arc(c.exit, c.entry, d.exit) {
            vec![c_after, d_after, c_before, d_before]
        } else {
            vec![c_after, d_before, c_before, d_after]
        };
    }

    let network = NetworkN::assemble(graph, nodes, segments, rotation, routes)
        .and_then(|n| n.validate().map(|_| n))
        .map_err(|err| Error::InconsistentState(err.to_string()))?;
    Ok(Planarization { network, origin })
}

/// Records the two segments around a crossing node along one chord.
fn close(
    around: &mut HashMap<NodeId, [(usize, SegmentId, SegmentId); 2]>,
    open: Option<(NodeId, usize, SegmentId)>,
    after: SegmentId,
) {
    let Some((node, chord, before)) = open else { return };
    let entry = around.entry(node).or_insert([(usize::MAX, 0, 0); 2]);
    let slot = usize::from(entry[0].0 != usize::MAX);
    entry[slot] = (chord, before, after);
}
