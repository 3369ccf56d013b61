//! Combinatorial drawings: a fixed planarization plus evolving routes and
//! corridor orders.

mod crossings;
mod disk;
mod faces;
mod measures;
mod network;
mod planarize;
mod state;
mod validate;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type NodeId = usize;
pub type SegmentId = usize;

pub use crossings::{CrossingIndex, EdgeCrossing, Position, SurgeryEffect};
pub use disk::{boundary, in_ccw_arc, interleaved, BoundaryPoint, Chord, ChordDiagram};
pub use faces::{count_components, count_face_walks, EulerCheck};
pub(crate) use faces::face_walks;
pub use measures::{is_simple, measures, Measures};
pub use network::{GraphSpec, NetworkN, NodeKind, Route, Segment};
pub use planarize::{materialize_planarization, CrossingOrigin, Planarization};
pub use state::{DrawingState, StrandId};
pub use validate::{validate_state, Check, CheckResult, ValidationReport};

/// The drawing the network was built from; see [`DrawingState::initial`].
pub fn build_initial_state(network: impl Into<std::sync::Arc<NetworkN>>) -> crate::error::Result<DrawingState> {
    DrawingState::initial(network)
}

/// A chord diagram at a crossing node.
pub fn chord_diagram(state: &DrawingState, node: NodeId) -> crate::error::Result<ChordDiagram> {
    ChordDiagram::build(state, node)
}
