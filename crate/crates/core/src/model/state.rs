use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::network::{NetworkN, Route};
use super::{EdgeId, SegmentId};
use crate::error::Result;

/// One traversal of a segment by an edge: step `step` of the edge's route,
/// i.e. the passage from `nodes[step]` to `nodes[step + 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrandId {
    pub edge: EdgeId,
    pub step: usize,
}

impl StrandId {
    pub fn new(edge: EdgeId, step: usize) -> Self {
        StrandId { edge, step }
    }
}

/// The evolving drawing: every edge follows a walk in the fixed network, and
/// every segment carries its strands in a left-to-right order (looking from
/// the segment's `a` end towards `b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingState {
    pub(crate) network: Arc<NetworkN>,
    pub(crate) routes: Vec<Route>,
    pub(crate) corridors: Vec<Vec<StrandId>>,
    pub(crate) epoch: u64,
}

impl DrawingState {
    /// The drawing the network was built from: original routes, one strand
    /// per corridor.
    pub fn initial(network: impl Into<Arc<NetworkN>>) -> Result<Self> {
        let network = network.into();
        network.validate()?;
        let mut corridors = vec![Vec::new(); network.segment_count()];
        for (e, route) in network.original_routes.iter().enumerate() {
            for (step, &sid) in route.segments.iter().enumerate() {
                corridors[sid].push(StrandId::new(e, step));
            }
        }
        Ok(DrawingState {
            routes: network.original_routes.clone(),
            network,
            corridors,
            epoch: 0,
        })
    }

    /// Reassembles a state from stored parts. Nothing is checked here; run
    /// [`crate::model::validate_state`] on the result.
    pub fn from_parts(
        network: impl Into<Arc<NetworkN>>,
        routes: Vec<Route>,
        corridors: Vec<Vec<StrandId>>,
        epoch: u64,
    ) -> Self {
        DrawingState {
            network: network.into(),
            routes,
            corridors,
            epoch,
        }
    }

    pub fn network(&self) -> &NetworkN {
        &self.network
    }

    pub fn shared_network(&self) -> Arc<NetworkN> {
        Arc::clone(&self.network)
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    pub fn route(&self, e: EdgeId) -> &Route {
        &self.routes[e]
    }

    pub fn corridor(&self, s: SegmentId) -> &[StrandId] {
        &self.corridors[s]
    }

    pub fn corridors(&self) -> &[Vec<StrandId>] {
        &self.corridors
    }

    pub fn edge_count(&self) -> usize {
        self.routes.len()
    }

    /// Number of surgeries applied since the initial state.
    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn length(&self, e: EdgeId) -> usize {
        self.routes[e].len()
    }

    pub fn total_length(&self) -> usize {
        self.routes.iter().map(Route::len).sum()
    }

    /// True when every route is its original route.
    pub fn is_initial(&self) -> bool {
        self.routes == self.network.original_routes
            && self.corridors.iter().all(|c| c.len() == 1)
    }
}
