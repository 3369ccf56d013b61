use std::collections::BTreeMap;

use serde::Serialize;

use super::crossings::CrossingIndex;
use super::state::DrawingState;
use super::EdgeId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Measures {
    /// `ℓ(e)` per edge: number of segments on its route.
    pub length: Vec<usize>,
    /// `x(e)` per edge.
    pub crossings: Vec<usize>,
    pub total_length: usize,
    pub total_crossings: usize,
}

impl Measures {
    pub fn max_crossings(&self) -> usize {
        self.crossings.iter().copied().max().unwrap_or(0)
    }

    pub fn max_length(&self) -> usize {
        self.length.iter().copied().max().unwrap_or(0)
    }
}

pub fn measures(state: &DrawingState) -> Measures {
    let mut index = CrossingIndex::new(state);
    let length: Vec<usize> = (0..state.edge_count()).map(|e| state.length(e)).collect();
    let crossings: Vec<usize> = (0..state.edge_count()).map(|e| index.x(state, e)).collect();
    Measures {
        total_length: length.iter().sum(),
        total_crossings: index.total_crossings(),
        length,
        crossings,
    }
}

/// Crossing counts per unordered edge pair, smaller id first.
pub(crate) fn pair_crossings(state: &DrawingState, index: &mut CrossingIndex) -> BTreeMap<(EdgeId, EdgeId), usize> {
    let mut out = BTreeMap::new();
    for e in 0..state.edge_count() {
        for c in index.crossings(state, e) {
            if c.partner > e {
                *out.entry((e, c.partner)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// No two edges share more than one point: adjacent edges never cross and
/// other pairs cross at most once.
pub fn is_simple(state: &DrawingState) -> bool {
    let mut index = CrossingIndex::lazy(state);
    let graph = &state.network().graph;
    pair_crossings(state, &mut index)
        .into_iter()
        .all(|((e, f), count)| count + usize::from(graph.adjacent(e, f)) <= 1)
        && (0..state.edge_count()).all(|e| index.crossings(state, e).iter().all(|c| c.partner != e))
}
