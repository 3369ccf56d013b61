use serde::Serialize;

use super::{check_k_plane, LensTracker};
use crate::error::{Error, Result};
use crate::lens::Lens;
use crate::model::{CrossingIndex, DrawingState};
use crate::ops::{reroute, reroute_side, SideChoice};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Algo1Step {
    /// The lens as rerouted: `f` was redrawn along `e`.
    pub lens: Lens,
    pub side: SideChoice,
    pub len_e_arc: usize,
    pub len_f_arc: usize,
    pub x_e_arc: usize,
    pub x_f_arc: usize,
    pub total_length_before: usize,
    pub total_length_after: usize,
    pub total_crossings_before: usize,
    pub total_crossings_after: usize,
    /// Length of the rerouted edge afterwards.
    pub f_length_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Algo1Trace {
    pub k: usize,
    pub steps: Vec<Algo1Step>,
}

/// The shorter arc plays `e`; equal lengths fall back to fewer crossings,
/// then to the smaller edge id.
fn oriented_by_length(lens: &Lens) -> Lens {
    let key = |l: &Lens| (l.len_e_arc, l.x_e_arc, l.e);
    let other = lens.swapped();
    if key(lens) <= key(&other) {
        *lens
    } else {
        other
    }
}

/// Reroutes the first lens, by edge pair and then by position along the
/// smaller edge, until none is left.
///
/// The input must be k-plane and the initial state of its network.
pub fn algorithm1(mut state: DrawingState, k: usize) -> Result<(DrawingState, Algo1Trace)> {
    if k == 0 {
        return Err(Error::NonPositiveK);
    }
    if !state.is_initial() {
        return Err(Error::NotInitial);
    }
    let mut index = CrossingIndex::new(&state);
    check_k_plane(&state, &mut index, k)?;
    let mut tracker = LensTracker::new(&state, &mut index);
    let mut trace = Algo1Trace { k, steps: Vec::new() };
    let mut total_length = state.total_length();
    while let Some(first) = tracker.first(|_| true) {
        let lens = oriented_by_length(&first.lens);
        let side = reroute_side(&state, &lens);
        let total_crossings = index.total_crossings();
        let f_length = state.length(lens.f);
        reroute(&mut state, &mut index, &lens)?;
        tracker.sync(&state, &mut index);
        // Only f's route changes.
        let after = total_length - f_length + state.length(lens.f);
        trace.steps.push(Algo1Step {
            lens,
            side,
            len_e_arc: lens.len_e_arc,
            len_f_arc: lens.len_f_arc,
            x_e_arc: lens.x_e_arc,
            x_f_arc: lens.x_f_arc,
            total_length_before: total_length,
            total_length_after: after,
            total_crossings_before: total_crossings,
            total_crossings_after: index.total_crossings(),
            f_length_after: state.length(lens.f),
        });
        total_length = after;
    }
    Ok((state, trace))
}
