//! Lens surgeries: Swap, Reroute, Quasi-0-Reroute and loop removal.
//!
//! Every surgery rewrites whole routes through [`rebuild`]: each step of a
//! new route either takes over an existing strand (keeping its place in the
//! corridor) or is inserted directly beside a strand of another edge.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lens::{quasi_zero_witness, revalidate, IntersectionPoint, Lens, PointKind, QuasiWitness};
use crate::model::{
    boundary, in_ccw_arc, interleaved, ChordDiagram, CrossingIndex, DrawingState, EdgeId, NodeId, SegmentId,
    StrandId, SurgeryEffect,
};

/// A side of a directed walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Which rule fixed a side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SideRule {
    /// The lens end reached first along the rerouted edge is a crossing; the
    /// new chord there must not cross the reference edge.
    NearCrossing,
    /// The near end is a shared vertex; the rule is applied at the far end.
    FarCrossing,
    /// First pivot combination that crosses neither edge at the pivot.
    Pivot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SideChoice {
    pub side: Side,
    pub rule: SideRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Placement {
    /// Takes over an existing strand.
    Reuse(StrandId),
    /// New strand directly beside `reference`, on its left in the stored
    /// corridor orientation iff `stored_left`.
    Beside { reference: StrandId, stored_left: bool },
}

#[derive(Clone, Debug, Default)]
struct Plan {
    nodes: Vec<NodeId>,
    segments: Vec<SegmentId>,
    placements: Vec<Placement>,
}

impl Plan {
    fn starting_at(node: NodeId) -> Self {
        Plan {
            nodes: vec![node],
            ..Plan::default()
        }
    }

    fn push(&mut self, segment: SegmentId, to: NodeId, placement: Placement) {
        self.segments.push(segment);
        self.nodes.push(to);
        self.placements.push(placement);
    }

    /// Appends steps `range` of `edge`'s current route, reusing its strands.
    fn reuse(&mut self, state: &DrawingState, edge: EdgeId, steps: std::ops::Range<usize>) {
        let route = state.route(edge);
        for j in steps {
            self.push(route.segments[j], route.nodes[j + 1], Placement::Reuse(StrandId::new(edge, j)));
        }
    }

    /// Appends the steps of `edge` walked from visit `from` to visit `to`,
    /// either reusing its strands or running beside them on `side`.
    fn follow(&mut self, state: &DrawingState, edge: EdgeId, from: usize, to: usize, beside: Option<Side>) {
        for (step, at, next) in walk(state, edge, from, to) {
            let strand = StrandId::new(edge, step);
            let placement = match beside {
                None => Placement::Reuse(strand),
                Some(side) => {
                    let seg = state.network().segments[state.route(edge).segments[step]];
                    Placement::Beside {
                        reference: strand,
                        stored_left: (at == seg.a) == (side == Side::Left),
                    }
                }
            };
            self.push(state.route(edge).segments[step], next, placement);
        }
    }

    fn reversed(mut self) -> Self {
        self.nodes.reverse();
        self.segments.reverse();
        self.placements.reverse();
        self
    }
}

/// Steps of `edge`'s route from visit `from` to visit `to`, as
/// `(step, node left, node reached)`.
fn walk(state: &DrawingState, edge: EdgeId, from: usize, to: usize) -> Vec<(usize, NodeId, NodeId)> {
    let nodes = &state.route(edge).nodes;
    if from <= to {
        (from..to).map(|t| (t, nodes[t], nodes[t + 1])).collect()
    } else {
        (to..from).rev().map(|t| (t, nodes[t + 1], nodes[t])).collect()
    }
}

const MARKER_BASE: usize = usize::MAX;
const MARKER_FLOOR: usize = usize::MAX - 16;

fn marker(slot: usize, step: usize) -> StrandId {
    StrandId::new(MARKER_BASE - slot, step)
}

/// Replaces the routes of the planned edges at once.
fn rebuild(state: &mut DrawingState, plans: Vec<(EdgeId, Plan)>) -> SurgeryEffect {
    let mut effect = SurgeryEffect::default();
    let slot_of = |edge: EdgeId| plans.iter().position(|(e, _)| *e == edge);
    let mut old_segments = Vec::new();
    for (slot, (edge, _)) in plans.iter().enumerate() {
        let old = state.routes[*edge].clone();
        effect.touched.extend(old.nodes.iter().copied());
        for (j, &sid) in old.segments.iter().enumerate() {
            let strand = StrandId::new(*edge, j);
            let entry = state.corridors[sid]
                .iter_mut()
                .find(|s| **s == strand)
                .expect("strand listed in its corridor");
            *entry = marker(slot, j);
            old_segments.push(sid);
        }
    }
    for (edge, plan) in &plans {
        for (i, placement) in plan.placements.iter().enumerate() {
            if let Placement::Beside { reference, stored_left } = *placement {
                debug_assert!(slot_of(reference.edge).is_none());
                let corridor = &mut state.corridors[plan.segments[i]];
                let pos = corridor
                    .iter()
                    .position(|s| *s == reference)
                    .expect("reference strand present");
                corridor.insert(if stored_left { pos } else { pos + 1 }, StrandId::new(*edge, i));
            }
        }
    }
    for (edge, plan) in &plans {
        for (i, placement) in plan.placements.iter().enumerate() {
            if let Placement::Reuse(old) = *placement {
                let slot = slot_of(old.edge).expect("reused strands belong to rebuilt edges");
                let m = marker(slot, old.step);
                let entry = state.corridors[plan.segments[i]]
                    .iter_mut()
                    .find(|s| **s == m)
                    .expect("reused strand lies on the planned segment");
                *entry = StrandId::new(*edge, i);
            }
        }
    }
    old_segments.sort_unstable();
    old_segments.dedup();
    for sid in old_segments {
        state.corridors[sid].retain(|s| s.edge < MARKER_FLOOR);
    }
    for (edge, plan) in plans {
        effect.touched.extend(plan.nodes.iter().copied());
        effect.modified.insert(edge);
        let route = &mut state.routes[edge];
        route.nodes = plan.nodes;
        route.segments = plan.segments;
    }
    effect
}

/// Boundary position of `strand` in the disk of `node`.
fn position_at(state: &DrawingState, node: NodeId, strand: StrandId) -> usize {
    boundary(state, node)
        .iter()
        .position(|p| p.strand == strand)
        .expect("strand ends at this node")
}

/// The two strands of `edge` at its visit `visit`: the one taken when walking
/// towards visit `toward`, then the other.
fn strands_toward(edge: EdgeId, visit: usize, toward: usize) -> (StrandId, StrandId) {
    if toward > visit {
        (StrandId::new(edge, visit), StrandId::new(edge, visit - 1))
    } else {
        (StrandId::new(edge, visit - 1), StrandId::new(edge, visit))
    }
}

/// Lens ends ordered along `f`.
fn ends_along_f(lens: &Lens) -> (IntersectionPoint, IntersectionPoint) {
    if lens.alpha.on_f <= lens.beta.on_f {
        (lens.alpha, lens.beta)
    } else {
        (lens.beta, lens.alpha)
    }
}

/// The side of `e_αβ`, walked in `f`'s direction, on which the rerouted arc
/// runs: the new chord at the near end, or failing that at the far end,
/// must not cross `e`.
pub fn reroute_side(state: &DrawingState, lens: &Lens) -> SideChoice {
    let (a, b) = ends_along_f(lens);
    let (e, f) = (lens.e, lens.f);
    let (ja, jb) = (a.on_e.visit, b.on_e.visit);
    if let PointKind::Crossing { node } = a.kind {
        let (leave, other) = strands_toward(e, ja, jb);
        let p = position_at(state, node, leave);
        let p_other = position_at(state, node, other);
        let f_in = position_at(state, node, StrandId::new(f, a.on_f.visit - 1));
        let side = if in_ccw_arc(p, p_other, f_in) { Side::Left } else { Side::Right };
        return SideChoice {
            side,
            rule: SideRule::NearCrossing,
        };
    }
    let PointKind::Crossing { node } = b.kind else {
        unreachable!("two distinct edges share at most one endpoint");
    };
    let (arrive, other) = strands_toward(e, jb, ja);
    let p = position_at(state, node, arrive);
    let p_other = position_at(state, node, other);
    let f_out = position_at(state, node, StrandId::new(f, b.on_f.visit));
    let side = if in_ccw_arc(p_other, p, f_out) { Side::Left } else { Side::Right };
    SideChoice {
        side,
        rule: SideRule::FarCrossing,
    }
}

/// Redraws `f_αβ` to run closely along `e_αβ`.
pub fn reroute(state: &mut DrawingState, index: &mut CrossingIndex, lens: &Lens) -> Result<SurgeryEffect> {
    let lens = revalidate(state, index, lens)?;
    let (e, f) = (lens.e, lens.f);
    let (a, b) = ends_along_f(&lens);
    let side = reroute_side(state, &lens).side;
    let mut plan = Plan::starting_at(state.route(f).first());
    plan.reuse(state, f, 0..a.on_f.visit);
    plan.follow(state, e, a.on_e.visit, b.on_e.visit, Some(side));
    plan.reuse(state, f, b.on_f.visit..state.length(f));
    let mut effect = rebuild(state, vec![(f, plan)]);
    effect.merge(remove_self_crossings(state, f));
    finish(state, index, effect)
}

/// Exchanges `e_αβ` and `f_αβ`.
pub fn swap(state: &mut DrawingState, index: &mut CrossingIndex, lens: &Lens) -> Result<SurgeryEffect> {
    let lens = revalidate(state, index, lens)?;
    let (e, f) = (lens.e, lens.f);
    let (alpha, beta) = (lens.alpha, lens.beta);
    let mut new_e = Plan::starting_at(state.route(e).first());
    new_e.reuse(state, e, 0..alpha.on_e.visit);
    new_e.follow(state, f, alpha.on_f.visit, beta.on_f.visit, None);
    new_e.reuse(state, e, beta.on_e.visit..state.length(e));
    let (a, b) = ends_along_f(&lens);
    let mut new_f = Plan::starting_at(state.route(f).first());
    new_f.reuse(state, f, 0..a.on_f.visit);
    new_f.follow(state, e, a.on_e.visit, b.on_e.visit, None);
    new_f.reuse(state, f, b.on_f.visit..state.length(f));
    let mut effect = rebuild(state, vec![(e, new_e), (f, new_f)]);
    effect.merge(remove_self_crossings(state, e));
    effect.merge(remove_self_crossings(state, f));
    finish(state, index, effect)
}

/// Redraws `f` from the shared endpoint `s` along `h` up to `γ`, pivots
/// there onto `e` without crossing it, follows `e` to the far lens end and
/// keeps the rest of `f`.
pub fn quasi_zero_reroute(
    state: &mut DrawingState,
    index: &mut CrossingIndex,
    lens: &Lens,
    witness: &QuasiWitness,
) -> Result<SurgeryEffect> {
    let lens = revalidate(state, index, lens)?;
    match quasi_zero_witness(state, index, &lens) {
        Some(w) if w == *witness => {}
        Some(w) => return Err(Error::InvalidWitness(format!("expected {w:?}, got {witness:?}"))),
        None => return Err(Error::InvalidWitness(format!("lens between {} and {} is not quasi-0", lens.e, lens.f))),
    }
    let (e, f, h) = (lens.e, lens.f, witness.h);
    let graph = &state.network().graph;
    let from_start = graph.edges[f][0] == witness.s;
    let s_on_h = if graph.edges[h][0] == witness.s { 0 } else { state.length(h) };
    // The lens end farther from s along f.
    let far = {
        let (a, b) = ends_along_f(&lens);
        if from_start {
            b
        } else {
            a
        }
    };
    let gamma = *index
        .crossings(state, e)
        .iter()
        .find(|c| c.node == witness.gamma && c.partner == h)
        .ok_or_else(|| Error::InvalidWitness("witness crossing not found".into()))?;
    let (g_on_e, g_on_h) = (gamma.pos.visit, gamma.partner_pos.visit);
    let (side_h, side_e) = pivot_sides(state, witness.gamma, h, s_on_h, g_on_h, e, g_on_e, far.on_e.visit)?;

    let mut plan = Plan::starting_at(state.network().vertex_node(witness.s));
    plan.follow(state, h, s_on_h, g_on_h, Some(side_h));
    plan.follow(state, e, g_on_e, far.on_e.visit, Some(side_e));
    let plan = if from_start {
        plan.reuse(state, f, far.on_f.visit..state.length(f));
        plan
    } else {
        plan.follow(state, f, far.on_f.visit, 0, None);
        plan.reversed()
    };
    let mut effect = rebuild(state, vec![(f, plan)]);
    effect.merge(remove_self_crossings(state, f));
    finish(state, index, effect)
}

/// Sides along `h` (towards `γ`) and along `e` (away from `γ`) for the first
/// pivot, in the order LL, LR, RL, RR, whose chord in `γ`'s disk crosses
/// neither `e` nor `h`.
#[allow(clippy::too_many_arguments)]
fn pivot_sides(
    state: &DrawingState,
    gamma: NodeId,
    h: EdgeId,
    h_from: usize,
    h_at: usize,
    e: EdgeId,
    e_at: usize,
    e_to: usize,
) -> Result<(Side, Side)> {
    // Doubled positions: strands sit at even slots, gaps at odd ones.
    let ring = 2 * boundary(state, gamma).len() as i64;
    let pos = |s: StrandId| 2 * position_at(state, gamma, s) as i64;
    let (h_arrive, h_other) = strands_toward(h, h_at, h_from);
    let (e_leave, e_other) = strands_toward(e, e_at, e_to);
    let wrap = |x: i64| x.rem_euclid(ring) as usize;
    let e_chord = (wrap(pos(e_leave)), wrap(pos(e_other)));
    let h_chord = (wrap(pos(h_arrive)), wrap(pos(h_other)));
    for (sh, se) in [
        (Side::Left, Side::Left),
        (Side::Left, Side::Right),
        (Side::Right, Side::Left),
        (Side::Right, Side::Right),
    ] {
        // Left of an arriving strand is counterclockwise-before it; left of
        // a leaving strand is counterclockwise-after it.
        let entry = wrap(pos(h_arrive) + if sh == Side::Left { -1 } else { 1 });
        let exit = wrap(pos(e_leave) + if se == Side::Left { 1 } else { -1 });
        let crosses = |c: (usize, usize)| entry != exit && interleaved(entry, exit, c.0, c.1);
        if !crosses(e_chord) && !crosses(h_chord) {
            return Ok((sh, se));
        }
    }
    Err(Error::InconsistentState(format!("no pivot avoids both edges at node {gamma}")))
}

/// Splices out every loop of `e` whose two chords cross in one disk, the
/// smallest `(node, visit pair)` first.
pub fn remove_self_crossings(state: &mut DrawingState, e: EdgeId) -> SurgeryEffect {
    let mut effect = SurgeryEffect::default();
    while let Some((i, j)) = first_self_crossing(state, e) {
        let mut plan = Plan::starting_at(state.route(e).first());
        plan.reuse(state, e, 0..i);
        plan.reuse(state, e, j..state.length(e));
        effect.merge(rebuild(state, vec![(e, plan)]));
    }
    effect
}

fn first_self_crossing(state: &DrawingState, e: EdgeId) -> Option<(usize, usize)> {
    let route = state.route(e);
    let mut visits: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for v in route.internal_visits() {
        visits.entry(route.nodes[v]).or_default().push(v);
    }
    for (node, list) in visits {
        if list.len() < 2 {
            continue;
        }
        let diagram = ChordDiagram::build_unchecked(state, node);
        let mut best: Option<(usize, usize)> = None;
        for (x, &i) in list.iter().enumerate() {
            for &j in &list[x + 1..] {
                let (ci, cj) = (diagram.chord_of(e, i)?, diagram.chord_of(e, j)?);
                if diagram.crosses(ci, cj) && best.is_none_or(|b| (i, j) < b) {
                    best = Some((i, j));
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

fn finish(state: &mut DrawingState, index: &mut CrossingIndex, effect: SurgeryEffect) -> Result<SurgeryEffect> {
    state.epoch += 1;
    index.update(state, &effect);
    Ok(effect)
}

/// Convenience forms that build a throwaway crossing index.
pub mod standalone {
    use super::*;

    pub fn swap(state: &mut DrawingState, lens: &Lens) -> Result<SurgeryEffect> {
        super::swap(state, &mut CrossingIndex::lazy(state), lens)
    }

    pub fn reroute(state: &mut DrawingState, lens: &Lens) -> Result<SurgeryEffect> {
        super::reroute(state, &mut CrossingIndex::lazy(state), lens)
    }

    pub fn quasi_zero_reroute(state: &mut DrawingState, lens: &Lens, witness: &QuasiWitness) -> Result<SurgeryEffect> {
        super::quasi_zero_reroute(state, &mut CrossingIndex::lazy(state), lens, witness)
    }
}
