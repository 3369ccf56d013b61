use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{check_k_plane, quasi_zero_reading, replanarize, LensTracker};
use crate::error::{Error, Result};
use crate::lens::{revalidate, ClassifiedLens, Lens, LensClass};
use crate::model::{CrossingIndex, DrawingState, EdgeId, NodeId};
use crate::ops::{quasi_zero_reroute, reroute, swap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Surgery {
    Reroute,
    Swap,
    QuasiZeroReroute,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseStep {
    pub lens: Lens,
    pub class: LensClass,
    pub surgery: Surgery,
    pub total_crossings_before: usize,
    pub total_crossings_after: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Phase2Outcome {
    Rerouted,
    /// An arc of the lens overlaps an interval replaced earlier.
    SkippedModified,
    /// The lens no longer exists.
    SkippedStale,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Phase2Step {
    pub lens: Lens,
    pub outcome: Phase2Outcome,
}

/// A route interval, in visits of the route as it was when the snapshot of
/// 1-3-lenses was taken, that a Phase 2 reroute replaced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReplacedInterval {
    pub edge: EdgeId,
    pub from_visit: usize,
    pub to_visit: usize,
    pub epoch: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModifiedArcLog {
    pub entries: Vec<ReplacedInterval>,
}

impl ModifiedArcLog {
    /// True iff visits `a..b` of `edge` share a segment with a replaced
    /// interval of the same edge.
    pub fn overlaps(&self, edge: EdgeId, a: usize, b: usize) -> bool {
        let (lo, hi) = (a.min(b), a.max(b));
        self.entries
            .iter()
            .any(|r| r.edge == edge && lo.max(r.from_visit) < hi.min(r.to_visit))
    }

    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.entries.iter().map(|r| r.edge).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Algo2Trace {
    pub phase1: Vec<PhaseStep>,
    pub phase2: Vec<Phase2Step>,
    pub log: ModifiedArcLog,
    pub phase3: Vec<PhaseStep>,
}

fn check_input(state: &DrawingState) -> Result<()> {
    if !state.is_initial() {
        return Err(Error::NotInitial);
    }
    let mut index = CrossingIndex::new(state);
    check_k_plane(state, &mut index, 4).map_err(|err| match err {
        Error::NotKPlane { edge, crossings, .. } => Error::Not4Plane { edge, crossings },
        other => other,
    })
}

/// Phase 1, replanarization, Phase 2 and Phase 3 in sequence.
///
/// The output is on the planarization of the Phase 1 result, not on the
/// input's network.
pub fn algorithm2(state: DrawingState) -> Result<(DrawingState, Algo2Trace)> {
    check_input(&state)?;
    let (state, phase1_steps) = phase1(state)?;
    let state = replanarize(&state)?;
    let (state, phase2_steps, log) = phase2(state)?;
    let (state, phase3_steps) = phase3(state)?;
    Ok((
        state,
        Algo2Trace {
            phase1: phase1_steps,
            phase2: phase2_steps,
            log,
            phase3: phase3_steps,
        },
    ))
}

/// Removes every lens that is not a 1-3-lens: 0-lenses by reroute, the rest
/// by swap.
pub fn phase1(mut state: DrawingState) -> Result<(DrawingState, Vec<PhaseStep>)> {
    check_input(&state)?;
    let mut index = CrossingIndex::new(&state);
    let mut tracker = LensTracker::new(&state, &mut index);
    let mut steps = Vec::new();
    while let Some(cl) = tracker.first(|l| l.class != LensClass::OneThree) {
        let before = index.total_crossings();
        let surgery = if cl.class == LensClass::Zero {
            reroute(&mut state, &mut index, &cl.lens)?;
            Surgery::Reroute
        } else {
            swap(&mut state, &mut index, &cl.lens)?;
            Surgery::Swap
        };
        tracker.sync(&state, &mut index);
        steps.push(step(&cl, surgery, before, index.total_crossings()));
    }
    Ok((state, steps))
}

fn step(cl: &ClassifiedLens, surgery: Surgery, before: usize, after: usize) -> PhaseStep {
    PhaseStep {
        lens: cl.lens,
        class: cl.class,
        surgery,
        total_crossings_before: before,
        total_crossings_after: after,
    }
}

/// Reroutes `f` along `e` once for every 1-3-lens present at the start,
/// skipping lenses whose arcs were already replaced.
pub fn phase2(mut state: DrawingState) -> Result<(DrawingState, Vec<Phase2Step>, ModifiedArcLog)> {
    let mut index = CrossingIndex::new(&state);
    let snapshot: Vec<ClassifiedLens> = LensTracker::new(&state, &mut index).iter().copied().collect();
    if let Some(bad) = snapshot.iter().find(|l| l.class != LensClass::OneThree) {
        return Err(Error::PhaseOrderViolation(format!(
            "{:?} lens between edges {} and {} before Phase 2",
            bad.class, bad.lens.e, bad.lens.f
        )));
    }
    let mut log = ModifiedArcLog::default();
    let mut steps = Vec::new();
    for cl in snapshot {
        let lens = cl.lens;
        let modified = log.overlaps(lens.e, lens.alpha.on_e.visit, lens.beta.on_e.visit)
            || log.overlaps(lens.f, lens.alpha.on_f.visit, lens.beta.on_f.visit);
        let outcome = if modified {
            Phase2Outcome::SkippedModified
        } else {
            match revalidate(&state, &mut index, &lens) {
                Err(Error::StaleLens(..)) => Phase2Outcome::SkippedStale,
                Err(err) => return Err(err),
                Ok(current) => {
                    reroute(&mut state, &mut index, &current)?;
                    log.entries.push(ReplacedInterval {
                        edge: lens.f,
                        from_visit: lens.alpha.on_f.visit.min(lens.beta.on_f.visit),
                        to_visit: lens.alpha.on_f.visit.max(lens.beta.on_f.visit),
                        epoch: state.epoch(),
                    });
                    Phase2Outcome::Rerouted
                }
            }
        };
        steps.push(Phase2Step { lens, outcome });
    }
    Ok((state, steps, log))
}

/// Reroutes 0-lenses while any exists, otherwise quasi-0-lenses; any other
/// lens left at the end is an error.
pub fn phase3(mut state: DrawingState) -> Result<(DrawingState, Vec<PhaseStep>)> {
    let mut index = CrossingIndex::new(&state);
    let mut tracker = LensTracker::new(&state, &mut index);
    let mut steps = Vec::new();
    loop {
        let before = index.total_crossings();
        if let Some(cl) = tracker.first(|l| l.class == LensClass::Zero) {
            reroute(&mut state, &mut index, &cl.lens)?;
            tracker.sync(&state, &mut index);
            steps.push(step(&cl, Surgery::Reroute, before, index.total_crossings()));
            continue;
        }
        let lenses: Vec<ClassifiedLens> = tracker.iter().copied().collect();
        let Some((lens, witness)) = lenses.iter().find_map(|cl| quasi_zero_reading(&state, &mut index, cl)) else {
            break;
        };
        quasi_zero_reroute(&mut state, &mut index, &lens, &witness)?;
        tracker.sync(&state, &mut index);
        let cl = ClassifiedLens {
            lens,
            class: LensClass::QuasiZero(witness),
        };
        steps.push(step(&cl, Surgery::QuasiZeroReroute, before, index.total_crossings()));
    }
    if let Some(left) = tracker.first(|_| true) {
        return Err(Error::UnexpectedLens(format!(
            "{:?} lens between edges {} and {} (arc crossings {} and {}, arc lengths {} and {}, ends {:?} and {:?})",
            left.class,
            left.lens.e,
            left.lens.f,
            left.lens.x_e_arc,
            left.lens.x_f_arc,
            left.lens.len_e_arc,
            left.lens.len_f_arc,
            left.lens.alpha,
            left.lens.beta
        )));
    }
    Ok((state, steps))
}

/// The quantities bounded after Phase 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Phase2Report {
    pub max_length: usize,
    pub max_edges_per_segment: usize,
    pub max_rerouted_per_node: usize,
    pub max_partners_per_disk: usize,
    pub max_common_points: usize,
    pub max_crossings: usize,
}

impl Phase2Report {
    pub fn holds(&self) -> bool {
        self.max_length <= 5
            && self.max_edges_per_segment <= 2
            && self.max_rerouted_per_node <= 2
            && self.max_partners_per_disk <= 2
            && self.max_common_points <= 2
            && self.max_crossings <= 8
    }
}

/// Measures a Phase 2 output; `log` names the rerouted edges.
pub fn phase2_report(state: &DrawingState, log: &ModifiedArcLog) -> Phase2Report {
    let mut index = CrossingIndex::new(state);
    let rerouted = log.edges();
    let mut report = Phase2Report {
        max_length: (0..state.edge_count()).map(|e| state.length(e)).max().unwrap_or(0),
        max_edges_per_segment: state.corridors().iter().map(Vec::len).max().unwrap_or(0),
        ..Phase2Report::default()
    };
    let mut through: HashMap<NodeId, BTreeSet<EdgeId>> = HashMap::new();
    for &e in &rerouted {
        for v in state.route(e).internal_visits() {
            through.entry(state.route(e).nodes[v]).or_default().insert(e);
        }
    }
    report.max_rerouted_per_node = through.values().map(BTreeSet::len).max().unwrap_or(0);
    let mut partners: HashMap<(EdgeId, NodeId), BTreeSet<EdgeId>> = HashMap::new();
    let mut common: BTreeMap<(EdgeId, EdgeId), usize> = BTreeMap::new();
    for e in 0..state.edge_count() {
        let list = index.crossings(state, e).to_vec();
        report.max_crossings = report.max_crossings.max(list.len());
        for c in list {
            partners.entry((e, c.node)).or_default().insert(c.partner);
            if e < c.partner {
                *common.entry((e, c.partner)).or_default() += 1;
            }
        }
    }
    let graph = &state.network().graph;
    for e in 0..graph.edge_count() {
        for f in e + 1..graph.edge_count() {
            if graph.shared_endpoint(e, f).is_some() {
                *common.entry((e, f)).or_default() += 1;
            }
        }
    }
    report.max_partners_per_disk = partners.values().map(BTreeSet::len).max().unwrap_or(0);
    report.max_common_points = common.values().copied().max().unwrap_or(0);
    report
}
