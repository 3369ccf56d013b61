//! Invariant checks on a drawing state. Failures are reported, never raised.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::disk::ChordDiagram;
use super::planarize::materialize_planarization;
use super::state::{DrawingState, StrandId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Check {
    /// Every route is a walk in the network between its endpoint nodes.
    RoutesAreWalks,
    /// Vertex nodes occur only at route ends.
    InternalNodesAreCrossings,
    /// Every traversal is listed exactly once in its corridor and nothing
    /// else is.
    CorridorConsistency,
    /// Every strand through a node pairs into a chord of that node's disk.
    CrossingsInDisks,
    NoSelfCrossing,
    /// Two edges cross at most once inside any one disk.
    AtMostOneCrossingPerDisk,
    /// The materialized planarization satisfies Euler's formula.
    Euler,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub results: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.ok)
    }

    pub fn get(&self, check: Check) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.check == check)
    }

    fn record(&mut self, check: Check, outcome: Result<(), String>) -> bool {
        let ok = outcome.is_ok();
        self.results.push(CheckResult {
            check,
            ok,
            detail: outcome.err(),
        });
        ok
    }

    fn skip(&mut self, checks: &[Check]) {
        for &check in checks {
            self.record(check, Err("skipped: an earlier check failed".into()));
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.detail {
                Some(d) => writeln!(f, "{:?}: FAIL ({d})", r.check)?,
                None => writeln!(f, "{:?}: ok", r.check)?,
            }
        }
        Ok(())
    }
}

pub fn validate_state(state: &DrawingState) -> ValidationReport {
    let mut report = ValidationReport::default();
    let walks = report.record(Check::RoutesAreWalks, check_walks(state));
    let internal = report.record(Check::InternalNodesAreCrossings, check_internal(state));
    if !(walks && internal) {
        report.skip(&[
            Check::CorridorConsistency,
            Check::CrossingsInDisks,
            Check::NoSelfCrossing,
            Check::AtMostOneCrossingPerDisk,
            Check::Euler,
        ]);
        return report;
    }
    if !report.record(Check::CorridorConsistency, check_corridors(state)) {
        report.skip(&[
            Check::CrossingsInDisks,
            Check::NoSelfCrossing,
            Check::AtMostOneCrossingPerDisk,
            Check::Euler,
        ]);
        return report;
    }
    let mut diagrams = Vec::new();
    let disks = (|| {
        let net = state.network();
        for node in 0..net.node_count() {
            if !net.is_crossing(node) {
                continue;
            }
            let d = ChordDiagram::build_checked_pairs(state, node)?;
            diagrams.push(d);
        }
        Ok(())
    })();
    if !report.record(Check::CrossingsInDisks, disks) {
        report.skip(&[Check::NoSelfCrossing, Check::AtMostOneCrossingPerDisk, Check::Euler]);
        return report;
    }
    let mut self_ok = Ok(());
    let mut once_ok = Ok(());
    for d in &diagrams {
        let mut seen = HashSet::new();
        for (i, j) in d.crossing_pairs() {
            let (a, b) = (d.chords[i].edge, d.chords[j].edge);
            if a == b {
                if self_ok.is_ok() {
                    self_ok = Err(format!("edge {a} crosses itself at node {}", d.node));
                }
            } else if !seen.insert((a.min(b), a.max(b))) && once_ok.is_ok() {
                once_ok = Err(format!("edges {a} and {b} cross twice at node {}", d.node));
            }
        }
    }
    let self_passed = report.record(Check::NoSelfCrossing, self_ok);
    report.record(Check::AtMostOneCrossingPerDisk, once_ok);
    if !self_passed {
        report.skip(&[Check::Euler]);
        return report;
    }
    let euler = match materialize_planarization(state) {
        Ok(p) => {
            let check = p.network.euler();
            if check.holds() {
                Ok(())
            } else {
                Err(format!("{check:?}"))
            }
        }
        Err(e) => Err(e.to_string()),
    };
    report.record(Check::Euler, euler);
    report
}

fn check_walks(state: &DrawingState) -> Result<(), String> {
    let net = state.network();
    if state.routes.len() != net.graph.edge_count() {
        return Err(format!(
            "{} routes for {} edges",
            state.routes.len(),
            net.graph.edge_count()
        ));
    }
    for (e, route) in state.routes.iter().enumerate() {
        if route.nodes.len() != route.segments.len() + 1 || route.segments.is_empty() {
            return Err(format!("edge {e}: malformed route"));
        }
        let [u, v] = net.graph.edges[e];
        if route.first() != net.vertex_node(u) || route.last() != net.vertex_node(v) {
            return Err(format!("edge {e}: route does not join its endpoints"));
        }
        for (i, &sid) in route.segments.iter().enumerate() {
            let Some(s) = net.segments.get(sid) else {
                return Err(format!("edge {e}: unknown segment {sid}"));
            };
            let (x, y) = (route.nodes[i], route.nodes[i + 1]);
            if !((s.a == x && s.b == y) || (s.a == y && s.b == x)) {
                return Err(format!("edge {e}: segment {sid} does not join {x} and {y}"));
            }
        }
    }
    Ok(())
}

fn check_internal(state: &DrawingState) -> Result<(), String> {
    let net = state.network();
    for (e, route) in state.routes.iter().enumerate() {
        for i in route.internal_visits() {
            if !net.is_crossing(route.nodes[i]) {
                return Err(format!("edge {e}: vertex node {} at visit {i}", route.nodes[i]));
            }
        }
    }
    Ok(())
}

fn check_corridors(state: &DrawingState) -> Result<(), String> {
    let net = state.network();
    if state.corridors.len() != net.segment_count() {
        return Err("one corridor per segment required".into());
    }
    let mut seen: HashSet<StrandId> = HashSet::new();
    for (sid, corridor) in state.corridors.iter().enumerate() {
        for &strand in corridor {
            let ok = state
                .routes
                .get(strand.edge)
                .and_then(|r| r.segments.get(strand.step))
                .is_some_and(|&s| s == sid);
            if !ok {
                return Err(format!("segment {sid}: stray strand {strand:?}"));
            }
            if !seen.insert(strand) {
                return Err(format!("segment {sid}: strand {strand:?} listed twice"));
            }
        }
    }
    for (e, route) in state.routes.iter().enumerate() {
        for (step, &sid) in route.segments.iter().enumerate() {
            if !seen.contains(&StrandId::new(e, step)) {
                return Err(format!("segment {sid}: missing strand of edge {e} step {step}"));
            }
        }
    }
    Ok(())
}
