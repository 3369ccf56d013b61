//! Per-edge crossing lists derived from chord diagrams, with incremental
//! invalidation after surgeries.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::disk::ChordDiagram;
use super::state::DrawingState;
use super::{EdgeId, NodeId};

/// A point along an edge: node visit `visit` of its route, and `ord`, the
/// index among the crossings on that visit's chord (0 for route ends).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Position {
    pub visit: usize,
    pub ord: usize,
}

impl Position {
    pub fn new(visit: usize, ord: usize) -> Self {
        Position { visit, ord }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCrossing {
    pub pos: Position,
    pub node: NodeId,
    pub partner: EdgeId,
    pub partner_pos: Position,
}

#[derive(Clone, Debug)]
pub(crate) struct DiskInfo {
    pub diagram: ChordDiagram,
    pub orders: Vec<Vec<usize>>,
}

impl DiskInfo {
    fn build(state: &DrawingState, node: NodeId) -> Self {
        let diagram = ChordDiagram::build_unchecked(state, node);
        let orders = diagram.crossing_orders();
        DiskInfo { diagram, orders }
    }
}

/// What a surgery changed: the edges whose routes were rewritten and every
/// node on their old or new routes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurgeryEffect {
    pub modified: BTreeSet<EdgeId>,
    pub touched: BTreeSet<NodeId>,
}

impl SurgeryEffect {
    pub fn merge(&mut self, other: SurgeryEffect) {
        self.modified.extend(other.modified);
        self.touched.extend(other.touched);
    }
}

/// Cache of chord diagrams and crossing lists for one state.
///
/// The index must be told about every change to the state it describes
/// through [`CrossingIndex::update`]; otherwise its answers are stale.
#[derive(Clone, Debug)]
pub struct CrossingIndex {
    disks: Vec<Option<DiskInfo>>,
    edges: Vec<Option<Vec<EdgeCrossing>>>,
    /// Unordered pairs (smaller id first) with at least two common points.
    candidates: BTreeSet<(EdgeId, EdgeId)>,
    candidate_partners: Vec<BTreeSet<EdgeId>>,
    incident: Vec<Vec<EdgeId>>,
    total_x: usize,
    complete: bool,
    /// Edges whose crossing lists were recomputed since the last drain.
    changed: BTreeSet<EdgeId>,
}

impl CrossingIndex {
    /// An empty index; everything is computed on demand.
    pub fn lazy(state: &DrawingState) -> Self {
        let net = state.network();
        let mut incident = vec![Vec::new(); net.graph.vertex_count];
        for (e, &[u, v]) in net.graph.edges.iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        CrossingIndex {
            disks: vec![None; net.node_count()],
            edges: vec![None; state.edge_count()],
            candidates: BTreeSet::new(),
            candidate_partners: vec![BTreeSet::new(); state.edge_count()],
            incident,
            total_x: 0,
            complete: false,
            changed: BTreeSet::new(),
        }
    }

    /// A fully populated index: every crossing list and the lens candidate
    /// set.
    pub fn new(state: &DrawingState) -> Self {
        let mut index = Self::lazy(state);
        for e in 0..state.edge_count() {
            index.refresh_edge(state, e);
        }
        for e in 0..state.edge_count() {
            index.refresh_candidates(state, e);
        }
        index.complete = true;
        index
    }

    pub(crate) fn disk(&mut self, state: &DrawingState, node: NodeId) -> &DiskInfo {
        if self.disks[node].is_none() {
            self.disks[node] = Some(DiskInfo::build(state, node));
        }
        self.disks[node].as_ref().unwrap()
    }

    /// Crossings on `e`, ordered along its route.
    pub fn crossings(&mut self, state: &DrawingState, e: EdgeId) -> &[EdgeCrossing] {
        if self.edges[e].is_none() {
            self.refresh_edge(state, e);
        }
        self.edges[e].as_deref().unwrap()
    }

    /// Number of crossings on `e` (`x(e)`).
    pub fn x(&mut self, state: &DrawingState, e: EdgeId) -> usize {
        self.crossings(state, e).len()
    }

    /// Crossings of `e` strictly between two positions.
    pub fn crossings_between(&mut self, state: &DrawingState, e: EdgeId, a: Position, b: Position) -> usize {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let list = self.crossings(state, e);
        let start = list.partition_point(|c| c.pos <= lo);
        let end = list.partition_point(|c| c.pos < hi);
        end.saturating_sub(start)
    }

    /// Total number of crossings in the drawing. Requires a complete index.
    pub fn total_crossings(&self) -> usize {
        debug_assert!(self.complete);
        self.total_x / 2
    }

    pub fn max_x(&mut self, state: &DrawingState) -> (usize, Option<EdgeId>) {
        let mut best = (0, None);
        for e in 0..state.edge_count() {
            let x = self.x(state, e);
            if best.1.is_none() || x > best.0 {
                best = (x, Some(e));
            }
        }
        best
    }

    /// Pairs with at least two common points, in ascending order.
    pub fn candidates(&self) -> &BTreeSet<(EdgeId, EdgeId)> {
        debug_assert!(self.complete);
        &self.candidates
    }

    /// Edges with at least two common points with `e`.
    pub fn candidate_partners(&self, e: EdgeId) -> &BTreeSet<EdgeId> {
        debug_assert!(self.complete);
        &self.candidate_partners[e]
    }

    /// Edges whose crossing lists may have changed since the previous call.
    pub fn take_changed(&mut self) -> BTreeSet<EdgeId> {
        std::mem::take(&mut self.changed)
    }

    fn refresh_edge(&mut self, state: &DrawingState, e: EdgeId) {
        let route = &state.routes[e];
        let mut list = Vec::new();
        for visit in route.internal_visits() {
            let node = route.nodes[visit];
            let disk = self.disk(state, node);
            let Some(ci) = disk.diagram.chord_of(e, visit) else {
                continue;
            };
            for (ord, &dj) in disk.orders[ci].iter().enumerate() {
                let other = disk.diagram.chords[dj];
                let partner_ord = disk.orders[dj]
                    .iter()
                    .position(|&k| k == ci)
                    .expect("crossing relation is symmetric");
                list.push(EdgeCrossing {
                    pos: Position::new(visit, ord),
                    node,
                    partner: other.edge,
                    partner_pos: Position::new(other.visit, partner_ord),
                });
            }
        }
        if let Some(old) = self.edges[e].take() {
            self.total_x -= old.len();
        }
        self.total_x += list.len();
        self.edges[e] = Some(list);
    }

    /// Recomputes every candidate pair involving `e`.
    fn refresh_candidates(&mut self, state: &DrawingState, e: EdgeId) {
        for f in std::mem::take(&mut self.candidate_partners[e]) {
            self.candidate_partners[f].remove(&e);
            self.candidates.remove(&(e.min(f), e.max(f)));
        }
        let mut counts: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for c in self.crossings(state, e) {
            if c.partner != e {
                *counts.entry(c.partner).or_default() += 1;
            }
        }
        let [u, v] = state.network().graph.edges[e];
        for w in [u, v] {
            for &f in &self.incident[w] {
                if f != e {
                    *counts.entry(f).or_default() += 1;
                }
            }
        }
        for (f, count) in counts {
            if count >= 2 {
                self.candidate_partners[e].insert(f);
                self.candidate_partners[f].insert(e);
                self.candidates.insert((e.min(f), e.max(f)));
            }
        }
    }

    /// Brings the index in line with `state` after a surgery described by
    /// `effect`.
    pub fn update(&mut self, state: &DrawingState, effect: &SurgeryEffect) {
        let mut affected: BTreeSet<EdgeId> = effect.modified.clone();
        for &node in &effect.touched {
            if let Some(disk) = self.disks[node].take() {
                affected.extend(disk.diagram.chords.iter().map(|c| c.edge));
            }
        }
        for &e in &affected {
            if let Some(old) = self.edges[e].take() {
                self.total_x -= old.len();
            }
        }
        if self.complete {
            for &e in &affected {
                self.refresh_edge(state, e);
            }
            self.changed.extend(affected.iter().copied());
            for &e in &effect.modified {
                self.refresh_candidates(state, e);
            }
        }
    }
}
