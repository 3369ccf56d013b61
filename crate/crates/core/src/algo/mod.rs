//! Simplification algorithms and the bounds they are measured against.

mod diagnostics;
mod four;
mod general;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lens::{all_lenses_of_pair, classify_lens, quasi_zero_witness, ClassifiedLens, Lens, LensClass, QuasiWitness};
use crate::model::{materialize_planarization, CrossingIndex, DrawingState, EdgeId};

pub use diagnostics::{neighborhood_diagnostics, DiagnosticReport, NodeDiagnostic};
pub use four::{
    algorithm2, phase1, phase2, phase2_report, phase3, Algo2Trace, ModifiedArcLog, Phase2Outcome,
    Phase2Report, Phase2Step, PhaseStep, ReplacedInterval, Surgery,
};
pub use general::{algorithm1, Algo1Step, Algo1Trace};

/// Largest per-edge crossing count guaranteed after simplifying a k-plane
/// drawing: `k` for `k <= 3`, otherwise `(2/3) * sqrt(58) * k^(3/2) * 3^k`.
pub fn f_bound(k: usize) -> Result<f64> {
    match k {
        0 => Err(Error::NonPositiveK),
        1..=3 => Ok(k as f64),
        _ => Ok(2.0 / 3.0 * 58f64.sqrt() * (k as f64).powf(1.5) * 3f64.powi(k as i32)),
    }
}

/// Lower bound `m^3 / (29 n^2)` on the crossing number of a graph with `n`
/// vertices and `m >= 6.95 n` edges; `None` below that density.
pub fn crossing_lemma_bound(n: usize, m: usize) -> Option<f64> {
    let (n, m) = (n as f64, m as f64);
    (n > 0.0 && m >= 6.95 * n).then(|| m.powi(3) / (29.0 * n * n))
}

/// Upper bound `4 * 3^(k-1)` on the vertices of the subgraph whose edges
/// pass through one crossing neighbourhood.
pub fn neighborhood_vertex_bound(k: usize) -> f64 {
    4.0 * 3f64.powi(k as i32 - 1)
}

/// Upper bound `sqrt(29k/2) * n` on the edges of a k-plane subgraph with `n`
/// vertices.
pub fn neighborhood_edge_bound(k: usize, n: usize) -> f64 {
    (29.0 * k as f64 / 2.0).sqrt() * n as f64
}

pub(crate) fn check_k_plane(state: &DrawingState, index: &mut CrossingIndex, k: usize) -> Result<()> {
    for e in 0..state.edge_count() {
        let crossings = index.x(state, e);
        if crossings > k {
            return Err(Error::NotKPlane { k, edge: e, crossings });
        }
    }
    Ok(())
}

/// Every lens of the drawing, kept current across surgeries.
///
/// Lenses are stored per edge pair, oriented by arc crossings and in order
/// of their first end along the smaller edge. A pair is recomputed whenever
/// the crossing list of one of its edges, or of an edge crossing one of its
/// arcs, may have changed.
pub(crate) struct LensTracker {
    lenses: HashMap<(EdgeId, EdgeId), Vec<ClassifiedLens>>,
    pairs: BTreeSet<(EdgeId, EdgeId)>,
    watchers: Vec<BTreeSet<(EdgeId, EdgeId)>>,
    deps: HashMap<(EdgeId, EdgeId), Vec<EdgeId>>,
}

impl LensTracker {
    pub fn new(state: &DrawingState, index: &mut CrossingIndex) -> Self {
        let mut tracker = LensTracker {
            lenses: HashMap::new(),
            pairs: BTreeSet::new(),
            watchers: vec![BTreeSet::new(); state.edge_count()],
            deps: HashMap::new(),
        };
        index.take_changed();
        let pairs: Vec<_> = index.candidates().iter().copied().collect();
        for pair in pairs {
            tracker.refresh(state, index, pair);
        }
        tracker
    }

    fn refresh(&mut self, state: &DrawingState, index: &mut CrossingIndex, pair: (EdgeId, EdgeId)) {
        if let Some(deps) = self.deps.remove(&pair) {
            for d in deps {
                self.watchers[d].remove(&pair);
            }
        }
        self.lenses.remove(&pair);
        self.pairs.remove(&pair);
        let found = all_lenses_of_pair(state, index, pair.0, pair.1);
        if found.is_empty() {
            return;
        }
        let mut deps = vec![pair.0, pair.1];
        let mut list = Vec::with_capacity(found.len());
        for lens in found {
            let lens = lens.oriented_by_crossings();
            deps.extend(arc_partners(state, index, &lens));
            let class = classify_lens(state, index, &lens).expect("lens is oriented");
            list.push(ClassifiedLens { lens, class });
        }
        deps.sort_unstable();
        deps.dedup();
        for &d in &deps {
            self.watchers[d].insert(pair);
        }
        self.deps.insert(pair, deps);
        self.lenses.insert(pair, list);
        self.pairs.insert(pair);
    }

    /// Catches up with the surgeries applied since the last call.
    pub fn sync(&mut self, state: &DrawingState, index: &mut CrossingIndex) {
        let mut stale = BTreeSet::new();
        for e in index.take_changed() {
            stale.extend(self.watchers[e].iter().copied());
            stale.extend(index.candidate_partners(e).iter().map(|&f| (e.min(f), e.max(f))));
        }
        for pair in stale {
            self.refresh(state, index, pair);
        }
    }

    /// All lenses in selection order.
    pub fn iter(&self) -> impl Iterator<Item = &ClassifiedLens> {
        self.pairs.iter().flat_map(|p| self.lenses[p].iter())
    }

    pub fn first(&self, pred: impl Fn(&ClassifiedLens) -> bool) -> Option<ClassifiedLens> {
        self.iter().find(|l| pred(l)).copied()
    }
}

/// Edges crossing either arc of a lens.
fn arc_partners(state: &DrawingState, index: &mut CrossingIndex, lens: &Lens) -> Vec<EdgeId> {
    let mut out = Vec::new();
    for (edge, a, b) in [
        (lens.e, lens.alpha.on_e, lens.beta.on_e),
        (lens.f, lens.alpha.on_f, lens.beta.on_f),
    ] {
        let (lo, hi) = (a.min(b), a.max(b));
        out.extend(
            index
                .crossings(state, edge)
                .iter()
                .filter(|c| lo < c.pos && c.pos < hi)
                .map(|c| c.partner),
        );
    }
    out
}

/// The quasi-0 reading of a lens, trying the other orientation when both
/// arcs have equal crossing counts.
pub(crate) fn quasi_zero_reading(
    state: &DrawingState,
    index: &mut CrossingIndex,
    cl: &ClassifiedLens,
) -> Option<(Lens, QuasiWitness)> {
    if let LensClass::QuasiZero(w) = cl.class {
        return Some((cl.lens, w));
    }
    if cl.lens.x_e_arc == cl.lens.x_f_arc {
        let other = cl.lens.swapped();
        return quasi_zero_witness(state, index, &other).map(|w| (other, w));
    }
    None
}

/// A fresh initial state on the planarization of the current drawing.
pub fn replanarize(state: &DrawingState) -> Result<DrawingState> {
    DrawingState::initial(materialize_planarization(state)?.network)
}
