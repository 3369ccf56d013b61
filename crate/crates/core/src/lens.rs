//! Lenses: pairs of arcs of two edges between two common points whose
//! interiors share no further common point.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    materialize_planarization, CrossingIndex, DrawingState, EdgeId, NodeId, NodeKind, Position, VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointKind {
    Crossing { node: NodeId },
    SharedEndpoint { vertex: VertexId },
}

/// A common point of two edges `e` and `f`, with its position along each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntersectionPoint {
    pub kind: PointKind,
    pub on_e: Position,
    pub on_f: Position,
}

impl IntersectionPoint {
    pub fn is_crossing(&self) -> bool {
        matches!(self.kind, PointKind::Crossing { .. })
    }

    fn flipped(self) -> Self {
        IntersectionPoint {
            kind: self.kind,
            on_e: self.on_f,
            on_f: self.on_e,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BoundaryKind {
    /// Both ends are crossings.
    Independent,
    /// One end is a shared endpoint.
    Adjacent,
}

/// A lens between `e` and `f`. `alpha` comes before `beta` along `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lens {
    pub e: EdgeId,
    pub f: EdgeId,
    pub alpha: IntersectionPoint,
    pub beta: IntersectionPoint,
    pub kind: BoundaryKind,
    pub x_e_arc: usize,
    pub x_f_arc: usize,
    pub len_e_arc: usize,
    pub len_f_arc: usize,
}

impl Lens {
    fn new(state: &DrawingState, index: &mut CrossingIndex, e: EdgeId, f: EdgeId, p: IntersectionPoint, q: IntersectionPoint) -> Self {
        let (alpha, beta) = if p.on_e <= q.on_e { (p, q) } else { (q, p) };
        let kind = if alpha.is_crossing() && beta.is_crossing() {
            BoundaryKind::Independent
        } else {
            BoundaryKind::Adjacent
        };
        Lens {
            e,
            f,
            alpha,
            beta,
            kind,
            x_e_arc: index.crossings_between(state, e, alpha.on_e, beta.on_e),
            x_f_arc: index.crossings_between(state, f, alpha.on_f, beta.on_f),
            len_e_arc: beta.on_e.visit - alpha.on_e.visit,
            len_f_arc: alpha.on_f.visit.abs_diff(beta.on_f.visit),
        }
    }

    /// The same lens with the roles of `e` and `f` exchanged.
    pub fn swapped(&self) -> Self {
        let (p, q) = (self.alpha.flipped(), self.beta.flipped());
        let (alpha, beta) = if p.on_e <= q.on_e { (p, q) } else { (q, p) };
        Lens {
            e: self.f,
            f: self.e,
            alpha,
            beta,
            kind: self.kind,
            x_e_arc: self.x_f_arc,
            x_f_arc: self.x_e_arc,
            len_e_arc: self.len_f_arc,
            len_f_arc: self.len_e_arc,
        }
    }

    /// Oriented so that `x(e_αβ) <= x(f_αβ)`; ties keep the smaller edge id
    /// as `e`.
    pub fn oriented_by_crossings(&self) -> Self {
        let key = |l: &Lens| (l.x_e_arc, l.e);
        let other = self.swapped();
        if key(self) <= key(&other) {
            *self
        } else {
            other
        }
    }

    /// The two edge ids, smaller first.
    pub fn pair(&self) -> (EdgeId, EdgeId) {
        (self.e.min(self.f), self.e.max(self.f))
    }

    pub fn endpoint_ids(&self) -> [PointKind; 2] {
        [self.alpha.kind, self.beta.kind]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiWitness {
    /// The edge crossing `e_αβ` at `gamma`.
    pub h: EdgeId,
    pub gamma: NodeId,
    /// The endpoint shared by `h` and `f`.
    pub s: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LensClass {
    Zero,
    QuasiZero(QuasiWitness),
    OneThree,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedLens {
    pub lens: Lens,
    pub class: LensClass,
}

fn route_end_position(state: &DrawingState, e: EdgeId, vertex: VertexId) -> Position {
    let [u, _] = state.network().graph.edges[e];
    if u == vertex {
        Position::new(0, 0)
    } else {
        Position::new(state.length(e), 0)
    }
}

/// Common points of `e` and `f`, ordered along `e` and along `f`.
pub fn intersection_points(
    state: &DrawingState,
    index: &mut CrossingIndex,
    e: EdgeId,
    f: EdgeId,
) -> Result<(Vec<IntersectionPoint>, Vec<IntersectionPoint>)> {
    if e == f {
        return Err(Error::SameEdge(e));
    }
    let mut along_e: Vec<IntersectionPoint> = index
        .crossings(state, e)
        .iter()
        .filter(|c| c.partner == f)
        .map(|c| IntersectionPoint {
            kind: PointKind::Crossing { node: c.node },
            on_e: c.pos,
            on_f: c.partner_pos,
        })
        .collect();
    if let Some(v) = state.network().graph.shared_endpoint(e, f) {
        along_e.push(IntersectionPoint {
            kind: PointKind::SharedEndpoint { vertex: v },
            on_e: route_end_position(state, e, v),
            on_f: route_end_position(state, f, v),
        });
        along_e.sort_by_key(|p| p.on_e);
    }
    let mut along_f = along_e.clone();
    along_f.sort_by_key(|p| p.on_f);
    Ok((along_e, along_f))
}

fn strictly_between(p: Position, a: Position, b: Position) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo < p && p < hi
}

/// True iff no common point other than `p` and `q` lies on both arcs they
/// bound.
fn bounds_lens(points: &[IntersectionPoint], p: &IntersectionPoint, q: &IntersectionPoint) -> bool {
    !points
        .iter()
        .any(|g| strictly_between(g.on_e, p.on_e, q.on_e) && strictly_between(g.on_f, p.on_f, q.on_f))
}

/// A lens between `e` and `f`, if they have at least two common points.
///
/// Starts from the first two points along `e` and, while some common point
/// lies inside both arcs, replaces the far end by it.
pub fn find_lens(state: &DrawingState, index: &mut CrossingIndex, e: EdgeId, f: EdgeId) -> Option<Lens> {
    if e == f {
        return None;
    }
    let (points, _) = intersection_points(state, index, e, f).ok()?;
    if points.len() < 2 {
        return None;
    }
    let alpha = points[0];
    let mut beta = points[1];
    while let Some(gamma) = points.iter().find(|g| {
        strictly_between(g.on_e, alpha.on_e, beta.on_e) && strictly_between(g.on_f, alpha.on_f, beta.on_f)
    }) {
        beta = *gamma;
    }
    Some(Lens::new(state, index, e, f, alpha, beta))
}

/// Every lens between `e` and `f`, in order of their endpoints along `e`.
pub fn all_lenses_of_pair(state: &DrawingState, index: &mut CrossingIndex, e: EdgeId, f: EdgeId) -> Vec<Lens> {
    let Ok((points, _)) = intersection_points(state, index, e, f) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if bounds_lens(&points, &points[i], &points[j]) {
                out.push(Lens::new(state, index, e, f, points[i], points[j]));
            }
        }
    }
    out
}

/// The quasi-0 witness of a lens oriented with `x(e_αβ) <= x(f_αβ)`, if it
/// has one.
pub fn quasi_zero_witness(state: &DrawingState, index: &mut CrossingIndex, lens: &Lens) -> Option<QuasiWitness> {
    let (e, f) = (lens.e, lens.f);
    let inside: Vec<_> = index
        .crossings(state, e)
        .iter()
        .filter(|c| strictly_between(c.pos, lens.alpha.on_e, lens.beta.on_e))
        .copied()
        .collect();
    let [gamma] = inside[..] else { return None };
    let h = gamma.partner;
    if h == f || h == e {
        return None;
    }
    let graph = &state.network().graph;
    let s = graph.shared_endpoint(h, f)?;
    let s_on_f = route_end_position(state, f, s);
    let s_on_h = route_end_position(state, h, s);
    // The lens end nearer to s along f.
    let from_start = s_on_f.visit == 0;
    let near = if (lens.alpha.on_f < lens.beta.on_f) == from_start {
        lens.alpha
    } else {
        lens.beta
    };
    let f_prefix = partners_between(state, index, f, s_on_f, near.on_f);
    let h_prefix = partners_between(state, index, h, s_on_h, gamma.partner_pos);
    (f_prefix == h_prefix).then_some(QuasiWitness {
        h,
        gamma: gamma.node,
        s,
    })
}

/// Partner edges of the crossings of `e` strictly between `from` and `to`,
/// listed from `from`.
fn partners_between(state: &DrawingState, index: &mut CrossingIndex, e: EdgeId, from: Position, to: Position) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = index
        .crossings(state, e)
        .iter()
        .filter(|c| strictly_between(c.pos, from, to))
        .map(|c| c.partner)
        .collect();
    if from > to {
        out.reverse();
    }
    out
}

/// Classifies a lens oriented with `x(e_αβ) <= x(f_αβ)`.
pub fn classify_lens(state: &DrawingState, index: &mut CrossingIndex, lens: &Lens) -> Result<LensClass> {
    if lens.x_e_arc > lens.x_f_arc {
        return Err(Error::MisorientedLens {
            e_arc: lens.x_e_arc,
            f_arc: lens.x_f_arc,
        });
    }
    if lens.x_e_arc == 0 {
        return Ok(LensClass::Zero);
    }
    if lens.x_e_arc == 1 && lens.x_f_arc == 3 && index.x(state, lens.e) == 4 {
        return Ok(LensClass::OneThree);
    }
    Ok(match quasi_zero_witness(state, index, lens) {
        Some(w) => LensClass::QuasiZero(w),
        None => LensClass::Other,
    })
}

/// One lens per edge pair with at least two common points, in ascending
/// pair order, each oriented by arc crossings and classified.
pub fn enumerate_lenses(state: &DrawingState, index: &mut CrossingIndex) -> Vec<ClassifiedLens> {
    let pairs: Vec<(EdgeId, EdgeId)> = index.candidates().iter().copied().collect();
    let mut out = Vec::new();
    for (e, f) in pairs {
        if let Some(lens) = find_lens(state, index, e, f) {
            let lens = lens.oriented_by_crossings();
            let class = classify_lens(state, index, &lens).expect("lens is oriented");
            out.push(ClassifiedLens { lens, class });
        }
    }
    out
}

/// Re-reads a lens in the current state: the same two edges must still have
/// common points with the same identities bounding a lens. Roles of `e` and
/// `f` are kept.
pub fn revalidate(state: &DrawingState, index: &mut CrossingIndex, lens: &Lens) -> Result<Lens> {
    let stale = || Error::StaleLens(lens.e, lens.f);
    let (points, _) = intersection_points(state, index, lens.e, lens.f).map_err(|_| stale())?;
    let find = |kind: PointKind| points.iter().find(|p| p.kind == kind).copied();
    let (Some(a), Some(b)) = (find(lens.alpha.kind), find(lens.beta.kind)) else {
        return Err(stale());
    };
    if !bounds_lens(&points, &a, &b) {
        return Err(stale());
    }
    Ok(Lens::new(state, index, lens.e, lens.f, a, b))
}

/// Identity of a common point that does not depend on the crossing index:
/// a shared vertex, or a crossing given by its disk and the visit of each
/// edge (smaller edge first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointKey {
    Vertex(VertexId),
    Crossing { disk: NodeId, visits: [usize; 2] },
}

/// A lens identified by its unordered edge pair and its two end points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LensKey {
    pub edges: (EdgeId, EdgeId),
    pub ends: [PointKey; 2],
}

impl LensKey {
    pub fn of(lens: &Lens) -> Self {
        let key = |p: &IntersectionPoint| match p.kind {
            PointKind::SharedEndpoint { vertex } => PointKey::Vertex(vertex),
            PointKind::Crossing { node } => {
                let visits = if lens.e < lens.f {
                    [p.on_e.visit, p.on_f.visit]
                } else {
                    [p.on_f.visit, p.on_e.visit]
                };
                PointKey::Crossing { disk: node, visits }
            }
        };
        let mut ends = [key(&lens.alpha), key(&lens.beta)];
        ends.sort_unstable();
        LensKey {
            edges: lens.pair(),
            ends,
        }
    }
}

/// All lenses of the drawing by brute force over every pair of common
/// points, computed on the materialized planarization rather than through
/// the crossing index. Meant for tests on small drawings.
pub fn oracle_lenses(state: &DrawingState) -> Result<BTreeSet<LensKey>> {
    let planar = materialize_planarization(state)?;
    let net = &planar.network;
    let m = net.graph.edge_count();
    // Per edge: its route in the planarization, node -> index along it.
    let mut along: Vec<std::collections::HashMap<NodeId, usize>> = Vec::with_capacity(m);
    for route in &net.original_routes {
        along.push(route.nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect());
    }
    // Per pair: each common point with its index along e and along f.
    type Along = (PointKey, usize, usize);
    let mut common: std::collections::BTreeMap<(EdgeId, EdgeId), Vec<Along>> = Default::default();
    for (id, kind) in net.nodes.iter().enumerate() {
        if let NodeKind::Crossing(e, f) = *kind {
            let origin = planar.origin[id].expect("crossing nodes have an origin");
            let key = PointKey::Crossing {
                disk: origin.disk,
                visits: [origin.chords[0].1, origin.chords[1].1],
            };
            common.entry((e, f)).or_default().push((key, along[e][&id], along[f][&id]));
        }
    }
    for e in 0..m {
        for f in e + 1..m {
            if let Some(v) = net.graph.shared_endpoint(e, f) {
                let node = net.vertex_node(v);
                common
                    .entry((e, f))
                    .or_default()
                    .push((PointKey::Vertex(v), along[e][&node], along[f][&node]));
            }
        }
    }
    let inside = |x: usize, a: usize, b: usize| a.min(b) < x && x < a.max(b);
    let mut out = BTreeSet::new();
    for ((e, f), pts) in common {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (p, q) = (pts[i], pts[j]);
                let blocked = pts
                    .iter()
                    .any(|g| inside(g.1, p.1, q.1) && inside(g.2, p.2, q.2));
                if !blocked {
                    let mut ends = [p.0, q.0];
                    ends.sort_unstable();
                    out.insert(LensKey { edges: (e, f), ends });
                }
            }
        }
    }
    Ok(out)
}
