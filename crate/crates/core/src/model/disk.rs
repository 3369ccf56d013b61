//! Chord diagrams: the small disk around a network node, with every strand
//! that passes through the node drawn as a straight chord.
//!
//! Boundary convention: walk the incident segments in counterclockwise
//! rotation order; for each one, list its strands right-to-left as seen
//! standing at the node looking outward along the segment. Two chords cross
//! iff their endpoints interleave on this cyclic sequence.

use serde::Serialize;

use super::state::{DrawingState, StrandId};
use super::{EdgeId, NodeId, SegmentId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryPoint {
    pub strand: StrandId,
    pub segment: SegmentId,
}

/// A strand's pass through the disk: visit `visit` of `edge`'s route.
/// `entry` and `exit` are boundary positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub edge: EdgeId,
    pub visit: usize,
    pub entry: usize,
    pub exit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordDiagram {
    pub node: NodeId,
    pub boundary: Vec<BoundaryPoint>,
    pub chords: Vec<Chord>,
}

/// True iff `c` lies strictly inside the counterclockwise boundary arc that
/// runs from `from` to `to`.
pub fn in_ccw_arc(from: usize, to: usize, c: usize) -> bool {
    if from < to {
        from < c && c < to
    } else {
        c > from || c < to
    }
}

/// Chords `(a, b)` and `(c, d)` with four distinct endpoints interleave.
pub fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    in_ccw_arc(a, b, c) != in_ccw_arc(a, b, d)
}

/// The counterclockwise sequence of strand endpoints around `node`.
pub fn boundary(state: &DrawingState, node: NodeId) -> Vec<BoundaryPoint> {
    let net = state.network();
    let mut out = Vec::new();
    for &sid in &net.rotation[node] {
        let corridor = &state.corridors[sid];
        if net.segments[sid].a == node {
            out.extend(corridor.iter().rev().map(|&strand| BoundaryPoint { strand, segment: sid }));
        } else {
            out.extend(corridor.iter().map(|&strand| BoundaryPoint { strand, segment: sid }));
        }
    }
    out
}

impl ChordDiagram {
    pub fn build(state: &DrawingState, node: NodeId) -> Result<Self> {
        if !state.network().is_crossing(node) {
            return Err(Error::NotACrossingNode(node));
        }
        Ok(Self::build_unchecked(state, node))
    }

    pub(crate) fn build_unchecked(state: &DrawingState, node: NodeId) -> Self {
        Self::pair(state, node).expect("strands through a node pair into chords")
    }

    /// Builds the diagram, reporting strands whose two ends do not both lie
    /// on this disk's boundary.
    pub(crate) fn build_checked_pairs(state: &DrawingState, node: NodeId) -> std::result::Result<Self, String> {
        Self::pair(state, node)
    }

    fn pair(state: &DrawingState, node: NodeId) -> std::result::Result<Self, String> {
        let boundary = boundary(state, node);
        // (edge, visit, position, is_entry)
        let mut ends: Vec<(EdgeId, usize, usize, bool)> = boundary
            .iter()
            .enumerate()
            .map(|(pos, p)| {
                let route = &state.routes[p.strand.edge];
                if route.nodes[p.strand.step] == node {
                    (p.strand.edge, p.strand.step, pos, false)
                } else {
                    (p.strand.edge, p.strand.step + 1, pos, true)
                }
            })
            .collect();
        ends.sort_unstable_by_key(|&(e, v, _, is_entry)| (e, v, !is_entry));
        let route_end = |e: EdgeId, v: usize| v == 0 || v + 1 == state.routes[e].nodes.len();
        let mut chords = Vec::with_capacity(ends.len() / 2);
        let mut i = 0;
        while i < ends.len() {
            let (e, v, pos, is_entry) = ends[i];
            if route_end(e, v) {
                i += 1;
                continue;
            }
            match ends.get(i + 1) {
                Some(&(e2, v2, pos2, false)) if is_entry && e2 == e && v2 == v => {
                    chords.push(Chord {
                        edge: e,
                        visit: v,
                        entry: pos,
                        exit: pos2,
                    });
                    i += 2;
                }
                _ => return Err(format!("node {node}: edge {e} visit {v} has an unpaired strand end")),
            }
        }
        Ok(ChordDiagram {
            node,
            boundary,
            chords,
        })
    }

    pub fn crosses(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.chords[i], &self.chords[j]);
        interleaved(a.entry, a.exit, b.entry, b.exit)
    }

    /// All interleaving chord pairs `(i, j)` with `i < j`.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.chords.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.crosses(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_pairs().len()
    }

    pub fn chord_of(&self, edge: EdgeId, visit: usize) -> Option<usize> {
        self.chords
            .iter()
            .position(|c| c.edge == edge && c.visit == visit)
    }

    /// For every chord, the chords crossing it in the order met when walking
    /// from its entry to its exit.
    ///
    /// Boundary points are placed in convex position on the parabola
    /// `y = x^2` and chords are straight, so the order is that of an actual
    /// straight-line realization. Placements that make three chords
    /// concurrent are skipped.
    pub fn crossing_orders(&self) -> Vec<Vec<usize>> {
        let n = self.chords.len();
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, j) in self.crossing_pairs() {
            lists[i].push(j);
            lists[j].push(i);
        }
        if lists.iter().all(|l| l.len() < 2) {
            return lists;
        }
        for attempt in 0.. {
            let xs = placement(self.boundary.len(), attempt);
            if let Some(sorted) = order_along_chords(&self.chords, &lists, &xs) {
                return sorted;
            }
        }
        unreachable!()
    }
}

fn placement(count: usize, attempt: u64) -> Vec<i128> {
    if attempt == 0 {
        return (0..count as i128).collect();
    }
    let spread = 5 + attempt as i128;
    let mut h = 0x9e37_79b9_7f4a_7c15u64 ^ attempt;
    (0..count as i128)
        .map(|i| {
            h ^= h << 13;
            h ^= h >> 7;
            h ^= h << 17;
            i * spread + (h % spread as u64) as i128
        })
        .collect()
}

fn order_along_chords(chords: &[Chord], lists: &[Vec<usize>], xs: &[i128]) -> Option<Vec<Vec<usize>>> {
    let pt = |i: usize| (xs[i], xs[i] * xs[i]);
    let mut out = Vec::with_capacity(lists.len());
    for (ci, crossing) in lists.iter().enumerate() {
        if crossing.len() < 2 {
            out.push(crossing.clone());
            continue;
        }
        let c = &chords[ci];
        let (a, b) = (pt(c.entry), pt(c.exit));
        // Parameter along a -> b as a fraction with positive denominator.
        let mut keyed: Vec<(i128, i128, usize)> = crossing
            .iter()
            .map(|&dj| {
                let d = &chords[dj];
                let (p, q) = (pt(d.entry), pt(d.exit));
                let dq = (q.0 - p.0, q.1 - p.1);
                let num = cross((p.0 - a.0, p.1 - a.1), dq);
                let den = cross((b.0 - a.0, b.1 - a.1), dq);
                if den < 0 {
                    (-num, -den, dj)
                } else {
                    (num, den, dj)
                }
            })
            .collect();
        keyed.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        if keyed.windows(2).any(|w| w[0].0 * w[1].1 == w[1].0 * w[0].1) {
            return None;
        }
        out.push(keyed.into_iter().map(|(_, _, j)| j).collect());
    }
    Some(out)
}

fn cross(u: (i128, i128), v: (i128, i128)) -> i128 {
    u.0 * v.1 - u.1 * v.0
}
