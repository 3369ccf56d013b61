//! Polyline drawings with exact rational coordinates, and their
//! planarization.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::rational::format_rational;
use crate::error::{Error, Result};
use crate::model::{EdgeId, GraphSpec, NetworkN, NodeKind, Route, Segment, SegmentId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RPoint::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    fn describe(&self) -> String {
        format!("({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVertex {
    pub id: VertexId,
    pub position: RPoint,
}

/// An edge `(u, v, bends)` in integer coordinates.
pub type IntegerEdge = (VertexId, VertexId, Vec<(i64, i64)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GEdge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    /// From `u`'s position to `v`'s position, bends in between.
    pub polyline: Vec<RPoint>,
}

/// Vertices are points, edges are polylines. Ids must equal list indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeometricDrawing {
    pub vertices: Vec<GVertex>,
    pub edges: Vec<GEdge>,
}

impl GeometricDrawing {
    pub fn graph(&self) -> GraphSpec {
        GraphSpec {
            vertex_count: self.vertices.len(),
            edges: self.edges.iter().map(|e| [e.u, e.v]).collect(),
        }
    }

    /// Convenience constructor from integer coordinates; polylines list only
    /// the bends.
    pub fn from_integer_coords(vertices: &[(i64, i64)], edges: &[IntegerEdge]) -> Self {
        let vertices: Vec<GVertex> = vertices
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| GVertex {
                id,
                position: RPoint::from_ints(x, y),
            })
            .collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(id, (u, v, bends))| {
                let mut polyline = vec![vertices[*u].position.clone()];
                polyline.extend(bends.iter().map(|&(x, y)| RPoint::from_ints(x, y)));
                polyline.push(vertices[*v].position.clone());
                GEdge {
                    id,
                    u: *u,
                    v: *v,
                    polyline,
                }
            })
            .collect();
        GeometricDrawing { vertices, edges }
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(Error::schema(format!("vertices[{i}].id"), "ids must be 0, 1, 2, ... in order"));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.id != i {
                return Err(Error::schema(format!("edges[{i}].id"), "ids must be 0, 1, 2, ... in order"));
            }
        }
        self.graph().validate()?;
        for e in &self.edges {
            if e.polyline.len() < 2 {
                return Err(Error::DegenerateInput(format!("edge {} has fewer than two points", e.id)));
            }
            if e.polyline[0] != self.vertices[e.u].position || *e.polyline.last().unwrap() != self.vertices[e.v].position {
                return Err(Error::DegenerateInput(format!(
                    "edge {} does not start at vertex {} and end at vertex {}",
                    e.id, e.u, e.v
                )));
            }
            if let Some(w) = e.polyline.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DegenerateInput(format!(
                    "edge {} repeats the point {}",
                    e.id,
                    w[0].describe()
                )));
            }
        }
        Ok(())
    }
}

/// Integer arithmetic used by the predicates. `i128` suffices when scaled
/// coordinates stay below `2^60`.
trait Exact: Clone + Ord + Signed + Debug {
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("coordinate fits")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type P<T> = [T; 2];

fn sub<T: Exact>(a: &P<T>, b: &P<T>) -> P<T> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone()]
}

fn cross<T: Exact>(u: &P<T>, v: &P<T>) -> T {
    u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone()
}

fn orient<T: Exact>(a: &P<T>, b: &P<T>, c: &P<T>) -> Ordering {
    cross(&sub(b, a), &sub(c, a)).cmp(&T::zero())
}

/// `c` lies on the closed segment `ab`, given that the three are collinear.
fn within<T: Exact>(a: &P<T>, b: &P<T>, c: &P<T>) -> bool {
    (0..2).all(|i| a[i].clone().min(b[i].clone()) <= c[i] && c[i] <= a[i].clone().max(b[i].clone()))
}

fn on_segment<T: Exact>(a: &P<T>, b: &P<T>, c: &P<T>) -> bool {
    orient(a, b, c) == Ordering::Equal && within(a, b, c)
}

/// Counterclockwise angular order of nonzero directions, starting at the
/// positive x axis.
fn angle_cmp<T: Exact>(a: &P<T>, b: &P<T>) -> Ordering {
    let half = |d: &P<T>| {
        let upper = d[1].is_positive() || (d[1].is_zero() && d[0].is_positive());
        u8::from(!upper)
    };
    half(a).cmp(&half(b)).then_with(|| T::zero().cmp(&cross(a, b)))
}

struct Seg<T> {
    edge: EdgeId,
    index: usize,
    p: P<T>,
    q: P<T>,
    last: bool,
}

struct Crossing {
    segs: [usize; 2],
    /// Parameter along each segment, in (0, 1).
    t: [BigRational; 2],
    point: RPoint,
}

/// Builds the planarization of a geometric drawing: one node per vertex, one
/// per crossing, and the counterclockwise rotation at every node from exact
/// angle comparisons.
///
/// Node `v` is vertex `v`; crossing nodes follow, sorted by their
/// coordinates. Segments are numbered edge by edge along each edge.
pub fn ingest_geometric(gd: &GeometricDrawing) -> Result<NetworkN> {
    gd.check_shape()?;
    let mut scale = BigInt::one();
    let points = gd.vertices.iter().map(|v| &v.position).chain(gd.edges.iter().flat_map(|e| e.polyline.iter()));
    for p in points.clone() {
        scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
    }
    let limit = BigInt::one() << 60;
    let fits = points
        .into_iter()
        .all(|p| (p.x.numer() * (&scale / p.x.denom())).abs() < limit && (p.y.numer() * (&scale / p.y.denom())).abs() < limit);
    if fits {
        ingest_scaled::<i128>(gd, &scale)
    } else {
        ingest_scaled::<BigInt>(gd, &scale)
    }
}

fn ingest_scaled<T: Exact>(gd: &GeometricDrawing, scale: &BigInt) -> Result<NetworkN> {
    let to_int = |r: &BigRational| T::from_big(&(r.numer() * (scale / r.denom())));
    let to_p = |p: &RPoint| [to_int(&p.x), to_int(&p.y)];
    let vpos: Vec<P<T>> = gd.vertices.iter().map(|v| to_p(&v.position)).collect();

    let mut seen: HashMap<&RPoint, VertexId> = HashMap::new();
    for v in &gd.vertices {
        if let Some(w) = seen.insert(&v.position, v.id) {
            return Err(Error::DegenerateInput(format!(
                "vertices {w} and {} share the point {}",
                v.id,
                v.position.describe()
            )));
        }
    }

    let mut segs: Vec<Seg<T>> = Vec::new();
    for e in &gd.edges {
        let n = e.polyline.len() - 1;
        for i in 0..n {
            segs.push(Seg {
                edge: e.id,
                index: i,
                p: to_p(&e.polyline[i]),
                q: to_p(&e.polyline[i + 1]),
                last: i + 1 == n,
            });
        }
    }

    // A vertex point may lie only on the end of its own edges' polylines.
    for (w, pos) in vpos.iter().enumerate() {
        for s in &segs {
            if !on_segment(&s.p, &s.q, pos) {
                continue;
            }
            let e = &gd.edges[s.edge];
            let own = (s.index == 0 && e.u == w && s.p == *pos) || (s.last && e.v == w && s.q == *pos);
            if !own {
                return Err(Error::DegenerateInput(format!(
                    "vertex {w} at {} lies on edge {}",
                    gd.vertices[w].position.describe(),
                    s.edge
                )));
            }
        }
    }

    let crossings = find_crossings(gd, &segs, scale)?;

    // Crossings along each segment, ordered by parameter.
    let mut on_seg: Vec<Vec<(BigRational, usize)>> = vec![Vec::new(); segs.len()];
    for (ci, c) in crossings.iter().enumerate() {
        for side in 0..2 {
            on_seg[c.segs[side]].push((c.t[side].clone(), ci));
        }
    }
    for (si, list) in on_seg.iter_mut().enumerate() {
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::NotGeneralPosition(format!(
                "three segments meet at {} on edge {}",
                crossings[w[0].1].point.describe(),
                segs[si].edge
            )));
        }
    }

    let n = gd.vertices.len();
    let mut order: Vec<usize> = (0..crossings.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (&crossings[a].point, &crossings[b].point);
        (&p.x, &p.y).cmp(&(&q.x, &q.y))
    });
    let mut node_of = vec![0; crossings.len()];
    let mut nodes: Vec<NodeKind> = (0..n).map(NodeKind::Vertex).collect();
    for (rank, &ci) in order.iter().enumerate() {
        node_of[ci] = n + rank;
        let c = &crossings[ci];
        let (a, b) = (segs[c.segs[0]].edge, segs[c.segs[1]].edge);
        nodes.push(NodeKind::Crossing(a.min(b), a.max(b)));
    }

    let mut segments: Vec<Segment> = Vec::new();
    let mut routes: Vec<Route> = Vec::with_capacity(gd.edges.len());
    // (node, outgoing direction, segment)
    let mut incidences: Vec<Vec<(P<T>, SegmentId)>> = vec![Vec::new(); nodes.len()];
    let mut si = 0;
    for e in &gd.edges {
        let mut route = Route {
            nodes: vec![e.u],
            segments: Vec::new(),
        };
        let mut start_dir = sub(&segs[si].q, &segs[si].p);
        let count = e.polyline.len() - 1;
        let mut last_dir = start_dir.clone();
        for s in &segs[si..si + count] {
            let d = sub(&s.q, &s.p);
            for (_, ci) in &on_seg[si + s.index] {
                let node = node_of[*ci];
                push_segment(&mut segments, &mut route, &mut incidences, node, &start_dir, &d);
                start_dir = d.clone();
            }
            last_dir = d;
        }
        push_segment(&mut segments, &mut route, &mut incidences, e.v, &start_dir, &last_dir);
        routes.push(route);
        si += count;
    }

    let rotation: Vec<Vec<SegmentId>> = incidences
        .into_iter()
        .map(|mut list| {
            list.sort_by(|a, b| angle_cmp(&a.0, &b.0));
            list.into_iter().map(|(_, s)| s).collect()
        })
        .collect();
    NetworkN::new(gd.graph(), nodes, segments, rotation, routes)
}

/// Appends the segment from the route's current end to `to`. It leaves the
/// previous node in direction `out` and arrives along `arrive`.
fn push_segment<T: Exact>(
    segments: &mut Vec<Segment>,
    route: &mut Route,
    incidences: &mut [Vec<(P<T>, SegmentId)>],
    to: usize,
    out: &P<T>,
    arrive: &P<T>,
) {
    let from = route.last();
    let sid = segments.len();
    segments.push(Segment { a: from, b: to });
    incidences[from].push((out.clone(), sid));
    incidences[to].push(([-arrive[0].clone(), -arrive[1].clone()], sid));
    route.nodes.push(to);
    route.segments.push(sid);
}

fn find_crossings<T: Exact>(gd: &GeometricDrawing, segs: &[Seg<T>], scale: &BigInt) -> Result<Vec<Crossing>> {
    let lo = |s: &Seg<T>| s.p[0].clone().min(s.q[0].clone());
    let hi = |s: &Seg<T>| s.p[0].clone().max(s.q[0].clone());
    let mut by_x: Vec<usize> = (0..segs.len()).collect();
    by_x.sort_by_key(|&i| lo(&segs[i]));
    let describe = |p: &P<T>| {
        let r = |v: &T| BigRational::new(v.to_big(), scale.clone());
        RPoint::new(r(&p[0]), r(&p[1])).describe()
    };
    let mut out = Vec::new();
    for (k, &i) in by_x.iter().enumerate() {
        let a = &segs[i];
        let a_hi = hi(a);
        let (a_ylo, a_yhi) = (a.p[1].clone().min(a.q[1].clone()), a.p[1].clone().max(a.q[1].clone()));
        for &j in &by_x[k + 1..] {
            let b = &segs[j];
            if lo(b) > a_hi {
                break;
            }
            if b.p[1].clone().max(b.q[1].clone()) < a_ylo || b.p[1].clone().min(b.q[1].clone()) > a_yhi {
                continue;
            }
            let (i, j) = (i.min(j), i.max(j));
            let (a, b) = (&segs[i], &segs[j]);
            let same_edge = a.edge == b.edge;
            let o1 = orient(&a.p, &a.q, &b.p);
            let o2 = orient(&a.p, &a.q, &b.q);
            let o3 = orient(&b.p, &b.q, &a.p);
            let o4 = orient(&b.p, &b.q, &a.q);
            if o1 == Ordering::Equal && o2 == Ordering::Equal {
                // Collinear: they may share at most an end point.
                let touching: Vec<&P<T>> = [&b.p, &b.q]
                    .into_iter()
                    .filter(|c| within(&a.p, &a.q, c))
                    .chain([&a.p, &a.q].into_iter().filter(|c| within(&b.p, &b.q, c)))
                    .collect();
                let mut distinct: Vec<&P<T>> = Vec::new();
                for c in touching {
                    if !distinct.contains(&c) {
                        distinct.push(c);
                    }
                }
                match distinct.len() {
                    0 => continue,
                    1 => touch(gd, a, b, distinct[0], &describe)?,
                    _ => {
                        let what = format!(
                            "edges {} and {} overlap along a line through {}",
                            a.edge,
                            b.edge,
                            describe(distinct[0])
                        );
                        return Err(if same_edge {
                            Error::DegenerateInput(what)
                        } else {
                            Error::NotGeneralPosition(what)
                        });
                    }
                }
                continue;
            }
            if o1 != o2 && o3 != o4 && [o1, o2, o3, o4].iter().all(|o| *o != Ordering::Equal) {
                if same_edge {
                    return Err(Error::DegenerateInput(format!("edge {} crosses itself", a.edge)));
                }
                let d1 = sub(&a.q, &a.p);
                let d2 = sub(&b.q, &b.p);
                let den = cross(&d1, &d2).to_big();
                let rp = sub(&b.p, &a.p);
                let t = BigRational::new(cross(&rp, &d2).to_big(), den.clone());
                let u = BigRational::new(cross(&rp, &d1).to_big(), den);
                let px = BigRational::new(a.p[0].to_big(), scale.clone())
                    + &t * BigRational::new(d1[0].to_big(), scale.clone());
                let py = BigRational::new(a.p[1].to_big(), scale.clone())
                    + &t * BigRational::new(d1[1].to_big(), scale.clone());
                out.push(Crossing {
                    segs: [i, j],
                    t: [t, u],
                    point: RPoint::new(px, py),
                });
                continue;
            }
            let candidates = [(o1, &b.p, &a.p, &a.q), (o2, &b.q, &a.p, &a.q), (o3, &a.p, &b.p, &b.q), (o4, &a.q, &b.p, &b.q)];
            if let Some((_, c, _, _)) = candidates
                .into_iter()
                .find(|(o, c, x, y)| *o == Ordering::Equal && within(x, y, c))
            {
                touch(gd, a, b, c, &describe)?;
            }
        }
    }
    Ok(out)
}

/// Two segments meet in the single point `c` without crossing. Allowed at a
/// bend joining consecutive segments of one edge and at a shared vertex.
fn touch<T: Exact>(
    gd: &GeometricDrawing,
    a: &Seg<T>,
    b: &Seg<T>,
    c: &P<T>,
    describe: &dyn Fn(&P<T>) -> String,
) -> Result<()> {
    if a.edge == b.edge {
        let joint = (a.index + 1 == b.index && a.q == *c && b.p == *c) || (b.index + 1 == a.index && b.q == *c && a.p == *c);
        if joint {
            return Ok(());
        }
        return Err(Error::DegenerateInput(format!("edge {} touches itself at {}", a.edge, describe(c))));
    }
    let at_end = |s: &Seg<T>| (s.index == 0 && s.p == *c) || (s.last && s.q == *c);
    let shared = gd.graph().shared_endpoint(a.edge, b.edge).is_some();
    if shared && at_end(a) && at_end(b) {
        return Ok(());
    }
    Err(Error::NotGeneralPosition(format!(
        "edges {} and {} meet at {} without crossing properly",
        a.edge,
        b.edge,
        describe(c)
    )))
}

/// Exact integer pairs are the common case; keep the BigInt path reachable
/// from tests.
#[cfg(test)]
pub(crate) fn ingest_with_bigint(gd: &GeometricDrawing) -> Result<NetworkN> {
    gd.check_shape()?;
    let mut scale = BigInt::one();
    for p in gd.vertices.iter().map(|v| &v.position).chain(gd.edges.iter().flat_map(|e| e.polyline.iter())) {
        scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
    }
    ingest_scaled::<BigInt>(gd, &scale)
}
