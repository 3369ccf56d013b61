//! Seeded random k-plane polyline drawings on an integer grid.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::GeometricDrawing;
use crate::model::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub max_attempts: usize,
}

impl GenConfig {
    pub fn new(n: usize, m: usize, k: usize, seed: u64) -> Self {
        GenConfig {
            n,
            m,
            k,
            seed,
            max_attempts: 200 * m.max(1) + 1000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::NonPositiveK);
        }
        let density = 3.81 * (self.k as f64).sqrt() * self.n as f64;
        if self.m as f64 > density {
            return Err(Error::InvalidConfig(format!(
                "m = {} exceeds 3.81 * sqrt(k) * n = {density:.2}",
                self.m
            )));
        }
        if self.m > self.n * self.n.saturating_sub(1) / 2 {
            return Err(Error::InvalidConfig(format!("m = {} exceeds the number of vertex pairs", self.m)));
        }
        Ok(())
    }
}

type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn within(a: Pt, b: Pt, c: Pt) -> bool {
    a.0.min(b.0) <= c.0 && c.0 <= a.0.max(b.0) && a.1.min(b.1) <= c.1 && c.1 <= a.1.max(b.1)
}

fn on_segment(a: Pt, b: Pt, c: Pt) -> bool {
    cross(a, b, c) == 0 && within(a, b, c)
}

/// How two segments meet.
enum Meet {
    Apart,
    /// Proper crossing at parameter `num / den` along the first segment and
    /// `num2 / den` along the second (`den > 0`).
    Cross { num: i128, num2: i128, den: i128 },
    /// Anything else: touching or overlapping.
    Touch,
}

fn meet(p: Pt, q: Pt, r: Pt, s: Pt) -> Meet {
    let o1 = cross(p, q, r).signum();
    let o2 = cross(p, q, s).signum();
    let o3 = cross(r, s, p).signum();
    let o4 = cross(r, s, q).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        let d1 = ((q.0 - p.0) as i128, (q.1 - p.1) as i128);
        let d2 = ((s.0 - r.0) as i128, (s.1 - r.1) as i128);
        let rp = ((r.0 - p.0) as i128, (r.1 - p.1) as i128);
        let mut den = d1.0 * d2.1 - d1.1 * d2.0;
        let mut num = rp.0 * d2.1 - rp.1 * d2.0;
        let mut num2 = rp.0 * d1.1 - rp.1 * d1.0;
        if den < 0 {
            den = -den;
            num = -num;
            num2 = -num2;
        }
        return Meet::Cross { num, num2, den };
    }
    let touches = (o1 == 0 && within(p, q, r))
        || (o2 == 0 && within(p, q, s))
        || (o3 == 0 && within(r, s, p))
        || (o4 == 0 && within(r, s, q));
    if touches {
        Meet::Touch
    } else {
        Meet::Apart
    }
}

struct PlacedSeg {
    edge: usize,
    p: Pt,
    q: Pt,
    /// Crossing parameters already on this segment, as `(num, den)`.
    crossings: Vec<(i128, i128)>,
}

/// Uniform grid of buckets over segment bounding boxes.
struct Buckets {
    cell: i64,
    map: HashMap<(i64, i64), Vec<usize>>,
}

impl Buckets {
    fn cells(&self, p: Pt, q: Pt) -> impl Iterator<Item = (i64, i64)> {
        let (x0, x1) = (p.0.min(q.0).div_euclid(self.cell), p.0.max(q.0).div_euclid(self.cell));
        let (y0, y1) = (p.1.min(q.1).div_euclid(self.cell), p.1.max(q.1).div_euclid(self.cell));
        (x0..=x1).flat_map(move |x| (y0..=y1).map(move |y| (x, y)))
    }

    fn insert(&mut self, id: usize, p: Pt, q: Pt) {
        let cells: Vec<_> = self.cells(p, q).collect();
        for c in cells {
            self.map.entry(c).or_default().push(id);
        }
    }

    fn near(&self, p: Pt, q: Pt) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cells(p, q)
            .filter_map(|c| self.map.get(&c))
            .flatten()
            .copied()
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A random drawing in which every edge has at most `k` crossings.
///
/// Vertices get distinct grid points; each edge joins a vertex to one of its
/// nearest neighbours along a polyline with at most two bends. A candidate
/// edge is kept only if the drawing stays in general position and no edge
/// exceeds `k` crossings; otherwise it is resampled.
pub fn gen_random_kplane(cfg: &GenConfig) -> Result<GeometricDrawing> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let side = ((cfg.n as f64).sqrt().ceil() as i64).max(1) * 12;
    let mut taken = HashSet::new();
    let mut vertices: Vec<Pt> = Vec::with_capacity(cfg.n);
    while vertices.len() < cfg.n {
        let p = (rng.gen_range(0..side), rng.gen_range(0..side));
        if taken.insert(p) {
            vertices.push(p);
        }
    }
    let neighbours: Vec<Vec<VertexId>> = (0..cfg.n)
        .map(|u| {
            let mut others: Vec<VertexId> = (0..cfg.n).filter(|&v| v != u).collect();
            let d = |v: VertexId| {
                let (dx, dy) = (vertices[v].0 - vertices[u].0, vertices[v].1 - vertices[u].1);
                dx * dx + dy * dy
            };
            others.sort_by_key(|&v| (d(v), v));
            others.truncate(8);
            others
        })
        .collect();
    let mut vertex_buckets = Buckets {
        cell: 12,
        map: HashMap::new(),
    };
    for (i, &p) in vertices.iter().enumerate() {
        vertex_buckets.insert(i, p, p);
    }

    let mut segs: Vec<PlacedSeg> = Vec::new();
    let mut buckets = Buckets {
        cell: 12,
        map: HashMap::new(),
    };
    let mut x: Vec<usize> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId, Vec<Pt>)> = Vec::new();
    let mut present: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut attempts = 0;
    while edges.len() < cfg.m {
        attempts += 1;
        if attempts > cfg.max_attempts {
            return Err(Error::GenerationFailed {
                attempts: cfg.max_attempts,
                placed: edges.len(),
                wanted: cfg.m,
            });
        }
        let u = rng.gen_range(0..cfg.n);
        let Some(&v) = neighbours[u].choose(&mut rng) else { continue };
        if present.contains(&(u.min(v), u.max(v))) {
            continue;
        }
        let poly = sample_polyline(&mut rng, vertices[u], vertices[v]);
        let Some(hits) = admissible(&poly, u, v, &vertices, &vertex_buckets, &segs, &buckets, &edges) else {
            continue;
        };
        let mut per_edge: HashMap<usize, usize> = HashMap::new();
        for h in &hits {
            *per_edge.entry(segs[h.0].edge).or_default() += 1;
        }
        if hits.len() > cfg.k || per_edge.iter().any(|(&e, &c)| x[e] + c > cfg.k) {
            continue;
        }
        let id = edges.len();
        for (e, c) in per_edge {
            x[e] += c;
        }
        for &(s, num2, den, _, _) in &hits {
            segs[s].crossings.push((num2, den));
        }
        let base = segs.len();
        for (i, w) in poly.windows(2).enumerate() {
            let crossings = hits.iter().filter(|h| h.3 == i).map(|h| (h.4, h.2)).collect();
            segs.push(PlacedSeg {
                edge: id,
                p: w[0],
                q: w[1],
                crossings,
            });
            buckets.insert(base + i, w[0], w[1]);
        }
        x.push(hits.len());
        present.insert((u.min(v), u.max(v)));
        edges.push((u, v, poly[1..poly.len() - 1].to_vec()));
    }
    Ok(GeometricDrawing::from_integer_coords(&vertices, &edges))
}

fn sample_polyline(rng: &mut ChaCha8Rng, a: Pt, b: Pt) -> Vec<Pt> {
    let bends = match rng.gen_range(0..10) {
        0..=2 => 0,
        3..=5 => 1,
        _ => 2,
    };
    let len = (((b.0 - a.0).pow(2) + (b.1 - a.1).pow(2)) as f64).sqrt();
    let reach = ((len * 0.6) as i64).max(2);
    let mut poly = vec![a];
    for i in 1..=bends {
        let t = i as f64 / (bends + 1) as f64;
        let base = (
            a.0 + ((b.0 - a.0) as f64 * t).round() as i64,
            a.1 + ((b.1 - a.1) as f64 * t).round() as i64,
        );
        poly.push((
            base.0 + rng.gen_range(-reach..=reach),
            base.1 + rng.gen_range(-reach..=reach),
        ));
    }
    poly.push(b);
    poly
}

/// A crossing of a candidate: `(existing segment, parameter numerator on it,
/// shared denominator, candidate segment index, parameter numerator on the
/// candidate segment)`.
type Hit = (usize, i128, i128, usize, i128);

/// Checks a candidate polyline for `u -> v` against the drawing. Returns its
/// crossings, or `None` if the candidate would break general position.
#[allow(clippy::too_many_arguments)]
fn admissible(
    poly: &[Pt],
    u: VertexId,
    v: VertexId,
    vertices: &[Pt],
    vertex_buckets: &Buckets,
    segs: &[PlacedSeg],
    buckets: &Buckets,
    edges: &[(VertexId, VertexId, Vec<Pt>)],
) -> Option<Vec<Hit>> {
    let n = poly.len() - 1;
    if poly.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    // The polyline must be simple: non-consecutive pieces stay apart and
    // consecutive ones do not fold back.
    for i in 0..n {
        for j in i + 1..n {
            let (p, q, r, s) = (poly[i], poly[i + 1], poly[j], poly[j + 1]);
            if j == i + 1 {
                if cross(p, q, s) == 0 && (within(p, q, s) || within(r, s, p)) {
                    return None;
                }
            } else if !matches!(meet(p, q, r, s), Meet::Apart) {
                return None;
            }
        }
    }
    // No vertex on the polyline except its own ends.
    for i in 0..n {
        let (p, q) = (poly[i], poly[i + 1]);
        for w in vertex_buckets.near(p, q) {
            let own_start = i == 0 && w == u;
            let own_end = i + 1 == n && w == v;
            if on_segment(p, q, vertices[w]) && !own_start && !own_end {
                return None;
            }
        }
    }
    let mut hits: Vec<Hit> = Vec::new();
    let mut own: Vec<Vec<(i128, i128)>> = vec![Vec::new(); n];
    for i in 0..n {
        let (p, q) = (poly[i], poly[i + 1]);
        for sid in buckets.near(p, q) {
            let s = &segs[sid];
            let (eu, ev, _) = &edges[s.edge];
            match meet(p, q, s.p, s.q) {
                Meet::Apart => {}
                Meet::Cross { num, num2, den } => {
                    if s.crossings.iter().any(|&(a, b)| a * den == num2 * b) {
                        return None;
                    }
                    if own[i].iter().any(|&(a, b)| a * den == num * b) {
                        return None;
                    }
                    own[i].push((num, den));
                    hits.push((sid, num2, den, i, num));
                }
                Meet::Touch => {
                    // Allowed only at a shared endpoint, reached by the end
                    // pieces of both polylines and without overlap.
                    let shared = [u, v].into_iter().find(|w| w == eu || w == ev);
                    let c = vertices[shared?];
                    let ours = (i == 0 && p == c) || (i + 1 == n && q == c);
                    let theirs = s.p == c || s.q == c;
                    if !(ours && theirs) {
                        return None;
                    }
                    let other_p = if p == c { q } else { p };
                    let other_s = if s.p == c { s.q } else { s.p };
                    if cross(c, other_p, other_s) == 0
                        && ((other_p.0 - c.0).signum(), (other_p.1 - c.1).signum())
                            == ((other_s.0 - c.0).signum(), (other_s.1 - c.1).signum())
                    {
                        return None;
                    }
                }
            }
        }
    }
    Some(hits)
}
