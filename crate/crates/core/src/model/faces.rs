//! Face tracing over a rotation system.

use super::network::NetworkN;
use super::NodeId;

/// Counts for Euler's formula on a plane graph with possibly several
/// components: `V - E + F = 1 + C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
}

impl EulerCheck {
    pub fn of(net: &NetworkN) -> Self {
        let v = net.node_count();
        let e = net.segment_count();
        let walks = count_face_walks(net);
        let isolated = (0..v).filter(|&n| net.degree(n) == 0).count();
        let components = count_components(net);
        // Every component traced on its own sphere contributes its own outer
        // walk; isolated nodes have no darts but bound one face each.
        let faces = (walks + isolated + 1).saturating_sub(components);
        EulerCheck {
            vertices: v,
            edges: e,
            faces,
            components,
        }
    }

    pub fn holds(&self) -> bool {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 == 1 + self.components as i64
    }
}

/// Number of orbits of the face permutation. A dart is `2 * segment + dir`,
/// `dir = 0` meaning a -> b.
pub fn count_face_walks(net: &NetworkN) -> usize {
    face_walks(net).len()
}

/// Every face walk as the list of nodes its darts leave from.
pub(crate) fn face_walks(net: &NetworkN) -> Vec<Vec<NodeId>> {
    let darts = 2 * net.segment_count();
    let mut seen = vec![false; darts];
    let mut walks = Vec::new();
    for start in 0..darts {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let s = net.segments[d / 2];
            walk.push(if d % 2 == 0 { s.a } else { s.b });
            d = next_dart(net, d);
        }
        walks.push(walk);
    }
    walks
}

fn next_dart(net: &NetworkN, dart: usize) -> usize {
    let sid = dart / 2;
    let s = net.segments[sid];
    let head = if dart.is_multiple_of(2) { s.b } else { s.a };
    let rot = &net.rotation[head];
    let p = net.rotation_position(head, sid);
    let next = rot[(p + rot.len() - 1) % rot.len()];
    let ns = net.segments[next];
    if ns.a == head {
        2 * next
    } else {
        2 * next + 1
    }
}

pub fn count_components(net: &NetworkN) -> usize {
    let n = net.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for s in &net.segments {
        let (ra, rb) = (find(&mut parent, s.a), find(&mut parent, s.b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components
}
