//! JSON drawing files, `format_version` 1.
//!
//! A geometric file lists vertex points and edge polylines with coordinates
//! as `"p/q"` strings. A combinatorial file lists the network (nodes,
//! segments, rotations, original routes) and optionally a drawing state on
//! it. Output is canonical: maps are keyed by ids in increasing order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::geometry::{GEdge, GVertex, GeometricDrawing, RPoint};
use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::model::{DrawingState, GraphSpec, NetworkN, NodeKind, Route, Segment, StrandId};

pub const FORMAT_VERSION: u64 = 1;

/// The contents of a drawing file.
#[derive(Clone, Debug)]
pub enum DrawingFile {
    Geometric(GeometricDrawing),
    Combinatorial {
        network: NetworkN,
        state: Option<DrawingState>,
    },
}

impl DrawingFile {
    /// The stored state, or the initial state of the network. Geometric
    /// drawings are ingested first. The result is not validated.
    pub fn into_state(self) -> Result<DrawingState> {
        match self {
            DrawingFile::Geometric(gd) => DrawingState::initial(super::ingest_geometric(&gd)?),
            DrawingFile::Combinatorial { state: Some(state), .. } => Ok(state),
            DrawingFile::Combinatorial { network, state: None } => DrawingState::initial(network),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeoFile {
    format_version: u64,
    kind: String,
    vertices: Vec<VertexRec>,
    edges: Vec<EdgeRec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRec {
    id: usize,
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRec {
    id: usize,
    u: usize,
    v: usize,
    polyline: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CombFile {
    format_version: u64,
    kind: String,
    nodes: Vec<NodeRec>,
    segments: Vec<SegmentRec>,
    rotation: BTreeMap<usize, Vec<usize>>,
    routes: BTreeMap<usize, Vec<usize>>,
    route_segments: BTreeMap<usize, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    state: Option<StateRec>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum NodeRec {
    Vertex { id: usize, vertex: usize },
    Crossing { id: usize, edges: [usize; 2] },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentRec {
    id: usize,
    a: usize,
    b: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRec {
    routes: BTreeMap<usize, Vec<usize>>,
    route_segments: BTreeMap<usize, Vec<usize>>,
    /// Per segment, its strands from left to right looking from `a` to `b`,
    /// as `[edge, step]`.
    corridor_orders: BTreeMap<usize, Vec<[usize; 2]>>,
    #[serde(default)]
    epoch: u64,
}

fn typed<T: DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|err| {
        let path = err.path().to_string();
        Error::schema(path, err.into_inner().to_string())
    })
}

/// Parses a drawing file of either kind.
pub fn parse_drawing(bytes: &[u8]) -> Result<DrawingFile> {
    let value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|err| Error::schema(".", format!("invalid JSON: {err}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::schema(".", "top level must be an object"))?;
    match obj.get("format_version") {
        Some(v) if v.as_u64() == Some(FORMAT_VERSION) => {}
        Some(v) => return Err(Error::schema("format_version", format!("unsupported version {v}"))),
        None => return Err(Error::schema("format_version", "missing field")),
    }
    match obj.get("kind").and_then(|k| k.as_str()) {
        Some("geometric") => parse_geometric(typed(value)?).map(DrawingFile::Geometric),
        Some("combinatorial") => parse_combinatorial(typed(value)?),
        Some(other) => Err(Error::schema("kind", format!("unknown kind {other:?}"))),
        None => Err(Error::schema("kind", "missing or not a string")),
    }
}

fn parse_geometric(file: GeoFile) -> Result<GeometricDrawing> {
    let mut vertices = Vec::with_capacity(file.vertices.len());
    for (i, v) in file.vertices.into_iter().enumerate() {
        if v.id != i {
            return Err(Error::schema(format!("vertices[{i}].id"), "ids must equal list positions"));
        }
        vertices.push(GVertex {
            id: v.id,
            position: RPoint::new(parse_rational(&v.x)?, parse_rational(&v.y)?),
        });
    }
    let mut edges = Vec::with_capacity(file.edges.len());
    for (i, e) in file.edges.into_iter().enumerate() {
        if e.id != i {
            return Err(Error::schema(format!("edges[{i}].id"), "ids must equal list positions"));
        }
        let polyline = e
            .polyline
            .iter()
            .map(|[x, y]| Ok(RPoint::new(parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>>>()?;
        edges.push(GEdge {
            id: e.id,
            u: e.u,
            v: e.v,
            polyline,
        });
    }
    let gd = GeometricDrawing { vertices, edges };
    gd.check_shape()?;
    Ok(gd)
}

/// Turns an id-keyed map into a list, requiring keys `0..len`.
fn dense<T>(map: BTreeMap<usize, T>, len: usize, field: &str) -> Result<Vec<T>> {
    if map.len() != len || map.keys().enumerate().any(|(i, &k)| i != k) {
        return Err(Error::schema(field, format!("keys must be exactly 0..{len}")));
    }
    Ok(map.into_values().collect())
}

fn routes_from(
    nodes: BTreeMap<usize, Vec<usize>>,
    segments: BTreeMap<usize, Vec<usize>>,
    m: usize,
    field: &str,
) -> Result<Vec<Route>> {
    let nodes = dense(nodes, m, &format!("{field}routes"))?;
    let segments = dense(segments, m, &format!("{field}route_segments"))?;
    nodes
        .into_iter()
        .zip(segments)
        .enumerate()
        .map(|(e, (nodes, segments))| {
            if nodes.len() != segments.len() + 1 {
                return Err(Error::schema(
                    format!("{field}route_segments.{e}"),
                    "a route of k segments needs k + 1 nodes",
                ));
            }
            Ok(Route { nodes, segments })
        })
        .collect()
}

fn parse_combinatorial(file: CombFile) -> Result<DrawingFile> {
    let mut nodes = Vec::with_capacity(file.nodes.len());
    let mut vertex_count = 0;
    for (i, rec) in file.nodes.into_iter().enumerate() {
        let (id, kind) = match rec {
            NodeRec::Vertex { id, vertex } => {
                vertex_count += 1;
                (id, NodeKind::Vertex(vertex))
            }
            NodeRec::Crossing { id, edges: [e, f] } => (id, NodeKind::Crossing(e.min(f), e.max(f))),
        };
        if id != i {
            return Err(Error::schema(format!("nodes[{i}].id"), "ids must equal list positions"));
        }
        nodes.push(kind);
    }
    let mut segments = Vec::with_capacity(file.segments.len());
    for (i, s) in file.segments.into_iter().enumerate() {
        if s.id != i {
            return Err(Error::schema(format!("segments[{i}].id"), "ids must equal list positions"));
        }
        segments.push(Segment { a: s.a, b: s.b });
    }
    let m = file.routes.len();
    let rotation = dense(file.rotation, nodes.len(), "rotation")?;
    let routes = routes_from(file.routes, file.route_segments, m, "")?;
    // The graph is read off the routes: each runs between its two vertices.
    let vertex_of = |node: usize| match nodes.get(node) {
        Some(NodeKind::Vertex(v)) => Some(*v),
        _ => None,
    };
    let mut edges = Vec::with_capacity(m);
    for (e, route) in routes.iter().enumerate() {
        match (vertex_of(route.first()), vertex_of(route.last())) {
            (Some(u), Some(v)) => edges.push([u, v]),
            _ => return Err(Error::schema(format!("routes.{e}"), "a route must start and end at vertex nodes")),
        }
    }
    let graph = GraphSpec::new(vertex_count, edges)?;
    let network = Arc::new(NetworkN::new(graph, nodes, segments, rotation, routes)?);
    let state = match file.state {
        None => None,
        Some(rec) => {
            let routes = routes_from(rec.routes, rec.route_segments, m, "state.")?;
            let orders = dense(rec.corridor_orders, network.segment_count(), "state.corridor_orders")?;
            let corridors = orders
                .into_iter()
                .map(|list| list.into_iter().map(|[e, step]| StrandId::new(e, step)).collect())
                .collect();
            Some(DrawingState::from_parts(Arc::clone(&network), routes, corridors, rec.epoch))
        }
    };
    let network = Arc::try_unwrap(network).unwrap_or_else(|shared| (*shared).clone());
    Ok(DrawingFile::Combinatorial { network, state })
}

fn to_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}

pub fn serialize_geometric(gd: &GeometricDrawing) -> Vec<u8> {
    let file = GeoFile {
        format_version: FORMAT_VERSION,
        kind: "geometric".into(),
        vertices: gd
            .vertices
            .iter()
            .map(|v| VertexRec {
                id: v.id,
                x: format_rational(&v.position.x),
                y: format_rational(&v.position.y),
            })
            .collect(),
        edges: gd
            .edges
            .iter()
            .map(|e| EdgeRec {
                id: e.id,
                u: e.u,
                v: e.v,
                polyline: e
                    .polyline
                    .iter()
                    .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                    .collect(),
            })
            .collect(),
    };
    to_bytes(&file)
}

fn route_maps(routes: &[Route]) -> (BTreeMap<usize, Vec<usize>>, BTreeMap<usize, Vec<usize>>) {
    (
        routes.iter().map(|r| r.nodes.clone()).enumerate().collect(),
        routes.iter().map(|r| r.segments.clone()).enumerate().collect(),
    )
}

pub fn serialize_combinatorial(network: &NetworkN, state: Option<&DrawingState>) -> Vec<u8> {
    let (routes, route_segments) = route_maps(&network.original_routes);
    let state = state.map(|s| {
        let (routes, route_segments) = route_maps(s.routes());
        StateRec {
            routes,
            route_segments,
            corridor_orders: s
                .corridors()
                .iter()
                .map(|c| c.iter().map(|st| [st.edge, st.step]).collect())
                .enumerate()
                .collect(),
            epoch: s.epoch(),
        }
    });
    let file = CombFile {
        format_version: FORMAT_VERSION,
        kind: "combinatorial".into(),
        nodes: network
            .nodes
            .iter()
            .enumerate()
            .map(|(id, kind)| match *kind {
                NodeKind::Vertex(vertex) => NodeRec::Vertex { id, vertex },
                NodeKind::Crossing(e, f) => NodeRec::Crossing { id, edges: [e, f] },
            })
            .collect(),
        segments: network
            .segments
            .iter()
            .enumerate()
            .map(|(id, s)| SegmentRec { id, a: s.a, b: s.b })
            .collect(),
        rotation: network.rotation.iter().cloned().enumerate().collect(),
        routes,
        route_segments,
        state,
    };
    to_bytes(&file)
}

/// Serializes a state together with its network.
pub fn serialize_state(state: &DrawingState) -> Vec<u8> {
    serialize_combinatorial(state.network(), Some(state))
}

pub fn serialize_drawing(file: &DrawingFile) -> Vec<u8> {
    match file {
        DrawingFile::Geometric(gd) => serialize_geometric(gd),
        DrawingFile::Combinatorial { network, state } => serialize_combinatorial(network, state.as_ref()),
    }
}
