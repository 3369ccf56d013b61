//! Drawing files, exact ingestion of polyline drawings and SVG output.

mod geometry;
mod json;
mod rational;
mod svg;

pub use geometry::{ingest_geometric, GEdge, GVertex, GeometricDrawing, IntegerEdge, RPoint};
pub use json::{
    parse_drawing, serialize_combinatorial, serialize_drawing, serialize_geometric, serialize_state, DrawingFile,
    FORMAT_VERSION,
};
pub use rational::{format_rational, parse_rational};
pub use svg::{render_svg, RenderOptions};
