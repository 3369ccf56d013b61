//! Static SVG pictures of a drawing state.
//!
//! The current drawing is planarized and laid out by barycentric placement
//! with the longest face walk pinned to a circle. Each graph edge becomes a
//! polyline through its planarization route; every crossing gets one
//! `<circle class="crossing">` marker.

use std::fmt::Write as _;

use crate::error::Result;
use crate::model::{face_walks, materialize_planarization, DrawingState, NodeKind};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub size: f64,
    /// Rounds of barycentric relaxation.
    pub iterations: usize,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 800.0,
            iterations: 300,
            labels: false,
        }
    }
}

fn colour(edge: usize) -> String {
    // Golden-angle hue steps keep neighbouring ids apart.
    format!("hsl({:.0},70%,42%)", (edge as f64 * 137.508) % 360.0)
}

pub fn render_svg(state: &DrawingState, options: &RenderOptions) -> Result<Vec<u8>> {
    let planar = materialize_planarization(state)?;
    let net = &planar.network;
    let n = net.node_count();
    let size = options.size;
    let (centre, radius) = (size / 2.0, size * 0.45);

    let mut pos = vec![(centre, centre); n];
    let mut pinned = vec![false; n];
    let outer = face_walks(net).into_iter().max_by_key(Vec::len).unwrap_or_default();
    let mut ring: Vec<usize> = Vec::new();
    for node in outer {
        if !ring.contains(&node) {
            ring.push(node);
        }
    }
    for (i, &node) in ring.iter().enumerate() {
        let angle = std::f64::consts::TAU * i as f64 / ring.len() as f64;
        pos[node] = (centre + radius * angle.cos(), centre + radius * angle.sin());
        pinned[node] = true;
    }
    // Nodes outside the pinned component get their own spot on a spiral so
    // that separate components do not collapse onto each other.
    for (i, p) in pos.iter_mut().enumerate().filter(|(i, _)| !pinned[*i]) {
        let angle = i as f64 * 2.399_963;
        let r = radius * 0.3 * ((i % 17) as f64 / 17.0);
        *p = (centre + r * angle.cos(), centre + r * angle.sin());
    }
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|node| net.rotation[node].iter().map(|&s| net.segments[s].other(node)).collect())
        .collect();
    for _ in 0..options.iterations {
        for node in 0..n {
            if pinned[node] || neighbours[node].is_empty() {
                continue;
            }
            let k = neighbours[node].len() as f64;
            let (sx, sy) = neighbours[node]
                .iter()
                .fold((0.0, 0.0), |acc, &m| (acc.0 + pos[m].0, acc.1 + pos[m].1));
            pos[node] = (sx / k, sy / k);
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (e, route) in net.original_routes.iter().enumerate() {
        let points: Vec<String> = route
            .nodes
            .iter()
            .map(|&node| format!("{:.2},{:.2}", pos[node].0, pos[node].1))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="edge" data-edge="{e}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            colour(e),
            points.join(" ")
        );
    }
    for (node, kind) in net.nodes.iter().enumerate() {
        let (x, y) = pos[node];
        match *kind {
            NodeKind::Crossing(e, f) => {
                let _ = writeln!(
                    out,
                    r#"<circle class="crossing" data-edges="{e} {f}" cx="{x:.2}" cy="{y:.2}" r="3.5" fill="red"/>"#
                );
            }
            NodeKind::Vertex(v) => {
                let _ = writeln!(
                    out,
                    r#"<circle class="vertex" data-vertex="{v}" cx="{x:.2}" cy="{y:.2}" r="5" fill="black"/>"#
                );
                if options.labels {
                    let _ = writeln!(
                        out,
                        r#"<text x="{:.2}" y="{:.2}" font-size="12">{v}</text>"#,
                        x + 6.0,
                        y - 6.0
                    );
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}
