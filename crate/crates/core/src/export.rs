//! Text renderings: Graphviz for tubes, JSON dumps and SVG for drawings.

use std::fmt::Write;

use serde::Serialize;

use crate::geometry::Point;
use crate::immersion::{validate_generic, PlaneImmersion, DEFAULT_REL_TOL};
use crate::tube::{SymmetricTube, TubeVertex};

/// Graphviz source: Z cells as boxes, W cells as circles, tree edges solid
/// and basis edges dashed.
pub fn tube_dot(t: &SymmetricTube) -> String {
    let mut out = String::from("graph tube {\n  node [fontsize=10];\n");
    for (i, v) in t.vertices().iter().enumerate() {
        let (shape, color) = match v {
            TubeVertex::Z { .. } => ("box", "steelblue"),
            TubeVertex::W { .. } => ("ellipse", "darkorange"),
        };
        let _ = writeln!(out, "  n{i} [label=\"{v}\", shape={shape}, color={color}];");
    }
    for (i, e) in t.edges().iter().enumerate() {
        let (a, b) = t.ends()[i];
        let style = if t.is_tree_edge(i) { "solid" } else { "dashed" };
        let _ = writeln!(out, "  n{a} -- n{b} [label=\"{e}\", style={style}];");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
pub struct TubeEdgeDump {
    pub label: String,
    pub from: String,
    pub to: String,
    pub tree: bool,
}

#[derive(Debug, Serialize)]
pub struct TubeDump {
    pub vertices: Vec<String>,
    pub edges: Vec<TubeEdgeDump>,
    pub rank: usize,
    pub basis: Vec<String>,
}

pub fn tube_dump(t: &SymmetricTube) -> TubeDump {
    let name = |i: usize| t.vertices()[i].to_string();
    TubeDump {
        vertices: t.vertices().iter().map(ToString::to_string).collect(),
        edges: t
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| TubeEdgeDump {
                label: e.to_string(),
                from: name(t.ends()[i].0),
                to: name(t.ends()[i].1),
                tree: t.is_tree_edge(i),
            })
            .collect(),
        rank: t.betti(),
        basis: t.basis().labels.clone(),
    }
}

/// SVG of a drawing: strands with edge labels, vertices, crossings marked
/// in red, and a short tick on every germ.
pub fn render_svg(f: &PlaneImmersion) -> String {
    const SIZE: f64 = 480.0;
    const MARGIN: f64 = 30.0;
    let pts: Vec<Point> = f.polylines().iter().flatten().copied().collect();
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in &pts {
        lo = Point {
            x: lo.x.min(p.x),
            y: lo.y.min(p.y),
        };
        hi = Point {
            x: hi.x.max(p.x),
            y: hi.y.max(p.y),
        };
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let k = (SIZE - 2.0 * MARGIN) / span;
    // SVG y grows downward.
    let map = |p: Point| (MARGIN + (p.x - lo.x) * k, SIZE - MARGIN - (p.y - lo.y) * k);

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for e in f.graph().edges() {
        let line = f.polyline(e.id);
        let d: Vec<String> = line
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
            d.join(" ")
        );
        let (x, y) =
            map(line[line.len() / 2 - usize::from(line.len().is_multiple_of(2))].lerp(line[line.len() / 2], 0.5));
        let _ = writeln!(
            out,
            "<text x=\"{x:.3}\" y=\"{y:.3}\" font-size=\"11\" fill=\"gray\">e{}</text>",
            e.id
        );
    }
    for v in f.graph().vertices() {
        for &(e, _) in f.graph().neighbors(v) {
            let len = f.germ_length(v, e).min(span * 0.05);
            let (x1, y1) = map(f.position(v));
            let (x2, y2) = map(f.position(v) + f.germ(v, e) * len);
            let _ = writeln!(
                out,
                "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"steelblue\" stroke-width=\"3\"/>"
            );
        }
    }
    for c in validate_generic(f, DEFAULT_REL_TOL).crossings {
        let (x, y) = map(c.point);
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"red\"/>");
    }
    for v in f.graph().vertices() {
        let (x, y) = map(f.position(v));
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"black\"/>");
        let _ = writeln!(
            out,
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\">v{v}</text>",
            x + 6.0,
            y - 6.0
        );
    }
    out.push_str("</svg>\n");
    out
}
