//! Polyline plane immersions and their genericity check.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{point_segment_distance, segment_intersection, signed_angle, Point, SegmentContact};
use crate::graph::{Dir, EdgeCycle, EdgeId, Graph, GraphData, Subgraph, VertexId};
use crate::par;
use crate::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-6;

/// File form: `{"graph": {...}, "positions": {"1": [x, y]}, "polylines": {"1": [[x, y], ...]}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImmersionData {
    pub graph: GraphData,
    pub positions: BTreeMap<usize, Point>,
    pub polylines: BTreeMap<usize, Vec<Point>>,
}

/// A drawing of a graph: one point per vertex and one polyline per edge,
/// listed from tail to head.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneImmersion {
    graph: Graph,
    positions: Vec<Point>,
    polylines: Vec<Vec<Point>>,
}

impl PlaneImmersion {
    /// Structural checks only; see [`validate_generic`] for the geometric ones.
    pub fn new(graph: Graph, positions: Vec<Point>, polylines: Vec<Vec<Point>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::MalformedImmersion(msg));
        if positions.len() != graph.vertex_count() {
            return bad(format!(
                "{} positions for {} vertices",
                positions.len(),
                graph.vertex_count()
            ));
        }
        if polylines.len() != graph.edge_count() {
            return bad(format!(
                "{} polylines for {} edges",
                polylines.len(),
                graph.edge_count()
            ));
        }
        if let Some(v) = positions.iter().position(|p| !p.is_finite()) {
            return bad(format!("position of v{} is not finite", v + 1));
        }
        let mut polylines = polylines;
        for (e, line) in graph.edges().iter().zip(polylines.iter_mut()) {
            if line.len() < 2 {
                return bad(format!("polyline of e{} has fewer than 2 points", e.id));
            }
            if line.iter().any(|p| !p.is_finite()) {
                return bad(format!("polyline of e{} has a non-finite point", e.id));
            }
            let (t, h) = (positions[e.tail - 1], positions[e.head - 1]);
            let scale = 1e-9 * (1.0 + t.norm().max(h.norm()));
            if line[0].dist(t) > scale || line[line.len() - 1].dist(h) > scale {
                return bad(format!(
                    "polyline of e{} must run from v{} to v{}",
                    e.id, e.tail, e.head
                ));
            }
            line[0] = t;
            let last = line.len() - 1;
            line[last] = h;
        }
        Ok(PlaneImmersion {
            graph,
            positions,
            polylines,
        })
    }

    /// Straight edges between the given vertex positions.
    pub fn straight(graph: Graph, positions: Vec<Point>) -> Result<Self> {
        let lines = graph
            .edges()
            .iter()
            .map(|e| vec![positions[e.tail - 1], positions[e.head - 1]])
            .collect();
        PlaneImmersion::new(graph, positions, lines)
    }

    pub fn from_data(data: &ImmersionData) -> Result<Self> {
        let graph = Graph::from_data(&data.graph)?;
        let positions = (1..=graph.vertex_count())
            .map(|v| {
                data.positions
                    .get(&v)
                    .copied()
                    .ok_or_else(|| Error::MalformedImmersion(format!("missing position for v{v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let polylines = (1..=graph.edge_count())
            .map(|e| {
                data.polylines
                    .get(&e)
                    .cloned()
                    .ok_or_else(|| Error::MalformedImmersion(format!("missing polyline for e{e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if data.positions.len() != positions.len() || data.polylines.len() != polylines.len() {
            return Err(Error::MalformedImmersion("unexpected vertex or edge keys".into()));
        }
        PlaneImmersion::new(graph, positions, polylines)
    }

    pub fn to_data(&self) -> ImmersionData {
        ImmersionData {
            graph: self.graph.to_data(),
            positions: self.positions.iter().enumerate().map(|(i, &p)| (i + 1, p)).collect(),
            polylines: self
                .polylines
                .iter()
                .enumerate()
                .map(|(i, l)| (i + 1, l.clone()))
                .collect(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn position(&self, v: VertexId) -> Point {
        self.positions[v - 1]
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn polyline(&self, e: EdgeId) -> &[Point] {
        &self.polylines[e - 1]
    }

    pub fn polylines(&self) -> &[Vec<Point>] {
        &self.polylines
    }

    /// Replaces the polyline of `e`; endpoints must stay on the vertices.
    pub fn with_polyline(&self, e: EdgeId, line: Vec<Point>) -> Result<Self> {
        self.graph.edge(e)?;
        let mut lines = self.polylines.clone();
        lines[e - 1] = line;
        PlaneImmersion::new(self.graph.clone(), self.positions.clone(), lines)
    }

    /// Applies `map` to every coordinate.
    pub fn map_points(&self, map: impl Fn(Point) -> Point) -> Self {
        PlaneImmersion {
            graph: self.graph.clone(),
            positions: self.positions.iter().map(|&p| map(p)).collect(),
            polylines: self
                .polylines
                .iter()
                .map(|l| l.iter().map(|&p| map(p)).collect())
                .collect(),
        }
    }

    /// Mirror image across the x axis.
    pub fn reflect(&self) -> Self {
        self.map_points(|p| Point { x: p.x, y: -p.y })
    }

    /// Splits every segment of every polyline into `parts` collinear pieces.
    pub fn resampled(&self, parts: usize) -> Self {
        let parts = parts.max(1);
        let lines = self
            .polylines
            .iter()
            .map(|l| {
                let mut out = vec![l[0]];
                for w in l.windows(2) {
                    for k in 1..=parts {
                        out.push(w[0].lerp(w[1], k as f64 / parts as f64));
                    }
                }
                out
            })
            .collect();
        PlaneImmersion {
            graph: self.graph.clone(),
            positions: self.positions.clone(),
            polylines: lines,
        }
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let mut lo = Point {
            x: f64::INFINITY,
            y: f64::INFINITY,
        };
        let mut hi = Point {
            x: f64::NEG_INFINITY,
            y: f64::NEG_INFINITY,
        };
        for p in self.polylines.iter().flatten().chain(&self.positions) {
            lo = Point {
                x: lo.x.min(p.x),
                y: lo.y.min(p.y),
            };
            hi = Point {
                x: hi.x.max(p.x),
                y: hi.y.max(p.y),
            };
        }
        (hi - lo).norm()
    }

    /// Unit direction in which `e` leaves vertex `v`.
    pub fn germ(&self, v: VertexId, e: EdgeId) -> Point {
        let edge = &self.graph.edges()[e - 1];
        let l = &self.polylines[e - 1];
        let d = if edge.tail == v {
            l[1] - l[0]
        } else {
            l[l.len() - 2] - l[l.len() - 1]
        };
        d.normalized()
    }

    /// Length of the first segment of `e` at `v`.
    pub fn germ_length(&self, v: VertexId, e: EdgeId) -> f64 {
        let edge = &self.graph.edges()[e - 1];
        let l = &self.polylines[e - 1];
        if edge.tail == v {
            l[0].dist(l[1])
        } else {
            l[l.len() - 2].dist(l[l.len() - 1])
        }
    }

    pub fn edge_length(&self, e: EdgeId) -> f64 {
        self.polylines[e - 1].windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// Drawing of a subgraph, reversing polylines whose orientation flipped.
    pub fn restrict(&self, sub: &Subgraph) -> Result<Self> {
        if sub.vertex_map.len() != sub.graph.vertex_count() || sub.edge_map.len() != sub.graph.edge_count() {
            return Err(Error::InvalidSubgraph("index maps do not match the subgraph".into()));
        }
        let mut positions = Vec::with_capacity(sub.vertex_map.len());
        for &v in &sub.vertex_map {
            if !self.graph.contains_vertex(v) {
                return Err(Error::InvalidSubgraph(format!("v{v} is not a parent vertex")));
            }
            positions.push(self.position(v));
        }
        let mut lines = Vec::with_capacity(sub.edge_map.len());
        for &(e, reversed) in &sub.edge_map {
            self.graph.edge(e)?;
            let mut l = self.polylines[e - 1].clone();
            if reversed {
                l.reverse();
            }
            lines.push(l);
        }
        PlaneImmersion::new(sub.graph.clone(), positions, lines).map_err(|err| Error::InvalidSubgraph(err.to_string()))
    }

    /// The closed polygon traced by a graph cycle (each vertex listed once).
    pub fn cycle_polygon(&self, c: &EdgeCycle) -> Vec<Point> {
        let mut pts = Vec::new();
        for &(e, d) in c.steps() {
            let l = &self.polylines[e - 1];
            match d {
                Dir::Forward => pts.extend_from_slice(&l[..l.len() - 1]),
                Dir::Backward => pts.extend(l[1..].iter().rev()),
            }
        }
        pts
    }

    /// Turning number of the image of a graph cycle, corners measured in (-pi, pi).
    pub fn cycle_turning_number(&self, c: &EdgeCycle) -> Result<i64> {
        crate::geometry::turning_number(&self.cycle_polygon(c))
    }

    fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for e in self.graph.edges() {
            let l = &self.polylines[e.id - 1];
            let last = l.len() - 2;
            for i in 0..l.len() - 1 {
                out.push(Segment {
                    edge: e.id,
                    index: i,
                    a: l[i],
                    b: l[i + 1],
                    start_vertex: (i == 0).then_some(e.tail),
                    end_vertex: (i == last).then_some(e.head),
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    edge: EdgeId,
    index: usize,
    a: Point,
    b: Point,
    start_vertex: Option<VertexId>,
    end_vertex: Option<VertexId>,
}

impl Segment {
    fn touches_vertex(&self, v: VertexId) -> bool {
        self.start_vertex == Some(v) || self.end_vertex == Some(v)
    }

    fn shares_vertex(&self, o: &Segment) -> bool {
        [self.start_vertex, self.end_vertex]
            .into_iter()
            .flatten()
            .any(|v| o.touches_vertex(v))
    }

    fn consecutive(&self, o: &Segment) -> bool {
        self.edge == o.edge && self.index.abs_diff(o.index) == 1
    }
}

/// Location on a strand: edge, segment index and parameter in [0, 1] on that segment.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct StrandPoint {
    pub edge: EdgeId,
    pub segment: usize,
    pub param: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub point: Point,
    pub strands: [StrandPoint; 2],
    /// Sign of (direction of first strand) x (direction of second strand).
    pub sign: i8,
}

/// Incident edges of a vertex in counterclockwise order of their germs,
/// rotated so the smallest edge id comes first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicOrder {
    pub vertex: VertexId,
    pub edges: Vec<EdgeId>,
}

impl CyclicOrder {
    pub fn new(vertex: VertexId, mut edges: Vec<EdgeId>) -> Self {
        if let Some(pos) = edges.iter().enumerate().min_by_key(|x| x.1).map(|x| x.0) {
            edges.rotate_left(pos);
        }
        CyclicOrder { vertex, edges }
    }

    pub fn reversed(&self) -> Self {
        let mut e = self.edges.clone();
        e.reverse();
        CyclicOrder::new(self.vertex, e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: &'static str,
    pub message: String,
    pub at: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericityReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub crossings: Vec<Crossing>,
    pub cyclic_orders: Vec<CyclicOrder>,
    /// Suggested tracing scale; zero when the check fails.
    pub eps: f64,
    /// Absolute length tolerance used.
    pub tau: f64,
}

impl GenericityReport {
    pub fn into_result(self) -> Result<Self> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::NotGeneric(
                self.violations.iter().map(|v| v.message.clone()).collect(),
            ))
        }
    }
}

/// Counterclockwise order of germs at `v`.
pub fn cyclic_order(f: &PlaneImmersion, v: VertexId, angle_tol: f64) -> Result<CyclicOrder> {
    if !f.graph.contains_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let mut germs: Vec<(f64, EdgeId)> = f
        .graph
        .neighbors(v)
        .iter()
        .map(|&(e, _)| (f.germ(v, e).angle().rem_euclid(2.0 * PI), e))
        .collect();
    germs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = germs.len();
    if n >= 2 {
        for i in 0..n {
            let (a, ea) = germs[i];
            let (b, eb) = germs[(i + 1) % n];
            let gap = (b - a).rem_euclid(2.0 * PI);
            if gap <= angle_tol {
                let (first, second) = if ea < eb { (ea, eb) } else { (eb, ea) };
                return Err(Error::CoincidentGerms {
                    vertex: v,
                    first,
                    second,
                });
            }
        }
    }
    Ok(CyclicOrder::new(v, germs.into_iter().map(|g| g.1).collect()))
}

/// Checks every genericity predicate with `tau = rel_tol * bbox diagonal`
/// for lengths and `rel_tol` radians for angles.
pub fn validate_generic(f: &PlaneImmersion, rel_tol: f64) -> GenericityReport {
    let diag = f.bbox_diagonal();
    let tau = rel_tol * diag;
    let angle_tol = rel_tol;
    let mut violations = Vec::new();
    let mut push =
        |kind: &'static str, message: String, at: Option<Point>| violations.push(Violation { kind, message, at });
    if !(diag > 0.0) {
        push("degenerate", "drawing has zero extent".into(), None);
    }

    let segs = f.segments();
    let mut clearance = f64::INFINITY;

    // (a) local injectivity
    for s in &segs {
        let len = s.a.dist(s.b);
        if len <= tau {
            push(
                "not an immersion",
                format!(
                    "not an immersion: segment {} of e{} has length {len:.3e}",
                    s.index, s.edge
                ),
                Some(s.a),
            );
        }
        clearance = clearance.min(len);
    }
    for e in f.graph.edges() {
        let l = &f.polylines[e.id - 1];
        for i in 1..l.len() - 1 {
            let (din, dout) = (l[i] - l[i - 1], l[i + 1] - l[i]);
            if din.norm() == 0.0 || dout.norm() == 0.0 {
                continue;
            }
            let turn = signed_angle(din, dout);
            if PI - turn.abs() <= angle_tol {
                push(
                    "not an immersion",
                    format!(
                        "not an immersion: e{} folds back at ({:.6}, {:.6})",
                        e.id, l[i].x, l[i].y
                    ),
                    Some(l[i]),
                );
            }
        }
    }

    // distinct vertex images
    for u in 1..=f.graph.vertex_count() {
        for v in u + 1..=f.graph.vertex_count() {
            if f.position(u).dist(f.position(v)) <= tau {
                let p = f.position(u);
                push(
                    "vertex multipoint",
                    format!("v{u} and v{v} share the image ({:.6}, {:.6})", p.x, p.y),
                    Some(p),
                );
            }
        }
    }

    // (e) germ directions and orders
    let mut cyclic_orders = Vec::new();
    for v in f.graph.vertices() {
        match cyclic_order(f, v, angle_tol) {
            Ok(c) => cyclic_orders.push(c),
            Err(Error::CoincidentGerms { first, second, .. }) => {
                let p = f.position(v);
                push(
                    "coincident germs",
                    format!(
                        "e{first} and e{second} leave v{v} at ({:.6}, {:.6}) in the same direction",
                        p.x, p.y
                    ),
                    Some(p),
                )
            }
            Err(_) => unreachable!(),
        }
        for &(e, _) in f.graph.neighbors(v) {
            clearance = clearance.min(f.germ_length(v, e));
        }
    }

    // vertices against strands that do not end there
    for v in f.graph.vertices() {
        let p = f.position(v);
        for s in segs.iter().filter(|s| !s.touches_vertex(v)) {
            let d = point_segment_distance(p, s.a, s.b);
            if d <= tau {
                push(
                    "strand through vertex",
                    format!("e{} passes through v{v} at ({:.6}, {:.6})", s.edge, p.x, p.y),
                    Some(p),
                );
            }
            clearance = clearance.min(d);
        }
    }

    // (b), (c) pairwise segment contacts
    let pair_results: Vec<(Vec<Crossing>, Vec<Violation>)> = par::map_range(segs.len(), |i| {
        let mut crossings = Vec::new();
        let mut bad = Vec::new();
        let s = &segs[i];
        for t in &segs[i + 1..] {
            let adjacent = s.consecutive(t) || s.shares_vertex(t);
            match segment_intersection(s.a, s.b, t.a, t.b) {
                None => {}
                Some(SegmentContact::Overlap) => bad.push(Violation {
                    kind: "overlap",
                    message: format!(
                        "segments {} of e{} and {} of e{} overlap near ({:.6}, {:.6})",
                        s.index, s.edge, t.index, t.edge, s.a.x, s.a.y
                    ),
                    at: Some(s.a),
                }),
                Some(SegmentContact::Point { s: ps, t: pt_, at }) => {
                    if adjacent && shared_corner(s, t, at, tau) {
                        continue;
                    }
                    let ds = s.b - s.a;
                    let dt = t.b - t.a;
                    let sin = ds.cross(dt) / (ds.norm() * dt.norm());
                    let near_end = [s.a, s.b, t.a, t.b].iter().any(|q| q.dist(at) <= tau);
                    if near_end {
                        bad.push(Violation {
                            kind: "crossing at corner",
                            message: format!(
                                "e{} and e{} meet at a vertex or bend ({:.6}, {:.6})",
                                s.edge, t.edge, at.x, at.y
                            ),
                            at: Some(at),
                        });
                    } else if sin.abs() <= angle_tol {
                        bad.push(Violation {
                            kind: "tangency",
                            message: format!(
                                "e{} and e{} touch without crossing at ({:.6}, {:.6})",
                                s.edge, t.edge, at.x, at.y
                            ),
                            at: Some(at),
                        });
                    } else {
                        crossings.push(Crossing {
                            point: at,
                            strands: [
                                StrandPoint {
                                    edge: s.edge,
                                    segment: s.index,
                                    param: ps,
                                },
                                StrandPoint {
                                    edge: t.edge,
                                    segment: t.index,
                                    param: pt_,
                                },
                            ],
                            sign: if sin > 0.0 { 1 } else { -1 },
                        });
                    }
                }
            }
        }
        (crossings, bad)
    });
    let mut crossings = Vec::new();
    for (c, bad) in pair_results {
        crossings.extend(c);
        violations.extend(bad);
    }

    // (c) crossings away from vertices, (d) no triple points
    for c in &crossings {
        for v in f.graph.vertices() {
            let d = c.point.dist(f.position(v));
            if d <= tau {
                violations.push(Violation {
                    kind: "crossing at vertex",
                    message: format!("crossing at v{v} ({:.6}, {:.6})", c.point.x, c.point.y),
                    at: Some(c.point),
                });
            }
            clearance = clearance.min(d);
        }
    }
    for i in 0..crossings.len() {
        for j in i + 1..crossings.len() {
            let d = crossings[i].point.dist(crossings[j].point);
            if d <= tau {
                let p = crossings[i].point;
                violations.push(Violation {
                    kind: "triple point",
                    message: format!("multiple crossings at ({:.6}, {:.6})", p.x, p.y),
                    at: Some(p),
                });
            }
            clearance = clearance.min(d);
        }
    }

    let pass = violations.is_empty();
    GenericityReport {
        pass,
        violations,
        crossings,
        cyclic_orders,
        eps: if pass { 0.5 * clearance } else { 0.0 },
        tau,
    }
}

/// Adjacent segments may only meet at the point they share.
fn shared_corner(s: &Segment, t: &Segment, at: Point, tau: f64) -> bool {
    [s.a, s.b]
        .iter()
        .any(|p| (p.dist(t.a) <= tau || p.dist(t.b) <= tau) && p.dist(at) <= tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pt;

    fn triangle() -> PlaneImmersion {
        PlaneImmersion::straight(Graph::complete(3).unwrap(), vec![pt(0., 0.), pt(1., 0.), pt(0.5, 0.8)]).unwrap()
    }

    #[test]
    fn embedded_triangle_passes() {
        let r = validate_generic(&triangle(), DEFAULT_REL_TOL);
        assert!(r.pass, "{:?}", r.violations);
        assert!(r.crossings.is_empty());
        assert!(r.eps > 0.0);
    }

    #[test]
    fn curl_on_e1_gives_one_crossing() {
        let f = triangle();
        // e1 from (0,0) to (1,0) with a loop above it.
        let curl = vec![pt(0., 0.), pt(0.6, 0.), pt(0.5, 0.1), pt(0.45, -0.1), pt(1., 0.)];
        let g = f.with_polyline(1, curl).unwrap();
        let r = validate_generic(&g, DEFAULT_REL_TOL);
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.crossings.len(), 1);
        let c = &r.crossings[0];
        assert!(c.point.dist(pt(0.475, 0.)) < 1e-9);
    }

    #[test]
    fn fold_back_is_not_an_immersion() {
        let f = triangle();
        let g = f
            .with_polyline(1, vec![pt(0., 0.), pt(0.8, 0.), pt(0.4, 0.), pt(1., 0.)])
            .unwrap();
        let r = validate_generic(&g, DEFAULT_REL_TOL);
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.kind == "not an immersion"));
        assert!(r.into_result().is_err());
    }

    #[test]
    fn strand_through_vertex_rejected() {
        let g = Graph::path(3).unwrap();
        let f = PlaneImmersion::new(
            g,
            vec![pt(0., 0.), pt(1., 0.), pt(0.5, 1.)],
            vec![
                vec![pt(0., 0.), pt(1., 0.)],
                vec![pt(1., 0.), pt(0.5, -0.5), pt(-0.5, 0.5), pt(0.5, 1.)],
            ],
        )
        .unwrap();
        let r = validate_generic(&f, DEFAULT_REL_TOL);
        assert!(!r.pass, "e2 passes through v1");
    }

    #[test]
    fn cyclic_orders_at_star_center() {
        let g = Graph::star(3).unwrap();
        let dirs = [90.0f64, 210.0, 330.0];
        let mut pos: Vec<_> = dirs
            .iter()
            .map(|d| pt(d.to_radians().cos(), d.to_radians().sin()))
            .collect();
        pos.push(pt(0., 0.));
        let f = PlaneImmersion::straight(g, pos).unwrap();
        assert_eq!(cyclic_order(&f, 4, 1e-9).unwrap().edges, vec![1, 2, 3]);
        assert_eq!(cyclic_order(&f.reflect(), 4, 1e-9).unwrap().edges, vec![1, 3, 2]);
        assert_eq!(
            cyclic_order(&f, 4, 1e-9).unwrap().reversed(),
            cyclic_order(&f.reflect(), 4, 1e-9).unwrap()
        );
    }

    #[test]
    fn equal_germs_rejected() {
        let g = Graph::star(2).unwrap();
        let f = PlaneImmersion::new(
            g,
            vec![pt(1., 0.), pt(2., 1.), pt(0., 0.)],
            vec![vec![pt(1., 0.), pt(0., 0.)], vec![pt(2., 1.), pt(2., 0.), pt(0., 0.)]],
        )
        .unwrap();
        assert!(matches!(cyclic_order(&f, 3, 1e-9), Err(Error::CoincidentGerms { .. })));
    }

    #[test]
    fn malformed_rejected() {
        let g = Graph::complete(3).unwrap();
        let err = PlaneImmersion::new(
            g,
            vec![pt(0., 0.), pt(1., 0.), pt(0., 1.)],
            vec![
                vec![pt(0., 0.), pt(1., 1.)],
                vec![pt(0., 0.), pt(0., 1.)],
                vec![pt(1., 0.), pt(0., 1.)],
            ],
        );
        assert!(matches!(err, Err(Error::MalformedImmersion(_))));
    }

    #[test]
    fn restrictions() {
        let g = Graph::complete(4).unwrap();
        let f = PlaneImmersion::straight(g.clone(), vec![pt(0., 0.), pt(2., 0.), pt(1., 2.), pt(1., 0.7)]).unwrap();
        let st = f.restrict(&Subgraph::star(&g, 1).unwrap()).unwrap();
        assert_eq!(st.graph(), &Graph::star(3).unwrap());
        assert_eq!(st.position(4), pt(0., 0.));
        assert_eq!(st.polyline(1), &[pt(2., 0.), pt(0., 0.)]);
        let tri = f.restrict(&Subgraph::from_edges(&g, &[4, 5, 6]).unwrap()).unwrap();
        assert_eq!(tri.graph(), &Graph::complete(3).unwrap());
        let one = f.restrict(&Subgraph::from_edges(&g, &[2]).unwrap()).unwrap();
        assert!(validate_generic(&one, DEFAULT_REL_TOL).pass);
    }

    #[test]
    fn json_round_trip() {
        let f = triangle();
        let text = serde_json::to_string(&f.to_data()).unwrap();
        assert!(text.starts_with(r#"{"graph":{"vertices":3,"edges":[[1,2],[1,3],[2,3]]},"positions":{"1":[0.0,0.0]"#));
        let back: ImmersionData = serde_json::from_str(&text).unwrap();
        assert_eq!(PlaneImmersion::from_data(&back).unwrap(), f);
    }
}
