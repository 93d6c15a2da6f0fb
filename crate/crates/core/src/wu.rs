//! Evaluation of the Wu class of an immersion on cycles of the symmetric tube.
//!
//! Every tube cell is realized by pairs of points of the drawing at most `eps`
//! apart along the graph, so a closed walk in the tube becomes a closed loop
//! of unordered point pairs. The class evaluated on that walk is the number
//! of half turns made by the line through the pair. Coordinates of the
//! invariant are these evaluations on the fundamental cycles of the non-tree
//! tube edges.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::geometry::{line_angle, reduce_half_turn, signed_angle, Point};
use crate::graph::{Dir, EdgeId, Graph, VertexId};
use crate::immersion::{validate_generic, PlaneImmersion, DEFAULT_REL_TOL};
use crate::tube::{SymmetricTube, TubeCycle, TubeEdge};
use crate::{generators, par};
use crate::{Error, Result};

/// Largest in-cell angular step accepted without subdividing.
const MAX_STEP: f64 = PI / 4.0;
const MAX_DEPTH: u32 = 40;
/// Integer certificate: totals must sit this close to a multiple of pi.
const INTEGER_TOL: f64 = 1e-6 * PI;
/// Collapse threshold relative to the tracing scale.
const PAIR_FLOOR: f64 = 1e-6;

/// How many times a trace is retried at half the scale after a collapsed pair.
const EPS_RETRIES: usize = 4;

/// Everything that affects the signs and the labels of coordinates.
pub const CONVENTIONS: &str = "edges oriented tail<head; graph tree = BFS from v1 in edge-id order; \
tube tree = star pattern per vertex block; X[i] runs Z[tail]->Z[head]; \
Y[s;t,i] runs Z[s;s,t]->W (moving point leaves v_s); unit = half turn of the pair line; \
eps = half the minimum feature clearance";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WuOptions {
    /// Genericity tolerance relative to the bounding-box diagonal.
    pub rel_tol: f64,
    /// Tracing scale; defaults to the scale suggested by the genericity check.
    pub eps: Option<f64>,
    /// Evaluate basis elements concurrently (ignored without the `parallel` feature).
    pub parallel: bool,
}

impl Default for WuOptions {
    fn default() -> Self {
        WuOptions {
            rel_tol: DEFAULT_REL_TOL,
            eps: None,
            parallel: true,
        }
    }
}

/// The invariant as an integer vector over the normalized basis labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WuVector {
    pub basis: Vec<String>,
    pub vector: Vec<i64>,
    pub fingerprint: String,
}

impl WuVector {
    pub fn len(&self) -> usize {
        self.vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vector.is_empty()
    }

    /// Coordinate for a label such as `X[4]` or `Y[1;3,1]`.
    pub fn get(&self, label: &str) -> Option<i64> {
        self.basis.iter().position(|l| l == label).map(|i| self.vector[i])
    }
}

/// Hash of the graph, its trees, the basis and [`CONVENTIONS`].
pub fn fingerprint(tube: &SymmetricTube) -> String {
    let g = tube.graph();
    let mut h = Sha256::new();
    h.update(b"wu-invariant/1\n");
    h.update(format!("m={}\n", g.vertex_count()));
    for e in g.edges() {
        h.update(format!("e{}=({},{})\n", e.id, e.tail, e.head));
    }
    h.update(format!("tree={:?}\n", tube.graph_tree().edges()));
    h.update(format!("basis={:?}\n", tube.basis().labels));
    h.update(CONVENTIONS.as_bytes());
    let digest = h.finalize();
    digest[..16].iter().map(|b| format!("{b:02x}")).collect()
}

/// Arclength parametrization of one polyline.
#[derive(Debug, Clone)]
struct Arc {
    points: Vec<Point>,
    cum: Vec<f64>,
}

impl Arc {
    fn new(points: &[Point]) -> Arc {
        let mut cum = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        cum.push(0.0);
        for w in points.windows(2) {
            acc += w[0].dist(w[1]);
            cum.push(acc);
        }
        Arc {
            points: points.to_vec(),
            cum,
        }
    }

    fn length(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    fn at(&self, s: f64) -> Point {
        let s = s.clamp(0.0, self.length());
        let i = match self.cum.binary_search_by(|c| c.total_cmp(&s)) {
            Ok(i) => return self.points[i],
            Err(i) => i.clamp(1, self.cum.len() - 1),
        };
        let (a, b) = (self.cum[i - 1], self.cum[i]);
        self.points[i - 1].lerp(self.points[i], (s - a) / (b - a))
    }

    fn bends(&self) -> &[f64] {
        &self.cum[1..self.cum.len() - 1]
    }
}

/// One sample of a pair path: step of the tube walk, parameter along that
/// step in traversal direction, and the pair in the cell's own order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSample {
    pub step: usize,
    pub param: f64,
    pub pair: [Point; 2],
}

impl PairSample {
    fn direction(&self) -> Point {
        self.pair[1] - self.pair[0]
    }
}

/// A closed loop of unordered point pairs realizing a tube walk.
#[derive(Debug, Clone)]
pub struct PairPath<'t> {
    tracer: &'t Tracer<'t>,
    cycle: TubeCycle,
    samples: Vec<PairSample>,
}

impl PairPath<'_> {
    pub fn samples(&self) -> &[PairSample] {
        &self.samples
    }

    pub fn cycle(&self) -> &TubeCycle {
        &self.cycle
    }
}

/// Realization of the tube of one immersion at a fixed scale.
#[derive(Debug, Clone)]
pub struct Tracer<'f> {
    f: &'f PlaneImmersion,
    tube: SymmetricTube,
    eps: f64,
    suggested_eps: f64,
    tau: f64,
    arcs: Vec<Arc>,
}

impl<'f> Tracer<'f> {
    /// Validates `f` and picks the tracing scale.
    pub fn new(f: &'f PlaneImmersion, opts: &WuOptions) -> Result<Self> {
        let report = validate_generic(f, opts.rel_tol).into_result()?;
        let eps = match opts.eps {
            Some(e) if !(e > 0.0) || e > report.eps => {
                return Err(Error::EpsTooLarge {
                    eps: e,
                    suggested: report.eps,
                })
            }
            Some(e) => e,
            None => report.eps,
        };
        Ok(Tracer {
            f,
            tube: SymmetricTube::build(f.graph()),
            eps,
            suggested_eps: report.eps,
            tau: report.tau,
            arcs: f.polylines().iter().map(|l| Arc::new(l)).collect(),
        })
    }

    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        if !(eps > 0.0) || eps > self.suggested_eps {
            return Err(Error::EpsTooLarge {
                eps,
                suggested: self.suggested_eps,
            });
        }
        Ok(Tracer { eps, ..self.clone() })
    }

    pub fn tube(&self) -> &SymmetricTube {
        &self.tube
    }

    pub fn immersion(&self) -> &PlaneImmersion {
        self.f
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn suggested_eps(&self) -> f64 {
        self.suggested_eps
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Point at distance `eps` from `v` along `e`.
    fn germ_point(&self, v: VertexId, e: EdgeId) -> Point {
        let edge = &self.f.graph().edges()[e - 1];
        let arc = &self.arcs[e - 1];
        if edge.tail == v {
            arc.at(self.eps)
        } else {
            arc.at(arc.length() - self.eps)
        }
    }

    /// The pair realizing tube edge `edge` at parameter `u` of its own orientation.
    pub fn cell_pair(&self, edge: usize, u: f64) -> [Point; 2] {
        match self.tube.edges()[edge] {
            TubeEdge::X { edge } => {
                let arc = &self.arcs[edge - 1];
                let t = u * (arc.length() - self.eps);
                [arc.at(t), arc.at(t + self.eps)]
            }
            TubeEdge::Y {
                apex, fixed, moving, ..
            } => {
                let v = self.f.position(apex);
                let m = v.lerp(self.germ_point(apex, moving), u);
                [self.germ_point(apex, fixed), m]
            }
        }
    }

    fn step_pair(&self, step: (usize, Dir), param: f64) -> [Point; 2] {
        match step.1 {
            Dir::Forward => self.cell_pair(step.0, param),
            Dir::Backward => self.cell_pair(step.0, 1.0 - param),
        }
    }

    /// Parameters (own orientation) where a cell stops being affine.
    fn breakpoints(&self, edge: usize) -> Vec<f64> {
        let mut out = vec![0.0, 1.0];
        if let TubeEdge::X { edge } = self.tube.edges()[edge] {
            let arc = &self.arcs[edge - 1];
            let span = arc.length() - self.eps;
            for &b in arc.bends() {
                for t in [b, b - self.eps] {
                    if t > 0.0 && t < span {
                        out.push(t / span);
                    }
                }
            }
            out.sort_by(f64::total_cmp);
            out.dedup();
        }
        out
    }

    fn cell_name(&self, step: (usize, Dir)) -> String {
        let sign = if step.1 == Dir::Forward { "+" } else { "-" };
        format!("{}{sign}", self.tube.edges()[step.0])
    }

    /// Pairs closer than this are treated as collapsed. Sharp but generic
    /// bends bring a pair far below `tau` once `eps` is small.
    fn collapse_distance(&self) -> f64 {
        self.tau.min(PAIR_FLOOR * self.eps)
    }

    fn check_pair(&self, step: (usize, Dir), param: f64, pair: &[Point; 2]) -> Result<()> {
        if pair[0].dist(pair[1]) < self.collapse_distance() {
            return Err(Error::CoincidentPair {
                cell: self.cell_name(step),
                param,
            });
        }
        Ok(())
    }

    /// Samples the walk at every cell breakpoint.
    pub fn pair_path(&self, cycle: &TubeCycle) -> Result<PairPath<'_>> {
        let edges = self.tube.edges().len();
        let mut samples = Vec::new();
        for (k, &step) in cycle.steps().iter().enumerate() {
            if step.0 >= edges {
                return Err(Error::NotACycle(format!("no tube edge with index {}", step.0)));
            }
            let mut params = self.breakpoints(step.0);
            if step.1 == Dir::Backward {
                params = params.into_iter().rev().map(|u| 1.0 - u).collect();
            }
            for param in params {
                let pair = self.step_pair(step, param);
                self.check_pair(step, param, &pair)?;
                samples.push(PairSample { step: k, param, pair });
            }
        }
        // Consecutive cells must hand over the same unordered pair.
        let tol = 1e-9 * (1.0 + self.f.bbox_diagonal());
        let n = samples.len();
        for i in 0..n {
            let (a, b) = (&samples[i], &samples[(i + 1) % n]);
            if a.step != b.step || n == 1 {
                let same = (a.pair[0].dist(b.pair[0]) <= tol && a.pair[1].dist(b.pair[1]) <= tol)
                    || (a.pair[0].dist(b.pair[1]) <= tol && a.pair[1].dist(b.pair[0]) <= tol);
                if !same {
                    return Err(Error::NotACycle(format!(
                        "pair path breaks between {} and {}",
                        self.cell_name(cycle.steps()[a.step]),
                        self.cell_name(cycle.steps()[b.step])
                    )));
                }
            }
        }
        Ok(PairPath {
            tracer: self,
            cycle: cycle.clone(),
            samples,
        })
    }

    /// Angle swept inside one cell between two parameters, subdividing until
    /// every piece turns by at most [`MAX_STEP`].
    fn sweep(&self, step: (usize, Dir), u0: f64, u1: f64, d0: Point, d1: Point, depth: u32) -> Result<f64> {
        let delta = signed_angle(d0, d1);
        if delta.abs() <= MAX_STEP {
            return Ok(delta);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::RefinementLimit {
                cell: self.cell_name(step),
                param: u0,
            });
        }
        let mid = 0.5 * (u0 + u1);
        let pair = self.step_pair(step, mid);
        self.check_pair(step, mid, &pair)?;
        let dm = pair[1] - pair[0];
        Ok(self.sweep(step, u0, mid, d0, dm, depth + 1)? + self.sweep(step, mid, u1, dm, d1, depth + 1)?)
    }

    /// Evaluation on a closed tube walk, in half turns.
    pub fn evaluate(&self, cycle: &TubeCycle) -> Result<i64> {
        winding(&self.pair_path(cycle)?)
    }

    /// Coordinates over the basis, one fundamental cycle each.
    pub fn coordinates(&self, parallel: bool) -> Result<Vec<i64>> {
        let basis = &self.tube.basis().edges;
        par::map_range_with(parallel, basis.len(), |i| {
            let cycle = self.tube.fundamental_cycle(basis[i])?;
            self.evaluate(&cycle)
        })
        .into_iter()
        .collect()
    }

    pub fn wu(&self, parallel: bool) -> Result<WuVector> {
        Ok(WuVector {
            basis: self.tube.basis().labels.clone(),
            vector: self.coordinates(parallel)?,
            fingerprint: fingerprint(&self.tube),
        })
    }
}

/// Total half turns of the pair line along a closed pair path.
///
/// Inside a cell the pair moves continuously, so steps are measured as
/// signed angles of the ordered pair and refined while larger than pi/4.
/// Across cell boundaries the pair may swap its order; those steps are taken
/// modulo pi in (-pi/2, pi/2].
pub fn winding(path: &PairPath<'_>) -> Result<i64> {
    let tracer = path.tracer;
    let steps = path.cycle.steps();
    let s = &path.samples;
    let n = s.len();
    let mut total = 0.0;
    for i in 0..n {
        let (a, b) = (&s[i], &s[(i + 1) % n]);
        if a.step == b.step && i + 1 < n {
            total += tracer.sweep(steps[a.step], a.param, b.param, a.direction(), b.direction(), 0)?;
        } else {
            total += reduce_half_turn(line_angle(b.direction()) - line_angle(a.direction()));
        }
    }
    let k = (total / PI).round();
    if (total - k * PI).abs() > INTEGER_TOL {
        return Err(Error::NonIntegerWinding { total });
    }
    Ok(k as i64)
}

fn with_retries<T>(f: &PlaneImmersion, opts: &WuOptions, run: impl Fn(&Tracer<'_>) -> Result<T>) -> Result<T> {
    let base = Tracer::new(f, opts)?;
    let mut eps = base.eps();
    let mut last = None;
    for _ in 0..=EPS_RETRIES {
        let tracer = base.with_eps(eps)?;
        match run(&tracer) {
            Err(err @ Error::CoincidentPair { .. }) => {
                last = Some(err);
                eps *= 0.5;
            }
            other => return other,
        }
    }
    Err(last.unwrap())
}

/// The Wu invariant with default options.
pub fn wu(f: &PlaneImmersion) -> Result<WuVector> {
    wu_with(f, &WuOptions::default())
}

pub fn wu_with(f: &PlaneImmersion, opts: &WuOptions) -> Result<WuVector> {
    with_retries(f, opts, |t| t.wu(opts.parallel))
}

/// Value of the class on an arbitrary closed tube walk.
pub fn evaluate_on_tube_cycle(f: &PlaneImmersion, cycle: &TubeCycle) -> Result<i64> {
    with_retries(f, &WuOptions::default(), |t| t.evaluate(cycle))
}

/// Whether two drawings of the same labelled graph have the same invariant.
pub fn equivalent(f: &PlaneImmersion, g: &PlaneImmersion) -> Result<bool> {
    equivalent_with(f, g, &WuOptions::default())
}

pub fn equivalent_with(f: &PlaneImmersion, g: &PlaneImmersion, opts: &WuOptions) -> Result<bool> {
    if f.graph() != g.graph() {
        return Err(Error::Mismatch("immersions of different labelled graphs".into()));
    }
    let (a, b) = (wu_with(f, opts)?, wu_with(g, opts)?);
    compare(&a, &b)
}

/// Coordinatewise comparison; refuses vectors computed under different conventions.
pub fn compare(a: &WuVector, b: &WuVector) -> Result<bool> {
    if a.fingerprint != b.fingerprint || a.basis != b.basis {
        return Err(Error::Mismatch(format!(
            "fingerprints differ: {} vs {}",
            a.fingerprint, b.fingerprint
        )));
    }
    Ok(a.vector == b.vector)
}

/// Y coordinates of `S_d` drawn with straight, evenly spaced germs in the
/// given counterclockwise order of edge ids. Empty for `d < 3`.
pub fn star_wu(order: &[EdgeId]) -> Result<Vec<i64>> {
    let d = order.len();
    if d < 3 {
        let mut seen = order.to_vec();
        seen.sort_unstable();
        if seen != (1..=d).collect::<Vec<_>>() {
            return Err(Error::Unrealizable(format!(
                "{order:?} is not a cyclic order of 1..={d}"
            )));
        }
        return Ok(Vec::new());
    }
    let f = generators::even_star(order)?;
    Ok(wu(&f)?.vector)
}

/// Graph check used by the CLI before comparing files.
pub fn same_graph(a: &Graph, b: &Graph) -> bool {
    a == b
}
