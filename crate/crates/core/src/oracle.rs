//! Brute-force cross-checks that share as little code as possible with the
//! main pipeline: cell enumeration, homology by integer elimination, dense
//! fixed-step winding and all-pairs crossing counts.

use std::f64::consts::PI;

use serde::Serialize;

use crate::geometry::Point;
use crate::graph::{Dir, Graph};
use crate::immersion::PlaneImmersion;
use crate::tube::{SymmetricTube, TubeCycle, TubeEdge, TubeVertex};
use crate::{Error, Result};

pub const DEFAULT_DENSE_STEPS: usize = 10_000;

/// Cell counts of the product decomposition of `G x G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCensus {
    /// Diagonal cells, one per vertex and per edge.
    pub diagonal: usize,
    /// Ordered products of disjoint simplices.
    pub disjoint_products: usize,
    /// Ordered tube cells of dimension 0 and 1, before the swap quotient.
    pub tube_cells_ordered: [usize; 2],
    pub tube_vertices: usize,
    pub tube_edges: usize,
    pub z_cells: usize,
    pub w_cells: usize,
    pub x_cells: usize,
    pub y_cells: usize,
    pub betti: i64,
}

fn simplices(g: &Graph) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = g.vertices().map(|v| vec![v]).collect();
    out.extend(g.edges().iter().map(|e| vec![e.tail, e.head]));
    out
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Whether the union of `a` and `b` spans a vertex or an edge.
fn spans_simplex(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    match u.as_slice() {
        [_] => true,
        [x, y] => g.edges().iter().any(|e| e.tail == *x && e.head == *y),
        _ => false,
    }
}

/// Enumerates all cells by brute force.
pub fn cell_census(g: &Graph) -> CellCensus {
    let s = simplices(g);
    let dim = |x: &Vec<usize>| x.len() - 1;
    let mut disjoint_products = 0;
    let mut tube = [0usize; 2];
    for s1 in &s {
        for s2 in &s {
            if !disjoint(s1, s2) {
                continue;
            }
            disjoint_products += 1;
            for c in &s {
                if spans_simplex(g, c, s1) && spans_simplex(g, c, s2) {
                    let d = dim(c) + dim(s1) + dim(s2);
                    if d < 2 {
                        tube[d] += 1;
                    }
                }
            }
        }
    }
    let t = SymmetricTube::build(g);
    let count_v = |z: bool| {
        t.vertices()
            .iter()
            .filter(|v| matches!(v, TubeVertex::Z { .. }) == z)
            .count()
    };
    let x_cells = t.edges().iter().filter(|e| e.is_x()).count();
    CellCensus {
        diagonal: g.vertex_count() + g.edge_count(),
        disjoint_products,
        tube_cells_ordered: tube,
        tube_vertices: t.vertices().len(),
        tube_edges: t.edges().len(),
        z_cells: count_v(true),
        w_cells: count_v(false),
        x_cells,
        y_cells: t.edges().len() - x_cells,
        betti: betti_oracle(&t),
    }
}

/// Rank of an integer matrix by Euclidean row reduction.
pub fn integer_rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        // Smallest nonzero pivot candidate in this column below `rank`.
        while let Some(p) = (rank..rows.len())
            .filter(|&r| rows[r][c] != 0)
            .min_by_key(|&r| rows[r][c].abs())
        {
            rows.swap(rank, p);
            let mut done = true;
            for r in rank + 1..rows.len() {
                let q = rows[r][c] / rows[rank][c];
                if q != 0 {
                    let pivot = rows[rank].clone();
                    for (x, p) in rows[r][c..].iter_mut().zip(&pivot[c..]) {
                        *x -= q * p;
                    }
                }
                if rows[r][c] != 0 {
                    done = false;
                }
            }
            if done {
                rank += 1;
                break;
            }
        }
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// First Betti number of the tube from its boundary matrix.
pub fn betti_oracle(t: &SymmetricTube) -> i64 {
    let nv = t.vertices().len();
    let rows: Vec<Vec<i64>> = t
        .ends()
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![0; nv];
            row[a] -= 1;
            row[b] += 1;
            row
        })
        .collect();
    t.edges().len() as i64 - integer_rank(rows) as i64
}

/// The closed-form rank `1 - 2n + (sum of squared degrees) / 2`.
pub fn rank_formula(g: &Graph) -> i64 {
    let sq: usize = g.vertices().map(|v| g.degree(v) * g.degree(v)).sum();
    1 - 2 * g.edge_count() as i64 + (sq / 2) as i64
}

/// Point at arclength `s` from the start of a polyline.
fn walk(line: &[Point], s: f64) -> Point {
    let mut left = s;
    for w in line.windows(2) {
        let len = (w[1] - w[0]).norm();
        if left <= len {
            return w[0] + (w[1] - w[0]) * (left / len);
        }
        left -= len;
    }
    *line.last().unwrap()
}

fn length(line: &[Point]) -> f64 {
    line.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}

/// Fixed-step winding of a tube walk: `steps` uniform samples per cell.
/// Inside a cell the pair is ordered, so steps are directed angles; between
/// cells they are taken modulo pi. Fails if any step exceeds pi/4.
pub fn dense_winding_oracle(
    t: &SymmetricTube,
    f: &PlaneImmersion,
    cycle: &TubeCycle,
    eps: f64,
    steps: usize,
) -> Result<i64> {
    dense_winding(t, f, cycle, eps, |_| steps, 0)
}

/// Like [`dense_winding_oracle`], but a cell gets at least 16 samples per
/// `eps` of its length, and a cell whose grid is too coarse is resampled on
/// a grid four times finer, up to `retries` times.
pub fn dense_winding_auto(
    t: &SymmetricTube,
    f: &PlaneImmersion,
    cycle: &TubeCycle,
    eps: f64,
    steps: usize,
    retries: u32,
) -> Result<i64> {
    let floor = |cell: usize| match t.edges()[cell] {
        TubeEdge::X { edge } => 16 * (length(f.polyline(edge)) / eps).ceil() as usize,
        TubeEdge::Y { .. } => 16,
    };
    dense_winding(t, f, cycle, eps, |cell| steps.max(floor(cell)), retries)
}

fn dense_winding(
    t: &SymmetricTube,
    f: &PlaneImmersion,
    cycle: &TubeCycle,
    eps: f64,
    steps_for: impl Fn(usize) -> usize,
    retries: u32,
) -> Result<i64> {
    let g = f.graph();
    let near = |v: usize, e: usize| {
        let edge = &g.edges()[e - 1];
        let line = f.polyline(e);
        if edge.tail == v {
            walk(line, eps)
        } else {
            walk(line, length(line) - eps)
        }
    };
    let pair = |cell: usize, u: f64| -> (Point, Point) {
        match t.edges()[cell] {
            TubeEdge::X { edge } => {
                let line = f.polyline(edge);
                let s = u * (length(line) - eps);
                (walk(line, s), walk(line, s + eps))
            }
            TubeEdge::Y {
                apex, fixed, moving, ..
            } => {
                let p = f.position(apex);
                (near(apex, fixed), p + (near(apex, moving) - p) * u)
            }
        }
    };
    let angle = |(a, b): (Point, Point)| (b.y - a.y).atan2(b.x - a.x);
    let directed = |from: f64, to: f64| {
        let d = (to - from).rem_euclid(2.0 * PI);
        if d > PI {
            d - 2.0 * PI
        } else {
            d
        }
    };
    let step = |from: f64, to: f64| {
        let d = (to - from).rem_euclid(PI);
        if d > PI / 2.0 {
            d - PI
        } else {
            d
        }
    };
    let mut total = 0.0;
    let mut last: Option<f64> = None;
    let mut first: Option<f64> = None;
    for &(cell, dir) in cycle.steps() {
        let mut steps = steps_for(cell).max(1);
        let mut attempt = 0;
        let (cell_total, start, end) = loop {
            let mut angles = Vec::with_capacity(steps + 1);
            for k in 0..=steps {
                let u = k as f64 / steps as f64;
                let u = if dir == Dir::Forward { u } else { 1.0 - u };
                angles.push(angle(pair(cell, u)));
            }
            let deltas: Vec<f64> = angles.windows(2).map(|w| directed(w[0], w[1])).collect();
            if deltas.iter().all(|d| d.abs() <= PI / 4.0) {
                break (deltas.iter().sum::<f64>(), angles[0], angles[steps]);
            }
            if attempt == retries {
                return Err(Error::RefinementLimit {
                    cell: format!("dense sampling of {}", t.edges()[cell]),
                    param: 0.0,
                });
            }
            attempt += 1;
            steps *= 4;
        };
        if let Some(prev) = last {
            total += step(prev, start);
        }
        first.get_or_insert(start);
        total += cell_total;
        last = Some(end);
    }
    if let (Some(a), Some(b)) = (last, first) {
        total += step(a, b);
    }
    let k = (total / PI).round();
    if (total - k * PI).abs() > 1e-6 * PI {
        return Err(Error::NonIntegerWinding { total });
    }
    Ok(k as i64)
}

/// Number of transversal crossings, by testing every pair of segments.
pub fn brute_force_crossings(f: &PlaneImmersion) -> usize {
    let orient = |a: Point, b: Point, c: Point| (b - a).cross(c - a);
    let mut segs = Vec::new();
    for (e, line) in f.polylines().iter().enumerate() {
        for (i, w) in line.windows(2).enumerate() {
            segs.push((e, i, w[0], w[1]));
        }
    }
    let mut count = 0;
    for (k, &(e1, i1, a, b)) in segs.iter().enumerate() {
        for &(e2, i2, c, d) in &segs[k + 1..] {
            if e1 == e2 && i1.abs_diff(i2) <= 1 {
                continue;
            }
            let (o1, o2) = (orient(a, b, c), orient(a, b, d));
            let (o3, o4) = (orient(c, d, a), orient(c, d, b));
            if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
                count += 1;
            }
        }
    }
    count
}
