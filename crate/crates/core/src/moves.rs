//! Geometric moves on drawings: single curls (which change the class),
//! cancelling curl pairs and small perturbations (which do not).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{point_segment_distance, pt, signed_angle, Point};
use crate::graph::EdgeId;
use crate::immersion::{validate_generic, PlaneImmersion, DEFAULT_REL_TOL};
use crate::{Error, Result};

const MAX_PERTURB_RETRIES: usize = 8;

/// One step of a move script.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveRecord {
    /// Kink of the given sign at arclength fraction `t` of `edge`.
    Curl { edge: EdgeId, t: f64, sign: i8 },
    /// Positive curl immediately followed by a negative one.
    WhitneyPair { edge: EdgeId, t: f64 },
    /// Jitter of all bend points by at most `delta`.
    Perturb { seed: u64, delta: f64 },
}

/// Loop traced counterclockwise in a frame where the strand runs along +x
/// from (-2, 0) to (2, 0); scaled by the curl radius. Slightly lopsided so
/// the self-crossing does not sit at a simple fraction of either segment.
const CURL: [Point; 3] = [pt(1.0, 1.0), pt(0.1, 2.0), pt(-1.0, 1.2)];

struct Site {
    segment: usize,
    center: Point,
    dir: Point,
    radius: f64,
}

/// Where a template of half-width `2 * r * half_widths` fits around fraction `t`.
fn locate(f: &PlaneImmersion, edge: EdgeId, t: f64, half_widths: f64) -> Result<Site> {
    f.graph().edge(edge)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Clearance(format!("t = {t} is not inside e{edge}")));
    }
    let report = validate_generic(f, DEFAULT_REL_TOL).into_result()?;
    let line = f.polyline(edge);
    let target = t * f.edge_length(edge);
    let mut acc = 0.0;
    let mut found = None;
    for (i, w) in line.windows(2).enumerate() {
        let len = w[0].dist(w[1]);
        if target <= acc + len || i == line.len() - 2 {
            let s = (target - acc).clamp(0.0, len);
            found = Some((i, s, len));
            break;
        }
        acc += len;
    }
    let (segment, s, len) = found.unwrap();
    let (a, b) = (line[segment], line[segment + 1]);
    let dir = (b - a).normalized();
    let center = a + dir * s;
    // Room along the segment and distance to every other piece of the drawing.
    let mut clearance = s.min(len - s) / half_widths;
    for (e, other) in f.polylines().iter().enumerate() {
        for (j, w) in other.windows(2).enumerate() {
            if e + 1 == edge && j.abs_diff(segment) <= 1 {
                continue;
            }
            clearance = clearance.min(point_segment_distance(center, w[0], w[1]));
        }
    }
    for &p in f.positions() {
        clearance = clearance.min(center.dist(p));
    }
    let radius = report.eps.min(clearance) / 4.0;
    if !(radius > 1e-9 * f.bbox_diagonal()) {
        return Err(Error::Clearance(format!(
            "no room for a curl on e{edge} at t = {t} (radius {radius:.3e})"
        )));
    }
    Ok(Site {
        segment,
        center,
        dir,
        radius,
    })
}

fn splice(f: &PlaneImmersion, edge: EdgeId, site: &Site, local: &[Point]) -> Result<PlaneImmersion> {
    let line = f.polyline(edge);
    let normal = site.dir.perp();
    let to_world = |q: Point| site.center + site.dir * (q.x * site.radius) + normal * (q.y * site.radius);
    let mut out = line[..=site.segment].to_vec();
    out.extend(local.iter().map(|&q| to_world(q)));
    out.extend_from_slice(&line[site.segment + 1..]);
    let g = f.with_polyline(edge, out)?;
    validate_generic(&g, DEFAULT_REL_TOL)
        .into_result()
        .map_err(|e| Error::Clearance(e.to_string()))?;
    Ok(g)
}

fn curl_points(offset: f64, sign: f64) -> Vec<Point> {
    let mut pts = vec![pt(offset - 2.0, 0.0)];
    pts.extend(CURL.iter().map(|q| pt(q.x + offset, q.y * sign)));
    pts.push(pt(offset + 2.0, 0.0));
    pts
}

/// Adds a kink at arclength fraction `t` of `edge`. A positive curl turns
/// counterclockwise, adding one full turn to every cycle that traverses
/// `edge` forward.
pub fn insert_curl(f: &PlaneImmersion, edge: EdgeId, t: f64, sign: i8) -> Result<PlaneImmersion> {
    if sign != 1 && sign != -1 {
        return Err(Error::Clearance(format!("curl sign must be +1 or -1, got {sign}")));
    }
    let site = locate(f, edge, t, 2.0)?;
    splice(f, edge, &site, &curl_points(0.0, sign as f64))
}

/// Two opposite curls side by side; regularly homotopic to `f`.
pub fn whitney_pair(f: &PlaneImmersion, edge: EdgeId, t: f64) -> Result<PlaneImmersion> {
    let site = locate(f, edge, t, 4.0)?;
    let mut pts = curl_points(-2.0, 1.0);
    pts.extend(curl_points(2.0, -1.0).into_iter().skip(1));
    splice(f, edge, &site, &pts)
}

/// Moves every interior bend point by at most `delta`, keeping the straight
/// line homotopy between old and new drawing an immersion throughout.
pub fn perturb(f: &PlaneImmersion, seed: u64, delta: f64) -> Result<PlaneImmersion> {
    let report = validate_generic(f, DEFAULT_REL_TOL).into_result()?;
    if !(delta >= 0.0) || delta >= report.eps / 4.0 {
        return Err(Error::Perturbation(format!(
            "delta = {delta} must lie in [0, {})",
            report.eps / 4.0
        )));
    }
    if delta == 0.0 {
        return Ok(f.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut delta = delta;
    for _ in 0..=MAX_PERTURB_RETRIES {
        let lines: Vec<Vec<Point>> = f
            .polylines()
            .iter()
            .map(|l| {
                let mut l = l.clone();
                let n = l.len();
                for p in &mut l[1..n - 1] {
                    let r = delta * rng.gen::<f64>().sqrt();
                    let a = rng.gen_range(0.0..std::f64::consts::TAU);
                    *p = *p + pt(a.cos(), a.sin()) * r;
                }
                l
            })
            .collect();
        let g = PlaneImmersion::new(f.graph().clone(), f.positions().to_vec(), lines)?;
        if homotopy_certificate(f, delta) && validate_generic(&g, DEFAULT_REL_TOL).pass {
            return Ok(g);
        }
        delta /= 2.0;
    }
    Err(Error::Perturbation("could not keep the drawing generic".into()))
}

/// Moving both ends of a segment of length `len` by at most `delta` turns it
/// by at most `asin(2 delta / len)`. Bends stay away from folding back and
/// germs stay apart if those margins cover the worst case.
fn homotopy_certificate(f: &PlaneImmersion, delta: f64) -> bool {
    let swing = |len: f64| {
        if 2.0 * delta >= len {
            f64::INFINITY
        } else {
            (2.0 * delta / len).asin()
        }
    };
    for l in f.polylines() {
        for i in 1..l.len() - 1 {
            let (din, dout) = (l[i] - l[i - 1], l[i + 1] - l[i]);
            let margin = std::f64::consts::PI - signed_angle(din, dout).abs();
            if margin <= swing(din.norm()) + swing(dout.norm()) {
                return false;
            }
        }
    }
    for v in f.graph().vertices() {
        let mut germs: Vec<(f64, f64)> = f
            .graph()
            .neighbors(v)
            .iter()
            .map(|&(e, _)| (f.germ(v, e).angle(), swing(f.germ_length(v, e))))
            .collect();
        germs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = germs.len();
        if n < 2 {
            continue;
        }
        for i in 0..n {
            let (a, sa) = germs[i];
            let (b, sb) = germs[(i + 1) % n];
            if (b - a).rem_euclid(std::f64::consts::TAU) <= sa + sb {
                return false;
            }
        }
    }
    true
}

pub fn apply_move(f: &PlaneImmersion, m: &MoveRecord) -> Result<PlaneImmersion> {
    match *m {
        MoveRecord::Curl { edge, t, sign } => insert_curl(f, edge, t, sign),
        MoveRecord::WhitneyPair { edge, t } => whitney_pair(f, edge, t),
        MoveRecord::Perturb { seed, delta } => perturb(f, seed, delta),
    }
}

pub fn apply_moves(f: &PlaneImmersion, moves: &[MoveRecord]) -> Result<PlaneImmersion> {
    moves.iter().try_fold(f.clone(), |g, m| apply_move(&g, m))
}
