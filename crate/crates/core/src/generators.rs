//! Fixture drawings: triangles with a prescribed rotation number, stars with
//! a prescribed cyclic order, a planar K4 and seeded random drawings.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{pt, Point};
use crate::graph::{EdgeId, Graph};
use crate::immersion::{cyclic_order, validate_generic, PlaneImmersion, DEFAULT_REL_TOL};
use crate::moves::insert_curl;
use crate::{Error, Result};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// K3 drawn so that the cycle `v2 -> v3 -> v1` has rotation number `r`.
///
/// `r = 1` is the counterclockwise triangle and `r = -1` its mirror image;
/// other values add `|r| - 1` curls to e1 (for `r = 0`, one negative curl on
/// the counterclockwise triangle).
pub fn standard_curve(r: i64) -> Result<PlaneImmersion> {
    let g = Graph::complete(3)?;
    let ccw = r >= 0;
    let positions = if ccw {
        vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.5, SQRT3_2)]
    } else {
        vec![pt(0.0, 0.0), pt(0.5, SQRT3_2), pt(1.0, 0.0)]
    };
    let mut f = PlaneImmersion::straight(g, positions)?;
    let (curls, sign) = match r {
        0 => (1, -1),
        r if r > 0 => (r - 1, 1),
        r => (-r - 1, -1),
    };
    let curls = curls as usize;
    // e1 is traversed forward by the cycle; curls are spread evenly along it.
    for k in 0..curls {
        let t = (k as f64 + 1.0) / (curls as f64 + 1.0);
        f = insert_curl(&f, 1, t, sign)?;
    }
    Ok(f)
}

/// `S_d` with center `v_{d+1}` at the origin and leaf of `order[k]` at
/// angle `angles[k]` on the unit circle.
pub fn standard_star(order: &[EdgeId], angles: &[f64]) -> Result<PlaneImmersion> {
    let d = order.len();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if d == 0 || sorted != (1..=d).collect::<Vec<_>>() {
        return Err(Error::Unrealizable(format!("{order:?} is not an ordering of 1..={d}")));
    }
    if angles.len() != d {
        return Err(Error::Unrealizable(format!("{} angles for {d} edges", angles.len())));
    }
    let g = Graph::star(d)?;
    let mut positions = vec![Point::default(); d + 1];
    for (&e, &a) in order.iter().zip(angles) {
        positions[e - 1] = pt(a.cos(), a.sin());
    }
    let f = PlaneImmersion::straight(g, positions)?;
    let got = cyclic_order(&f, d + 1, DEFAULT_REL_TOL).map_err(|e| Error::Unrealizable(e.to_string()))?;
    let want = crate::immersion::CyclicOrder::new(d + 1, order.to_vec());
    if got != want {
        return Err(Error::Unrealizable(format!(
            "angles {angles:?} give the order {:?}, not {:?}",
            got.edges, want.edges
        )));
    }
    validate_generic(&f, DEFAULT_REL_TOL).into_result()?;
    Ok(f)
}

/// Evenly spaced germs starting at angle 0.
pub fn even_star(order: &[EdgeId]) -> Result<PlaneImmersion> {
    let d = order.len();
    let angles: Vec<f64> = (0..d).map(|k| 2.0 * PI * k as f64 / d as f64).collect();
    standard_star(order, &angles)
}

/// Embedded K4: an equilateral triangle with v4 at its centroid.
pub fn planar_k4() -> Result<PlaneImmersion> {
    let positions = vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.5, SQRT3_2), pt(0.5, SQRT3_2 / 3.0)];
    PlaneImmersion::straight(Graph::complete(4)?, positions)
}

/// Random drawing of `g`: vertices in the unit square and up to `max_bends`
/// random bends per edge, resampled until generic with a usable scale.
pub fn random_immersion(g: &Graph, seed: u64, max_bends: usize) -> Result<PlaneImmersion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let positions: Vec<Point> = (0..g.vertex_count())
            .map(|_| pt(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
            .collect();
        let lines = g
            .edges()
            .iter()
            .map(|e| {
                let bends = rng.gen_range(0..=max_bends);
                let mut l = vec![positions[e.tail - 1]];
                for _ in 0..bends {
                    l.push(pt(rng.gen_range(-0.2..1.2), rng.gen_range(-0.2..1.2)));
                }
                l.push(positions[e.head - 1]);
                l
            })
            .collect();
        let Ok(f) = PlaneImmersion::new(g.clone(), positions, lines) else {
            continue;
        };
        let report = validate_generic(&f, DEFAULT_REL_TOL);
        if report.pass && report.eps > 2e-3 * f.bbox_diagonal() {
            return Ok(f);
        }
    }
    Err(Error::Unrealizable(format!("no generic drawing found for seed {seed}")))
}

/// The graphs used for randomized fixtures: K3, S3, S4 and K4.
pub fn fixture_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3", Graph::complete(3).unwrap()),
        ("S3", Graph::star(3).unwrap()),
        ("S4", Graph::star(4).unwrap()),
        ("K4", Graph::complete(4).unwrap()),
    ]
}
