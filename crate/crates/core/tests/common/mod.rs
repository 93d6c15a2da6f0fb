#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wu_core::generators::{even_star, planar_k4, random_immersion, standard_curve};
use wu_core::graph::Dir;
use wu_core::immersion::{cyclic_order, DEFAULT_REL_TOL};
use wu_core::tube::{SymmetricTube, TubeCycle};
use wu_core::{Graph, PlaneImmersion, Subgraph};

/// Hand-built drawings plus a few random ones per fixture graph.
pub fn fixtures(random_per_graph: u64) -> Vec<(String, PlaneImmersion)> {
    let mut out = vec![
        ("curve(1)".to_string(), standard_curve(1).unwrap()),
        ("curve(-2)".to_string(), standard_curve(-2).unwrap()),
        ("curve(0)".to_string(), standard_curve(0).unwrap()),
        ("star(1,2,3)".to_string(), even_star(&[1, 2, 3]).unwrap()),
        ("star(1,3,2)".to_string(), even_star(&[1, 3, 2]).unwrap()),
        ("star(1,3,2,4)".to_string(), even_star(&[1, 3, 2, 4]).unwrap()),
        ("planar K4".to_string(), planar_k4().unwrap()),
    ];
    for (name, g) in wu_core::generators::fixture_graphs() {
        for seed in 0..random_per_graph {
            out.push((format!("{name} seed {seed}"), random_immersion(&g, seed, 2).unwrap()));
        }
    }
    out
}

/// Cyclic order at `v` renamed into the edge ids of the star subgraph.
pub fn local_order(f: &PlaneImmersion, st: &Subgraph, v: usize) -> Vec<usize> {
    cyclic_order(f, v, DEFAULT_REL_TOL)
        .unwrap()
        .edges
        .iter()
        .map(|e| st.edge_map.iter().position(|x| x.0 == *e).unwrap() + 1)
        .collect()
}

/// Coordinates whose label is a Y cell at vertex `v`.
pub fn y_block(w: &wu_core::WuVector, v: usize) -> Vec<i64> {
    let prefix = format!("Y[{v};");
    w.basis
        .iter()
        .zip(&w.vector)
        .filter(|(l, _)| l.starts_with(&prefix))
        .map(|(_, &x)| x)
        .collect()
}

/// Random closed walk: `len` random steps from a random vertex, closed by
/// the tree path back.
pub fn random_tube_cycle(t: &SymmetricTube, rng: &mut ChaCha8Rng, len: usize) -> TubeCycle {
    let nv = t.vertices().len();
    let mut adj = vec![Vec::new(); nv];
    for (e, &(a, b)) in t.ends().iter().enumerate() {
        adj[a].push((e, Dir::Forward, b));
        adj[b].push((e, Dir::Backward, a));
    }
    let start = rng.gen_range(0..nv);
    let mut at = start;
    let mut steps = Vec::new();
    for _ in 0..len {
        let (e, d, next) = adj[at][rng.gen_range(0..adj[at].len())];
        steps.push((e, d));
        at = next;
    }
    steps.extend(t.tree_path(at, start));
    t.cycle(steps).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every connected simple graph on `m` labelled vertices.
pub fn connected_graphs(m: usize) -> Vec<Graph> {
    let pairs: Vec<[usize; 2]> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| [i, j])).collect();
    (1u32..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| pairs[k])
                .collect();
            Graph::validate(m, &edges).ok()
        })
        .collect()
}

/// Random connected graph: a random tree plus extra random edges.
pub fn random_graph(rng: &mut ChaCha8Rng, m: usize) -> Graph {
    let mut edges = std::collections::BTreeSet::new();
    for v in 2..=m {
        let u = rng.gen_range(1..v);
        edges.insert([u, v]);
    }
    let extra = rng.gen_range(0..=m);
    for _ in 0..extra {
        let a = rng.gen_range(1..=m);
        let b = rng.gen_range(1..=m);
        if a != b {
            edges.insert([a.min(b), a.max(b)]);
        }
    }
    Graph::validate(m, &edges.into_iter().collect::<Vec<_>>()).unwrap()
}
