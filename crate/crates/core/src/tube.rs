//! The symmetric tube of a graph and the cohomology basis read off its
//! spanning tree.
//!
//! Cells, written with vertex ids `s, t, u` and edge ids `i`:
//!
//! * `Z[s;s,t]`: the pair {v_s, point of edge (s,t) next to v_s}.
//! * `W[u;s,t]`: the pair {point of (u,s) next to v_u, point of (u,t) next to v_u}.
//! * `X[i]`: both points slide along e_i, from `Z[tail]` to `Z[head]`.
//! * `Y[s;t,i]`: one point parked on (s,t) next to v_s while the other leaves
//!   v_s along e_i, from `Z[s;s,t]` to `W[s;t,other end of e_i]`.
//!
//! Around each vertex the Z and W cells with their Y edges form a block
//! isomorphic to K_d with every edge subdivided once; X edges join blocks the
//! same way the edges of G join vertices.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::graph::{Dir, EdgeCycle, EdgeId, Graph, SpanningTree, VertexId};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TubeVertex {
    /// Apex vertex and the edge carrying the partner point.
    Z {
        apex: VertexId,
        edge: EdgeId,
        other: VertexId,
    },
    /// Apex vertex and two incident edges, `a.0 < b.0`; each side is `(edge, far end)`.
    W {
        apex: VertexId,
        a: (EdgeId, VertexId),
        b: (EdgeId, VertexId),
    },
}

impl fmt::Display for TubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TubeVertex::Z { apex, other, .. } => write!(f, "Z[{apex};{apex},{other}]"),
            TubeVertex::W { apex, a, b } => {
                let (s, t) = if a.1 < b.1 { (a.1, b.1) } else { (b.1, a.1) };
                write!(f, "W[{apex};{s},{t}]")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TubeEdge {
    /// Oriented `Z[tail; e] -> Z[head; e]`.
    X { edge: EdgeId },
    /// Oriented `Z[apex; fixed] -> W[apex; fixed, moving]`, i.e. the moving
    /// point leaves the apex.
    Y {
        apex: VertexId,
        fixed: EdgeId,
        fixed_far: VertexId,
        moving: EdgeId,
    },
}

impl TubeEdge {
    pub fn is_x(&self) -> bool {
        matches!(self, TubeEdge::X { .. })
    }
}

impl fmt::Display for TubeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TubeEdge::X { edge } => write!(f, "X[{edge}]"),
            TubeEdge::Y {
                apex,
                fixed_far,
                moving,
                ..
            } => {
                write!(f, "Y[{apex};{fixed_far},{moving}]")
            }
        }
    }
}

/// Cells of the tube sitting over one vertex of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertex: VertexId,
    /// `(edge, neighbour)` in increasing edge id; local index `l` is position `l - 1`.
    pub neighbors: Vec<(EdgeId, VertexId)>,
    /// Tube vertex index of `Z[s; s, s_l]` per local index.
    pub z: Vec<usize>,
    /// Tube vertex indices of the W cells, pairs `(j, k)` with `j < k` in lexicographic order.
    pub w: Vec<usize>,
    /// Tube edge indices of the Y cells of this block.
    pub y: Vec<usize>,
}

/// Ordered basis of the first cohomology: duals of the non-tree tube edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WuBasis {
    pub labels: Vec<String>,
    /// Tube edge index behind each label.
    #[serde(skip)]
    pub edges: Vec<usize>,
}

impl WuBasis {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn x_count(&self) -> usize {
        self.labels.iter().filter(|l| l.starts_with('X')).count()
    }
}

/// A closed walk in the tube. Edges may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeCycle {
    steps: Vec<(usize, Dir)>,
}

impl TubeCycle {
    pub fn steps(&self) -> &[(usize, Dir)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Signed number of traversals of tube edge `edge`.
    pub fn multiplicity(&self, edge: usize) -> i64 {
        self.steps.iter().filter(|s| s.0 == edge).map(|s| s.1.sign()).sum()
    }

    pub fn reversed(&self) -> TubeCycle {
        TubeCycle {
            steps: self.steps.iter().rev().map(|&(e, d)| (e, d.flip())).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymmetricTube {
    graph: Graph,
    graph_tree: SpanningTree,
    vertices: Vec<TubeVertex>,
    edges: Vec<TubeEdge>,
    ends: Vec<(usize, usize)>,
    vertex_index: HashMap<TubeVertex, usize>,
    edge_index: HashMap<TubeEdge, usize>,
    blocks: Vec<Block>,
    in_tree: Vec<bool>,
    /// Parent `(tube edge, tube vertex)` in the rooted tube tree.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    basis: WuBasis,
}

impl SymmetricTube {
    pub fn build(g: &Graph) -> SymmetricTube {
        let mut vertices = Vec::new();
        let mut vertex_index = HashMap::new();
        let mut blocks = Vec::with_capacity(g.vertex_count());

        let mut add_vertex = |cell: TubeVertex, vertices: &mut Vec<TubeVertex>| {
            let idx = vertices.len();
            vertices.push(cell);
            vertex_index.insert(cell, idx);
            idx
        };

        for s in g.vertices() {
            let neighbors = g.neighbors(s).to_vec();
            let z = neighbors
                .iter()
                .map(|&(edge, other)| add_vertex(TubeVertex::Z { apex: s, edge, other }, &mut vertices))
                .collect();
            let mut w = Vec::new();
            for j in 0..neighbors.len() {
                for k in j + 1..neighbors.len() {
                    let cell = TubeVertex::W {
                        apex: s,
                        a: neighbors[j],
                        b: neighbors[k],
                    };
                    w.push(add_vertex(cell, &mut vertices));
                }
            }
            blocks.push(Block {
                vertex: s,
                neighbors,
                z,
                w,
                y: Vec::new(),
            });
        }

        let mut edges = Vec::new();
        let mut ends = Vec::new();
        let z_of = |blocks: &[Block], s: VertexId, e: EdgeId| {
            let b = &blocks[s - 1];
            let l = b.neighbors.iter().position(|n| n.0 == e).expect("incident edge");
            b.z[l]
        };
        for e in g.edges() {
            edges.push(TubeEdge::X { edge: e.id });
            ends.push((z_of(&blocks, e.tail, e.id), z_of(&blocks, e.head, e.id)));
        }
        for block in &mut blocks {
            let d = block.neighbors.len();
            let mut widx = 0;
            for j in 0..d {
                for k in j + 1..d {
                    let w = block.w[widx];
                    widx += 1;
                    let (ej, vj) = block.neighbors[j];
                    let (ek, vk) = block.neighbors[k];
                    // Fixed on j moving along k, then fixed on k moving along j.
                    for (fixed, far, moving, zl) in [(ej, vj, ek, j), (ek, vk, ej, k)] {
                        block.y.push(edges.len());
                        edges.push(TubeEdge::Y {
                            apex: block.vertex,
                            fixed,
                            fixed_far: far,
                            moving,
                        });
                        ends.push((block.z[zl], w));
                    }
                }
            }
        }
        let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        let graph_tree = g.canonical_spanning_tree();
        let mut tube = SymmetricTube {
            graph: g.clone(),
            graph_tree,
            vertices,
            edges,
            ends,
            vertex_index,
            edge_index,
            blocks,
            in_tree: Vec::new(),
            parent: Vec::new(),
            depth: Vec::new(),
            basis: WuBasis {
                labels: Vec::new(),
                edges: Vec::new(),
            },
        };
        tube.build_tree();
        tube
    }

    /// Tree = X edges over the graph tree plus, in every block, the star
    /// pattern: with neighbours `1..d` in edge-id order keep
    /// `Y(fixed d, moving j)`, `Y(fixed j, moving d)` for `j < d` and
    /// `Y(fixed j, moving k)` for `j < k < d`. The left-over
    /// `Y(fixed k, moving j)`, `j < k < d`, are the block's non-tree edges.
    fn build_tree(&mut self) {
        let mut in_tree = vec![false; self.edges.len()];
        for e in self.graph_tree.edges() {
            in_tree[e - 1] = true;
        }
        let mut basis_edges: Vec<usize> = self.graph_tree.non_tree_edges().iter().map(|e| e - 1).collect();
        for block in &self.blocks {
            let d = block.neighbors.len();
            let y = |fixed: usize, moving: usize| {
                self.edge_index[&TubeEdge::Y {
                    apex: block.vertex,
                    fixed: block.neighbors[fixed].0,
                    fixed_far: block.neighbors[fixed].1,
                    moving: block.neighbors[moving].0,
                }]
            };
            if d < 2 {
                continue;
            }
            let last = d - 1;
            for j in 0..last {
                in_tree[y(last, j)] = true;
                in_tree[y(j, last)] = true;
            }
            for j in 0..last {
                for k in j + 1..last {
                    in_tree[y(j, k)] = true;
                    basis_edges.push(y(k, j));
                }
            }
        }

        // Root the tree at tube vertex 0 for path queries.
        let nv = self.vertices.len();
        let mut adj = vec![Vec::new(); nv];
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            if in_tree[i] {
                adj[a].push((i, b));
                adj[b].push((i, a));
            }
        }
        let mut parent = vec![None; nv];
        let mut depth = vec![usize::MAX; nv];
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((e, v));
                    queue.push_back(w);
                }
            }
        }
        debug_assert!(depth.iter().all(|&d| d != usize::MAX), "tube tree must span");

        self.basis = WuBasis {
            labels: basis_edges.iter().map(|&e| self.edges[e].to_string()).collect(),
            edges: basis_edges,
        };
        self.in_tree = in_tree;
        self.parent = parent;
        self.depth = depth;
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_tree(&self) -> &SpanningTree {
        &self.graph_tree
    }

    pub fn vertices(&self) -> &[TubeVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TubeEdge] {
        &self.edges
    }

    /// `(from, to)` tube vertex indices of each oriented tube edge.
    pub fn ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn vertex_index(&self, v: &TubeVertex) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn edge_index(&self, e: &TubeEdge) -> Option<usize> {
        self.edge_index.get(e).copied()
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.in_tree[e]).collect()
    }

    pub fn non_tree_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !self.in_tree[e]).collect()
    }

    pub fn basis(&self) -> &WuBasis {
        &self.basis
    }

    /// Euler-characteristic Betti number E - V + 1 (the tube is connected).
    pub fn betti(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.ends
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Tree path between two tube vertices as oriented tube edges.
    pub fn tree_path(&self, from: usize, to: usize) -> Vec<(usize, Dir)> {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        let dir_leaving = |e: usize, v: usize| {
            if self.ends[e].0 == v {
                Dir::Forward
            } else {
                Dir::Backward
            }
        };
        while self.depth[a] > self.depth[b] {
            let (e, p) = self.parent[a].unwrap();
            up.push((e, dir_leaving(e, a)));
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (e, p) = self.parent[b].unwrap();
            down.push((e, dir_leaving(e, p)));
            b = p;
        }
        while a != b {
            let (ea, pa) = self.parent[a].unwrap();
            up.push((ea, dir_leaving(ea, a)));
            a = pa;
            let (eb, pb) = self.parent[b].unwrap();
            down.push((eb, dir_leaving(eb, pb)));
            b = pb;
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// Non-tree edge forward, then the tree path from its head to its tail.
    pub fn fundamental_cycle(&self, edge: usize) -> Result<TubeCycle> {
        if edge >= self.edges.len() {
            return Err(Error::NotACycle(format!("no tube edge with index {edge}")));
        }
        if self.in_tree[edge] {
            return Err(Error::TubeTreeEdge(self.edges[edge].to_string()));
        }
        let (from, to) = self.ends[edge];
        let mut steps = vec![(edge, Dir::Forward)];
        steps.extend(self.tree_path(to, from));
        Ok(TubeCycle { steps })
    }

    /// Lift of a graph cycle: each edge becomes its X cell and each corner
    /// `a -> v -> b` becomes `Z[v;a] -> W[v;a,b] -> Z[v;b]`.
    pub fn cycle_over_graph_cycle(&self, c: &EdgeCycle) -> Result<TubeCycle> {
        let steps = c.steps();
        let mut out = Vec::with_capacity(3 * steps.len());
        for k in 0..steps.len() {
            let (a, da) = steps[k];
            let (b, _) = steps[(k + 1) % steps.len()];
            let v = c.start_vertex(&self.graph, (k + 1) % steps.len());
            out.push((a - 1, da));
            let block = &self.blocks[v - 1];
            let side = |e: EdgeId| {
                *block
                    .neighbors
                    .iter()
                    .find(|n| n.0 == e)
                    .expect("cycle edges are incident to their corner")
            };
            let (sa, sb) = (side(a), side(b));
            let y_ab = self.edge_index[&TubeEdge::Y {
                apex: v,
                fixed: a,
                fixed_far: sa.1,
                moving: b,
            }];
            let y_ba = self.edge_index[&TubeEdge::Y {
                apex: v,
                fixed: b,
                fixed_far: sb.1,
                moving: a,
            }];
            out.push((y_ab, Dir::Forward));
            out.push((y_ba, Dir::Backward));
        }
        self.cycle(out)
    }

    /// Validates that `steps` is a closed walk.
    pub fn cycle(&self, steps: Vec<(usize, Dir)>) -> Result<TubeCycle> {
        if steps.is_empty() {
            return Err(Error::NotACycle("empty tube walk".into()));
        }
        let ends = |&(e, d): &(usize, Dir)| match d {
            Dir::Forward => self.ends[e],
            Dir::Backward => (self.ends[e].1, self.ends[e].0),
        };
        if let Some(&(bad, _)) = steps.iter().find(|s| s.0 >= self.edges.len()) {
            return Err(Error::NotACycle(format!("no tube edge with index {bad}")));
        }
        for k in 0..steps.len() {
            let (_, here) = ends(&steps[k]);
            let (next, _) = ends(&steps[(k + 1) % steps.len()]);
            if here != next {
                return Err(Error::NotACycle(format!(
                    "tube walk breaks between {} and {}",
                    self.edges[steps[k].0],
                    self.edges[steps[(k + 1) % steps.len()].0]
                )));
            }
        }
        Ok(TubeCycle { steps })
    }

    /// Start vertex of a step of a walk.
    pub fn step_start(&self, step: (usize, Dir)) -> usize {
        match step.1 {
            Dir::Forward => self.ends[step.0].0,
            Dir::Backward => self.ends[step.0].1,
        }
    }

    /// Sum over basis elements of (signed count in `c`) x `coords`.
    pub fn decompose(&self, c: &TubeCycle, coords: &[i64]) -> i64 {
        self.basis
            .edges
            .iter()
            .zip(coords)
            .map(|(&e, &x)| c.multiplicity(e) * x)
            .sum()
    }
}

/// `1 - 2n + (sum of squared degrees) / 2`.
pub fn rank(g: &Graph) -> i64 {
    let sq: usize = g.vertices().map(|v| g.degree(v).pow(2)).sum();
    debug_assert!(sq.is_multiple_of(2));
    1 - 2 * g.edge_count() as i64 + (sq / 2) as i64
}
