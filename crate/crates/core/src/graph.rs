//! Finite simple connected graphs with a fixed labelling.
//!
//! Vertices are `1..=m`, edges `1..=n` in list order, and every edge is
//! oriented from its smaller to its larger endpoint. Everything downstream
//! (tube cells, basis order, signs of invariants) is keyed to this labelling,
//! so the orderings here are part of the public contract.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn has(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite to `v`. `v` must be an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        debug_assert!(self.has(v));
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// Raw graph file contents: `{"vertices": m, "edges": [[tail, head], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    m: usize,
    edges: Vec<Edge>,
    /// Incident `(edge, neighbour)` pairs per vertex, sorted by edge id.
    incidence: Vec<Vec<(EdgeId, VertexId)>>,
}

impl Graph {
    /// Checks the raw lists and builds the canonical graph, reporting every
    /// violated hypothesis at once.
    pub fn validate(vertices: usize, raw_edges: &[[usize; 2]]) -> Result<Graph> {
        let mut problems = Vec::new();
        if raw_edges.is_empty() {
            problems.push("zero edges".to_string());
        }
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (k, &[a, b]) in raw_edges.iter().enumerate() {
            let id = k + 1;
            if a == 0 || b == 0 || a > vertices || b > vertices {
                problems.push(format!(
                    "non-contiguous ids: edge e{id} = ({a},{b}) outside 1..={vertices}"
                ));
                continue;
            }
            if a == b {
                problems.push(format!("loop: edge e{id} = ({a},{b})"));
                continue;
            }
            if a > b {
                problems.push(format!(
                    "misoriented: edge e{id} = ({a},{b}) must be listed tail < head"
                ));
                continue;
            }
            if !seen.insert((a, b)) {
                problems.push(format!("duplicate edge: e{id} = ({a},{b})"));
                continue;
            }
            edges.push(Edge { id, tail: a, head: b });
        }
        if !problems.is_empty() {
            return Err(Error::InvalidGraph(problems));
        }
        let g = Graph::from_edges_unchecked(vertices, edges);
        if !g.is_connected() {
            return Err(Error::InvalidGraph(vec!["disconnected".into()]));
        }
        Ok(g)
    }

    pub fn from_data(data: &GraphData) -> Result<Graph> {
        Graph::validate(data.vertices, &data.edges)
    }

    pub fn to_data(&self) -> GraphData {
        GraphData {
            vertices: self.m,
            edges: self.edges.iter().map(|e| [e.tail, e.head]).collect(),
        }
    }

    fn from_edges_unchecked(m: usize, edges: Vec<Edge>) -> Graph {
        let mut incidence = vec![Vec::new(); m];
        for e in &edges {
            incidence[e.tail - 1].push((e.id, e.head));
            incidence[e.head - 1].push((e.id, e.tail));
        }
        for list in &mut incidence {
            list.sort_unstable();
        }
        Graph { m, edges, incidence }
    }

    fn is_connected(&self) -> bool {
        if self.m == 0 {
            return false;
        }
        let mut seen = vec![false; self.m];
        let mut stack = vec![1];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(_, w) in self.neighbors(v) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// K_m with edges in lexicographic `(i, j)` order.
    pub fn complete(m: usize) -> Result<Graph> {
        if m < 2 {
            return Err(Error::Parameter {
                name: "m",
                value: m as i64,
                min: 2,
            });
        }
        let mut raw = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                raw.push([i, j]);
            }
        }
        Graph::validate(m, &raw)
    }

    /// S_n: leaves `1..=n`, center `n + 1`, edge `e_i = (v_i, v_{n+1})`.
    pub fn star(n: usize) -> Result<Graph> {
        if n < 1 {
            return Err(Error::Parameter {
                name: "n",
                value: n as i64,
                min: 1,
            });
        }
        let raw: Vec<_> = (1..=n).map(|i| [i, n + 1]).collect();
        Graph::validate(n + 1, &raw)
    }

    /// The k-cycle `v1 v2 ... vk`, edges sorted lexicographically.
    pub fn cycle(k: usize) -> Result<Graph> {
        if k < 3 {
            return Err(Error::Parameter {
                name: "k",
                value: k as i64,
                min: 3,
            });
        }
        let mut raw: Vec<_> = (1..k).map(|i| [i, i + 1]).collect();
        raw.push([1, k]);
        raw.sort_unstable();
        Graph::validate(k, &raw)
    }

    /// The path `v1 v2 ... vm`.
    pub fn path(m: usize) -> Result<Graph> {
        if m < 2 {
            return Err(Error::Parameter {
                name: "m",
                value: m as i64,
                min: 2,
            });
        }
        let raw: Vec<_> = (1..m).map(|i| [i, i + 1]).collect();
        Graph::validate(m, &raw)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.m
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        id.checked_sub(1)
            .and_then(|i| self.edges.get(i))
            .ok_or(Error::UnknownEdge(id))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        (1..=self.m).contains(&v)
    }

    /// Incident `(edge, neighbour)` pairs in increasing edge id.
    pub fn neighbors(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.incidence[v - 1]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v - 1].len()
    }

    /// First Betti number n - m + 1.
    pub fn betti(&self) -> usize {
        self.edges.len() + 1 - self.m
    }

    /// Breadth-first tree from v1, neighbours taken in edge-id order.
    pub fn canonical_spanning_tree(&self) -> SpanningTree {
        let mut in_tree = vec![false; self.edges.len()];
        let mut parent = vec![None; self.m];
        let mut seen = vec![false; self.m];
        let mut queue = VecDeque::from([1]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(e, w) in self.neighbors(v) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    in_tree[e - 1] = true;
                    parent[w - 1] = Some((e, v));
                    queue.push_back(w);
                }
            }
        }
        SpanningTree {
            root: 1,
            in_tree,
            parent,
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(m={}, edges=[", self.m)?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "e{}=({},{})", e.id, e.tail, e.head)?;
        }
        write!(f, "])")
    }
}

/// Edge traversal direction relative to the canonical orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn sign(self) -> i64 {
        match self {
            Dir::Forward => 1,
            Dir::Backward => -1,
        }
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    root: VertexId,
    in_tree: Vec<bool>,
    /// BFS parent `(edge, vertex)` per vertex; `None` at the root.
    parent: Vec<Option<(EdgeId, VertexId)>>,
}

impl SpanningTree {
    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree.get(e.wrapping_sub(1)).copied().unwrap_or(false)
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        (1..=self.in_tree.len()).filter(|&e| self.in_tree[e - 1]).collect()
    }

    pub fn non_tree_edges(&self) -> Vec<EdgeId> {
        (1..=self.in_tree.len()).filter(|&e| !self.in_tree[e - 1]).collect()
    }

    fn depth(&self, mut v: VertexId) -> usize {
        let mut d = 0;
        while let Some((_, p)) = self.parent[v - 1] {
            v = p;
            d += 1;
        }
        d
    }

    /// Oriented tree path from `from` to `to`.
    pub fn path(&self, g: &Graph, from: VertexId, to: VertexId) -> Vec<(EdgeId, Dir)> {
        let (mut a, mut b) = (from, to);
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        let mut up = Vec::new();
        let mut down = Vec::new();
        let step = |v: VertexId| self.parent[v - 1].expect("non-root vertex has a parent");
        while da > db {
            let (e, p) = step(a);
            up.push((e, dir_from(g, e, a)));
            a = p;
            da -= 1;
        }
        while db > da {
            let (e, p) = step(b);
            down.push((e, dir_from(g, e, p)));
            b = p;
            db -= 1;
        }
        while a != b {
            let (ea, pa) = step(a);
            up.push((ea, dir_from(g, ea, a)));
            a = pa;
            let (eb, pb) = step(b);
            down.push((eb, dir_from(g, eb, pb)));
            b = pb;
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// The cycle formed by a non-tree edge: `e` forward, then the tree path
    /// from its head back to its tail.
    pub fn fundamental_cycle(&self, g: &Graph, e: EdgeId) -> Result<EdgeCycle> {
        let edge = *g.edge(e)?;
        if self.contains(e) {
            return Err(Error::TreeEdge(e));
        }
        let mut steps = vec![(e, Dir::Forward)];
        steps.extend(self.path(g, edge.head, edge.tail));
        EdgeCycle::new(g, steps)
    }
}

/// Direction of traversing `e` when leaving vertex `from`.
fn dir_from(g: &Graph, e: EdgeId, from: VertexId) -> Dir {
    let edge = &g.edges[e - 1];
    if edge.tail == from {
        Dir::Forward
    } else {
        Dir::Backward
    }
}

/// A closed edge walk without repeated edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCycle {
    steps: Vec<(EdgeId, Dir)>,
}

impl EdgeCycle {
    pub fn new(g: &Graph, steps: Vec<(EdgeId, Dir)>) -> Result<EdgeCycle> {
        if steps.len() < 3 {
            return Err(Error::NotACycle(format!(
                "{} edge(s); a cycle in a simple graph needs at least 3",
                steps.len()
            )));
        }
        let mut used = std::collections::HashSet::new();
        for &(e, _) in &steps {
            g.edge(e)?;
            if !used.insert(e) {
                return Err(Error::NotACycle(format!("edge e{e} used twice")));
            }
        }
        let ends = |&(e, d): &(EdgeId, Dir)| {
            let ed = &g.edges[e - 1];
            match d {
                Dir::Forward => (ed.tail, ed.head),
                Dir::Backward => (ed.head, ed.tail),
            }
        };
        for k in 0..steps.len() {
            let (_, here) = ends(&steps[k]);
            let (next, _) = ends(&steps[(k + 1) % steps.len()]);
            if here != next {
                return Err(Error::NotACycle(format!(
                    "step {} ends at v{here} but step {} starts at v{next}",
                    k + 1,
                    (k + 1) % steps.len() + 1
                )));
            }
        }
        Ok(EdgeCycle { steps })
    }

    /// Parses signed edge ids: `3` is e3 forward, `-3` is e3 backward.
    pub fn from_signed(g: &Graph, signed: &[i64]) -> Result<EdgeCycle> {
        let steps = signed
            .iter()
            .map(|&s| {
                let e = s.unsigned_abs() as usize;
                (e, if s > 0 { Dir::Forward } else { Dir::Backward })
            })
            .collect();
        EdgeCycle::new(g, steps)
    }

    pub fn steps(&self) -> &[(EdgeId, Dir)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertex where step `k` starts.
    pub fn start_vertex(&self, g: &Graph, k: usize) -> VertexId {
        let (e, d) = self.steps[k];
        let ed = &g.edges[e - 1];
        match d {
            Dir::Forward => ed.tail,
            Dir::Backward => ed.head,
        }
    }

    /// Signed number of times `e` is traversed.
    pub fn multiplicity(&self, e: EdgeId) -> i64 {
        self.steps.iter().filter(|s| s.0 == e).map(|s| s.1.sign()).sum()
    }

    pub fn reversed(&self) -> EdgeCycle {
        EdgeCycle {
            steps: self.steps.iter().rev().map(|&(e, d)| (e, d.flip())).collect(),
        }
    }
}

/// A subgraph relabelled canonically, with maps back into the parent.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph {
    pub graph: Graph,
    /// Parent vertex of child vertex `i + 1`.
    pub vertex_map: Vec<VertexId>,
    /// Parent edge of child edge `i + 1`, and whether the child orientation
    /// is opposite to the parent's.
    pub edge_map: Vec<(EdgeId, bool)>,
}

impl Subgraph {
    /// Star of `v`: leaves in increasing incident-edge id, center last, so the
    /// result is literally `S_d`.
    pub fn star(g: &Graph, v: VertexId) -> Result<Subgraph> {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let nbrs = g.neighbors(v);
        let d = nbrs.len();
        let graph = Graph::star(d)?;
        let mut vertex_map: Vec<_> = nbrs.iter().map(|&(_, w)| w).collect();
        vertex_map.push(v);
        // Child edge (leaf -> center) is reversed iff the parent edge leaves v.
        let edge_map = nbrs.iter().map(|&(e, _)| (e, g.edges[e - 1].tail == v)).collect();
        Ok(Subgraph {
            graph,
            vertex_map,
            edge_map,
        })
    }

    /// Subgraph spanned by `edges`, vertices and edges relabelled in parent
    /// order. Relabelling is monotone, so orientations are preserved.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Result<Subgraph> {
        let mut ids: Vec<EdgeId> = edges.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.is_empty() {
            return Err(Error::InvalidSubgraph("no edges".into()));
        }
        let mut verts = Vec::new();
        for &e in &ids {
            let ed = g.edge(e)?;
            verts.push(ed.tail);
            verts.push(ed.head);
        }
        verts.sort_unstable();
        verts.dedup();
        let local = |v: VertexId| verts.binary_search(&v).unwrap() + 1;
        let raw: Vec<_> = ids
            .iter()
            .map(|&e| {
                let ed = &g.edges[e - 1];
                [local(ed.tail), local(ed.head)]
            })
            .collect();
        let graph = Graph::validate(verts.len(), &raw).map_err(|err| match err {
            Error::InvalidGraph(v) => Error::InvalidSubgraph(v.join("; ")),
            other => other,
        })?;
        Ok(Subgraph {
            graph,
            vertex_map: verts,
            edge_map: ids.into_iter().map(|e| (e, false)).collect(),
        })
    }

    pub fn from_cycle(g: &Graph, c: &EdgeCycle) -> Result<Subgraph> {
        let ids: Vec<_> = c.steps().iter().map(|s| s.0).collect();
        Subgraph::from_edges(g, &ids)
    }
}
