//! Undirected simple graphs over word-packed bitset adjacency rows, with the
//! distance machinery (BFS levels, diameter, girth, k-distance graphs,
//! bipartiteness) and the standard constructions used throughout the crate:
//! complete and cycle graphs, Cayley graphs of `Z_n`, Paley graphs, the
//! Petersen graph, and the icosahedron.
//!
//! Every graph in sight has at most a few hundred vertices, so each
//! adjacency row fits in a couple of machine words and common-neighbor
//! counts are a handful of AND-popcount operations. The vertex cap of 4096
//! is a safety rail, not a design target.

use crate::field::{FieldError, PrimeField};
use thiserror::Error;

/// Hard cap on vertex count; everything this crate builds is far smaller.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0} is not allowed in a simple graph")]
    LoopEdge(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("identical endpoints {0}")]
    IdenticalEndpoints(usize),
    #[error("distance {0} out of range 1..={1}")]
    DistanceOutOfRange(usize, usize),
    #[error("connection set contains 0")]
    ConnectionContainsZero,
    #[error("connection set is not closed under negation: {0} in, {1} out")]
    ConnectionNotSymmetric(usize, usize),
    #[error("connection element {0} out of range for modulus {1}")]
    ConnectionOutOfRange(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0} is not congruent to 1 mod 4")]
    NotOneModFour(u64),
}

/// Finite simple undirected graph on vertices `0..n-1`.
///
/// Invariants, enforced by every constructor: the adjacency relation is
/// symmetric and irreflexive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

/// BFS output from a single source: exact distances and the distance levels
/// `Γ_k(source)`, which partition the reachable vertices.
#[derive(Debug, Clone)]
pub struct DistanceData {
    pub source: usize,
    /// `dist[v]` is `None` exactly when `v` is unreachable from the source.
    pub dist: Vec<Option<usize>>,
    /// `levels[k]` lists the vertices at distance `k`, in increasing order;
    /// `levels[0] == [source]`.
    pub levels: Vec<Vec<usize>>,
}

impl DistanceData {
    pub fn eccentricity(&self) -> usize {
        self.levels.len() - 1
    }
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    /// Builds a graph from an explicit edge list. Loops and duplicate edges
    /// are rejected rather than silently merged, so callers notice when a
    /// construction emits something unexpected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1u64 << (u % 64);
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        let total: u32 = self.rows.iter().map(|w| w.count_ones()).sum();
        total as usize / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbors of `u` in increasing order.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree(u));
        for (wi, &word) in self.row(u).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    /// All edges `{u, v}` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let k = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<usize, GraphError> {
        if u == v {
            return Err(GraphError::IdenticalEndpoints(u));
        }
        let count = self
            .row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum();
        Ok(count)
    }

    pub fn bfs(&self, source: usize) -> Result<DistanceData, GraphError> {
        if source >= self.n {
            return Err(GraphError::VertexOutOfRange(source, self.n));
        }
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut levels = vec![vec![source]];
        loop {
            let frontier = levels.last().unwrap();
            let k = levels.len();
            let mut next = Vec::new();
            for &u in frontier {
                for v in self.neighbors(u) {
                    if dist[v].is_none() {
                        dist[v] = Some(k);
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            levels.push(next);
        }
        Ok(DistanceData {
            source,
            dist,
            levels,
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs(0).unwrap().dist.iter().all(|d| d.is_some())
    }

    /// Exact diameter; fails on disconnected graphs rather than inventing a
    /// sentinel.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.n == 0 || !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut diam = 0;
        for v in 0..self.n {
            diam = diam.max(self.bfs(v)?.eccentricity());
        }
        Ok(diam)
    }

    /// Length of a shortest cycle, or `None` for forests. BFS from every
    /// vertex; exact at this scale.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if v != parent[u] {
                        // Non-tree edge: closes a cycle through the root of
                        // length at most dist[u] + dist[v] + 1.
                        let cycle = dist[u] + dist[v] + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// Whether the vertex set splits into two independent parts.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The k-distance graph `Γ_k`: same vertices, adjacency at distance
    /// exactly `k`.
    pub fn distance_graph(&self, k: usize) -> Result<Graph, GraphError> {
        let diam = self.diameter()?;
        if k < 1 || k > diam {
            return Err(GraphError::DistanceOutOfRange(k, diam));
        }
        let mut out = Graph::empty(self.n)?;
        for u in 0..self.n {
            let data = self.bfs(u)?;
            if let Some(level) = data.levels.get(k) {
                for &v in level {
                    if u < v {
                        out.set_edge(u, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn complement(&self) -> Graph {
        let mut out = Graph::empty(self.n).unwrap();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.set_edge(u, v);
                }
            }
        }
        out
    }

    /// The subgraph induced on `verts`, relabelled `0..verts.len()-1` in the
    /// given order.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<Graph, GraphError> {
        let mut out = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            if u >= self.n {
                return Err(GraphError::VertexOutOfRange(u, self.n));
            }
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    out.set_edge(i, j);
                }
            }
        }
        Ok(out)
    }

    /// The subgraph induced on the neighborhood of `v`, in increasing
    /// neighbor order. Returns the graph and the vertex relabelling.
    pub fn local_graph(&self, v: usize) -> Result<(Graph, Vec<usize>), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        let nbrs = self.neighbors(v);
        Ok((self.induced_subgraph(&nbrs)?, nbrs))
    }

    /// The bipartite double cover: vertices `(v, side)` encoded as
    /// `v + side·n`, with `(u,0) ~ (v,1)` iff `u ~ v`.
    pub fn bipartite_double_cover(&self) -> Graph {
        let mut out = Graph::empty(2 * self.n).unwrap();
        for (u, v) in self.edges() {
            out.set_edge(u, v + self.n);
            out.set_edge(v, u + self.n);
        }
        out
    }

    /// The connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let data = self.bfs(start).unwrap();
            let mut comp: Vec<usize> = (0..self.n).filter(|&v| data.dist[v].is_some()).collect();
            comp.sort_unstable();
            for &v in &comp {
                seen[v] = true;
            }
            comps.push(comp);
        }
        comps
    }

    /// Whether this graph is complete.
    pub fn is_complete(&self) -> bool {
        self.num_edges() == self.n * (self.n - 1) / 2
    }

    /// Applies a vertex relabelling: the image graph has an edge
    /// `{perm(u), perm(v)}` for every edge `{u, v}` of this one.
    pub fn relabel(&self, perm: &crate::perm::Permutation) -> Result<Graph, GraphError> {
        if perm.degree() != self.n {
            return Err(GraphError::VertexOutOfRange(perm.degree(), self.n));
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm.apply(u), perm.apply(v)))
            .collect();
        Graph::from_edges(self.n, &edges)
    }
}

pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::with_capacity(n * (n.max(1) - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    let edges: Vec<(usize, usize)> = (0..n).map(|u| (u, (u + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// The Cayley graph of `Z_n` with connection set `conn`: `u ~ v` iff
/// `v − u mod n` lies in `conn`. Requires `0 ∉ conn` and `conn = −conn`.
pub fn cayley_graph(n: usize, conn: &[usize]) -> Result<Graph, GraphError> {
    let set: std::collections::BTreeSet<usize> = conn.iter().copied().collect();
    for &s in &set {
        if s == 0 {
            return Err(GraphError::ConnectionContainsZero);
        }
        if s >= n {
            return Err(GraphError::ConnectionOutOfRange(s, n));
        }
        if !set.contains(&(n - s)) {
            return Err(GraphError::ConnectionNotSymmetric(s, n - s));
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for &s in &set {
            let v = (u + s) % n;
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// The Paley graph `P(p)`: vertices `F_p`, adjacency when the difference is
/// a nonzero square. Needs `p ≡ 1 (mod 4)` so that adjacency is symmetric.
pub fn paley_graph(p: u64) -> Result<Graph, GraphError> {
    let field = PrimeField::new(p)?;
    if p % 4 != 1 {
        return Err(GraphError::NotOneModFour(p));
    }
    let conn: Vec<usize> = field
        .nonzero_squares()
        .into_iter()
        .map(|s| s as usize)
        .collect();
    cayley_graph(p as usize, &conn)
}

/// The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes.
pub fn petersen_graph() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// The icosahedron, stored as a literal 30-edge list and validated at
/// construction: 12 vertices, 5-regular, girth 3, diameter 3.
pub fn icosahedron() -> Graph {
    let edges: [(usize, usize); 30] = [
        (0, 1),
        (1, 2),
        (2, 3),
        (0, 4),
        (4, 5),
        (3, 5),
        (0, 6),
        (6, 7),
        (3, 7),
        (0, 8),
        (8, 9),
        (3, 9),
        (0, 10),
        (10, 11),
        (3, 11),
        (4, 6),
        (1, 6),
        (1, 8),
        (8, 10),
        (5, 7),
        (2, 7),
        (2, 9),
        (9, 11),
        (9, 10),
        (2, 8),
        (1, 7),
        (5, 6),
        (4, 11),
        (4, 10),
        (5, 11),
    ];
    let g = Graph::from_edges(12, &edges).expect("icosahedron edge list is simple");
    assert_eq!(g.is_regular(), Some(5), "icosahedron is 5-regular");
    assert_eq!(g.girth(), Some(3), "icosahedron has girth 3");
    assert_eq!(g.diameter(), Ok(3), "icosahedron has diameter 3");
    g
}
