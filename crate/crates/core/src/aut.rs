//! Graph automorphism groups and isomorphism testing by
//! individualization–refinement backtracking.
//!
//! The refiner drives a partition of the vertex set to equitability: every
//! vertex of a cell has the same number of neighbors in every cell
//! (1-dimensional Weisfeiler–Leman). When refinement stalls, the search
//! individualizes one vertex of the first smallest non-singleton cell and
//! recurses; leaves are discrete partitions. The first leaf fixes a base
//! labeling, every later leaf whose refinement trace matches yields a
//! candidate automorphism (verified edge by edge before acceptance), and
//! already-found automorphisms prune sibling branches through their orbits
//! on the target cell. Sub-cell ordering after a split depends only on
//! neighbor-count signatures, never on vertex labels, so traces are
//! isomorphism-invariant and the pruning is sound.
//!
//! The same machinery runs isomorphism testing as a lockstep refinement of
//! two partitions with matching traces.
//!
//! Search size is bounded by a node budget (override with the
//! `GEOCERT_NODE_BUDGET` environment variable); at the 256-vertex cap the
//! defaults are far from exhausted by any graph this crate meets.

use crate::dsu::DisjointSet;
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;
use thiserror::Error;

/// Hard vertex cap for the search engine.
pub const MAX_SEARCH_VERTICES: usize = 256;

const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Name of the environment variable overriding the search node budget.
pub const NODE_BUDGET_ENV: &str = "GEOCERT_NODE_BUDGET";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("graph has {0} vertices, above the search cap {MAX_SEARCH_VERTICES}")]
    TooManyVertices(usize),
    #[error("search node budget of {0} exhausted")]
    BudgetExceeded(u64),
}

fn node_budget() -> u64 {
    std::env::var(NODE_BUDGET_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// An ordered partition of the vertex set into cells. Cells hold their
/// vertices in increasing order; cell order is significant and is always
/// derived from label-invariant data.
type Partition = Vec<Vec<usize>>;

/// Label-invariant fingerprint of a refined partition: for each cell, its
/// size and the common neighbor-count signature of its members.
type Shape = Vec<(usize, Vec<u32>)>;

/// Refines `partition` to equitability in place and returns its shape.
fn refine(graph: &Graph, partition: &mut Partition) -> Shape {
    let n = graph.num_vertices();
    loop {
        let mut cell_of = vec![0usize; n];
        for (ci, cell) in partition.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let mut sig = vec![vec![0u32; partition.len()]; n];
        for v in 0..n {
            for u in graph.neighbors(v) {
                sig[v][cell_of[u]] += 1;
            }
        }
        let mut next: Partition = Vec::with_capacity(partition.len());
        for cell in partition.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: std::collections::BTreeMap<&[u32], Vec<usize>> = Default::default();
            for &v in cell {
                groups.entry(&sig[v]).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        if next.len() == partition.len() {
            let shape = partition
                .iter()
                .map(|cell| (cell.len(), sig[cell[0]].clone()))
                .collect();
            return shape;
        }
        *partition = next;
    }
}

/// Index of the first smallest non-singleton cell, if any.
fn branch_cell(partition: &Partition) -> Option<usize> {
    partition
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

/// Splits `v` off the front of cell `t`.
fn individualize(partition: &Partition, t: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(partition.len() + 1);
    for (ci, cell) in partition.iter().enumerate() {
        if ci == t {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&u| u != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

struct AutSearch<'g> {
    graph: &'g Graph,
    n: usize,
    base_traces: Vec<Shape>,
    base_leaf: Option<Vec<usize>>,
    group: PermGroup,
    gens: Vec<Permutation>,
    prefix: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'g> AutSearch<'g> {
    fn tick(&mut self) -> Result<(), AutError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AutError::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Orbits of the found automorphisms that fix the current prefix
    /// pointwise; only one branch per orbit needs exploring.
    fn prefix_orbits(&self) -> DisjointSet {
        let mut dsu = DisjointSet::new(self.n);
        for g in &self.gens {
            if self.prefix.iter().all(|&v| g.apply(v) == v) {
                for x in 0..self.n {
                    dsu.union(x, g.apply(x));
                }
            }
        }
        dsu
    }

    fn visit(&mut self, partition: Partition, depth: usize) -> Result<(), AutError> {
        self.tick()?;
        let Some(t) = branch_cell(&partition) else {
            // Discrete partition: a leaf labeling.
            let leaf: Vec<usize> = partition.iter().map(|c| c[0]).collect();
            match &self.base_leaf {
                None => self.base_leaf = Some(leaf),
                Some(base) => {
                    let mut images = vec![0usize; self.n];
                    for (i, &b) in base.iter().enumerate() {
                        images[b] = leaf[i];
                    }
                    let candidate = Permutation::from_images(images)
                        .expect("matched leaves give a bijection");
                    if !candidate.is_identity()
                        && !self.group.contains(&candidate)
                        && preserves_adjacency(self.graph, &candidate)
                    {
                        self.gens.push(candidate);
                        self.group = PermGroup::from_generators(self.n, self.gens.clone())
                            .expect("degrees agree");
                    }
                }
            }
            return Ok(());
        };
        let targets = partition[t].clone();
        let mut explored: Vec<usize> = Vec::new();
        for v in targets {
            let mut orbits = self.prefix_orbits();
            if explored.iter().any(|&u| orbits.same(u, v)) {
                continue;
            }
            let mut child = individualize(&partition, t, v);
            let shape = refine(self.graph, &mut child);
            let child_depth = depth + 1;
            if child_depth < self.base_traces.len() {
                if shape != self.base_traces[child_depth] {
                    explored.push(v);
                    continue;
                }
            } else if self.base_leaf.is_none() {
                self.base_traces.push(shape);
            } else {
                // Matching traces force equal leaf depth; anything deeper
                // cannot correspond to the base leaf.
                explored.push(v);
                continue;
            }
            self.prefix.push(v);
            let result = self.visit(child, child_depth);
            self.prefix.pop();
            result?;
            explored.push(v);
        }
        Ok(())
    }
}

fn preserves_adjacency(graph: &Graph, perm: &Permutation) -> bool {
    graph
        .edges()
        .iter()
        .all(|&(u, v)| graph.has_edge(perm.apply(u), perm.apply(v)))
}

/// The full automorphism group of `graph`, with exact order.
pub fn automorphism_group(graph: &Graph) -> Result<PermGroup, AutError> {
    automorphism_group_budgeted(graph, node_budget())
}

fn automorphism_group_budgeted(graph: &Graph, budget: u64) -> Result<PermGroup, AutError> {
    let n = graph.num_vertices();
    if n > MAX_SEARCH_VERTICES {
        return Err(AutError::TooManyVertices(n));
    }
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let mut root: Partition = vec![(0..n).collect()];
    let root_shape = refine(graph, &mut root);
    let mut search = AutSearch {
        graph,
        n,
        base_traces: vec![root_shape],
        base_leaf: None,
        group: PermGroup::trivial(n),
        gens: Vec::new(),
        prefix: Vec::new(),
        nodes: 0,
        budget,
    };
    search.visit(root, 0)?;
    let group = search.group;
    for g in group.generators() {
        debug_assert!(preserves_adjacency(graph, g));
        assert_eq!(
            &graph.relabel(g).expect("degree matches"),
            graph,
            "every emitted generator is an automorphism"
        );
    }
    Ok(group)
}

struct IsoSearch<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    nodes: u64,
    budget: u64,
}

impl<'a> IsoSearch<'a> {
    fn visit(&mut self, p1: Partition, p2: Partition) -> Result<Option<Vec<usize>>, AutError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AutError::BudgetExceeded(self.budget));
        }
        let Some(t) = branch_cell(&p1) else {
            let mut images = vec![0usize; p1.len()];
            for (c1, c2) in p1.iter().zip(&p2) {
                images[c1[0]] = c2[0];
            }
            let ok = self.g1.edges().iter().all(|&(u, v)| {
                self.g2.has_edge(images[u], images[v])
            }) && self.g1.num_edges() == self.g2.num_edges();
            return Ok(ok.then_some(images));
        };
        // Fix the first vertex of the cell on the left; try every
        // counterpart on the right. Complete: an isomorphism must map the
        // fixed vertex somewhere in the matching cell.
        let v1 = p1[t][0];
        let mut c1 = individualize(&p1, t, v1);
        let s1 = refine(self.g1, &mut c1);
        for &v2 in &p2[t] {
            let mut c2 = individualize(&p2, t, v2);
            let s2 = refine(self.g2, &mut c2);
            if s1 != s2 {
                continue;
            }
            if let Some(found) = self.visit(c1.clone(), c2)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Searches for an isomorphism from `g1` onto `g2`. Returns the vertex
/// bijection as a permutation (image of a `g1` vertex is its `g2`
/// counterpart), or `None` when the graphs are definitively not
/// isomorphic.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<Permutation>, AutError> {
    are_isomorphic_budgeted(g1, g2, node_budget())
}

fn are_isomorphic_budgeted(
    g1: &Graph,
    g2: &Graph,
    budget: u64,
) -> Result<Option<Permutation>, AutError> {
    let n = g1.num_vertices();
    if n != g2.num_vertices() {
        return Ok(None);
    }
    if n > MAX_SEARCH_VERTICES {
        return Err(AutError::TooManyVertices(n));
    }
    if n == 0 {
        return Ok(Some(Permutation::identity(0)));
    }
    let mut degs1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut degs2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    degs1.sort_unstable();
    degs2.sort_unstable();
    if degs1 != degs2 {
        return Ok(None);
    }
    let mut p1: Partition = vec![(0..n).collect()];
    let mut p2: Partition = vec![(0..n).collect()];
    let s1 = refine(g1, &mut p1);
    let s2 = refine(g2, &mut p2);
    if s1 != s2 {
        return Ok(None);
    }
    let mut search = IsoSearch {
        g1,
        g2,
        nodes: 0,
        budget,
    };
    let found = search.visit(p1, p2)?;
    Ok(found.map(|images| {
        let perm = Permutation::from_images(images).expect("leaf map is a bijection");
        for (u, v) in g1.edges() {
            assert!(
                g2.has_edge(perm.apply(u), perm.apply(v)),
                "returned bijection maps edges to edges"
            );
        }
        perm
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete_graph, cycle_graph, icosahedron, paley_graph, petersen_graph, Graph,
    };

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn automorphisms_of_complete_graphs() {
        for n in 1..=6 {
            let g = complete_graph(n).unwrap();
            let a = automorphism_group(&g).unwrap();
            assert_eq!(a.order(), factorial(n as u64), "K_{n}");
        }
    }

    #[test]
    fn automorphisms_of_cycles_are_dihedral() {
        for n in 3..=9 {
            let g = cycle_graph(n).unwrap();
            let a = automorphism_group(&g).unwrap();
            assert_eq!(a.order(), 2 * n as u64, "C_{n}");
            assert!(a.is_transitive());
        }
    }

    #[test]
    fn petersen_has_order_120() {
        let a = automorphism_group(&petersen_graph()).unwrap();
        assert_eq!(a.order(), 120);
    }

    #[test]
    fn icosahedron_has_order_120() {
        let a = automorphism_group(&icosahedron()).unwrap();
        assert_eq!(a.order(), 120);
        assert!(a.is_transitive());
    }

    #[test]
    fn paley_automorphism_orders() {
        // |Aut(P(p))| = p(p−1)/2 for p > 5; the pentagon has the full
        // dihedral group of order 10.
        assert_eq!(automorphism_group(&paley_graph(5).unwrap()).unwrap().order(), 10);
        assert_eq!(automorphism_group(&paley_graph(13).unwrap()).unwrap().order(), 78);
        assert_eq!(automorphism_group(&paley_graph(17).unwrap()).unwrap().order(), 136);
    }

    #[test]
    fn asymmetric_graph() {
        // Smallest asymmetric graphs have 6 vertices; this is one of them.
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 4)],
        )
        .unwrap();
        let a = automorphism_group(&g).unwrap();
        assert_eq!(a.order(), 1);
    }

    #[test]
    fn generators_preserve_adjacency() {
        let g = petersen_graph();
        let a = automorphism_group(&g).unwrap();
        for gen in a.generators() {
            for (u, v) in g.edges() {
                assert!(g.has_edge(gen.apply(u), gen.apply(v)));
            }
        }
    }

    #[test]
    fn isomorphism_finds_relabellings() {
        let g = petersen_graph();
        let perm = Permutation::from_cycles(10, &[&[0, 7, 3], &[2, 9]]).unwrap();
        let h = g.relabel(&perm).unwrap();
        let found = are_isomorphic(&g, &h).unwrap().expect("isomorphic");
        for (u, v) in g.edges() {
            assert!(h.has_edge(found.apply(u), found.apply(v)));
        }
        // Symmetric direction.
        assert!(are_isomorphic(&h, &g).unwrap().is_some());
    }

    #[test]
    fn isomorphism_rejects_different_graphs() {
        // Same degree sequence, different structure: C6 vs two triangles.
        let c6 = cycle_graph(6).unwrap();
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(are_isomorphic(&c6, &two_triangles).unwrap().is_none());
        // Different orders.
        let c5 = cycle_graph(5).unwrap();
        assert!(are_isomorphic(&c5, &c6).unwrap().is_none());
        // Same order and size, different degree sequence.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(are_isomorphic(&star, &path).unwrap().is_none());
    }

    #[test]
    fn paley_graphs_are_self_complementary() {
        for p in [5u64, 13, 17] {
            let g = paley_graph(p).unwrap();
            let c = g.complement();
            assert!(are_isomorphic(&g, &c).unwrap().is_some(), "P({p})");
        }
        // Hand-checked map for p = 5: multiplying by the non-square 2
        // sends squares {1,4} to {2,3}, so v ↦ 2v swaps C5 with its
        // complement.
        let g = paley_graph(5).unwrap();
        let c = g.complement();
        let double = Permutation::from_images(vec![0, 2, 4, 1, 3]).unwrap();
        for (u, v) in g.edges() {
            assert!(c.has_edge(double.apply(u), double.apply(v)));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = complete_graph(6).unwrap();
        assert!(matches!(
            automorphism_group_budgeted(&g, 3),
            Err(AutError::BudgetExceeded(3))
        ));
        let h = complete_graph(6).unwrap();
        assert!(matches!(
            are_isomorphic_budgeted(&g, &h, 2),
            Err(AutError::BudgetExceeded(2))
        ));
    }

    #[test]
    fn trivial_sizes() {
        let empty = Graph::empty(0).unwrap();
        assert_eq!(automorphism_group(&empty).unwrap().order(), 1);
        let one = Graph::empty(1).unwrap();
        assert_eq!(automorphism_group(&one).unwrap().order(), 1);
        let big = Graph::empty(300).unwrap();
        assert!(matches!(
            automorphism_group(&big),
            Err(AutError::TooManyVertices(300))
        ));
    }
}
