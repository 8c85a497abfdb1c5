//! Transitivity certificates: orbits of the automorphism group on
//! vertices, arcs, 2-arcs, 2-geodesics, s-geodesics, and distance classes,
//! plus local intersection parameters.
//!
//! Orbits on a tuple set are connected components of the relation "some
//! generator maps tuple to tuple", computed by union-find over generator
//! images; no group enumeration is ever needed, which is what keeps the
//! larger groups (order 68880 at the top of the supported range) cheap.
//!
//! Convention: 2-arc and 2-geodesic transitivity are defined on top of
//! arc-transitivity, so `holds` for those levels additionally requires a
//! single arc orbit; `orbit_count` and the witness sizes always describe
//! the named tuple set itself. A star graph is therefore not 2-geodesic
//! transitive even though its 2-geodesics form one orbit.

use crate::aut::{automorphism_group, AutError};
use crate::dsu::DisjointSet;
use crate::graph::{Graph, GraphError};
use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransitivityError {
    #[error("graph is disconnected; level {0:?} needs a connected graph")]
    Disconnected(TransitivityLevel),
    #[error("no tuples to act on: {0}")]
    NoTuples(&'static str),
    #[error(
        "parameter {name} is not constant: tuple {tuple_a:?} gives {value_a}, \
         tuple {tuple_b:?} gives {value_b}"
    )]
    Heterogeneous {
        name: &'static str,
        tuple_a: Vec<usize>,
        value_a: usize,
        tuple_b: Vec<usize>,
        value_b: usize,
    },
    #[error("a generator does not leave the neighborhood invariant")]
    NotInvariant,
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitivityLevel {
    Vertex,
    Arc,
    TwoArc,
    TwoGeodesic,
    /// Transitivity on s-geodesics for one fixed `s ≥ 1`.
    SGeodesic(usize),
    /// Transitivity on i-geodesics for every `i` up to the diameter
    /// (including `i = 0`, i.e. vertex-transitivity).
    Geodesic,
    /// Transitivity on ordered pairs within every distance class
    /// (including distance 0).
    Distance,
}

/// Outcome of an orbit computation at one level.
///
/// For the simple levels, `holds` iff `orbit_count == 1`. For the
/// composite levels ([`Geodesic`](TransitivityLevel::Geodesic),
/// [`Distance`](TransitivityLevel::Distance)) the tuple set splits into
/// `diam + 1` classes that can never mix, so `holds` iff
/// `orbit_count == diam + 1`.
#[derive(Debug, Clone)]
pub struct TransitivityCertificate {
    pub level: TransitivityLevel,
    pub holds: bool,
    pub orbit_count: usize,
    /// Orbit sizes in decreasing order.
    pub witness_orbit_sizes: Vec<usize>,
}

/// All 2-arcs `(u, v, w)`: `v` adjacent to both, `u ≠ w`; lexicographic.
pub fn enumerate_2arcs(graph: &Graph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in 0..graph.num_vertices() {
        for v in graph.neighbors(u) {
            for w in graph.neighbors(v) {
                if w != u {
                    out.push((u, v, w));
                }
            }
        }
    }
    out
}

/// All 2-geodesics: 2-arcs whose endpoints are non-adjacent.
pub fn enumerate_2geodesics(graph: &Graph) -> Vec<(usize, usize, usize)> {
    enumerate_2arcs(graph)
        .into_iter()
        .filter(|&(u, _, w)| !graph.has_edge(u, w))
        .collect()
}

/// All s-geodesics as vertex sequences of length `s + 1`: consecutive
/// vertices adjacent and the endpoints at distance exactly `s`.
pub fn enumerate_geodesics(graph: &Graph, s: usize) -> Vec<Vec<usize>> {
    let n = graph.num_vertices();
    if s == 0 {
        return (0..n).map(|v| vec![v]).collect();
    }
    let mut out = Vec::new();
    for start in 0..n {
        let data = graph.bfs(start).expect("vertex in range");
        // Grow paths whose k-th vertex sits at distance k from the start.
        let mut paths: Vec<Vec<usize>> = vec![vec![start]];
        for k in 1..=s {
            let mut next = Vec::new();
            for path in &paths {
                let last = *path.last().unwrap();
                for v in graph.neighbors(last) {
                    if data.dist[v] == Some(k) {
                        let mut longer = path.clone();
                        longer.push(v);
                        next.push(longer);
                    }
                }
            }
            paths = next;
        }
        out.extend(paths);
    }
    out
}

/// Union-find orbit count over generator images of tuples. Every image
/// must land back in the set; the callers pass automorphism generators and
/// closed tuple sets, so a miss is a bug.
fn tuple_orbits(tuples: &[Vec<usize>], gens: &[Permutation]) -> (usize, Vec<usize>) {
    if tuples.is_empty() {
        return (0, Vec::new());
    }
    let index: HashMap<&[usize], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut dsu = DisjointSet::new(tuples.len());
    let mut image = Vec::new();
    for (i, tuple) in tuples.iter().enumerate() {
        for g in gens {
            image.clear();
            image.extend(tuple.iter().map(|&x| g.apply(x)));
            let j = *index
                .get(image.as_slice())
                .expect("automorphisms map the tuple set into itself");
            dsu.union(i, j);
        }
    }
    let mut sizes: Vec<usize> = dsu.classes().iter().map(|c| c.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    (sizes.len(), sizes)
}

fn pairs_to_tuples(pairs: &[(usize, usize, usize)]) -> Vec<Vec<usize>> {
    pairs.iter().map(|&(u, v, w)| vec![u, v, w]).collect()
}

/// Certifies one transitivity level using a precomputed group (normally
/// the full automorphism group; any subgroup gives "transitive under that
/// subgroup" semantics, which is what G-arc-transitivity needs).
pub fn certify_level_with_group(
    graph: &Graph,
    group: &PermGroup,
    level: TransitivityLevel,
) -> Result<TransitivityCertificate, TransitivityError> {
    let n = graph.num_vertices();
    if level != TransitivityLevel::Vertex && !graph.is_connected() {
        return Err(TransitivityError::Disconnected(level));
    }
    let gens = group.generators();
    let single = |tuples: Vec<Vec<usize>>,
                  empty_reason: &'static str|
     -> Result<(usize, Vec<usize>), TransitivityError> {
        if tuples.is_empty() {
            return Err(TransitivityError::NoTuples(empty_reason));
        }
        Ok(tuple_orbits(&tuples, gens))
    };
    let arcs_transitive = |this: &Graph| -> Result<bool, TransitivityError> {
        let arcs: Vec<Vec<usize>> = this
            .edges()
            .iter()
            .flat_map(|&(u, v)| [vec![u, v], vec![v, u]])
            .collect();
        if arcs.is_empty() {
            return Err(TransitivityError::NoTuples("graph has no arcs"));
        }
        Ok(tuple_orbits(&arcs, gens).0 == 1)
    };

    let (orbit_count, sizes, holds) = match level {
        TransitivityLevel::Vertex => {
            let tuples: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
            let (count, sizes) = single(tuples, "graph has no vertices")?;
            (count, sizes, 1 == count)
        }
        TransitivityLevel::Arc => {
            let tuples: Vec<Vec<usize>> = graph
                .edges()
                .iter()
                .flat_map(|&(u, v)| [vec![u, v], vec![v, u]])
                .collect();
            let (count, sizes) = single(tuples, "graph has no arcs")?;
            (count, sizes, count == 1)
        }
        TransitivityLevel::TwoArc => {
            let tuples = pairs_to_tuples(&enumerate_2arcs(graph));
            let (count, sizes) = single(tuples, "graph has no 2-arcs")?;
            let holds = count == 1 && arcs_transitive(graph)?;
            (count, sizes, holds)
        }
        TransitivityLevel::TwoGeodesic => {
            let tuples = pairs_to_tuples(&enumerate_2geodesics(graph));
            let reason = if graph.is_complete() {
                "complete graph has no 2-geodesics"
            } else {
                "graph has no 2-geodesics"
            };
            let (count, sizes) = single(tuples, reason)?;
            let holds = count == 1 && arcs_transitive(graph)?;
            (count, sizes, holds)
        }
        TransitivityLevel::SGeodesic(s) => {
            if s == 0 {
                return Err(TransitivityError::NoTuples("use the vertex level for s = 0"));
            }
            let tuples = enumerate_geodesics(graph, s);
            let (count, sizes) = single(tuples, "no geodesics of this length")?;
            (count, sizes, count == 1)
        }
        TransitivityLevel::Geodesic => {
            let diam = graph.diameter()?;
            let mut total = 0;
            let mut sizes = Vec::new();
            for i in 0..=diam {
                let (count, mut s) = tuple_orbits(&enumerate_geodesics(graph, i), gens);
                total += count;
                sizes.append(&mut s);
            }
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            (total, sizes, total == diam + 1)
        }
        TransitivityLevel::Distance => {
            let diam = graph.diameter()?;
            let mut classes: Vec<Vec<Vec<usize>>> = vec![Vec::new(); diam + 1];
            for u in 0..n {
                let data = graph.bfs(u)?;
                for v in 0..n {
                    let d = data.dist[v].expect("connected");
                    classes[d].push(vec![u, v]);
                }
            }
            let mut total = 0;
            let mut sizes = Vec::new();
            for class in &classes {
                let (count, mut s) = tuple_orbits(class, gens);
                total += count;
                sizes.append(&mut s);
            }
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            (total, sizes, total == diam + 1)
        }
    };
    Ok(TransitivityCertificate {
        level,
        holds,
        orbit_count,
        witness_orbit_sizes: sizes,
    })
}

/// Certifies one level under the full automorphism group.
pub fn certify_level(
    graph: &Graph,
    level: TransitivityLevel,
) -> Result<TransitivityCertificate, TransitivityError> {
    let group = automorphism_group(graph)?;
    certify_level_with_group(graph, &group, level)
}

/// The local intersection parameters of a distance-regular-like graph:
/// `λ` common neighbors over arcs, `μ` over distance-2 pairs, the layer
/// sizes `k₂` and `k₃`, and the triple count
/// `τ = |Γ₂(u) ∩ Γ(v) ∩ Γ(w)|` over 2-geodesics `(u, v, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalParameters {
    pub lambda: usize,
    pub mu: usize,
    pub k2: usize,
    pub k3: usize,
    pub tau: usize,
}

/// Computes the parameters, insisting they are constant over every choice
/// of tuple; any two disagreeing tuples are named in the error. Requires a
/// connected graph of diameter at least 2.
pub fn intersection_parameters(graph: &Graph) -> Result<LocalParameters, TransitivityError> {
    if !graph.is_connected() {
        return Err(TransitivityError::Disconnected(TransitivityLevel::Distance));
    }
    let diam = graph.diameter()?;
    if diam < 2 {
        return Err(TransitivityError::NoTuples(
            "diameter below 2 leaves no distance-2 structure",
        ));
    }
    let n = graph.num_vertices();

    struct Constant {
        name: &'static str,
        seen: Option<(Vec<usize>, usize)>,
    }
    impl Constant {
        fn feed(&mut self, tuple: Vec<usize>, value: usize) -> Result<(), TransitivityError> {
            match &self.seen {
                None => {
                    self.seen = Some((tuple, value));
                    Ok(())
                }
                Some((first, expected)) if *expected != value => {
                    Err(TransitivityError::Heterogeneous {
                        name: self.name,
                        tuple_a: first.clone(),
                        value_a: *expected,
                        tuple_b: tuple,
                        value_b: value,
                    })
                }
                _ => Ok(()),
            }
        }
        fn value(&self) -> usize {
            self.seen.as_ref().expect("fed at least once").1
        }
    }
    let mut lambda = Constant {
        name: "lambda",
        seen: None,
    };
    let mut mu = Constant {
        name: "mu",
        seen: None,
    };
    let mut k2 = Constant {
        name: "k2",
        seen: None,
    };
    let mut k3 = Constant {
        name: "k3",
        seen: None,
    };
    let mut tau = Constant {
        name: "tau",
        seen: None,
    };

    let mut all_dist: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let data = graph.bfs(v)?;
        k2.feed(
            vec![v],
            data.levels.get(2).map_or(0, |l| l.len()),
        )?;
        k3.feed(
            vec![v],
            data.levels.get(3).map_or(0, |l| l.len()),
        )?;
        all_dist.push(
            data.dist
                .iter()
                .map(|d| d.expect("connected"))
                .collect(),
        );
    }
    for (u, v) in graph.edges() {
        lambda.feed(vec![u, v], graph.common_neighbors(u, v)?)?;
    }
    for u in 0..n {
        for w in (u + 1)..n {
            if all_dist[u][w] == 2 {
                mu.feed(vec![u, w], graph.common_neighbors(u, w)?)?;
            }
        }
    }
    for (u, v, w) in enumerate_2geodesics(graph) {
        let count = (0..n)
            .filter(|&x| all_dist[u][x] == 2 && graph.has_edge(x, v) && graph.has_edge(x, w))
            .count();
        tau.feed(vec![u, v, w], count)?;
    }
    Ok(LocalParameters {
        lambda: lambda.value(),
        mu: mu.value(),
        k2: k2.value(),
        k3: k3.value(),
        tau: tau.value(),
    })
}

/// The action of the vertex stabilizer on the neighborhood `Γ(v)`,
/// relabelled to `0..deg(v)-1` in increasing neighbor order.
pub struct NeighborhoodAction {
    pub action: PermGroup,
    pub stabilizer_order: u64,
    /// Whether restriction to the neighborhood loses nothing.
    pub faithful: bool,
}

pub fn neighborhood_action(
    graph: &Graph,
    group: &PermGroup,
    v: usize,
) -> Result<NeighborhoodAction, TransitivityError> {
    let stab = group.stabilizer(v)?;
    let domain = graph.neighbors(v);
    let mut restricted = Vec::with_capacity(stab.generators().len());
    for g in stab.generators() {
        restricted.push(g.restrict(&domain).ok_or(TransitivityError::NotInvariant)?);
    }
    let action = PermGroup::from_generators(domain.len(), restricted)?;
    Ok(NeighborhoodAction {
        faithful: action.order() == stab.order(),
        stabilizer_order: stab.order(),
        action,
    })
}
