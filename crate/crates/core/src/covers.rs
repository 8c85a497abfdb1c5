//! Block systems of transitive permutation groups, quotient graphs,
//! covering checks, and antipodality.
//!
//! The block machinery is the classical union-find algorithm: the minimal
//! block containing `{0, β}` is the partition generated by repeatedly
//! closing `{0, β}` under the group generators. Running it for every `β`
//! and deduplicating yields all minimal nontrivial systems, which is all
//! the certification needs (the interesting system has fibres of size 2,
//! and any system is a union of minimal ones over a point).

use crate::dsu::DisjointSet;
use crate::graph::{Graph, GraphError};
use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoversError {
    #[error("the group must be transitive to have block systems")]
    NotTransitive,
    #[error("blocks do not partition the vertex set: {0}")]
    BadPartition(&'static str),
    #[error("a group generator does not permute the blocks")]
    NotInvariant,
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A partition of `0..n-1` into equally sized blocks permuted by some
/// group. Blocks are sorted internally and listed by smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    pub block_size: usize,
}

impl BlockSystem {
    /// Builds a system from raw classes, normalizing the ordering.
    /// Fails if the classes do not partition `0..n-1` or differ in size.
    pub fn new(n: usize, classes: Vec<Vec<usize>>) -> Result<BlockSystem, CoversError> {
        let mut blocks = classes;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let mut seen = vec![false; n];
        for b in &blocks {
            for &v in b {
                if v >= n {
                    return Err(CoversError::BadPartition("vertex out of range"));
                }
                if seen[v] {
                    return Err(CoversError::BadPartition("vertex listed twice"));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(CoversError::BadPartition("vertex missing"));
        }
        let block_size = blocks.first().map_or(0, |b| b.len());
        if blocks.iter().any(|b| b.len() != block_size) {
            return Err(CoversError::BadPartition("blocks differ in size"));
        }
        Ok(BlockSystem { blocks, block_size })
    }

    /// `membership()[v]` is the index of the block containing `v`.
    pub fn membership(&self, n: usize) -> Vec<usize> {
        let mut member = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                member[v] = i;
            }
        }
        member
    }
}

/// Union-find closure of `{alpha, beta}` under the generators: the
/// classes of the finest G-congruence in which alpha and beta are
/// equivalent.
fn minimal_block_partition(
    n: usize,
    gens: &[Permutation],
    alpha: usize,
    beta: usize,
) -> Vec<Vec<usize>> {
    let mut dsu = DisjointSet::new(n);
    dsu.union(alpha, beta);
    let mut pending = vec![(alpha, beta)];
    while let Some((a, b)) = pending.pop() {
        for g in gens {
            let (ga, gb) = (g.apply(a), g.apply(b));
            if dsu.union(ga, gb) {
                pending.push((ga, gb));
            }
        }
    }
    dsu.classes()
}

/// All minimal nontrivial block systems of a transitive group: for each
/// point β ≠ 0, the minimal system merging 0 and β, with duplicates and
/// the two trivial systems dropped. Every returned system is checked to
/// be genuinely generator-invariant.
pub fn block_systems(group: &PermGroup) -> Result<Vec<BlockSystem>, CoversError> {
    if !group.is_transitive() {
        return Err(CoversError::NotTransitive);
    }
    let n = group.degree();
    let gens = group.generators();
    let mut found: Vec<BlockSystem> = Vec::new();
    for beta in 1..n {
        let classes = minimal_block_partition(n, gens, 0, beta);
        if classes.len() <= 1 || classes.len() == n {
            continue;
        }
        let system = BlockSystem::new(n, classes)?;
        if !found.contains(&system) {
            for g in gens {
                if !permutes_blocks(&system, g) {
                    return Err(CoversError::NotInvariant);
                }
            }
            found.push(system);
        }
    }
    found.sort_by(|a, b| a.block_size.cmp(&b.block_size).then_with(|| a.blocks.cmp(&b.blocks)));
    Ok(found)
}

fn permutes_blocks(system: &BlockSystem, g: &Permutation) -> bool {
    let lookup: BTreeMap<&[usize], ()> =
        system.blocks.iter().map(|b| (b.as_slice(), ())).collect();
    system.blocks.iter().all(|b| {
        let mut image: Vec<usize> = b.iter().map(|&v| g.apply(v)).collect();
        image.sort_unstable();
        lookup.contains_key(image.as_slice())
    })
}

/// The quotient graph: one vertex per block, blocks adjacent iff some
/// edge of Γ crosses between them. Edges inside a block are discarded.
pub fn quotient_graph(graph: &Graph, system: &BlockSystem) -> Result<Graph, CoversError> {
    let n = graph.num_vertices();
    check_partition(n, system)?;
    let member = system.membership(n);
    let mut edges = Vec::new();
    for (u, v) in graph.edges() {
        let (bu, bv) = (member[u], member[v]);
        if bu != bv && !edges.contains(&(bu.min(bv), bu.max(bv))) {
            edges.push((bu.min(bv), bu.max(bv)));
        }
    }
    Ok(Graph::from_edges(system.blocks.len(), &edges)?)
}

fn check_partition(n: usize, system: &BlockSystem) -> Result<(), CoversError> {
    let total: usize = system.blocks.iter().map(|b| b.len()).sum();
    if total != n || system.membership(n).iter().any(|&m| m == usize::MAX) {
        return Err(CoversError::BadPartition("blocks must cover every vertex exactly once"));
    }
    Ok(())
}

/// The covering condition: across every quotient edge `{B_i, B_j}`,
/// every vertex of `B_i` has exactly one neighbor in `B_j`.
pub fn is_cover(graph: &Graph, system: &BlockSystem) -> Result<bool, CoversError> {
    let n = graph.num_vertices();
    check_partition(n, system)?;
    let member = system.membership(n);
    let quotient = quotient_graph(graph, system)?;
    for (bi, bj) in quotient.edges() {
        for &(from, to) in &[(bi, bj), (bj, bi)] {
            for &v in &system.blocks[from] {
                let hits = graph
                    .neighbors(v)
                    .into_iter()
                    .filter(|&w| member[w] == to)
                    .count();
                if hits != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Detects antipodality: if the diameter-distance graph `Γ_d` is a
/// disjoint union of complete graphs of one common size, its components
/// are the antipodal fibres. Graphs of diameter below 2 are never
/// antipodal here, and unequal fibre sizes also report `None` (the only
/// use is equal-fibre covers).
pub fn antipodal_structure(graph: &Graph) -> Result<Option<BlockSystem>, CoversError> {
    if !graph.is_connected() {
        return Err(CoversError::Disconnected);
    }
    let diam = graph.diameter()?;
    if diam < 2 {
        return Ok(None);
    }
    let far = graph.distance_graph(diam)?;
    let components = far.components();
    for comp in &components {
        for (i, &u) in comp.iter().enumerate() {
            for &v in &comp[i + 1..] {
                if !far.has_edge(u, v) {
                    return Ok(None);
                }
            }
        }
    }
    let size = components[0].len();
    if components.iter().any(|c| c.len() != size) {
        return Ok(None);
    }
    Ok(Some(BlockSystem::new(graph.num_vertices(), components)?))
}

/// Itemized verdict of [`is_antipodal_double_cover_of_complete`]. The
/// overall answer is the conjunction of the four booleans.
#[derive(Debug, Clone)]
pub struct DoubleCoverEvidence {
    pub holds: bool,
    pub antipodal_with_fibre_size_2: bool,
    pub quotient_complete: bool,
    pub covers_quotient: bool,
    pub non_bipartite: bool,
    pub fibres: Option<BlockSystem>,
}

/// Checks whether Γ is a non-bipartite antipodal double cover of a
/// complete graph: antipodal with all fibres of size 2, quotient over the
/// fibres complete, covering condition satisfied, and not bipartite.
pub fn is_antipodal_double_cover_of_complete(
    graph: &Graph,
) -> Result<DoubleCoverEvidence, CoversError> {
    let fibres = antipodal_structure(graph)?;
    let paired = fibres.as_ref().is_some_and(|f| f.block_size == 2);
    let mut evidence = DoubleCoverEvidence {
        holds: false,
        antipodal_with_fibre_size_2: paired,
        quotient_complete: false,
        covers_quotient: false,
        non_bipartite: !graph.is_bipartite(),
        fibres,
    };
    if paired {
        let system = evidence.fibres.as_ref().unwrap();
        evidence.quotient_complete = quotient_graph(graph, system)?.is_complete();
        evidence.covers_quotient = is_cover(graph, system)?;
    }
    evidence.holds = evidence.antipodal_with_fibre_size_2
        && evidence.quotient_complete
        && evidence.covers_quotient
        && evidence.non_bipartite;
    Ok(evidence)
}

/// The action of a group on the blocks of an invariant system: the image
/// group on block indices, plus the kernel order obtained from
/// `|G| / |image|`.
pub struct BlockAction {
    pub image: PermGroup,
    pub kernel_order: u64,
}

pub fn block_action(group: &PermGroup, system: &BlockSystem) -> Result<BlockAction, CoversError> {
    check_partition(group.degree(), system)?;
    let index: BTreeMap<&[usize], usize> = system
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let mut images = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let mut image = vec![usize::MAX; system.blocks.len()];
        for (i, b) in system.blocks.iter().enumerate() {
            let mut mapped: Vec<usize> = b.iter().map(|&v| g.apply(v)).collect();
            mapped.sort_unstable();
            let j = *index
                .get(mapped.as_slice())
                .ok_or(CoversError::NotInvariant)?;
            image[i] = j;
        }
        images.push(Permutation::from_images(image).expect("blocks map bijectively"));
    }
    let image = PermGroup::from_generators(system.blocks.len(), images)?;
    let kernel_order = group.order() / image.order();
    Ok(BlockAction { image, kernel_order })
}

/// For a system with all fibres of size 2, the involution swapping each
/// fibre; `None` otherwise.
pub fn fibre_swap(n: usize, system: &BlockSystem) -> Option<Permutation> {
    if system.block_size != 2 || system.blocks.len() * 2 != n {
        return None;
    }
    let mut images: Vec<usize> = (0..n).collect();
    for b in &system.blocks {
        images.swap(b[0], b[1]);
    }
    Some(Permutation::from_images(images).expect("product of disjoint swaps"))
}
