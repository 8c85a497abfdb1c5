//! Exact construction and machine certification of the 2-geodesic-transitive,
//! non-2-arc-transitive graphs of prime valency.
//!
//! For each prime `p ≡ 1 (mod 4)` there is, up to isomorphism, a unique
//! connected graph of valency `p` whose automorphism group is transitive on
//! 2-geodesics but not on 2-arcs: a non-bipartite antipodal double cover of
//! the complete graph `K_{p+1}` with automorphism group `PSL(2,p) × Z_2`
//! (the icosahedron for `p = 5`). This crate builds those graphs from first
//! principles as coset graphs of `PSL(2,p)` and checks every structural
//! claim about them exactly:
//!
//! * [`field`]: arithmetic in the prime field `F_p` and quadratic residues,
//! * [`perm`], [`group`]: permutations and permutation groups with
//!   deterministic stabilizer chains,
//! * [`psl2`]: `PSL(2,p)` acting on the projective line, and the search for
//!   the generating data `(a, b, c, H, g)` of the coset construction,
//! * [`graph`], [`formats`]: bitset graphs, distance machinery, and the
//!   graph6 / adjacency-list / DOT formats,
//! * [`coset`]: the coset graph `Cos(G, H, HgH)` and its side conditions,
//! * [`aut`], [`transitivity`]: automorphism groups, isomorphism testing,
//!   and the ladder of transitivity certificates,
//! * [`covers`]: block systems, quotients, covers, and antipodality,
//! * [`certify`]: the full per-prime certification report, exhaustive
//!   Cayley-graph and Paley-graph oracles, and negative controls.
//!
//! All computation is exact integer arithmetic; reports are deterministic
//! apart from timing fields.

pub mod aut;
pub mod certify;
pub mod coset;
pub mod covers;
mod dsu;
pub mod field;
pub mod formats;
pub mod graph;
pub mod group;
pub mod perm;
pub mod psl2;
pub mod transitivity;

pub use aut::{are_isomorphic, automorphism_group};
pub use certify::{build_family, certify_family, CertReport, Family, SUPPORTED_PRIMES};
pub use coset::{coset_graph, validate_spec, CosetGraphSpec};
pub use covers::{
    antipodal_structure, block_systems, is_antipodal_double_cover_of_complete, is_cover,
    quotient_graph, BlockSystem,
};
pub use field::PrimeField;
pub use graph::Graph;
pub use group::PermGroup;
pub use perm::Permutation;
pub use psl2::{find_witness, psl2_group, DefinitionWitness};
pub use transitivity::{certify_level, TransitivityCertificate, TransitivityLevel};
