//! Finite permutation groups with deterministic stabilizer chains.
//!
//! A [`PermGroup`] is a generator set together with a base and strong
//! generating set built by deterministic Schreier–Sims (no randomization):
//! degrees stay below ~130 and orders below 2·10⁵ for every target of this
//! crate, and reproducible chains matter more than speed. The chain gives
//! exact order and membership; everything else (orbits, stabilizers, coset
//! enumeration, normalizers of cyclic subgroups, Frobenius and core-freeness
//! tests) is layered on top of it.

use crate::perm::Permutation;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a subgroup: a generator lies outside the ambient group")]
    NotSubgroup,
    #[error("element is not a member of the group")]
    NotMember,
    #[error("point {0} is out of range for degree {1}")]
    PointOutOfRange(usize, usize),
    #[error("group is not transitive on its domain")]
    NotTransitive,
}

/// One level of a stabilizer chain: a base point, the generators of the
/// group at this level, and the orbit of the base point with a transversal.
#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    /// Orbit of `base_point` in BFS discovery order.
    orbit: Vec<usize>,
    /// `transversal[x]` maps `base_point` to `x` (None outside the orbit).
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }

    /// Recomputes the orbit and transversal by BFS in generator order.
    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit.push(self.base_point);
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().compose(g);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Chain {
    degree: usize,
    levels: Vec<Level>,
}

impl Chain {
    /// Builds a chain for the given generators. `base_hint` prescribes
    /// preferred base points, in order; this is how point stabilizers are
    /// extracted.
    fn build(degree: usize, gens: &[Permutation], base_hint: &[usize]) -> Chain {
        let mut chain = Chain {
            degree,
            levels: Vec::new(),
        };
        if let Some(&beta) = base_hint.first() {
            chain.levels.push(Level::new(degree, beta));
        }
        for g in gens {
            if !g.is_identity() {
                chain.add_generator(0, g.clone(), base_hint);
            }
        }
        chain
    }

    /// Sifts `g` through levels `from..`, returning the residue.
    /// The residue is the identity iff `g` is in the group at `from`.
    fn sift_from(&self, from: usize, g: &Permutation) -> Permutation {
        let mut h = g.clone();
        for level in &self.levels[from..] {
            let delta = h.apply(level.base_point);
            match &level.transversal[delta] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return h,
            }
        }
        h
    }

    /// Adds a generator at `level` (which must fix the base points of all
    /// earlier levels) and restores the Schreier closure property below.
    fn add_generator(&mut self, level: usize, g: Permutation, base_hint: &[usize]) {
        if g.is_identity() {
            return;
        }
        if level < self.levels.len() && self.sift_from(level, &g).is_identity() {
            return;
        }
        if level == self.levels.len() {
            let beta = base_hint
                .iter()
                .copied()
                .filter(|&b| g.apply(b) != b)
                .find(|b| self.levels.iter().all(|l| l.base_point != *b))
                .unwrap_or_else(|| {
                    (0..self.degree)
                        .find(|&x| g.apply(x) != x)
                        .expect("non-identity permutation moves a point")
                });
            self.levels.push(Level::new(self.degree, beta));
        }
        self.levels[level].gens.push(g);
        self.levels[level].recompute_orbit(self.degree);

        // Schreier generators of this level must sift to identity below.
        let orbit = self.levels[level].orbit.clone();
        let gens = self.levels[level].gens.clone();
        for &delta in &orbit {
            let u_delta = self.levels[level].transversal[delta].clone().unwrap();
            for s in &gens {
                let target = s.apply(delta);
                let u_target = self.levels[level].transversal[target].clone().unwrap();
                let schreier = u_delta.compose(s).compose(&u_target.inverse());
                self.add_generator(level + 1, schreier, base_hint);
            }
        }
    }

    fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }
}

/// A finite permutation group on `{0..n-1}`, immutable once constructed.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Chain,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: Chain::build(degree, &[], &[]),
        }
    }

    /// Builds the group generated by `gens`; identity generators and exact
    /// duplicates are dropped.
    pub fn from_generators(
        degree: usize,
        gens: Vec<Permutation>,
    ) -> Result<PermGroup, GroupError> {
        let mut kept: Vec<Permutation> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(g.degree(), degree));
            }
            if !g.is_identity() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        let chain = Chain::build(degree, &kept, &[]);
        Ok(PermGroup {
            degree,
            generators: kept,
            chain,
        })
    }

    /// Builds the group generated by `elems`, keeping only elements that
    /// enlarge the group so far. Useful when `elems` is a full subgroup
    /// element list.
    pub fn generated_by(degree: usize, elems: &[Permutation]) -> Result<PermGroup, GroupError> {
        let mut group = PermGroup::trivial(degree);
        for e in elems {
            if e.degree() != degree {
                return Err(GroupError::DegreeMismatch(e.degree(), degree));
            }
            if !group.contains(e) {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                group = PermGroup::from_generators(degree, gens)?;
            }
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Exact group order, from the stabilizer chain.
    pub fn order(&self) -> u64 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Exact membership test by sifting through the chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain.sift_from(0, g).is_identity()
    }

    /// Whether `h` is a subgroup of `self`.
    pub fn has_subgroup(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.generators.iter().all(|g| self.contains(g))
    }

    /// All group elements, in a deterministic chain-derived order.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = level.transversal[x].as_ref().unwrap();
                for e in &elems {
                    next.push(e.compose(u));
                }
            }
            elems = next;
        }
        elems
    }

    /// Orbit of a point, in BFS discovery order.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>, GroupError> {
        if point >= self.degree {
            return Err(GroupError::PointOutOfRange(point, self.degree));
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        Ok(orbit)
    }

    /// The orbit partition of `{0..n-1}`, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut parts = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let orbit = self.orbit(start).unwrap();
            for &x in &orbit {
                seen[x] = true;
            }
            parts.push(orbit);
        }
        parts
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).unwrap().len() == self.degree
    }

    /// The full stabilizer of a point, extracted from a chain based at it.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup, GroupError> {
        if point >= self.degree {
            return Err(GroupError::PointOutOfRange(point, self.degree));
        }
        let chain = Chain::build(self.degree, &self.generators, &[point]);
        let mut stab_gens: Vec<Permutation> = Vec::new();
        for level in chain.levels.iter().skip(1) {
            for g in &level.gens {
                if !stab_gens.contains(g) {
                    stab_gens.push(g.clone());
                }
            }
        }
        let stab = PermGroup::generated_by(self.degree, &stab_gens)?;
        debug_assert_eq!(
            stab.order() * self.orbit(point)?.len() as u64,
            self.order(),
            "orbit-stabilizer identity"
        );
        Ok(stab)
    }

    /// Right-coset representatives of `h` in `self`, ordered by breadth-first
    /// discovery of the identity coset under the group's generators. The
    /// identity (representing `h` itself) comes first.
    pub fn right_cosets(&self, h: &PermGroup) -> Result<Vec<Permutation>, GroupError> {
        if !self.has_subgroup(h) {
            return Err(GroupError::NotSubgroup);
        }
        let mut reps = vec![Permutation::identity(self.degree)];
        let mut head = 0;
        while head < reps.len() {
            let x = reps[head].clone();
            head += 1;
            for s in &self.generators {
                let candidate = x.compose(s);
                let known = reps
                    .iter()
                    .any(|r| h.contains(&candidate.compose(&r.inverse())));
                if !known {
                    reps.push(candidate);
                }
            }
        }
        debug_assert_eq!(reps.len() as u64 * h.order(), self.order());
        Ok(reps)
    }

    /// The normalizer of the cyclic subgroup `⟨s⟩` in `self`, by filtering
    /// the full element list. Groups here have order at most 2·10⁵, where
    /// this is milliseconds and avoids a backtrack-search subsystem.
    pub fn normalizer_of_cyclic(&self, s: &Permutation) -> Result<PermGroup, GroupError> {
        if !self.contains(s) {
            return Err(GroupError::NotMember);
        }
        let mut powers: HashSet<Vec<usize>> = HashSet::new();
        let mut acc = Permutation::identity(self.degree);
        loop {
            powers.insert(acc.images().to_vec());
            acc = acc.compose(s);
            if acc.is_identity() {
                powers.insert(acc.images().to_vec());
                break;
            }
        }
        let members: Vec<Permutation> = self
            .elements()
            .into_iter()
            .filter(|g| powers.contains(s.conjugate_by(g).images()))
            .collect();
        PermGroup::generated_by(self.degree, &members)
    }

    /// Frobenius test for the natural action: transitive, nontrivial point
    /// stabilizers, and no non-identity element fixing two or more points.
    pub fn is_frobenius(&self) -> Result<bool, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        if self.order() % self.degree as u64 != 0 || self.order() == self.degree as u64 {
            // Stabilizers are trivial (regular action) or absent.
            return Ok(false);
        }
        for g in self.elements() {
            if !g.is_identity() && g.fixed_points().len() >= 2 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `h` is core-free in `self`: the kernel of the action of
    /// `self` on the right cosets of `h` is trivial, i.e. the coset action
    /// is faithful.
    pub fn is_core_free(&self, h: &PermGroup) -> Result<bool, GroupError> {
        if !self.has_subgroup(h) {
            return Err(GroupError::NotSubgroup);
        }
        if h.is_trivial() {
            return Ok(true);
        }
        let reps = self.right_cosets(h)?;
        let images = self.coset_action(h, &reps)?;
        let image_group = PermGroup::from_generators(reps.len(), images)?;
        Ok(image_group.order() == self.order())
    }

    /// Whether `x` lies in the double coset `(self)·g·(self)`, by scanning
    /// left factors: `x = h₁·g·h₂` iff `(h₁·g)⁻¹·x` lies in the group for
    /// some `h₁`.
    pub fn double_coset_contains(&self, g: &Permutation, x: &Permutation) -> bool {
        self.elements()
            .iter()
            .any(|h1| self.contains(&h1.compose(g).inverse().compose(x)))
    }

    /// The permutations induced by the group's generators on the right
    /// cosets of `h`, with cosets indexed as in `reps`.
    pub fn coset_action(
        &self,
        h: &PermGroup,
        reps: &[Permutation],
    ) -> Result<Vec<Permutation>, GroupError> {
        let find = |x: &Permutation| -> Result<usize, GroupError> {
            reps.iter()
                .position(|r| h.contains(&x.compose(&r.inverse())))
                .ok_or(GroupError::NotMember)
        };
        let mut induced = Vec::with_capacity(self.generators.len());
        for s in &self.generators {
            let mut images = Vec::with_capacity(reps.len());
            for r in reps {
                images.push(find(&r.compose(s))?);
            }
            induced.push(Permutation::from_images(images).expect("coset action is a bijection"));
        }
        Ok(induced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive closure of a generator set; the independent order oracle.
    pub(crate) fn closure_size(degree: usize, gens: &[Permutation]) -> usize {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = vec![Permutation::identity(degree)];
        seen.insert(queue[0].images().to_vec());
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.compose(g);
                if seen.insert(y.images().to_vec()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    fn symmetric_group(n: usize) -> PermGroup {
        let transposition = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
        let cycle_images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let cycle = Permutation::from_images(cycle_images).unwrap();
        PermGroup::from_generators(n, vec![transposition, cycle]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(5);
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbit(2).unwrap(), vec![2]);
        assert!(g.contains(&Permutation::identity(5)));
    }

    #[test]
    fn chain_order_matches_closure_on_small_groups() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (3, vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]),
            (
                4,
                vec![
                    Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                    Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                ],
            ),
            (
                6,
                vec![
                    Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap(),
                    Permutation::from_cycles(6, &[&[1, 5], &[2, 4]]).unwrap(),
                ],
            ),
            (
                7,
                vec![
                    Permutation::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap(),
                    Permutation::from_cycles(7, &[&[1, 2, 4], &[3, 6, 5]]).unwrap(),
                ],
            ),
        ];
        for (degree, gens) in cases {
            let group = PermGroup::from_generators(degree, gens.clone()).unwrap();
            assert_eq!(group.order(), closure_size(degree, &gens) as u64);
        }
    }

    #[test]
    fn membership_is_exact() {
        let s4 = symmetric_group(4);
        assert_eq!(s4.order(), 24);
        let a4_gens = vec![
            Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
            Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
        ];
        let a4 = PermGroup::from_generators(4, a4_gens).unwrap();
        assert_eq!(a4.order(), 12);
        let transposition = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert!(s4.contains(&transposition));
        assert!(!a4.contains(&transposition));
        assert!(s4.has_subgroup(&a4));
        assert!(!a4.has_subgroup(&s4));
    }

    #[test]
    fn orbits_partition_the_domain() {
        let g = PermGroup::from_generators(
            3,
            vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()],
        )
        .unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2]]);
        assert!(!g.is_transitive());
    }

    #[test]
    fn stabilizer_and_orbit_stabilizer() {
        let s5 = symmetric_group(5);
        assert_eq!(s5.order(), 120);
        let stab = s5.stabilizer(2).unwrap();
        assert_eq!(stab.order(), 24);
        for g in stab.generators() {
            assert_eq!(g.apply(2), 2);
        }
        let trivial = PermGroup::trivial(4);
        assert_eq!(trivial.stabilizer(1).unwrap().order(), 1);
    }

    #[test]
    fn element_enumeration() {
        let s4 = symmetric_group(4);
        let elems = s4.elements();
        assert_eq!(elems.len(), 24);
        let distinct: HashSet<Vec<usize>> =
            elems.iter().map(|e| e.images().to_vec()).collect();
        assert_eq!(distinct.len(), 24);
    }

    #[test]
    fn right_coset_enumeration() {
        let s4 = symmetric_group(4);
        let stab = s4.stabilizer(0).unwrap();
        let reps = s4.right_cosets(&stab).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps[0].is_identity());
        // Distinct cosets: r_i r_j^{-1} never lies in the subgroup.
        for i in 0..reps.len() {
            for j in 0..reps.len() {
                if i != j {
                    assert!(!stab.contains(&reps[i].compose(&reps[j].inverse())));
                }
            }
        }
        assert_eq!(s4.right_cosets(&s4).unwrap().len(), 1);
        let trivial = PermGroup::trivial(4);
        assert_eq!(s4.right_cosets(&trivial).unwrap().len(), 24);
    }

    #[test]
    fn normalizer_of_cyclic_subgroups() {
        let s4 = symmetric_group(4);
        let four_cycle = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        // N_{S4}(⟨(0123)⟩) is the dihedral group of order 8.
        let n = s4.normalizer_of_cyclic(&four_cycle).unwrap();
        assert_eq!(n.order(), 8);
        assert!(n.contains(&four_cycle));
        assert_eq!(s4.order() % n.order(), 0);
        // The identity normalizes everything.
        let id = Permutation::identity(4);
        assert_eq!(s4.normalizer_of_cyclic(&id).unwrap().order(), 24);
        // Not a member.
        let s3 = symmetric_group(3);
        assert!(s3
            .normalizer_of_cyclic(&Permutation::from_cycles(3, &[&[0, 1]]).unwrap())
            .is_ok());
        assert_eq!(
            s4.normalizer_of_cyclic(&Permutation::from_cycles(4, &[&[0, 1]]).unwrap())
                .unwrap()
                .order(),
            4
        );
    }

    #[test]
    fn frobenius_detection() {
        // Oracle for S3 acting naturally: check every element's fixed points.
        let s3 = symmetric_group(3);
        let expected = {
            let nontrivial_stab = s3.order() > 3;
            let two_point_fixer = s3
                .elements()
                .iter()
                .any(|g| !g.is_identity() && g.fixed_points().len() >= 2);
            nontrivial_stab && !two_point_fixer
        };
        assert!(expected, "oracle: S3 on 3 points is Frobenius");
        assert_eq!(s3.is_frobenius().unwrap(), expected);

        // A regular cyclic group has trivial stabilizers: not Frobenius.
        let c5 = PermGroup::from_generators(
            5,
            vec![Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()],
        )
        .unwrap();
        assert!(!c5.is_frobenius().unwrap());

        // S4 naturally: a transposition fixes two points.
        let s4 = symmetric_group(4);
        assert!(!s4.is_frobenius().unwrap());

        // Intransitive input is a precondition error.
        let g = PermGroup::from_generators(
            3,
            vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()],
        )
        .unwrap();
        assert_eq!(g.is_frobenius(), Err(GroupError::NotTransitive));
    }

    #[test]
    fn core_freeness() {
        let s4 = symmetric_group(4);
        // A point stabilizer of S4 is core-free.
        let stab = s4.stabilizer(0).unwrap();
        assert!(s4.is_core_free(&stab).unwrap());
        // The whole group is not core-free in itself.
        assert!(!s4.is_core_free(&s4).unwrap());
        // The trivial subgroup always is.
        assert!(s4.is_core_free(&PermGroup::trivial(4)).unwrap());
        // V4 is normal in S4, hence not core-free.
        let v4 = PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(!s4.is_core_free(&v4).unwrap());
    }

    #[test]
    fn double_coset_membership() {
        // Brute-force H g H in S4 for H = ⟨(0 1)⟩, g = (1 2 3).
        let s4 = symmetric_group(4);
        let h = PermGroup::from_generators(
            4,
            vec![Permutation::from_cycles(4, &[&[0, 1]]).unwrap()],
        )
        .unwrap();
        let g = Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let mut expected: HashSet<Vec<usize>> = HashSet::new();
        for h1 in h.elements() {
            for h2 in h.elements() {
                expected.insert(h1.compose(&g).compose(&h2).images().to_vec());
            }
        }
        for x in s4.elements() {
            assert_eq!(
                h.double_coset_contains(&g, &x),
                expected.contains(x.images()),
                "mismatch at {x}"
            );
        }
    }

    #[test]
    fn generated_by_reduces_generators() {
        let s4 = symmetric_group(4);
        let all = s4.elements();
        let rebuilt = PermGroup::generated_by(4, &all).unwrap();
        assert_eq!(rebuilt.order(), 24);
        assert!(rebuilt.generators().len() <= 6);
    }
}
