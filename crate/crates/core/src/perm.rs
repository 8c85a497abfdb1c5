//! Permutations of `{0..n-1}`, the atoms of all group computation.
//!
//! The composition convention is fixed project-wide: `s.compose(&t)` is the
//! permutation that applies `s` first and `t` second, i.e. `(s·t)(x) = t(s(x))`.
//! Every coset and adjacency computation in this crate depends on that
//! convention, so it is never varied.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images are not a bijection of 0..{0}")]
    NotBijection(usize),
}

/// A bijection on `{0..n-1}`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array, verifying bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(PermError::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    /// Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from >= degree || moved[from] {
                    return Err(PermError::NotBijection(degree));
                }
                moved[from] = true;
                images[from] = to;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The image of a point.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` then `other` (left-to-right): the result maps `x` to
    /// `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "compose requires equal degrees"
        );
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g`, the conjugate of `self` by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Least `k ≥ 1` with `self^k = identity`; the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles_with_fixed()
            .into_iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Disjoint cycles including fixed points, each starting at its smallest
    /// element, ordered by that element.
    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Nontrivial cycles only, for display.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    /// The set of points fixed by the permutation.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.images[x] == x).collect()
    }

    /// Restricts the permutation to an invariant subset of points,
    /// re-indexed by position in `domain`.
    ///
    /// Returns `None` if the subset is not invariant.
    pub fn restrict(&self, domain: &[usize]) -> Option<Permutation> {
        let mut position = vec![usize::MAX; self.degree()];
        for (i, &v) in domain.iter().enumerate() {
            position[v] = i;
        }
        let mut images = Vec::with_capacity(domain.len());
        for &v in domain {
            let img = position[self.images[v]];
            if img == usize::MAX {
                return None;
            }
            images.push(img);
        }
        Some(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention() {
        // s = (0 1), t = (1 2): s then t maps 0→2, 2→1, 1→0.
        let s = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let st = s.compose(&t);
        assert_eq!(st.images(), &[2, 0, 1]);
    }

    #[test]
    fn identity_and_inverse() {
        let s = Permutation::from_cycles(5, &[&[0, 3, 1]]).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(s.compose(&id), s);
        assert!(s.compose(&s.inverse()).is_identity());
        assert!(s.inverse().compose(&s).is_identity());
    }

    #[test]
    fn orders() {
        let five_cycle = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(five_cycle.order(), 5);
        assert_eq!(Permutation::identity(4).order(), 1);
        let mixed = Permutation::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(mixed.order(), 6);
    }

    #[test]
    fn bijection_validation() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn cycle_display() {
        let s = Permutation::from_cycles(6, &[&[0, 1, 2], &[4, 5]]).unwrap();
        assert_eq!(s.to_string(), "(0 1 2)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn restriction() {
        let s = Permutation::from_cycles(6, &[&[1, 2, 3], &[4, 5]]).unwrap();
        let r = s.restrict(&[1, 2, 3]).unwrap();
        assert_eq!(r.images(), &[1, 2, 0]);
        assert!(s.restrict(&[0, 1]).is_none());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let s = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let g = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        let c = s.conjugate_by(&g);
        assert_eq!(c, Permutation::from_cycles(4, &[&[2, 3]]).unwrap());
    }
}
