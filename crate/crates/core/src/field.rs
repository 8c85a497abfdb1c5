//! Arithmetic in the prime field `F_p` and quadratic-residue machinery.
//!
//! Elements are canonical residues in `[0, p-1]`; every operation reduces
//! eagerly. Only prime moduli are accepted (extension fields are out of
//! scope), which keeps inversion and the Euler criterion elementary.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// Deterministic primality test by trial division.
///
/// Moduli in this crate are a few hundred at most, so anything cleverer
/// would be wasted.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field `F_p` for an odd prime `p`.
///
/// All element arguments and results are canonical residues in `[0, p-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Constructs `F_p`, verifying that `p` is an odd prime.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        debug_assert!(x < self.p && y < self.p);
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        debug_assert!(x < self.p && y < self.p);
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    pub fn neg(&self, x: u64) -> u64 {
        debug_assert!(x < self.p);
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        debug_assert!(x < self.p && y < self.p);
        x * y % self.p
    }

    /// `x^e` by binary exponentiation.
    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        debug_assert!(x < self.p);
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element, via Fermat's little
    /// theorem (`x^(p-2)`).
    pub fn inv(&self, x: u64) -> Result<u64, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(x, self.p - 2))
    }

    /// Euler criterion: `x` is a square in `F_p` iff `x^((p-1)/2) ∈ {0, 1}`.
    /// Zero counts as a square.
    pub fn is_square(&self, x: u64) -> bool {
        if x == 0 {
            return true;
        }
        self.pow(x, (self.p - 1) / 2) == 1
    }

    /// The nonzero squares of `F_p`, in increasing order.
    /// There are exactly `(p-1)/2` of them.
    pub fn nonzero_squares(&self) -> Vec<u64> {
        (1..self.p).filter(|&x| self.is_square(x)).collect()
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: u64) -> u64 {
        assert!(x != 0 && x < self.p);
        let mut acc = x;
        let mut k = 1;
        while acc != 1 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// The smallest generator of the multiplicative group `F_p^*`.
    ///
    /// Returning the smallest one makes every downstream construction
    /// reproducible.
    pub fn primitive_element(&self) -> u64 {
        (2..self.p)
            .find(|&w| self.element_order(w) == self.p - 1)
            .expect("F_p^* is cyclic, so a generator exists")
    }
}
