//! Normal-form arithmetic for the two group families behind the constructions.
//!
//! [`even`] is the generalised dihedral group `(Z_m^2 x Z_p) : <x>` with its
//! order-3 automorphism `y`; [`odd`] is `(Z_k^2 : Sym(3)) : <sigma>`.

pub mod even;
pub mod odd;

use thiserror::Error;

pub use even::{find_alpha, EvenElement, EvenGroup, EvenParams};
pub use odd::{OddElement, OddGroup, Sym3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 1 mod 3")]
    NotOneModThree(u64),
    #[error("p = {p} divides m = {m}")]
    PrimeDividesM { p: u64, m: u64 },
    #[error("alpha = {alpha} is not a root of a^2 + a + 1 mod {p}")]
    BadAlpha { alpha: u64, p: u64 },
    #[error("parameter must be positive")]
    NonPositive,
    #[error("k = {0} is even; the order-6k^2 construction needs odd k")]
    EvenK(u64),
    #[error("connection set has only {0} distinct elements")]
    DegenerateS(usize),
}

/// Group multiplication, identity and inversion on a concrete element type.
pub trait GroupOps {
    type Element: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;

    fn pow(&self, a: &Self::Element, mut exp: u64) -> Self::Element {
        let mut base = a.clone();
        let mut acc = self.identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Smallest `n >= 1` with `a^n = 1`; assumes `a` has finite order.
    fn element_order(&self, a: &Self::Element) -> u64 {
        let id = self.identity();
        let mut acc = a.clone();
        let mut n = 1;
        while acc != id {
            acc = self.multiply(&acc, a);
            n += 1;
        }
        n
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn modn(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}
