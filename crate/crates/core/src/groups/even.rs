//! `G = <u, v, w, x | u^m, v^m, w^p, x^2, [u,v], [u,w], [v,w], u^x u, v^x v, w^x w>`,
//! the generalised dihedral group over `A = Z_m^2 x Z_p`, together with the
//! automorphism `y: u -> v, v -> u^-1 v^-1, w -> w^alpha, x -> x`.
//!
//! Elements are kept in the normal form `u^a v^b w^c x^e`.

use std::fmt;

use super::{is_prime, modn, GroupError, GroupOps};

/// Smallest `alpha` in `[1, p)` with `alpha^2 + alpha + 1 = 0 (mod p)`.
pub fn find_alpha(p: u64) -> Result<u64, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(GroupError::NotOneModThree(p));
    }
    (1..p)
        .find(|&a| (a * a + a + 1) % p == 0)
        .ok_or(GroupError::NotOneModThree(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvenParams {
    pub m: u64,
    pub p: u64,
    pub alpha: u64,
}

impl EvenParams {
    /// Validated parameters with the smallest admissible `alpha`.
    pub fn new(m: u64, p: u64) -> Result<Self, GroupError> {
        let alpha = find_alpha(p)?;
        Self::with_alpha(m, p, alpha)
    }

    pub fn with_alpha(m: u64, p: u64, alpha: u64) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::NonPositive);
        }
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if p % 3 != 1 {
            return Err(GroupError::NotOneModThree(p));
        }
        if m.is_multiple_of(p) {
            return Err(GroupError::PrimeDividesM { p, m });
        }
        if alpha == 0 || alpha >= p || !(alpha * alpha + alpha + 1).is_multiple_of(p) {
            return Err(GroupError::BadAlpha { alpha, p });
        }
        Ok(EvenParams { m, p, alpha })
    }

    /// The number of orbits of the semiregular cyclic subgroup, `2m`.
    pub fn k(&self) -> u64 {
        2 * self.m
    }
}

/// `u^a v^b w^c x^e` with `a, b` mod `m`, `c` mod `p`, `e` a bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub e: bool,
}

impl fmt::Display for EvenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{} v^{} w^{} x^{}", self.a, self.b, self.c, self.e as u8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvenGroup {
    params: EvenParams,
}

impl EvenGroup {
    pub fn new(params: EvenParams) -> Self {
        EvenGroup { params }
    }

    pub fn params(&self) -> EvenParams {
        self.params
    }

    /// Order of the ambient group `G`, `2 m^2 p`.
    pub fn order(&self) -> u64 {
        2 * self.params.m * self.params.m * self.params.p
    }

    /// Normal form of `u^a v^b w^c x^e` for arbitrary integer exponents.
    pub fn element(&self, a: i64, b: i64, c: i64, e: i64) -> EvenElement {
        let EvenParams { m, p, .. } = self.params;
        EvenElement {
            a: modn(a, m),
            b: modn(b, m),
            c: modn(c, p),
            e: e.rem_euclid(2) == 1,
        }
    }

    pub fn u(&self) -> EvenElement {
        self.element(1, 0, 0, 0)
    }
    pub fn v(&self) -> EvenElement {
        self.element(0, 1, 0, 0)
    }
    pub fn w(&self) -> EvenElement {
        self.element(0, 0, 1, 0)
    }
    pub fn x(&self) -> EvenElement {
        self.element(0, 0, 0, 1)
    }

    /// Image under `y`, extended multiplicatively from the generator images.
    pub fn apply_y(&self, g: &EvenElement) -> EvenElement {
        let (a, b, c) = (g.a as i64, g.b as i64, g.c as i64);
        self.element(-b, a - b, self.params.alpha as i64 * c, g.e as i64)
    }

    /// `s = u w x`.
    pub fn s(&self) -> EvenElement {
        self.element(1, 0, 1, 1)
    }

    /// `S = {s, s^y, s^(y^2)}`, sorted.
    pub fn connection_set(&self) -> Result<Vec<EvenElement>, GroupError> {
        let s = self.s();
        let s1 = self.apply_y(&s);
        let s2 = self.apply_y(&s1);
        let mut set = vec![s, s1, s2];
        set.sort();
        set.dedup();
        if set.len() < 3 {
            return Err(GroupError::DegenerateS(set.len()));
        }
        Ok(set)
    }

    /// Generator of the semiregular cyclic subgroup `C` and its order:
    /// `u^3 w` of order `mp/3` when `3 | m`, otherwise `u w` of order `mp`.
    pub fn semiregular_generator(&self) -> (EvenElement, u64) {
        let EvenParams { m, p, .. } = self.params;
        let (g, declared) = if m % 3 == 0 {
            (self.element(3, 0, 1, 0), m * p / 3)
        } else {
            (self.element(1, 0, 1, 0), m * p)
        };
        let computed = self.element_order(&g);
        assert_eq!(computed, declared, "order of C disagrees with its formula");
        (g, computed)
    }

    /// Every element of `G` in normal-form order.
    pub fn all_elements(&self) -> Vec<EvenElement> {
        let EvenParams { m, p, .. } = self.params;
        let mut out = Vec::with_capacity(self.order() as usize);
        for a in 0..m {
            for b in 0..m {
                for c in 0..p {
                    for e in [false, true] {
                        out.push(EvenElement { a, b, c, e });
                    }
                }
            }
        }
        out
    }
}

impl GroupOps for EvenGroup {
    type Element = EvenElement;

    fn identity(&self) -> EvenElement {
        EvenElement {
            a: 0,
            b: 0,
            c: 0,
            e: false,
        }
    }

    // (A1 x^e1)(A2 x^e2) = (A1 + (-1)^e1 A2) x^(e1 + e2)
    fn multiply(&self, g: &EvenElement, h: &EvenElement) -> EvenElement {
        let sign = if g.e { -1 } else { 1 };
        self.element(
            g.a as i64 + sign * h.a as i64,
            g.b as i64 + sign * h.b as i64,
            g.c as i64 + sign * h.c as i64,
            (g.e ^ h.e) as i64,
        )
    }

    fn inverse(&self, g: &EvenElement) -> EvenElement {
        if g.e {
            *g
        } else {
            self.element(-(g.a as i64), -(g.b as i64), -(g.c as i64), 0)
        }
    }
}
