//! `R = <u, v, x, y | u^k, v^k, x^3, y^2, [u,v], u^x v^-1, v^x v u, u^y v, v^y u, x^y x>`
//! (so `R = Z_k^2 : Sym(3)`), extended by the order-3 automorphism
//! `sigma: u -> u^-1 v^-1, v -> u, x -> (uv)^delta x, y -> x^2 y` with
//! `delta = 1` exactly when `3 | k`.
//!
//! Elements of `G = R : <sigma>` are stored as `u^a v^b h sigma^j` where `h`
//! is one of `1, x, x^2, y, xy, x^2 y`. Conjugation uses the right-action
//! convention `g^h = h^-1 g h`, so `sigma r = sigma^-1(r) sigma` inside `G`.

use std::fmt;

use super::{modn, GroupError, GroupOps};

/// `x^rot y^refl` in `Sym(3) = <x, y | x^3, y^2, (xy)^2>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym3 {
    pub rot: u8,
    pub refl: bool,
}

impl Sym3 {
    pub const ONE: Sym3 = Sym3 { rot: 0, refl: false };
    pub const X: Sym3 = Sym3 { rot: 1, refl: false };
    pub const Y: Sym3 = Sym3 { rot: 0, refl: true };

    pub fn all() -> [Sym3; 6] {
        [
            Sym3 { rot: 0, refl: false },
            Sym3 { rot: 1, refl: false },
            Sym3 { rot: 2, refl: false },
            Sym3 { rot: 0, refl: true },
            Sym3 { rot: 1, refl: true },
            Sym3 { rot: 2, refl: true },
        ]
    }

    pub fn inverse(self) -> Sym3 {
        if self.refl {
            self
        } else {
            Sym3 {
                rot: (3 - self.rot) % 3,
                refl: false,
            }
        }
    }
}

impl std::ops::Mul for Sym3 {
    type Output = Sym3;

    // y x = x^-1 y
    fn mul(self, other: Sym3) -> Sym3 {
        let r = if self.refl {
            self.rot as i64 - other.rot as i64
        } else {
            self.rot as i64 + other.rot as i64
        };
        Sym3 {
            rot: r.rem_euclid(3) as u8,
            refl: self.refl ^ other.refl,
        }
    }
}

impl fmt::Display for Sym3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (self.rot, self.refl) {
            (0, false) => "1",
            (1, false) => "x",
            (2, false) => "x²",
            (0, true) => "y",
            (1, true) => "xy",
            _ => "x²y",
        };
        f.write_str(s)
    }
}

/// `u^a v^b h sigma^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddElement {
    pub a: u64,
    pub b: u64,
    pub h: Sym3,
    pub j: u8,
}

impl OddElement {
    /// True iff the element lies in `R` (no `sigma` part).
    pub fn in_r(&self) -> bool {
        self.j == 0
    }
}

impl fmt::Display for OddElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{} v^{} {} σ^{}", self.a, self.b, self.h, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddGroup {
    k: u64,
    delta: bool,
}

impl OddGroup {
    pub fn new(k: u64) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::NonPositive);
        }
        Ok(OddGroup {
            k,
            delta: k.is_multiple_of(3),
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn delta(&self) -> u64 {
        self.delta as u64
    }

    /// `|R| = 6k^2`.
    pub fn r_order(&self) -> u64 {
        6 * self.k * self.k
    }

    pub fn element(&self, a: i64, b: i64, h: Sym3, j: i64) -> OddElement {
        OddElement {
            a: modn(a, self.k),
            b: modn(b, self.k),
            h,
            j: j.rem_euclid(3) as u8,
        }
    }

    pub fn u(&self) -> OddElement {
        self.element(1, 0, Sym3::ONE, 0)
    }
    pub fn v(&self) -> OddElement {
        self.element(0, 1, Sym3::ONE, 0)
    }
    pub fn x(&self) -> OddElement {
        self.element(0, 0, Sym3::X, 0)
    }
    pub fn y(&self) -> OddElement {
        self.element(0, 0, Sym3::Y, 0)
    }
    pub fn sigma(&self) -> OddElement {
        self.element(0, 0, Sym3::ONE, 1)
    }

    /// `h t h^-1` for `t = u^a v^b`.
    fn conj_translation(&self, h: Sym3, (a, b): (i64, i64)) -> (i64, i64) {
        let (mut a, mut b) = (a, b);
        if h.refl {
            // y t y^-1 = t^y: u -> v^-1, v -> u^-1
            (a, b) = (-b, -a);
        }
        for _ in 0..h.rot {
            // x t x^-1 = t^(x^-1)
            (a, b) = (b - a, -a);
        }
        (a, b)
    }

    fn mul_r(&self, g: &OddElement, h: &OddElement) -> OddElement {
        let (a, b) = self.conj_translation(g.h, (h.a as i64, h.b as i64));
        self.element(g.a as i64 + a, g.b as i64 + b, g.h * h.h, 0)
    }

    fn sigma_of_sym3(&self, h: Sym3) -> OddElement {
        let d = self.delta as i64;
        let sx = self.element(d, d, Sym3::X, 0);
        let sy = self.element(0, 0, Sym3 { rot: 2, refl: true }, 0);
        let mut acc = self.element(0, 0, Sym3::ONE, 0);
        for _ in 0..h.rot {
            acc = self.mul_r(&acc, &sx);
        }
        if h.refl {
            acc = self.mul_r(&acc, &sy);
        }
        acc
    }

    /// `sigma` applied to the `R`-part of `g`; the `sigma^j` part is fixed.
    pub fn apply_sigma(&self, g: &OddElement) -> OddElement {
        let (a, b) = (g.a as i64, g.b as i64);
        // u -> u^-1 v^-1, v -> u
        let t = self.element(b - a, -a, Sym3::ONE, 0);
        let mut out = self.mul_r(&t, &self.sigma_of_sym3(g.h));
        out.j = g.j;
        out
    }

    fn apply_sigma_times(&self, g: &OddElement, times: u8) -> OddElement {
        (0..times % 3).fold(*g, |acc, _| self.apply_sigma(&acc))
    }

    /// Vertex action of `g = r sigma^j` on `z` in `R`: `z -> r sigma^-j(z)`.
    /// This is `g z sigma^-j` read inside `G`, so it is a left action.
    pub fn act_on_r(&self, g: &OddElement, z: &OddElement) -> OddElement {
        debug_assert!(z.in_r());
        let moved = self.apply_sigma_times(z, (3 - g.j) % 3);
        let r = OddElement { j: 0, ..*g };
        self.mul_r(&r, &moved)
    }

    /// `s = u v y`.
    pub fn s(&self) -> OddElement {
        self.element(1, 1, Sym3::Y, 0)
    }

    /// `S = {s, s^sigma, s^(sigma^2)}`, sorted; all three lie in `R`.
    pub fn connection_set(&self) -> Result<Vec<OddElement>, GroupError> {
        let s = self.s();
        let s1 = self.apply_sigma(&s);
        let s2 = self.apply_sigma(&s1);
        assert!(s1.in_r() && s2.in_r());
        let mut set = vec![s, s1, s2];
        set.sort();
        set.dedup();
        if set.len() < 3 {
            return Err(GroupError::DegenerateS(set.len()));
        }
        Ok(set)
    }

    /// Generator of the semiregular cyclic subgroup of order `6k`:
    /// `u v^-1 y x sigma` when `3` does not divide `k`, `y sigma` otherwise.
    pub fn semiregular_generator(&self) -> Result<(OddElement, u64), GroupError> {
        if self.k.is_multiple_of(2) {
            return Err(GroupError::EvenK(self.k));
        }
        let g = if self.delta {
            self.multiply(&self.y(), &self.sigma())
        } else {
            [self.element(1, -1, Sym3::ONE, 0), self.y(), self.x(), self.sigma()]
                .iter()
                .fold(self.identity(), |acc, e| self.multiply(&acc, e))
        };
        let order = self.element_order(&g);
        assert_eq!(order, 6 * self.k, "order of C disagrees with 6k");
        Ok((g, order))
    }

    /// The `6k^2` elements of `R` in normal-form order.
    pub fn r_elements(&self) -> Vec<OddElement> {
        let mut out = Vec::with_capacity(self.r_order() as usize);
        for a in 0..self.k {
            for b in 0..self.k {
                for h in Sym3::all() {
                    out.push(OddElement { a, b, h, j: 0 });
                }
            }
        }
        out
    }

    /// All `18k^2` elements of `G`.
    pub fn all_elements(&self) -> Vec<OddElement> {
        let r = self.r_elements();
        (0..3u8)
            .flat_map(|j| r.iter().map(move |e| OddElement { j, ..*e }))
            .collect()
    }
}

impl GroupOps for OddGroup {
    type Element = OddElement;

    fn identity(&self) -> OddElement {
        self.element(0, 0, Sym3::ONE, 0)
    }

    // (r1 sigma^j1)(r2 sigma^j2) = r1 sigma^-j1(r2) sigma^(j1 + j2)
    fn multiply(&self, g: &OddElement, h: &OddElement) -> OddElement {
        let r2 = OddElement { j: 0, ..*h };
        let moved = self.apply_sigma_times(&r2, (3 - g.j) % 3);
        let r1 = OddElement { j: 0, ..*g };
        let mut out = self.mul_r(&r1, &moved);
        out.j = (g.j + h.j) % 3;
        out
    }

    // (r sigma^j)^-1 = sigma^j(r^-1) sigma^-j
    fn inverse(&self, g: &OddElement) -> OddElement {
        let hinv = g.h.inverse();
        let (a, b) = self.conj_translation(hinv, (-(g.a as i64), -(g.b as i64)));
        let rinv = self.element(a, b, hinv, 0);
        let mut out = self.apply_sigma_times(&rinv, g.j);
        out.j = (3 - g.j) % 3;
        out
    }
}
