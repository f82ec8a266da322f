//! Permutations of `{0, .., n-1}` and permutation groups given by generators.
//!
//! Products act left to right: `p.compose(&q)` first applies `p`, then `q`,
//! so `p.compose(&q).apply(i) == q.apply(p.apply(i))`.
//!
//! [`PermGroup`] answers order, membership, orbit and enumeration queries
//! through a stabilizer chain built by the deterministic Schreier-Sims
//! algorithm. Base points are always the smallest point moved by the element
//! that forces a new level, so two runs over the same generators produce the
//! same chain and the same enumeration order.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the number of elements [`PermGroup::elements`] will stream.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 0..{degree}")]
    NotABijection { degree: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group order {order} exceeds enumeration cap {cap}")]
    CapExceeded { order: BigUint, cap: u64 },
    #[error("malformed cycle notation: {0}")]
    BadCycleNotation(String),
}

/// A bijection on `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from `images[i] = image of i`, checking bijectivity.
    pub fn try_new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &p) in cycle.iter().enumerate() {
                if p >= n {
                    return Err(PermError::PointOutOfRange { point: p, degree: n });
                }
                if touched[p] {
                    return Err(PermError::NotABijection { degree: n });
                }
                touched[p] = true;
                images[p] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"`; `"()"` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self, PermError> {
        let bad = || PermError::BadCycleNotation(text.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(usize::from_str)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked [`compose`](Self::compose); panics on degree mismatch.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self` raised to `exp` by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    /// Conjugate `other^self = self^-1 · other · self`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.inverse().then(other).then(self)
    }

    /// Disjoint cycles in order of their smallest point, each starting there.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        let mut cycle_lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        cycle_lengths.sort_unstable_by(|a, b| b.cmp(a));
        let element_order = cycle_lengths
            .iter()
            .fold(BigUint::from(1u32), |acc, &l| acc.lcm(&BigUint::from(l)));
        CycleStructure {
            cycle_lengths,
            element_order,
        }
    }

    /// Order of the element as a machine integer; `None` if it does not fit.
    pub fn order(&self) -> Option<u64> {
        u64::try_from(self.cycle_structure().element_order).ok()
    }

    /// True iff every cycle has the same length, i.e. `<self>` is semiregular.
    pub fn is_semiregular(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut common = None;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            loop {
                seen[p] = true;
                len += 1;
                p = self.images[p];
                if p == start {
                    break;
                }
            }
            match common {
                None => common = Some(len),
                Some(c) if c != len => return false,
                _ => {}
            }
        }
        true
    }

    fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::try_new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// Cycle notation with fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Multiset of cycle lengths (descending) and the element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    pub cycle_lengths: Vec<usize>,
    pub element_order: BigUint,
}

/// Schreier tree of one chain level. `label[pt]` is the index of the strong
/// generator carrying the parent of `pt` onto `pt`.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    label: Vec<u32>,
}

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            label: vec![NOT_IN_ORBIT; degree],
        };
        level.label[base] = ROOT;
        level.orbit.push(base);
        level
    }

    fn contains(&self, pt: usize) -> bool {
        self.label[pt] != NOT_IN_ORBIT
    }

    fn rebuild(&mut self, strong: &[Permutation]) {
        self.label.iter_mut().for_each(|l| *l = NOT_IN_ORBIT);
        self.label[self.base] = ROOT;
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut head = 0;
        while head < self.orbit.len() {
            let pt = self.orbit[head];
            head += 1;
            for &g in &self.gens {
                let img = strong[g].apply(pt);
                if self.label[img] == NOT_IN_ORBIT {
                    self.label[img] = g as u32;
                    self.orbit.push(img);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Chain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl Chain {
    /// Coset representative `u` at `level` with `base^u = pt`.
    fn representative(&self, level: usize, mut pt: usize) -> Permutation {
        let lvl = &self.levels[level];
        let mut path = Vec::new();
        while lvl.label[pt] != ROOT {
            let g = lvl.label[pt] as usize;
            path.push(g);
            pt = self.strong_inv[g].apply(pt);
        }
        let mut u = Permutation::identity(self.degree);
        for &g in path.iter().rev() {
            u = u.then(&self.strong[g]);
        }
        u
    }

    /// `h · u^-1` where `u` is the representative of `pt` at `level`.
    fn strip(&self, level: usize, mut h: Permutation, mut pt: usize) -> Permutation {
        let lvl = &self.levels[level];
        while lvl.label[pt] != ROOT {
            let g = lvl.label[pt] as usize;
            h = h.then(&self.strong_inv[g]);
            pt = self.strong_inv[g].apply(pt);
        }
        h
    }

    /// Sifts `h` from `from` downward; returns the residue and the level at
    /// which it dropped out (`levels.len()` if it passed every level).
    fn sift(&self, from: usize, mut h: Permutation) -> (Permutation, usize) {
        for j in from..self.levels.len() {
            let pt = h.apply(self.levels[j].base);
            if !self.levels[j].contains(pt) {
                return (h, j);
            }
            h = self.strip(j, h, pt);
        }
        (h, self.levels.len())
    }

    fn push_strong(&mut self, g: Permutation) -> usize {
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        self.strong.len() - 1
    }

    fn build(degree: usize, generators: &[Permutation]) -> Chain {
        let mut chain = Chain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() || chain.strong.contains(g) {
                continue;
            }
            let fixes_base = chain.levels.iter().all(|l| g.apply(l.base) == l.base);
            if fixes_base {
                let b = g.smallest_moved_point().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
            chain.push_strong(g.clone());
        }
        for (idx, g) in chain.strong.iter().enumerate() {
            for level in chain.levels.iter_mut() {
                level.gens.push(idx);
                if g.apply(level.base) != level.base {
                    break;
                }
            }
        }
        let strong = chain.strong.clone();
        for level in chain.levels.iter_mut() {
            level.rebuild(&strong);
        }

        let mut i = chain.levels.len() as isize - 1;
        'levels: while i >= 0 {
            let li = i as usize;
            let orbit = chain.levels[li].orbit.clone();
            let gens = chain.levels[li].gens.clone();
            for &beta in &orbit {
                let u_beta = chain.representative(li, beta);
                for &x in &gens {
                    let img = chain.strong[x].apply(beta);
                    // tree edges give trivial Schreier generators
                    if chain.levels[li].label[img] == x as u32 && chain.strong_inv[x].apply(img) == beta {
                        continue;
                    }
                    let h = chain.strip(li, u_beta.then(&chain.strong[x]), img);
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = chain.sift(li + 1, h);
                    if j < chain.levels.len() || !y.is_identity() {
                        if j == chain.levels.len() {
                            let b = y.smallest_moved_point().expect("non-identity residue");
                            chain.levels.push(Level::new(b, degree));
                        }
                        let idx = chain.push_strong(y);
                        for l in li + 1..=j {
                            chain.levels[l].gens.push(idx);
                            let strong = &chain.strong;
                            chain.levels[l].rebuild(strong);
                        }
                        i = j as isize;
                        continue 'levels;
                    }
                }
            }
            i -= 1;
        }
        chain
    }
}

/// A permutation group given by generators, with a lazily built stabilizer
/// chain. Immutable once constructed; safe to share across threads.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Chain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| Chain::build(self.degree, &self.generators))
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    /// Basic orbit lengths along the chain; their product is the order.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.chain()
            .levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    /// Order as `u64`, or `None` if it does not fit.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        let chain = self.chain();
        let (residue, j) = chain.sift(0, p.clone());
        Ok(j == chain.levels.len() && residue.is_identity())
    }

    /// Orbit partition, orbits sorted internally and ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Streams every element exactly once, lexicographically over the chain's
    /// transversal indices (first level most significant).
    pub fn elements(&self, cap: u64) -> Result<Elements<'_>, PermError> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(PermError::CapExceeded { order, cap });
        }
        let chain = self.chain();
        Ok(Elements::new(chain))
    }
}

/// Orbits of the group generated by `gens` on `0..degree`.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Iterator returned by [`PermGroup::elements`].
pub struct Elements<'a> {
    chain: &'a Chain,
    indices: Vec<usize>,
    // partial[l] = u_l · u_{l-1} · ... · u_0
    partial: Vec<Permutation>,
    started: bool,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a Chain) -> Self {
        let depth = chain.levels.len();
        let mut it = Elements {
            chain,
            indices: vec![0; depth],
            partial: Vec::with_capacity(depth),
            started: false,
            done: false,
        };
        it.refresh_from(0);
        it
    }

    fn refresh_from(&mut self, from: usize) {
        self.partial.truncate(from);
        for l in from..self.chain.levels.len() {
            let pt = self.chain.levels[l].orbit[self.indices[l]];
            let u = self.chain.representative(l, pt);
            let p = match l {
                0 => u,
                _ => u.then(&self.partial[l - 1]),
            };
            self.partial.push(p);
        }
    }

    fn current(&self) -> Permutation {
        self.partial
            .last()
            .cloned()
            .unwrap_or_else(|| Permutation::identity(self.chain.degree))
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        // odometer with the last level least significant
        let mut l = self.indices.len();
        loop {
            if l == 0 {
                self.done = true;
                return None;
            }
            l -= 1;
            self.indices[l] += 1;
            if self.indices[l] < self.chain.levels[l].orbit.len() {
                break;
            }
            self.indices[l] = 0;
        }
        self.refresh_from(l);
        Some(self.current())
    }
}
