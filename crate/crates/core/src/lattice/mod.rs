//! Finite bounded lattices given by their cover relation.
//!
//! Elements are dense indices `0..n` in input order. The order relation is
//! stored as one `u64` bitset per element (so `n <= 64`), and join/meet are
//! precomputed `n x n` tables.

mod canonical;
mod enumerate;
mod random;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canonical::CanonicalForm;
pub use enumerate::{enumerate_small, LatticeEnumeration};
pub use random::random_lattice;

/// Largest lattice the table representation supports.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("empty element name")]
    EmptyName,
    #[error("unknown element name {0:?} in cover list")]
    UnknownName(String),
    #[error("cover relation contains a cycle through {0:?}")]
    CycleDetected(String),
    #[error("pair ({0}, {1}) has no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("order has no {0} element")]
    NoBound(&'static str),
    #[error("element index {0} out of range for lattice of size {1}")]
    IndexOutOfRange(usize, usize),
    #[error("size {0} outside the supported range {1}..={2}")]
    SizeLimit(usize, usize, usize),
    #[error("malformed lattice file: {0}")]
    Json(String),
}

/// Raw lattice description, also the on-disk JSON format:
/// `{"elements": ["0","a","1"], "covers": [["0","a"],["a","1"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverInput {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl CoverInput {
    pub fn new<S: Into<String>>(elements: Vec<S>, covers: Vec<(S, S)>) -> Self {
        CoverInput {
            elements: elements.into_iter().map(Into::into).collect(),
            covers: covers
                .into_iter()
                .map(|(a, b)| (a.into(), b.into()))
                .collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(text).map_err(|e| LatticeError::Json(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("cover input serializes")
    }
}

/// A validated finite bounded lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    /// `up[x]` has bit `y` set iff `x <= y`.
    up: Vec<u64>,
    /// `down[x]` has bit `y` set iff `y <= x`.
    down: Vec<u64>,
    join: Vec<u8>,
    meet: Vec<u8>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.names)
            .field("covers", &self.cover_input().covers)
            .finish()
    }
}

/// Builds a lattice from a cover relation. The order is the reflexive
/// transitive closure of `covers`.
pub fn build(input: &CoverInput) -> Result<FiniteLattice, LatticeError> {
    let n = input.elements.len();
    if n > MAX_ELEMENTS {
        return Err(LatticeError::SizeLimit(n, 1, MAX_ELEMENTS));
    }
    let mut index = HashMap::with_capacity(n);
    for (i, name) in input.elements.iter().enumerate() {
        if name.is_empty() {
            return Err(LatticeError::EmptyName);
        }
        if index.insert(name.as_str(), i).is_some() {
            return Err(LatticeError::DuplicateName(name.clone()));
        }
    }
    let lookup = |name: &String| {
        index
            .get(name.as_str())
            .copied()
            .ok_or_else(|| LatticeError::UnknownName(name.clone()))
    };
    let mut up = vec![0u64; n];
    for (i, row) in up.iter_mut().enumerate() {
        *row = 1 << i;
    }
    for (lo, hi) in &input.covers {
        let (lo, hi) = (lookup(lo)?, lookup(hi)?);
        if lo == hi {
            return Err(LatticeError::CycleDetected(input.elements[lo].clone()));
        }
        up[lo] |= 1 << hi;
    }
    // Warshall closure on bitset rows.
    for k in 0..n {
        let row_k = up[k];
        for row in up.iter_mut() {
            if *row >> k & 1 == 1 {
                *row |= row_k;
            }
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if up[x] >> y & 1 == 1 && up[y] >> x & 1 == 1 {
                return Err(LatticeError::CycleDetected(input.elements[x].clone()));
            }
        }
    }
    FiniteLattice::from_up_sets(input.elements.clone(), up)
}

impl FiniteLattice {
    /// Builds from already transitively closed up-sets. Antisymmetry must
    /// hold; bounds and pairwise joins/meets are checked here.
    pub(crate) fn from_up_sets(names: Vec<String>, up: Vec<u64>) -> Result<Self, LatticeError> {
        let n = names.len();
        debug_assert_eq!(up.len(), n);
        if n == 0 {
            return Err(LatticeError::NoBound("bottom"));
        }
        let mut down = vec![0u64; n];
        for (x, &row) in up.iter().enumerate() {
            for y in bits(row) {
                down[y] |= 1 << x;
            }
        }
        let all = full_mask(n);
        let bottom = (0..n)
            .find(|&x| up[x] == all)
            .ok_or(LatticeError::NoBound("bottom"))?;
        let top = (0..n)
            .find(|&x| down[x] == all)
            .ok_or(LatticeError::NoBound("top"))?;

        let mut join = vec![0u8; n * n];
        let mut meet = vec![0u8; n * n];
        for x in 0..n {
            for y in x..n {
                let uppers = up[x] & up[y];
                // The least upper bound is the upper bound below every other.
                let j = bits(uppers)
                    .find(|&u| up[u] & uppers == uppers)
                    .ok_or_else(|| {
                        LatticeError::NotALattice(names[x].clone(), names[y].clone(), "join")
                    })?;
                let lowers = down[x] & down[y];
                let m = bits(lowers)
                    .find(|&l| down[l] & lowers == lowers)
                    .ok_or_else(|| {
                        LatticeError::NotALattice(names[x].clone(), names[y].clone(), "meet")
                    })?;
                join[x * n + y] = j as u8;
                join[y * n + x] = j as u8;
                meet[x * n + y] = m as u8;
                meet[y * n + x] = m as u8;
            }
        }
        let lattice = FiniteLattice {
            names,
            up,
            down,
            join,
            meet,
            bottom,
            top,
        };
        debug_assert!(lattice.check_laws().is_ok());
        Ok(lattice)
    }

    pub fn from_json_str(text: &str) -> Result<Self, LatticeError> {
        build(&CoverInput::from_json_str(text)?)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Order test. Panics on out-of-range indices; see [`Self::try_leq`].
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    pub fn try_leq(&self, x: usize, y: usize) -> Result<bool, LatticeError> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.leq(x, y))
    }

    pub fn try_join(&self, x: usize, y: usize) -> Result<usize, LatticeError> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.join(x, y))
    }

    pub fn try_meet(&self, x: usize, y: usize) -> Result<usize, LatticeError> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.meet(x, y))
    }

    fn check_index(&self, x: usize) -> Result<(), LatticeError> {
        if x < self.len() {
            Ok(())
        } else {
            Err(LatticeError::IndexOutOfRange(x, self.len()))
        }
    }

    /// Bitset of all `y` with `x <= y`.
    #[inline]
    pub fn up_set(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// Bitset of all `y` with `y <= x`.
    #[inline]
    pub fn down_set(&self, x: usize) -> u64 {
        self.down[x]
    }

    /// True iff `y` covers `x`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y) && (self.up[x] & self.down[y]).count_ones() == 2
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.covers(self.bottom, x))
            .collect()
    }

    /// The Hasse diagram in the file format, covers listed in index order.
    pub fn cover_input(&self) -> CoverInput {
        let n = self.len();
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.covers(x, y) {
                    covers.push((self.names[x].clone(), self.names[y].clone()));
                }
            }
        }
        CoverInput {
            elements: self.names.clone(),
            covers,
        }
    }

    pub fn to_json_string(&self) -> String {
        self.cover_input().to_json_string()
    }

    /// Same lattice with renamed elements.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, LatticeError> {
        if names.len() != self.len() {
            return Err(LatticeError::SizeLimit(names.len(), self.len(), self.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(LatticeError::EmptyName);
            }
            if !seen.insert(name.as_str()) {
                return Err(LatticeError::DuplicateName(name.clone()));
            }
        }
        self.names = names;
        Ok(self)
    }

    /// True iff `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` for all triples.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// True iff `x <= z` implies `x ∨ (y ∧ z) = (x ∨ y) ∧ z`.
    pub fn is_modular(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|z| {
                !self.leq(x, z)
                    || (0..n).all(|y| self.join(x, self.meet(y, z)) == self.meet(self.join(x, y), z))
            })
        })
    }

    /// Re-derives the lattice laws from the tables. Used in debug builds and
    /// by the test suites.
    pub fn check_laws(&self) -> Result<(), String> {
        let n = self.len();
        for x in 0..n {
            if !self.leq(self.bottom, x) || !self.leq(x, self.top) {
                return Err(format!("{} lies outside the bounds", self.names[x]));
            }
            for y in 0..n {
                if self.leq(x, y) && self.leq(y, x) && x != y {
                    return Err(format!("antisymmetry fails at {x},{y}"));
                }
                let (j, m) = (self.join(x, y), self.meet(x, y));
                if j != self.join(y, x) || m != self.meet(y, x) {
                    return Err(format!("commutativity fails at {x},{y}"));
                }
                if !self.leq(x, j) || !self.leq(y, j) || !self.leq(m, x) || !self.leq(m, y) {
                    return Err(format!("bound property fails at {x},{y}"));
                }
                if self.join(x, self.meet(x, y)) != x || self.meet(x, self.join(x, y)) != x {
                    return Err(format!("absorption fails at {x},{y}"));
                }
                if (self.join(x, x), self.meet(x, x)) != (x, x) {
                    return Err(format!("idempotence fails at {x}"));
                }
                for z in 0..n {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return Err(format!("transitivity fails at {x},{y},{z}"));
                    }
                    if self.join(self.join(x, y), z) != self.join(x, self.join(y, z))
                        || self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z))
                    {
                        return Err(format!("associativity fails at {x},{y},{z}"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of `mask` in increasing order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}
