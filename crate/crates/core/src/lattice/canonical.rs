use super::{bits, FiniteLattice};

/// Isomorphism-invariant code of a lattice: the lexicographically least
/// up-set matrix over all relabelings that respect a per-element invariant.
///
/// The search is exponential in the size of the largest invariant class, so
/// this is meant for desk-scale lattices (the enumeration corpus and the
/// named catalog).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub size: usize,
    pub rows: Vec<u64>,
}

impl FiniteLattice {
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.len();
        let depth = self.depths();
        let mut keyed: Vec<(ElementKey, usize)> = (0..n)
            .map(|x| {
                let lower = (0..n).filter(|&y| self.covers(y, x)).count();
                let upper = (0..n).filter(|&y| self.covers(x, y)).count();
                (
                    ElementKey {
                        depth: depth[x],
                        down: self.down_set(x).count_ones(),
                        up: self.up_set(x).count_ones(),
                        lower_covers: lower,
                        upper_covers: upper,
                    },
                    x,
                )
            })
            .collect();
        keyed.sort();
        // Position p may only receive elements from the same key class.
        let class_of_position: Vec<ElementKey> = keyed.iter().map(|(k, _)| *k).collect();
        let mut search = Search {
            lattice: self,
            keys: &keyed,
            slots: &class_of_position,
            placed: Vec::with_capacity(n),
            used: 0,
            best: None,
        };
        search.run();
        CanonicalForm {
            size: n,
            rows: search.best.unwrap_or_default(),
        }
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.down_set(x).count_ones());
        let mut depth = vec![0usize; n];
        for &x in &order {
            depth[x] = bits(self.down_set(x) & !(1 << x))
                .map(|y| depth[y] + 1)
                .max()
                .unwrap_or(0);
        }
        depth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct ElementKey {
    depth: usize,
    down: u32,
    up: u32,
    lower_covers: usize,
    upper_covers: usize,
}

struct Search<'a> {
    lattice: &'a FiniteLattice,
    keys: &'a [(ElementKey, usize)],
    slots: &'a [ElementKey],
    placed: Vec<usize>,
    used: u64,
    best: Option<Vec<u64>>,
}

impl Search<'_> {
    fn run(&mut self) {
        let p = self.placed.len();
        if p == self.slots.len() {
            let code = self.code();
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        }
        let slot = self.slots[p];
        for i in 0..self.keys.len() {
            let (key, x) = self.keys[i];
            if key != slot || self.used >> x & 1 == 1 {
                continue;
            }
            self.used |= 1 << x;
            self.placed.push(x);
            self.run();
            self.placed.pop();
            self.used &= !(1 << x);
        }
    }

    fn code(&self) -> Vec<u64> {
        let l = self.lattice;
        self.placed
            .iter()
            .map(|&x| {
                self.placed
                    .iter()
                    .enumerate()
                    .filter(|&(_, &y)| l.leq(x, y))
                    .fold(0u64, |acc, (q, _)| acc | 1 << q)
            })
            .collect()
    }
}
