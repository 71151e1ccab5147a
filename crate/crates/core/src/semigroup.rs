//! Finite semigroups given by multiplication tables.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Identity, Var, Word};

/// Largest order accepted for tables and direct products.
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    RangeError {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table must be {0}x{0}")]
    ShapeError(usize),
    #[error("order {0} outside 1..={MAX_ORDER}")]
    SizeLimit(usize),
    #[error("variable {0} is not bound by the assignment")]
    UnboundVariable(Var),
    #[error("malformed semigroup file: {0}")]
    Json(String),
}

/// On-disk format: `{"name": "ZM2", "order": 2, "table": [[0,0],[0,0]]}`,
/// 0-based indices, row = left factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u16>,
    name: Option<String>,
}

impl std::fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("name", &self.name)
            .field("table", &self.rows())
            .finish()
    }
}

/// Structural flags of a semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub commutative: bool,
    pub band: bool,
    pub semilattice: bool,
    pub has_zero: bool,
    pub nil: bool,
    pub nilpotency_index: Option<usize>,
}

/// Outcome of an identity check. A failed check carries the
/// lexicographically least violating assignment (variables in symbol order),
/// except for a zero-identity on a semigroup without zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satisfaction {
    pub holds: bool,
    pub witness: Option<BTreeMap<Var, usize>>,
}

pub fn build_semigroup(
    order: usize,
    table: &[Vec<usize>],
) -> Result<FiniteSemigroup, SemigroupError> {
    if order == 0 || order > MAX_ORDER {
        return Err(SemigroupError::SizeLimit(order));
    }
    if table.len() != order || table.iter().any(|row| row.len() != order) {
        return Err(SemigroupError::ShapeError(order));
    }
    let mut flat = Vec::with_capacity(order * order);
    for (row, entries) in table.iter().enumerate() {
        for (col, &value) in entries.iter().enumerate() {
            if value >= order {
                return Err(SemigroupError::RangeError {
                    row,
                    col,
                    value,
                    order,
                });
            }
            flat.push(value as u16);
        }
    }
    let s = FiniteSemigroup {
        order,
        table: flat,
        name: None,
    };
    s.check_associative()?;
    Ok(s)
}

impl FiniteSemigroup {
    pub fn from_file(file: &SemigroupFile) -> Result<Self, SemigroupError> {
        let s = build_semigroup(file.order, &file.table)?;
        Ok(s.named_opt(file.name.clone()))
    }

    pub fn from_json_str(text: &str) -> Result<Self, SemigroupError> {
        let file: SemigroupFile =
            serde_json::from_str(text).map_err(|e| SemigroupError::Json(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> SemigroupFile {
        SemigroupFile {
            name: self.name.clone(),
            order: self.order,
            table: self.rows(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("semigroup serializes")
    }

    pub fn named(self, name: &str) -> Self {
        self.named_opt(Some(name.to_string()))
    }

    fn named_opt(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name, or `S<order>` for anonymous tables.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("S{}", self.order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    fn check_associative(&self) -> Result<(), SemigroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(SemigroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// The two-sided zero, located by scan.
    pub fn zero(&self) -> Option<usize> {
        (0..self.order).find(|&z| (0..self.order).all(|a| self.mul(z, a) == z && self.mul(a, z) == z))
    }

    /// Left-to-right product of the letters of `w` under `assignment`.
    pub fn eval_word(
        &self,
        w: &Word,
        assignment: &BTreeMap<Var, usize>,
    ) -> Result<usize, SemigroupError> {
        let mut letters = w.letters().iter().map(|v| {
            assignment
                .get(v)
                .copied()
                .ok_or_else(|| SemigroupError::UnboundVariable(v.clone()))
        });
        let first = letters.next().expect("words are non-empty")?;
        letters.try_fold(first, |acc, x| Ok(self.mul(acc, x?)))
    }

    /// Evaluates a word whose letters have been mapped to positions in `values`.
    #[inline]
    pub fn eval_indexed(&self, word: &[usize], values: &[usize]) -> usize {
        let mut acc = values[word[0]];
        for &i in &word[1..] {
            acc = self.mul(acc, values[i]);
        }
        acc
    }

    pub fn satisfies(&self, id: &Identity) -> Satisfaction {
        let vars: Vec<Var> = id.content().into_iter().collect();
        let index = |w: &Word| -> Vec<usize> {
            w.letters()
                .iter()
                .map(|v| vars.binary_search(v).expect("variable in content"))
                .collect()
        };
        let zero = match id {
            Identity::Zero(_) => match self.zero() {
                Some(z) => Some(z),
                None => {
                    return Satisfaction {
                        holds: false,
                        witness: None,
                    }
                }
            },
            Identity::Pair(..) => None,
        };
        let lhs = index(id.lhs());
        let rhs = id.rhs().map(index);
        let violated = |values: &[usize]| {
            let left = self.eval_indexed(&lhs, values);
            match (&rhs, zero) {
                (Some(r), _) => left != self.eval_indexed(r, values),
                (None, Some(z)) => left != z,
                (None, None) => unreachable!("zero located above"),
            }
        };
        match first_assignment(self.order, vars.len(), violated) {
            None => Satisfaction {
                holds: true,
                witness: None,
            },
            Some(values) => Satisfaction {
                holds: false,
                witness: Some(vars.into_iter().zip(values).collect()),
            },
        }
    }

    pub fn satisfies_all(&self, ids: &[Identity]) -> bool {
        ids.iter().all(|id| self.satisfies(id).holds)
    }

    /// `w ≈ 0` checked as the system `w x ≈ x w ≈ w` with `x` fresh.
    pub fn satisfies_zero_expanded(&self, w: &Word) -> bool {
        let fresh = fresh_var(&w.content());
        let x = Word::var(fresh);
        self.satisfies(&Identity::Pair(w.concat(&x), w.clone())).holds
            && self.satisfies(&Identity::Pair(x.concat(w), w.clone())).holds
    }

    pub fn predicates(&self) -> Predicates {
        let n = self.order;
        let commutative = (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)));
        let band = (0..n).all(|a| self.mul(a, a) == a);
        let zero = self.zero();
        let nil = zero.is_some_and(|z| (0..n).all(|a| self.power_reaches(a, z)));
        let nilpotency_index = zero.and_then(|z| self.nilpotency_index(z));
        Predicates {
            commutative,
            band,
            semilattice: commutative && band,
            has_zero: zero.is_some(),
            nil,
            nilpotency_index,
        }
    }

    fn power_reaches(&self, a: usize, z: usize) -> bool {
        let mut p = a;
        for _ in 0..=self.order {
            if p == z {
                return true;
            }
            p = self.mul(p, a);
        }
        false
    }

    /// Least `k` such that every product of `k` elements is `z`, found by
    /// iterating the set of all length-`k` products. Stops at `order + 1`.
    fn nilpotency_index(&self, z: usize) -> Option<usize> {
        let mut products: BTreeSet<usize> = (0..self.order).collect();
        for k in 1..=self.order + 1 {
            if products.len() == 1 && products.contains(&z) {
                return Some(k);
            }
            products = products
                .iter()
                .flat_map(|&p| (0..self.order).map(move |a| (p, a)))
                .map(|(p, a)| self.mul(p, a))
                .collect();
        }
        None
    }

    /// Componentwise product; `(s, t)` has index `s * |T| + t`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> Result<FiniteSemigroup, SemigroupError> {
        let (m, k) = (self.order, other.order);
        let order = m * k;
        if order > MAX_ORDER {
            return Err(SemigroupError::SizeLimit(order));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let s = self.mul(a / k, b / k);
                let t = other.mul(a % k, b % k);
                table.push((s * k + t) as u16);
            }
        }
        Ok(FiniteSemigroup {
            order,
            table,
            name: Some(format!("{}x{}", self.label(), other.label())),
        })
    }
}

/// A variable name not in `taken`: `x`, then `x1`, `x2`, ...
pub fn fresh_var(taken: &BTreeSet<Var>) -> Var {
    std::iter::once(Var::new("x"))
        .chain((1..).map(Var::indexed))
        .find(|v| !taken.contains(v))
        .expect("unbounded supply of names")
}

/// Lexicographically first assignment in `0..order`^`arity` accepted by
/// `pred`. The empty assignment is tried when `arity` is 0.
pub(crate) fn first_assignment(
    order: usize,
    arity: usize,
    mut pred: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let mut values = vec![0usize; arity];
    loop {
        if pred(&values) {
            return Some(values);
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < order {
                break;
            }
            values[i] = 0;
        }
    }
}

/// The bundled semigroups, in a fixed order: `T1, SL2, ZM2, ZM3, N3, N4, B2`.
pub mod catalog {
    use super::FiniteSemigroup;

    const FILES: [(&str, &str); 7] = [
        ("T1", include_str!("../catalog/semigroups/T1.json")),
        ("SL2", include_str!("../catalog/semigroups/SL2.json")),
        ("ZM2", include_str!("../catalog/semigroups/ZM2.json")),
        ("ZM3", include_str!("../catalog/semigroups/ZM3.json")),
        ("N3", include_str!("../catalog/semigroups/N3.json")),
        ("N4", include_str!("../catalog/semigroups/N4.json")),
        ("B2", include_str!("../catalog/semigroups/B2.json")),
    ];

    pub fn names() -> Vec<&'static str> {
        FILES.iter().map(|(n, _)| *n).collect()
    }

    pub fn json(name: &str) -> Option<&'static str> {
        FILES.iter().find(|(n, _)| *n == name).map(|(_, j)| *j)
    }

    pub fn get(name: &str) -> Option<FiniteSemigroup> {
        json(name).map(|j| FiniteSemigroup::from_json_str(j).expect("bundled semigroup is valid"))
    }

    pub fn all() -> Vec<FiniteSemigroup> {
        names().into_iter().filter_map(get).collect()
    }

    pub fn t1() -> FiniteSemigroup {
        get("T1").unwrap()
    }
    pub fn sl2() -> FiniteSemigroup {
        get("SL2").unwrap()
    }
    pub fn zm2() -> FiniteSemigroup {
        get("ZM2").unwrap()
    }
    pub fn zm3() -> FiniteSemigroup {
        get("ZM3").unwrap()
    }
    pub fn n3() -> FiniteSemigroup {
        get("N3").unwrap()
    }
    pub fn n4() -> FiniteSemigroup {
        get("N4").unwrap()
    }
    pub fn b2() -> FiniteSemigroup {
        get("B2").unwrap()
    }
}
