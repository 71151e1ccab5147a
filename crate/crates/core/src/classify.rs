//! Special elements of a finite lattice, decided by exhaustive search.
//!
//! Every failed property carries the lexicographically first violating pair
//! `(y, z)` under index order, so reports are stable across runs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::lattice::{bits, FiniteLattice};

/// A violating pair for one of the defining formulas.
pub type Witness = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementReport {
    pub element: usize,
    pub neutral: bool,
    pub modular: bool,
    pub cancellable: bool,
    pub lower_modular: bool,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub neutral: Option<Witness>,
    pub modular: Option<Witness>,
    pub cancellable: Option<Witness>,
    pub lower_modular: Option<Witness>,
}

/// JSON shape of an [`ElementReport`], with element names in place of indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedElementReport {
    pub element: String,
    pub neutral: bool,
    pub modular: bool,
    pub cancellable: bool,
    pub lower_modular: bool,
    #[serde(default, skip_serializing_if = "NamedWitnesses::is_empty")]
    pub witnesses: NamedWitnesses,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWitnesses {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neutral: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modular: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cancellable: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_modular: Option<[String; 2]>,
}

impl NamedWitnesses {
    fn is_empty(&self) -> bool {
        *self == NamedWitnesses::default()
    }
}

impl ElementReport {
    pub fn named(&self, l: &FiniteLattice) -> NamedElementReport {
        let name = |w: Option<Witness>| w.map(|(y, z)| [l.name(y).to_string(), l.name(z).to_string()]);
        NamedElementReport {
            element: l.name(self.element).to_string(),
            neutral: self.neutral,
            modular: self.modular,
            cancellable: self.cancellable,
            lower_modular: self.lower_modular,
            witnesses: NamedWitnesses {
                neutral: name(self.witnesses.neutral),
                modular: name(self.witnesses.modular),
                cancellable: name(self.witnesses.cancellable),
                lower_modular: name(self.witnesses.lower_modular),
            },
        }
    }
}

/// Median identity `(x∨y)∧(y∨z)∧(z∨x) = (x∧y)∨(y∧z)∨(z∧x)` for all `y, z`.
pub fn is_neutral_eq(l: &FiniteLattice, x: usize) -> Result<(), Witness> {
    let n = l.len();
    for y in 0..n {
        for z in 0..n {
            let lhs = l.meet(l.meet(l.join(x, y), l.join(y, z)), l.join(z, x));
            let rhs = l.join(l.join(l.meet(x, y), l.meet(y, z)), l.meet(z, x));
            if lhs != rhs {
                return Err((y, z));
            }
        }
    }
    Ok(())
}

/// Neutrality via generated sublattices: every `{x, y, z}` must generate a
/// distributive sublattice.
pub fn is_neutral_gen(l: &FiniteLattice, x: usize) -> bool {
    let n = l.len();
    let mut cache: HashMap<u64, bool> = HashMap::new();
    for y in 0..n {
        for z in y..n {
            let generated = generated_sublattice(l, 1 << x | 1 << y | 1 << z);
            let distributive = *cache
                .entry(generated)
                .or_insert_with(|| sublattice_is_distributive(l, generated));
            if !distributive {
                return false;
            }
        }
    }
    true
}

/// Closes a set of elements under join and meet.
pub fn generated_sublattice(l: &FiniteLattice, seed: u64) -> u64 {
    let mut set = seed;
    let mut work: Vec<usize> = bits(seed).collect();
    while let Some(a) = work.pop() {
        for b in bits(set) {
            for c in [l.join(a, b), l.meet(a, b)] {
                if set >> c & 1 == 0 {
                    set |= 1 << c;
                    work.push(c);
                }
            }
        }
    }
    set
}

/// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` over all triples of a sublattice; the
/// dual law follows in any lattice.
pub fn sublattice_is_distributive(l: &FiniteLattice, set: u64) -> bool {
    let members: Vec<usize> = bits(set).collect();
    members.iter().all(|&a| {
        members.iter().all(|&b| {
            members
                .iter()
                .all(|&c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c)))
        })
    })
}

/// `y ≤ z ⟹ (x∨y)∧z = (x∧z)∨y`.
pub fn is_modular_element(l: &FiniteLattice, x: usize) -> Result<(), Witness> {
    let n = l.len();
    for y in 0..n {
        for z in bits(l.up_set(y)) {
            if l.meet(l.join(x, y), z) != l.join(l.meet(x, z), y) {
                return Err((y, z));
            }
        }
    }
    Ok(())
}

/// `x∨y = x∨z & x∧y = x∧z ⟹ y = z`.
pub fn is_cancellable(l: &FiniteLattice, x: usize) -> Result<(), Witness> {
    let n = l.len();
    for y in 0..n {
        for z in 0..n {
            if y != z && l.join(x, y) == l.join(x, z) && l.meet(x, y) == l.meet(x, z) {
                return Err((y, z));
            }
        }
    }
    Ok(())
}

/// `x ≤ y ⟹ x∨(y∧z) = y∧(x∨z)`.
pub fn is_lower_modular(l: &FiniteLattice, x: usize) -> Result<(), Witness> {
    let n = l.len();
    for y in bits(l.up_set(x)) {
        for z in 0..n {
            if l.join(x, l.meet(y, z)) != l.meet(y, l.join(x, z)) {
                return Err((y, z));
            }
        }
    }
    Ok(())
}

pub fn classify(l: &FiniteLattice, x: usize) -> ElementReport {
    let neutral = is_neutral_eq(l, x).err();
    let modular = is_modular_element(l, x).err();
    let cancellable = is_cancellable(l, x).err();
    let lower_modular = is_lower_modular(l, x).err();
    let report = ElementReport {
        element: x,
        neutral: neutral.is_none(),
        modular: modular.is_none(),
        cancellable: cancellable.is_none(),
        lower_modular: lower_modular.is_none(),
        witnesses: Witnesses {
            neutral,
            modular,
            cancellable,
            lower_modular,
        },
    };
    assert!(
        (!report.neutral || report.cancellable) && (!report.cancellable || report.modular),
        "special-element hierarchy broken at {} in {:?}",
        l.name(x),
        l
    );
    report
}

/// One report per element, in element order.
pub fn classify_all(l: &FiniteLattice) -> Vec<ElementReport> {
    (0..l.len()).map(|x| classify(l, x)).collect()
}

pub fn classify_all_named(l: &FiniteLattice) -> Vec<NamedElementReport> {
    classify_all(l).iter().map(|r| r.named(l)).collect()
}
