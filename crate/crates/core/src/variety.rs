//! Membership in generated varieties, and the finite lattice of varieties
//! generated by subsets of a small catalog.
//!
//! `A ∈ V(B1, ..., Bk)` is decided through the free object on `|A|`
//! generators: generator `i` is the tuple of values of `xi` under every
//! assignment of `|A|` variables into every `Bj`, paired with the `i`-th
//! element of `A`. Closing the pairs under multiplication either gives a
//! function onto `A` (a homomorphism from the free object, so `A` is in the
//! variety) or two words with equal tuples and different `A`-values, which is
//! an identity separating `A` from the `Bj`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify_all_named, NamedElementReport};
use crate::lattice::{build, CoverInput, FiniteLattice, LatticeError};
use crate::semigroup::FiniteSemigroup;
use crate::word::{Identity, Var, Word};

/// Default bound on the number of closure pairs.
pub const DEFAULT_CAP: usize = 1_000_000;
/// Largest semigroup order the oracle accepts.
pub const MAX_ORACLE_ORDER: usize = 6;
/// Largest catalog for [`build_variety_lattice`].
pub const MAX_CATALOG: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Yes,
    /// An identity that holds in every generator but fails in `A`.
    No(Identity),
    ResourceLimit(usize),
}

impl Membership {
    pub fn label(&self) -> &'static str {
        match self {
            Membership::Yes => "yes",
            Membership::No(_) => "no",
            Membership::ResourceLimit(_) => "resource-limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("semigroup {name} has order {order}; the oracle handles orders up to {MAX_ORACLE_ORDER}")]
    OrderLimit { name: String, order: usize },
    #[error("catalog has {0} members; at most {MAX_CATALOG} are supported")]
    CatalogLimit(usize),
    #[error("closure exceeded {0} pairs")]
    ResourceLimit(usize),
    #[error("proxy poset is not a lattice: {0}")]
    NotALattice(LatticeError),
    #[error("duplicate catalog name {0}")]
    DuplicateName(String),
}

fn check_order(s: &FiniteSemigroup) -> Result<(), VarietyError> {
    if s.order() > MAX_ORACLE_ORDER {
        return Err(VarietyError::OrderLimit {
            name: s.label(),
            order: s.order(),
        });
    }
    Ok(())
}

/// Coordinates of the big tuple: one block per generator semigroup, one
/// coordinate per assignment of `n` variables into it.
struct Coordinates<'a> {
    blocks: Vec<(&'a FiniteSemigroup, usize)>,
    len: usize,
}

impl<'a> Coordinates<'a> {
    fn new(bs: &'a [FiniteSemigroup], n: usize) -> Self {
        let blocks: Vec<_> = bs.iter().map(|b| (b, b.order().pow(n as u32))).collect();
        let len = blocks.iter().map(|(_, size)| size).sum();
        Coordinates { blocks, len }
    }

    /// Generator `i`: assignment `α` (digits base `|B|`, variable 0 most
    /// significant) sends it to its `i`-th digit.
    fn generator(&self, n: usize, i: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len);
        for &(b, size) in &self.blocks {
            let q = b.order();
            let shift = q.pow((n - 1 - i) as u32);
            out.extend((0..size).map(|alpha| ((alpha / shift) % q) as u8));
        }
        out
    }

    fn multiply(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len);
        let mut at = 0;
        for &(b, size) in &self.blocks {
            for k in at..at + size {
                out.push(b.mul(x[k] as usize, y[k] as usize) as u8);
            }
            at += size;
        }
        out
    }
}

fn separating_identity(u: &[usize], v: &[usize]) -> Identity {
    let mut names: HashMap<usize, Var> = HashMap::new();
    let mut word = |letters: &[usize]| {
        let vars = letters
            .iter()
            .map(|g| {
                let next = names.len() + 1;
                names.entry(*g).or_insert_with(|| Var::indexed(next)).clone()
            })
            .collect();
        Word::new(vars).expect("non-empty word")
    };
    let (u, v) = (word(u), word(v));
    Identity::Pair(u, v)
}

/// Is `a` in the variety generated by `bs`? An empty `bs` generates the
/// trivial variety.
pub fn in_variety(
    a: &FiniteSemigroup,
    bs: &[FiniteSemigroup],
    cap: usize,
) -> Result<Membership, VarietyError> {
    check_order(a)?;
    for b in bs {
        check_order(b)?;
    }
    let trivial = [crate::semigroup::catalog::t1()];
    let bs = if bs.is_empty() { &trivial[..] } else { bs };
    let n = a.order();
    let coords = Coordinates::new(bs, n);
    let gens: Vec<Vec<u8>> = (0..n).map(|i| coords.generator(n, i)).collect();

    // Pairs in insertion order: tuple, value in A, representative word.
    let mut entries: Vec<(Vec<u8>, usize, Vec<usize>)> = Vec::new();
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut pending: Vec<(Vec<u8>, usize, Vec<usize>)> =
        gens.iter().enumerate().map(|(i, g)| (g.clone(), i, vec![i])).collect();
    let mut next = 0;
    loop {
        for (tuple, value, word) in pending.drain(..) {
            match seen.get(&tuple) {
                Some(&e) if entries[e].1 == value => {}
                Some(&e) => return Ok(Membership::No(separating_identity(&entries[e].2, &word))),
                None => {
                    if entries.len() >= cap {
                        return Ok(Membership::ResourceLimit(cap));
                    }
                    seen.insert(tuple.clone(), entries.len());
                    entries.push((tuple, value, word));
                }
            }
        }
        if next == entries.len() {
            return Ok(Membership::Yes);
        }
        let (tuple, value, word) = &entries[next];
        for (i, g) in gens.iter().enumerate() {
            let mut w = word.clone();
            w.push(i);
            pending.push((coords.multiply(tuple, g), a.mul(*value, i), w));
        }
        next += 1;
    }
}

/// A class of catalog subsets generating the same variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyNode {
    pub name: String,
    /// Least generating subset as `{A,B}`.
    pub canonical_id: String,
    /// Least generating subset: fewest members, then earliest in catalog order.
    pub generators: Vec<String>,
    /// Every catalog subset generating this variety.
    pub subsets: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct GeneratedVarietyLattice {
    pub lattice: FiniteLattice,
    /// Indexed like the lattice elements.
    pub nodes: Vec<VarietyNode>,
    /// `V(X) ∨ V(Y) = V(X ∪ Y)` was confirmed for all subsets.
    pub join_is_exact: bool,
    /// Meets are induced by the finite order and may exceed the true
    /// intersection of varieties.
    pub meet_is_exact: bool,
}

/// Sidecar file describing the nodes of an emitted proxy lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProxyMetadata {
    pub nodes: Vec<VarietyNode>,
    pub join_is_exact: bool,
    pub meet_is_exact: bool,
    pub note: String,
}

pub const INEXACT_MEET_NOTE: &str =
    "meets are induced by the finite containment order and may be larger than the intersection of the varieties";

impl GeneratedVarietyLattice {
    pub fn metadata(&self) -> ProxyMetadata {
        ProxyMetadata {
            nodes: self.nodes.clone(),
            join_is_exact: self.join_is_exact,
            meet_is_exact: self.meet_is_exact,
            note: INEXACT_MEET_NOTE.to_string(),
        }
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }
}

/// Builds the lattice of varieties `V(X)` for all subsets `X` of `catalog`.
pub fn build_variety_lattice(
    catalog: &[FiniteSemigroup],
    cap: usize,
) -> Result<GeneratedVarietyLattice, VarietyError> {
    let k = catalog.len();
    if k > MAX_CATALOG {
        return Err(VarietyError::CatalogLimit(k));
    }
    let labels: Vec<String> = catalog.iter().map(FiniteSemigroup::label).collect();
    for (x, l) in labels.iter().enumerate() {
        if labels[..x].contains(l) {
            return Err(VarietyError::DuplicateName(l.clone()));
        }
    }
    let subsets = 1usize << k;
    let members = |mask: usize| -> Vec<FiniteSemigroup> {
        (0..k).filter(|b| mask >> b & 1 == 1).map(|b| catalog[b].clone()).collect()
    };
    // inside[s][mask]: catalog member s lies in V(mask).
    let mut inside = vec![vec![false; subsets]; k];
    for (s, row) in inside.iter_mut().enumerate() {
        for (mask, cell) in row.iter_mut().enumerate() {
            *cell = match in_variety(&catalog[s], &members(mask), cap)? {
                Membership::Yes => true,
                Membership::No(_) => false,
                Membership::ResourceLimit(c) => return Err(VarietyError::ResourceLimit(c)),
            };
        }
    }
    let contained = |x: usize, y: usize| (0..k).all(|s| x >> s & 1 == 0 || inside[s][y]);

    // Group subsets into classes; subsets are visited by size, then by
    // catalog order, so a class's first subset is its least generating set.
    let mut order: Vec<usize> = (0..subsets).collect();
    order.sort_by_key(|&m| (m.count_ones(), subset_key(m, k)));
    let mut class_of = vec![usize::MAX; subsets];
    let mut reps: Vec<usize> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &m in &order {
        match reps.iter().position(|&r| contained(m, r) && contained(r, m)) {
            Some(c) => {
                class_of[m] = c;
                classes[c].push(m);
            }
            None => {
                class_of[m] = reps.len();
                reps.push(m);
                classes.push(vec![m]);
            }
        }
    }
    let names_of = |m: usize| -> Vec<String> {
        (0..k).filter(|b| m >> b & 1 == 1).map(|b| labels[b].clone()).collect()
    };
    let nodes: Vec<VarietyNode> = reps
        .iter()
        .zip(&classes)
        .map(|(&r, members)| {
            let generators = names_of(r);
            let name = if members.contains(&0) {
                "T".to_string()
            } else {
                format!("V({})", generators.join(","))
            };
            VarietyNode {
                name,
                canonical_id: format!("{{{}}}", generators.join(",")),
                generators,
                subsets: members.iter().map(|&m| names_of(m)).collect(),
            }
        })
        .collect();

    let c = reps.len();
    let leq = |x: usize, y: usize| contained(reps[x], reps[y]);
    let mut covers = Vec::new();
    for x in 0..c {
        for y in 0..c {
            if x != y && leq(x, y) && !(0..c).any(|z| z != x && z != y && leq(x, z) && leq(z, y)) {
                covers.push((nodes[x].name.clone(), nodes[y].name.clone()));
            }
        }
    }
    let input = CoverInput {
        elements: nodes.iter().map(|n| n.name.clone()).collect(),
        covers,
    };
    let lattice = build(&input).map_err(VarietyError::NotALattice)?;
    let join_is_exact = (0..subsets).all(|x| {
        (0..subsets).all(|y| lattice.join(class_of[x], class_of[y]) == class_of[x | y])
    });
    Ok(GeneratedVarietyLattice {
        lattice,
        nodes,
        join_is_exact,
        meet_is_exact: false,
    })
}

/// Members in catalog order, for tie-breaking subsets of equal size.
fn subset_key(mask: usize, k: usize) -> Vec<usize> {
    (0..k).filter(|b| mask >> b & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub label: String,
    pub note: String,
    pub elements: Vec<NamedElementReport>,
}

/// Special-element classification of the proxy lattice. The results describe
/// the finite proxy only, not the lattice of all semigroup varieties.
pub fn probe_special_elements(gl: &GeneratedVarietyLattice) -> ProbeReport {
    ProbeReport {
        label: "EXPLORATORY".to_string(),
        note: format!(
            "classification of a finite proxy lattice; {INEXACT_MEET_NOTE}, so these flags say nothing certain about the lattice of all semigroup varieties"
        ),
        elements: classify_all_named(&gl.lattice),
    }
}

/// Value of every word of `vars` letters under each assignment into `s`,
/// used by the exhaustive identity cross-check.
pub fn value_vector(s: &FiniteSemigroup, word: &[usize], vars: usize) -> Vec<u8> {
    let q = s.order();
    let total = q.pow(vars as u32);
    let mut values = vec![0usize; vars];
    (0..total)
        .map(|alpha| {
            let mut rest = alpha;
            for slot in values.iter_mut().rev() {
                *slot = rest % q;
                rest /= q;
            }
            s.eval_indexed(word, &values) as u8
        })
        .collect()
}

/// Searches identities over at most `vars` variables and words of length at
/// most `max_len` for one holding in all of `bs` and failing in `a`.
pub fn bounded_separating_identity(
    a: &FiniteSemigroup,
    bs: &[FiniteSemigroup],
    vars: usize,
    max_len: usize,
) -> Option<Identity> {
    let trivial = [crate::semigroup::catalog::t1()];
    let bs = if bs.is_empty() { &trivial[..] } else { bs };
    let mut words: Vec<Vec<usize>> = Vec::new();
    for len in 1..=max_len {
        let mut w = vec![0usize; len];
        loop {
            words.push(w.clone());
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                w[i] += 1;
                if w[i] < vars {
                    break;
                }
                w[i] = 0;
            }
            if w.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    // Generator value vectors -> distinct A value vectors seen, with a word index.
    let mut groups: BTreeMap<Vec<Vec<u8>>, Vec<(Vec<u8>, usize)>> = BTreeMap::new();
    for (idx, w) in words.iter().enumerate() {
        let key: Vec<Vec<u8>> = bs.iter().map(|b| value_vector(b, w, vars)).collect();
        let in_a = value_vector(a, w, vars);
        let group = groups.entry(key).or_default();
        if let Some((_, first)) = group.iter().find(|(v, _)| *v != in_a) {
            let to_word = |w: &[usize]| Word::new(w.iter().map(|&x| Var::indexed(x + 1)).collect()).unwrap();
            return Some(Identity::Pair(to_word(&words[*first]), to_word(w)));
        }
        if !group.iter().any(|(v, _)| *v == in_a) {
            group.push((in_a, idx));
        }
    }
    None
}
