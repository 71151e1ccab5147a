use std::collections::{BTreeMap, HashSet};

use super::{bits, full_mask, CanonicalForm, FiniteLattice, LatticeError};

pub const MAX_ENUMERATION_SIZE: usize = 8;

/// All lattices up to a size bound, optionally reduced to one
/// representative per isomorphism class.
#[derive(Debug, Clone)]
pub struct LatticeEnumeration {
    pub lattices: Vec<FiniteLattice>,
    /// Isomorphism classes per size; `None` when canonical deduplication was
    /// switched off.
    pub class_counts: Option<BTreeMap<usize, usize>>,
}

/// Every lattice on at most `n_max` elements, one per isomorphism class.
pub fn enumerate_small(n_max: usize) -> Result<LatticeEnumeration, LatticeError> {
    enumerate_small_with(n_max, true)
}

/// Lattices are generated as bottom + naturally labelled inner poset + top.
/// Inner posets grow one maximal element at a time; since later elements are
/// never below earlier ones, the common lower bounds of any pair are final as
/// soon as both exist, which lets us prune pairs without a unique meet early.
pub fn enumerate_small_with(
    n_max: usize,
    canonical: bool,
) -> Result<LatticeEnumeration, LatticeError> {
    if !(1..=MAX_ENUMERATION_SIZE).contains(&n_max) {
        return Err(LatticeError::SizeLimit(n_max, 1, MAX_ENUMERATION_SIZE));
    }
    let mut lattices = Vec::new();
    for n in 1..=n_max {
        let mut of_size = Vec::new();
        if n <= 2 {
            let up = if n == 1 { vec![1] } else { vec![0b11, 0b10] };
            of_size.push(FiniteLattice::from_up_sets(names(n), up)?);
        } else {
            let mut inner = Vec::with_capacity(n - 2);
            extend_inner(n - 2, &mut inner, &mut |downs| {
                if let Ok(l) = FiniteLattice::from_up_sets(names(n), bounded_up_sets(downs)) {
                    of_size.push(l);
                }
            });
        }
        if canonical {
            let mut seen: HashSet<CanonicalForm> = HashSet::new();
            let mut keyed: Vec<(CanonicalForm, FiniteLattice)> = of_size
                .into_iter()
                .filter_map(|l| {
                    let code = l.canonical_form();
                    seen.insert(code.clone()).then_some((code, l))
                })
                .collect();
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            lattices.extend(keyed.into_iter().map(|(_, l)| l));
        } else {
            lattices.extend(of_size);
        }
    }
    let class_counts = canonical.then(|| {
        let mut counts = BTreeMap::new();
        for l in &lattices {
            *counts.entry(l.len()).or_insert(0) += 1;
        }
        counts
    });
    Ok(LatticeEnumeration {
        lattices,
        class_counts,
    })
}

/// `downs[k]` is the strict down-set of inner element `k` (bits < k).
fn extend_inner(target: usize, downs: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
    let k = downs.len();
    if k == target {
        emit(downs);
        return;
    }
    for candidate in 0..(1u64 << k) {
        // Must be an order ideal of the current inner poset.
        if bits(candidate).any(|d| downs[d] & !candidate != 0) {
            continue;
        }
        if !meets_unique(downs, candidate) {
            continue;
        }
        downs.push(candidate);
        extend_inner(target, downs, emit);
        downs.pop();
    }
}

/// With the bottom adjoined, checks that the new element (strict down-set
/// `new_down`) has a unique greatest common lower bound with every existing
/// inner element.
fn meets_unique(downs: &[u64], new_down: u64) -> bool {
    let k = downs.len();
    let new_closed = new_down | 1 << k;
    (0..k).all(|y| {
        let y_closed = downs[y] | 1 << y;
        let common = new_closed & y_closed;
        // Only the bottom is common: meet is the bottom.
        common == 0 || bits(common).any(|m| (downs[m] | 1 << m) & common == common)
    })
}

fn bounded_up_sets(downs: &[u64]) -> Vec<u64> {
    let m = downs.len();
    let n = m + 2;
    let top = m + 1;
    let mut up = vec![0u64; n];
    up[0] = full_mask(n);
    up[top] = 1 << top;
    for (x, row) in up.iter_mut().enumerate().take(m + 1).skip(1) {
        let inner = x - 1;
        *row = 1 << x | 1 << top;
        for (y, &dy) in downs.iter().enumerate() {
            if dy >> inner & 1 == 1 {
                *row |= 1 << (y + 1);
            }
        }
    }
    up
}

fn names(n: usize) -> Vec<String> {
    const INNER: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    match n {
        1 => vec!["0".into()],
        _ => std::iter::once("0".to_string())
            .chain(INNER[..n - 2].iter().map(|s| s.to_string()))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}
