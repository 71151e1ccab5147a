//! Sweeps shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use lattice_forge::semigroup::{catalog, FiniteSemigroup};
use lattice_forge::word::{fin_deg_witness, Identity, Var, Word};

/// Every word over `x1..x{vars}` of length `1..=max_len`, shortest first,
/// then lexicographic in variable index.
pub fn words(vars: usize, max_len: usize) -> Vec<Word> {
    let names: Vec<Var> = (1..=vars).map(Var::indexed).collect();
    let mut out = Vec::new();
    for len in 1..=max_len {
        for code in 0..vars.pow(len as u32) {
            let mut c = code;
            let mut letters = vec![names[0].clone(); len];
            for slot in letters.iter_mut().rev() {
                *slot = names[c % vars].clone();
                c /= vars;
            }
            out.push(Word::new(letters).unwrap());
        }
    }
    out
}

pub fn nil_catalog() -> Vec<FiniteSemigroup> {
    catalog::all().into_iter().filter(|s| s.predicates().nil).collect()
}

/// `S ⊨ u ≈ v` with different contents forces `S ⊨ u ≈ 0`, for nil `S`.
pub fn split_content_violations() -> Vec<String> {
    let ws = words(3, 4);
    let mut bad = Vec::new();
    for s in nil_catalog() {
        for u in &ws {
            for v in &ws {
                if u.content() == v.content() {
                    continue;
                }
                let id = Identity::Pair(u.clone(), v.clone());
                if s.satisfies(&id).holds && !s.satisfies(&Identity::Zero(u.clone())).holds {
                    bad.push(format!("{}: {id}", s.label()));
                }
            }
        }
    }
    bad
}

/// `S ⊨ u ≈ p u q` with `p q` non-empty forces `S ⊨ u ≈ 0`, for nil `S`.
pub fn split_wrap_violations() -> Vec<String> {
    let ws = words(3, 4);
    let mut bad = Vec::new();
    for s in nil_catalog() {
        for u in &ws {
            let room = 5 - u.len();
            let with_empty = std::iter::once(None).chain(ws.iter().filter(|w| w.len() <= room).map(Some));
            for p in with_empty {
                let p_len = p.map_or(0, Word::len);
                let rest = std::iter::once(None).chain(ws.iter().filter(|w| w.len() + p_len <= room).map(Some));
                for q in rest {
                    if p.is_none() && q.is_none() {
                        continue;
                    }
                    let mut rhs = u.clone();
                    if let Some(p) = p {
                        rhs = p.concat(&rhs);
                    }
                    if let Some(q) = q {
                        rhs = rhs.concat(q);
                    }
                    let id = Identity::Pair(u.clone(), rhs);
                    if s.satisfies(&id).holds && !s.satisfies(&Identity::Zero(u.clone())).holds {
                        bad.push(format!("{}: {id}", s.label()));
                    }
                }
            }
        }
    }
    bad
}

/// Nilpotency index of a product of nil semigroups is the larger index.
pub fn nil_product_violations() -> Vec<String> {
    let nil = nil_catalog();
    let mut bad = Vec::new();
    for s in &nil {
        for t in &nil {
            let p = s.direct_product(t).unwrap();
            let (a, b) = (s.predicates().nilpotency_index, t.predicates().nilpotency_index);
            let expected = a.zip(b).map(|(a, b)| a.max(b));
            let got = p.predicates().nilpotency_index;
            if got != expected {
                bad.push(format!("{}: {got:?} != {expected:?}", p.label()));
            }
        }
    }
    bad
}

/// A degree witness at `n` implies one at `n + 1`.
pub fn fin_deg_monotonicity_violations(n_max: usize, l_max: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for s in catalog::all() {
        for n in 1..n_max {
            let here = fin_deg_witness(&s, n, l_max);
            let next = fin_deg_witness(&s, n + 1, l_max);
            if here.is_some() && next.is_none() {
                bad.push(format!("{} n={n}: {here:?} then none", s.label()));
            }
        }
    }
    bad
}
