//! Mechanical checks of the abstract-lattice lemmas about cancellable and
//! modular elements over neutral atoms.
//!
//! Cancellability is recomputed here from its definition rather than taken
//! from [`crate::classify`], so every run also cross-validates that module.
//! `instances_tested` counts only instances where the lemma's hypothesis
//! holds; a pass with zero instances is vacuous.

use serde::{Deserialize, Serialize};

use crate::classify;
use crate::lattice::{CoverInput, FiniteLattice};

pub const JOIN_WITH_NEUTRAL_ATOM: &str = "join_with_neutral_atom";
pub const OVER_NEUTRAL_ATOM: &str = "over_neutral_atom";
pub const MODULAR_NONCANCELLABLE_WITNESS: &str = "modular_noncancellable_witness";
pub const HIERARCHY: &str = "hierarchy";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub lemma: String,
    pub lattice_id: String,
    pub instances_tested: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Element names of the offending tuple, in the order given by `detail`.
    pub tuple: Vec<String>,
    pub detail: String,
    pub lattice: CoverInput,
}

struct Ctx<'a> {
    l: &'a FiniteLattice,
    report: CheckReport,
}

impl<'a> Ctx<'a> {
    fn new(lemma: &str, id: &str, l: &'a FiniteLattice) -> Self {
        Ctx {
            l,
            report: CheckReport {
                lemma: lemma.to_string(),
                lattice_id: id.to_string(),
                instances_tested: 0,
                violations: Vec::new(),
            },
        }
    }

    fn violation(&mut self, tuple: &[usize], detail: String) {
        self.report.violations.push(Violation {
            tuple: tuple.iter().map(|&e| self.l.name(e).to_string()).collect(),
            detail,
            lattice: self.l.cover_input(),
        });
    }
}

/// Cancellability straight from the definition, for every element.
fn cancellable_flags(l: &FiniteLattice) -> Vec<bool> {
    let n = l.len();
    (0..n)
        .map(|x| {
            !(0..n).any(|y| {
                (y + 1..n).any(|z| l.join(x, y) == l.join(x, z) && l.meet(x, y) == l.meet(x, z))
            })
        })
        .collect()
}

fn neutral_atoms(l: &FiniteLattice) -> Vec<usize> {
    l.atoms()
        .into_iter()
        .filter(|&a| classify::is_neutral_eq(l, a).is_ok())
        .collect()
}

/// For a neutral atom `a`: `x` is cancellable iff `x ∨ a` is.
pub fn check_join_with_neutral_atom(l: &FiniteLattice, id: &str) -> CheckReport {
    let mut ctx = Ctx::new(JOIN_WITH_NEUTRAL_ATOM, id, l);
    let canc = cancellable_flags(l);
    for a in neutral_atoms(l) {
        for x in 0..l.len() {
            ctx.report.instances_tested += 1;
            let xa = l.join(x, a);
            if canc[x] != canc[xa] {
                ctx.violation(
                    &[a, x],
                    format!("(a, x): cancellable(x) = {} but cancellable(x∨a) = {}", canc[x], canc[xa]),
                );
            }
        }
    }
    ctx.report
}

/// For a neutral atom `a`: if cancellation of `x` holds modulo `a` (joins
/// and meets with `y∨a`, `z∨a` determine `y∨a`), then `x` is cancellable.
pub fn check_over_neutral_atom(l: &FiniteLattice, id: &str) -> CheckReport {
    let mut ctx = Ctx::new(OVER_NEUTRAL_ATOM, id, l);
    let canc = cancellable_flags(l);
    let n = l.len();
    for a in neutral_atoms(l) {
        for x in 0..n {
            let hypothesis = (0..n).all(|y| {
                let ya = l.join(y, a);
                (0..n).all(|z| {
                    let za = l.join(z, a);
                    !(l.join(x, ya) == l.join(x, za) && l.meet(x, ya) == l.meet(x, za)) || ya == za
                })
            });
            if hypothesis {
                ctx.report.instances_tested += 1;
                if !canc[x] {
                    ctx.violation(&[a, x], "(a, x): hypothesis holds but x is not cancellable".into());
                }
            }
        }
    }
    ctx.report
}

/// For modular, non-cancellable `x` and every witness pair `y ≠ z`, the
/// element `x' = x ∧ (y ∨ z)` satisfies `x' ≤ x`, `x'∨y = x'∨z`,
/// `x'∧y = x'∧z` and `y∨z = x'∨y`.
pub fn check_modular_noncancellable_witness(l: &FiniteLattice, id: &str) -> CheckReport {
    let mut ctx = Ctx::new(MODULAR_NONCANCELLABLE_WITNESS, id, l);
    let canc = cancellable_flags(l);
    let n = l.len();
    for x in 0..n {
        if canc[x] || classify::is_modular_element(l, x).is_err() {
            continue;
        }
        for y in 0..n {
            for z in 0..n {
                if y == z || l.join(x, y) != l.join(x, z) || l.meet(x, y) != l.meet(x, z) {
                    continue;
                }
                ctx.report.instances_tested += 1;
                let yz = l.join(y, z);
                let xp = l.meet(x, yz);
                let mut failed = Vec::new();
                if !l.leq(xp, x) {
                    failed.push("x' ≤ x");
                }
                if l.join(xp, y) != l.join(xp, z) {
                    failed.push("x'∨y = x'∨z");
                }
                if l.meet(xp, y) != l.meet(xp, z) {
                    failed.push("x'∧y = x'∧z");
                }
                if yz != l.join(xp, y) {
                    failed.push("y∨z = x'∨y");
                }
                if !failed.is_empty() {
                    ctx.violation(
                        &[x, y, z, xp],
                        format!("(x, y, z, x'): fails {}", failed.join(", ")),
                    );
                }
            }
        }
    }
    ctx.report
}

/// Neutral implies cancellable implies modular, element by element.
pub fn check_hierarchy(l: &FiniteLattice, id: &str) -> CheckReport {
    let mut ctx = Ctx::new(HIERARCHY, id, l);
    let canc = cancellable_flags(l);
    for x in 0..l.len() {
        ctx.report.instances_tested += 1;
        let neutral = classify::is_neutral_eq(l, x).is_ok();
        let modular = classify::is_modular_element(l, x).is_ok();
        if neutral && !canc[x] {
            ctx.violation(&[x], "(x): neutral but not cancellable".into());
        }
        if canc[x] && !modular {
            ctx.violation(&[x], "(x): cancellable but not modular".into());
        }
    }
    ctx.report
}

/// All four checks, in a fixed order.
pub fn check_all(l: &FiniteLattice, id: &str) -> Vec<CheckReport> {
    vec![
        check_join_with_neutral_atom(l, id),
        check_over_neutral_atom(l, id),
        check_modular_noncancellable_witness(l, id),
        check_hierarchy(l, id),
    ]
}
