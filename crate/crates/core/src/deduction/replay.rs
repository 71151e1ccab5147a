//! Replays of two identity-derivation arguments about cancellable semigroup
//! varieties.
//!
//! Case 2 starts from a target `x1...xn ≈ P (xi...xj)^l S` and a premise
//! `x1...xn ≈ P' (xi'...xj')^r S'`. It builds helper identities by
//! substitution and multiplication, then chains rewrites from `x1...xn` to
//! the target's right side. Each rewrite uses the premise or one helper
//! identity. Case 1 does the same for the exponent identities `x^2 ≈ x^m`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::{
    find_step, multiply_identity, substitute_in_identity, Bounds, DerivationProof, ProofStep,
    RewriteSystem, Rule, Side, Term,
};
use crate::word::{
    concat_all, fin_deg_identity, normal_form_w, Identity, Var, WSubvariety, Word,
};

/// Largest `n`, `l` and `r` accepted, to keep words small.
pub const MAX_PARAMETER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case2Branch {
    /// `j < j'`.
    Staggered,
    /// `i = i'` and `j = j'`.
    EqualIntervals,
    /// `i < i'` and `j' <= j`.
    NestedLeft,
    /// `i = i'` and `j' < j`, replayed as the left-right mirror of
    /// [`Case2Branch::NestedLeft`].
    NestedRight,
}

/// A helper identity and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constructed {
    pub label: String,
    pub identity: Identity,
    pub construction: String,
    /// Holds in `W = [x^2 y ≈ 0, xy ≈ yx]`.
    pub holds_in_w: bool,
    /// A conventional closed form, when one is customarily quoted for this
    /// identity, and whether the construction reproduces it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<Identity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_closed_form: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub description: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    /// Label of the identity used.
    pub via: String,
    pub step: ProofStep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub case: &'static str,
    pub parameters: BTreeMap<&'static str, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Case2Branch>,
    pub target: Identity,
    pub premise: Identity,
    pub constructed: Vec<Constructed>,
    pub checks: Vec<Check>,
    pub chain: Vec<ChainLink>,
    /// The chain runs from the target's left side to its right side and
    /// every link re-validates.
    pub derived: bool,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.derived && self.checks.iter().all(|c| c.holds)
    }
}

fn x(k: usize) -> Var {
    Var::indexed(k)
}

/// `x_from ... x_to`, or `None` when empty.
fn run(from: usize, to: usize) -> Option<Word> {
    Word::indexed_range(from, to)
}

fn pow(w: &Word, k: usize) -> Option<Word> {
    w.pow(k)
}

fn cat(parts: &[Option<&Word>]) -> Word {
    concat_all(parts.iter().copied()).expect("non-empty product")
}

/// Puts `w` right before `x(k+1)`, or at the right end when `k = n`.
fn pump_right(id: &Identity, n: usize, k: usize, w: &Word) -> (Identity, String) {
    if k < n {
        let by = w.concat(&Word::var(x(k + 1)));
        let out = substitute_in_identity(id, &x(k + 1), &by).expect("variable occurs");
        (out, format!("substitute {} -> {}", x(k + 1), by))
    } else {
        let out = multiply_identity(id, Side::Right, w).expect("pair identity");
        (out, format!("multiply on the right by {w}"))
    }
}

/// Puts `w` right after `x(k-1)`, or at the left end when `k = 1`.
fn pump_left(id: &Identity, k: usize, w: &Word) -> (Identity, String) {
    if k > 1 {
        let by = Word::var(x(k - 1)).concat(w);
        let out = substitute_in_identity(id, &x(k - 1), &by).expect("variable occurs");
        (out, format!("substitute {} -> {}", x(k - 1), by))
    } else {
        let out = multiply_identity(id, Side::Left, w).expect("pair identity");
        (out, format!("multiply on the left by {w}"))
    }
}

fn labels_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn check(description: impl Into<String>, holds: bool) -> Check {
    Check {
        description: description.into(),
        holds,
    }
}

fn constructed(label: &str, identity: Identity, construction: String) -> Constructed {
    Constructed {
        label: label.to_string(),
        holds_in_w: WSubvariety::W.satisfies(&identity),
        identity,
        construction,
        closed_form: None,
        matches_closed_form: None,
    }
}

/// Rewrites `words[k] -> words[k+1]` using only the identity labelled
/// `via[k]`. The flag is false if some link is missing or the assembled
/// proof fails validation.
fn link_chain(
    words: &[Word],
    via: &[String],
    premise: &Identity,
    helpers: &[Constructed],
) -> (Vec<ChainLink>, bool) {
    let mut labels = vec!["premise".to_string()];
    let mut axioms = vec![premise.clone()];
    for c in helpers {
        labels.push(c.label.clone());
        axioms.push(c.identity.clone());
    }
    let system = RewriteSystem::new(axioms.clone());
    let mut links = Vec::new();
    let mut ok = true;
    for (pair, label) in words.windows(2).zip(via) {
        let index = labels.iter().position(|l| l == label).expect("known label");
        let single = RewriteSystem::new(vec![axioms[index].clone()]);
        match find_step(&Term::from(&pair[0]), &Term::from(&pair[1]), &single) {
            Some(mut step) if step.rule == Rule::Axiom(0) => {
                step.rule = Rule::Axiom(index);
                links.push(ChainLink {
                    via: label.clone(),
                    step,
                });
            }
            _ => ok = false,
        }
    }
    if ok {
        let proof = DerivationProof {
            start: Term::from(&words[0]),
            end: Term::from(words.last().expect("non-empty chain")),
            steps: links.iter().map(|l| l.step.clone()).collect(),
        };
        ok = proof.validate(&system).is_ok();
    }
    (links, ok)
}

struct Case2 {
    n: usize,
    i: usize,
    j: usize,
    l: usize,
    ip: usize,
    jp: usize,
    r: usize,
}

impl Case2 {
    fn prefix(&self) -> Option<Word> {
        run(1, self.i - 1)
    }
    fn block(&self) -> Word {
        run(self.i, self.j).expect("i <= j")
    }
    fn suffix(&self) -> Option<Word> {
        run(self.j + 1, self.n)
    }
    fn inner_block(&self) -> Word {
        run(self.ip, self.jp).expect("i' <= j'")
    }
    /// `P B^k S` with `B = xi...xj`.
    fn level(&self, k: usize) -> Word {
        let b = pow(&self.block(), k);
        cat(&[self.prefix().as_ref(), b.as_ref(), self.suffix().as_ref()])
    }
}

struct Replay {
    target: Identity,
    premise: Identity,
    constructed: Vec<Constructed>,
    checks: Vec<Check>,
    words: Vec<Word>,
    via: Vec<String>,
}

pub fn replay_case2(
    n: usize,
    i: usize,
    j: usize,
    l: usize,
    ip: usize,
    jp: usize,
    r: usize,
) -> Result<ReplayReport, ReplayError> {
    let bad = |m: &str| Err(ReplayError::BadParameters(m.to_string()));
    if !(1 <= i && i <= j && j <= n) {
        return bad("need 1 <= i <= j <= n");
    }
    if !(1 <= ip && ip <= jp && jp <= n) {
        return bad("need 1 <= i' <= j' <= n");
    }
    if i > ip {
        return bad("need i <= i'");
    }
    if l < 2 || r < 2 {
        return bad("need l >= 2 and r >= 2");
    }
    if n > MAX_PARAMETER || l > MAX_PARAMETER || r > MAX_PARAMETER {
        return bad("n, l and r are limited to 32");
    }
    let p = Case2 {
        n,
        i,
        j,
        l,
        ip,
        jp,
        r,
    };
    let (branch, replay) = if j < jp {
        (Case2Branch::Staggered, staggered(&p))
    } else if i == ip && j == jp {
        (Case2Branch::EqualIntervals, equal_intervals(&p))
    } else if i < ip {
        (Case2Branch::NestedLeft, nested(&p))
    } else {
        (Case2Branch::NestedRight, mirrored_nested(&p))
    };
    let (chain, linked) = link_chain(&replay.words, &replay.via, &replay.premise, &replay.constructed);
    let ends = replay.words.first() == Some(replay.target.lhs())
        && replay.words.last() == replay.target.rhs();
    let parameters = BTreeMap::from([
        ("n", n),
        ("i", i),
        ("j", j),
        ("l", l),
        ("ip", ip),
        ("jp", jp),
        ("r", r),
    ]);
    Ok(ReplayReport {
        case: "case2",
        parameters,
        branch: Some(branch),
        target: replay.target,
        premise: replay.premise,
        constructed: replay.constructed,
        checks: replay.checks,
        chain,
        derived: linked && ends,
    })
}

fn helpers_hold_in_w(checks: &mut Vec<Check>, helpers: &[Constructed]) {
    for c in helpers {
        checks.push(check(format!("{} holds in W", c.label), c.holds_in_w));
    }
}

/// `j < j'`: pump the target at `j'` and the premise at `i`; the two right
/// sides coincide.
fn staggered(p: &Case2) -> Replay {
    let target = fin_deg_identity(p.n, p.i, p.j, p.l);
    let premise = fin_deg_identity(p.n, p.ip, p.jp, p.r);
    let inner = p.inner_block();
    let block = p.block();
    let (a, how_a) = pump_right(&target, p.n, p.jp, &pow(&inner, p.r - 1).expect("r >= 2"));
    let (b, how_b) = pump_left(&premise, p.i, &pow(&block, p.l - 1).expect("l >= 2"));
    let mut checks = vec![
        check("target-pumped rewrites the premise's right side", a.lhs() == premise.rhs().unwrap()),
        check("premise-pumped rewrites the target's right side", b.lhs() == target.rhs().unwrap()),
        check("right sides of target-pumped and premise-pumped coincide", a.rhs() == b.rhs()),
    ];
    let middle = a.rhs().unwrap().clone();
    let words = vec![
        target.lhs().clone(),
        premise.rhs().unwrap().clone(),
        middle,
        target.rhs().unwrap().clone(),
    ];
    let constructed = vec![
        constructed("target-pumped", a, format!("target: {how_a}")),
        constructed("premise-pumped", b, format!("premise: {how_b}")),
    ];
    helpers_hold_in_w(&mut checks, &constructed);
    Replay {
        target,
        premise,
        constructed,
        checks,
        words,
        via: labels_of(&["premise", "target-pumped", "premise-pumped"]),
    }
}

/// `i = i'`, `j = j'`: with `[k] = P B^k S`, pumping the target by `B^r`
/// and the premise by `B^l` after the block gives `[r+1] ≈ [r+l]` and
/// `[l+1] ≈ [r+l]`, and
/// `[1] → [r] → [2r-1] → [2r+l-2] → [r+l-1] ← [l]`.
fn equal_intervals(p: &Case2) -> Replay {
    let target = fin_deg_identity(p.n, p.i, p.j, p.l);
    let premise = fin_deg_identity(p.n, p.ip, p.jp, p.r);
    let block = p.block();
    let (a, how_a) = pump_right(&target, p.n, p.j, &pow(&block, p.r).expect("r >= 1"));
    let (b, how_b) = pump_right(&premise, p.n, p.j, &pow(&block, p.l).expect("l >= 1"));
    let (r, l) = (p.r, p.l);
    let mut checks = vec![
        check("target-shifted is [r+1] = [r+l]", a == Identity::Pair(p.level(r + 1), p.level(r + l))),
        check("premise-shifted is [l+1] = [r+l]", b == Identity::Pair(p.level(l + 1), p.level(r + l))),
    ];
    let mut a = constructed("target-shifted", a, format!("target: {how_a}"));
    let closed_a = Identity::Pair(p.level(r), p.level(r + l));
    a.matches_closed_form = Some(a.identity == closed_a);
    a.closed_form = Some(closed_a);
    let mut b = constructed("premise-shifted", b, format!("premise: {how_b}"));
    let closed_b = Identity::Pair(p.level(l), p.level(r + l));
    b.matches_closed_form = Some(b.identity == closed_b);
    b.closed_form = Some(closed_b);
    let constructed = vec![a, b];
    helpers_hold_in_w(&mut checks, &constructed);
    let words = [1, r, 2 * r - 1, 2 * r + l - 2, r + l - 1, l]
        .iter()
        .map(|&k| p.level(k))
        .collect();
    Replay {
        target,
        premise,
        constructed,
        checks,
        words,
        via: labels_of(&["premise", "premise", "target-shifted", "premise-shifted", "premise"]),
    }
}

/// `i < i'`, `j' <= j`: with `Q = xi...x(i'-1) (xi'...xj')^r x(j'+1)...xj`,
/// the nested identity `P' B'^r S' ≈ P Q^l S` and the ladder
/// `P Q^s B^t S ≈ P Q^(s+1) B^(t-1) S`, used for `s = l-1, ..., 0` with
/// `t = l - s`, lead from `P Q^l S` down to `P B^l S`.
fn nested(p: &Case2) -> Replay {
    let target = fin_deg_identity(p.n, p.i, p.j, p.l);
    let premise = fin_deg_identity(p.n, p.ip, p.jp, p.r);
    let inner_pow = pow(&p.inner_block(), p.r).expect("r >= 1");
    let q = cat(&[run(p.i, p.ip - 1).as_ref(), Some(&inner_pow), run(p.jp + 1, p.j).as_ref()]);
    let block = p.block();
    let level = |s: usize, t: usize| {
        cat(&[p.prefix().as_ref(), pow(&q, s).as_ref(), pow(&block, t).as_ref(), p.suffix().as_ref()])
    };

    let by = Word::var(x(p.ip - 1)).concat(&pow(&p.inner_block(), p.r - 1).expect("r >= 2"));
    let nested_id = substitute_in_identity(&target, &x(p.ip - 1), &by).expect("variable occurs");
    let mut checks = vec![
        check("nested rewrites the premise's right side", nested_id.lhs() == premise.rhs().unwrap()),
        check("nested right side is P Q^l S", nested_id.rhs() == Some(&level(p.l, 0))),
    ];
    let mut constructed_ids = vec![constructed(
        "nested",
        nested_id,
        format!("target: substitute {} -> {}", x(p.ip - 1), by),
    )];
    let mut labels = Vec::new();
    for s in (0..p.l).rev() {
        let t = p.l - s;
        let mut id = premise.clone();
        let mut steps = Vec::new();
        if let Some(qs) = pow(&q, s) {
            let (out, how) = pump_left(&id, p.i, &qs);
            id = out;
            steps.push(how);
        }
        if let Some(bt) = pow(&block, t - 1) {
            let (out, how) = pump_right(&id, p.n, p.j, &bt);
            id = out;
            steps.push(how);
        }
        let label = format!("ladder(s={s},t={t})");
        checks.push(check(
            format!("{label} is P Q^s B^t S = P Q^(s+1) B^(t-1) S"),
            id == Identity::Pair(level(s, t), level(s + 1, t - 1)),
        ));
        let how = if steps.is_empty() {
            "premise itself".to_string()
        } else {
            format!("premise: {}", steps.join(", then "))
        };
        constructed_ids.push(constructed(&label, id, how));
        labels.push(label);
    }
    for pair in constructed_ids[1..].windows(2) {
        checks.push(check(
            format!("left side of {} is the right side of {}", pair[0].label, pair[1].label),
            Some(pair[0].identity.lhs()) == pair[1].identity.rhs(),
        ));
    }
    checks.push(check(
        "right side of nested is the right side of the first ladder identity",
        constructed_ids[0].identity.rhs() == constructed_ids[1].identity.rhs(),
    ));
    helpers_hold_in_w(&mut checks, &constructed_ids);

    let mut words = vec![target.lhs().clone(), premise.rhs().unwrap().clone()];
    words.extend((0..=p.l).rev().map(|s| level(s, p.l - s)));
    let mut via = labels_of(&["premise", "nested"]);
    via.extend(labels);
    Replay {
        target,
        premise,
        constructed: constructed_ids,
        checks,
        words,
        via,
    }
}

/// `i = i'`, `j' < j`: reverse every word and rename `xk -> x(n+1-k)`. This
/// turns the tuple into a `NestedLeft` one; replay that and map it back.
fn mirrored_nested(p: &Case2) -> Replay {
    let n = p.n;
    let m = Case2 {
        n,
        i: n + 1 - p.j,
        j: n + 1 - p.i,
        l: p.l,
        ip: n + 1 - p.jp,
        jp: n + 1 - p.ip,
        r: p.r,
    };
    let mirror_word = |w: &Word| {
        w.reversed().rename(|v| {
            let k: usize = v.name()[1..].parse().expect("indexed variable");
            x(n + 1 - k)
        })
    };
    let mirror_id = |id: &Identity| id.map_words(mirror_word);
    let inner = nested(&m);
    let constructed = inner
        .constructed
        .into_iter()
        .map(|c| {
            let mut out = constructed(
                &c.label,
                mirror_id(&c.identity),
                format!("mirror image of [{}]", c.construction),
            );
            out.closed_form = c.closed_form.as_ref().map(mirror_id);
            out.matches_closed_form = c.matches_closed_form;
            out
        })
        .collect();
    let mut checks: Vec<Check> = inner
        .checks
        .into_iter()
        .map(|c| check(format!("mirror: {}", c.description), c.holds))
        .collect();
    let target = mirror_id(&inner.target);
    let premise = mirror_id(&inner.premise);
    checks.push(check(
        "mirrored target and premise are the original ones",
        target == fin_deg_identity(n, p.i, p.j, p.l) && premise == fin_deg_identity(n, p.ip, p.jp, p.r),
    ));
    Replay {
        target,
        premise,
        constructed,
        checks,
        words: inner.words.iter().map(mirror_word).collect(),
        via: inner.via,
    }
}

/// `x^2 ≈ x^m` against `x^2 ≈ x^k`: with `j = |m - k|` the bridge
/// `x^(2+j) ≈ x^(min+j) = x^max` holds in `W`, so together with
/// `x^2 ≈ x^max` it yields `x^2 ≈ x^(2+j)` with `2 + j < max`.
pub fn replay_case1(m: usize, k: usize) -> Result<ReplayReport, ReplayError> {
    if m < 3 || k < 3 || m == k {
        return Err(ReplayError::BadParameters("need m, k >= 3 and m != k".into()));
    }
    if m > 4 * MAX_PARAMETER || k > 4 * MAX_PARAMETER {
        return Err(ReplayError::BadParameters("m and k are limited to 128".into()));
    }
    let j = m.abs_diff(k);
    let (lo, hi) = (m.min(k), m.max(k));
    let xv = Word::var(Var::new("x"));
    let xp = |e: usize| xv.pow(e).expect("positive exponent");
    let bridge = Identity::Pair(xp(2 + j), xp(lo + j));
    let premise = Identity::Pair(xp(2), xp(hi));
    let target = Identity::Pair(xp(2), xp(2 + j));

    let w = RewriteSystem::w_axioms();
    let (u, v) = (Term::from(xp(2 + j)), Term::from(xp(hi)));
    let engine = super::derivable(&u, &v, &w, Bounds::for_pair(&u, &v)).is_yes();
    let mut checks = vec![
        check(format!("x^{} has normal form 0 in W", 2 + j), normal_form_w(&xp(2 + j)).is_zero()),
        check(format!("x^{hi} has normal form 0 in W"), normal_form_w(&xp(hi)).is_zero()),
        check("min + j equals max", lo + j == hi),
        check("bridge is derivable from the axioms of W", engine),
        check("x^2 is not 0 in W", !normal_form_w(&xp(2)).is_zero()),
        check(format!("2 + j = {} < {hi}", 2 + j), 2 + j < hi),
    ];
    let constructed = vec![constructed(
        "bridge",
        bridge,
        format!("x^(2+j) = x^(min+j) with j = {j}"),
    )];
    helpers_hold_in_w(&mut checks, &constructed);
    let words = vec![xp(2), xp(hi), xp(2 + j)];
    let (chain, linked) = link_chain(&words, &labels_of(&["premise", "bridge"]), &premise, &constructed);
    Ok(ReplayReport {
        case: "case1",
        parameters: BTreeMap::from([("m", m), ("k", k), ("j", j)]),
        branch: None,
        target,
        premise,
        constructed,
        checks,
        chain,
        derived: linked,
    })
}
