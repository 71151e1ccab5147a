//! Bounded equational deduction for semigroup identities.
//!
//! A [`RewriteSystem`] reads each pair axiom `p ≈ q` in both directions and
//! each zero-identity `w ≈ 0` as the rule `w → 0`, with the absorption rules
//! `x·0 → 0` and `0·x → 0` built in. Axiom variables bind non-empty factors
//! free of `0`; a term that contains `0` only ever absorbs. Equational
//! derivations between words never need to run a zero rule backwards, so the
//! search is complete up to its length bound, and `No` is only returned after
//! both reachable sets are exhausted.

mod replay;
mod transform;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::word::{parse_word, Identity, ParseError, Var, Word};

pub use replay::{
    replay_case1, replay_case2, Case2Branch, ChainLink, Check, Constructed, ReplayError,
    ReplayReport,
};
pub use transform::{multiply_identity, substitute_in_identity, Side, TransformError};

/// Internal code of the absorbing letter.
const ZERO: u16 = 0;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Zero,
    Var(Var),
}

/// A non-empty word over variables and the absorbing constant `0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Vec<Letter>);

impl Term {
    pub fn zero() -> Term {
        Term(vec![Letter::Zero])
    }

    pub fn new(letters: Vec<Letter>) -> Option<Term> {
        (!letters.is_empty()).then_some(Term(letters))
    }

    /// `0`, or a word in the identity grammar; `0` may also appear as a
    /// factor, as in `x*0`.
    pub fn parse(text: &str) -> Result<Term, ParseError> {
        let body = text.split('#').next().unwrap_or("");
        let mut letters = Vec::new();
        for token in body.split(|c: char| c == '*' || c.is_ascii_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let offset = token.as_ptr() as usize - text.as_ptr() as usize;
            if token == "0" {
                letters.push(Letter::Zero);
                continue;
            }
            let w = parse_word(token).map_err(|e| shift_error(e, offset))?;
            letters.extend(w.letters().iter().cloned().map(Letter::Var));
        }
        Term::new(letters).ok_or(ParseError::EmptyWord { position: 0 })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Exactly the constant `0`.
    pub fn is_zero(&self) -> bool {
        self.0 == [Letter::Zero]
    }

    pub fn contains_zero(&self) -> bool {
        self.0.contains(&Letter::Zero)
    }

    /// The underlying word, if the term has no `0`.
    pub fn as_word(&self) -> Option<Word> {
        let vars = self
            .0
            .iter()
            .map(|l| match l {
                Letter::Var(v) => Some(v.clone()),
                Letter::Zero => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Word::new(vars)
    }

    pub fn content(&self) -> BTreeSet<Var> {
        self.0
            .iter()
            .filter_map(|l| match l {
                Letter::Var(v) => Some(v.clone()),
                Letter::Zero => None,
            })
            .collect()
    }
}

fn shift_error(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { position, expected } => ParseError::Syntax {
            position: position + by,
            expected,
        },
        ParseError::EmptyWord { position } => ParseError::EmptyWord {
            position: position + by,
        },
        ParseError::BadExponent { position, value } => ParseError::BadExponent {
            position: position + by,
            value,
        },
        ParseError::TooLong { position } => ParseError::TooLong {
            position: position + by,
        },
    }
}

impl From<Word> for Term {
    fn from(w: Word) -> Term {
        Term(w.letters().iter().cloned().map(Letter::Var).collect())
    }
}

impl From<&Word> for Term {
    fn from(w: &Word) -> Term {
        Term::from(w.clone())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            if i > 0 {
                f.write_str("*")?;
            }
            match &self.0[i] {
                Letter::Zero => {
                    f.write_str("0")?;
                    i += 1;
                }
                Letter::Var(v) => {
                    let mut j = i + 1;
                    while j < self.0.len() && self.0[j] == self.0[i] {
                        j += 1;
                    }
                    write!(f, "{v}")?;
                    if j - i > 1 {
                        write!(f, "^{}", j - i)?;
                    }
                    i = j;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Term::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    axioms: Vec<Identity>,
    zero_enabled: bool,
}

impl RewriteSystem {
    pub fn new(axioms: Vec<Identity>) -> Self {
        let zero_enabled = axioms.iter().any(|a| matches!(a, Identity::Zero(_)));
        RewriteSystem {
            axioms,
            zero_enabled,
        }
    }

    /// `x^2 y ≈ 0` and `xy ≈ yx`.
    pub fn w_axioms() -> Self {
        RewriteSystem::new(vec![Identity::lit("x^2*y = 0"), Identity::lit("x*y = y*x")])
    }

    pub fn axioms(&self) -> &[Identity] {
        &self.axioms
    }

    pub fn zero_enabled(&self) -> bool {
        self.zero_enabled
    }

    fn rules(&self) -> Vec<CompiledRule> {
        let mut rules: Vec<CompiledRule> = self
            .axioms
            .iter()
            .enumerate()
            .map(|(k, a)| CompiledRule::axiom(k, a))
            .collect();
        rules.push(CompiledRule::absorb(Rule::AbsorbLeft));
        rules.push(CompiledRule::absorb(Rule::AbsorbRight));
        rules
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Axiom(usize),
    /// `x·0 → 0`.
    AbsorbLeft,
    /// `0·x → 0`.
    AbsorbRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pat {
    Var(u8),
    Zero,
}

#[derive(Debug, Clone)]
struct CompiledRule {
    rule: Rule,
    lhs: Vec<Pat>,
    rhs: Vec<Pat>,
    names: Vec<Var>,
    /// Variables may bind factors containing `0`.
    zero_bindings: bool,
    /// A pair axiom whose two readings coincide up to renaming.
    symmetric: bool,
}

impl CompiledRule {
    fn axiom(index: usize, id: &Identity) -> Self {
        let names: Vec<Var> = id.content().into_iter().collect();
        assert!(names.len() <= u8::MAX as usize, "axiom has too many variables");
        let compile = |w: &Word| -> Vec<Pat> {
            w.letters()
                .iter()
                .map(|v| Pat::Var(names.binary_search(v).expect("in content") as u8))
                .collect()
        };
        let (lhs, rhs) = match id {
            Identity::Pair(p, q) => (compile(p), compile(q)),
            Identity::Zero(w) => (compile(w), vec![Pat::Zero]),
        };
        let symmetric = matches!(id, Identity::Pair(..)) && first_use_form(&lhs, &rhs) == first_use_form(&rhs, &lhs);
        CompiledRule {
            rule: Rule::Axiom(index),
            lhs,
            rhs,
            names,
            zero_bindings: false,
            symmetric,
        }
    }

    fn absorb(rule: Rule) -> Self {
        let lhs = match rule {
            Rule::AbsorbLeft => vec![Pat::Var(0), Pat::Zero],
            _ => vec![Pat::Zero, Pat::Var(0)],
        };
        CompiledRule {
            rule,
            lhs,
            rhs: vec![Pat::Zero],
            names: vec![Var::new("x")],
            zero_bindings: true,
            symmetric: false,
        }
    }

    fn is_zero_axiom(&self) -> bool {
        matches!(self.rule, Rule::Axiom(_)) && self.rhs == [Pat::Zero]
    }

    fn sides(&self, dir: Direction) -> (&[Pat], &[Pat]) {
        match dir {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }

    /// Directions used by the search on zero-free terms.
    fn search_directions(&self) -> &'static [Direction] {
        match self.rule {
            Rule::Axiom(_) if self.is_zero_axiom() || self.symmetric => &[Direction::Forward],
            Rule::Axiom(_) => &[Direction::Forward, Direction::Backward],
            _ => &[],
        }
    }
}

/// Renames pattern variables by first occurrence across both sides.
fn first_use_form(a: &[Pat], b: &[Pat]) -> Vec<Pat> {
    let mut map: HashMap<u8, u8> = HashMap::new();
    a.iter()
        .chain(std::iter::once(&Pat::Zero))
        .chain(b)
        .map(|p| match p {
            Pat::Var(v) => {
                let next = map.len() as u8;
                Pat::Var(*map.entry(*v).or_insert(next))
            }
            Pat::Zero => Pat::Zero,
        })
        .collect()
}

/// Variable symbols of one search, coded from 1 in name order.
struct Alphabet {
    vars: Vec<Var>,
}

impl Alphabet {
    fn new<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Self {
        let vars: BTreeSet<Var> = terms.into_iter().flat_map(Term::content).collect();
        assert!(vars.len() < u16::MAX as usize, "alphabet too large");
        Alphabet {
            vars: vars.into_iter().collect(),
        }
    }

    fn encode(&self, t: &Term) -> Vec<u16> {
        t.0.iter()
            .map(|l| match l {
                Letter::Zero => ZERO,
                Letter::Var(v) => self.vars.binary_search(v).expect("variable in alphabet") as u16 + 1,
            })
            .collect()
    }

    fn decode(&self, code: &[u16]) -> Term {
        Term(
            code.iter()
                .map(|&c| match c {
                    ZERO => Letter::Zero,
                    c => Letter::Var(self.vars[c as usize - 1].clone()),
                })
                .collect(),
        )
    }

    fn symbols(&self) -> std::ops::RangeInclusive<u16> {
        1..=self.vars.len() as u16
    }
}

type Span = Option<(usize, usize)>;

/// Every way `pat` matches a factor of `text` starting at `pos`, with
/// bindings as spans of `text`. `f` receives the bindings and the end.
fn for_each_match(
    pat: &[Pat],
    text: &[u16],
    pos: usize,
    zero_bindings: bool,
    binds: &mut [Span],
    f: &mut impl FnMut(&[Span], usize),
) {
    let Some((first, rest)) = pat.split_first() else {
        f(binds, pos);
        return;
    };
    match *first {
        Pat::Zero => {
            if text.get(pos) == Some(&ZERO) {
                for_each_match(rest, text, pos + 1, zero_bindings, binds, f);
            }
        }
        Pat::Var(v) => match binds[v as usize] {
            Some((start, len)) => {
                if pos + len <= text.len() && text[pos..pos + len] == text[start..start + len] {
                    for_each_match(rest, text, pos + len, zero_bindings, binds, f);
                }
            }
            None => {
                let room = text.len().saturating_sub(pos + rest.len());
                for len in 1..=room {
                    if !zero_bindings && text[pos + len - 1] == ZERO {
                        break;
                    }
                    binds[v as usize] = Some((pos, len));
                    for_each_match(rest, text, pos + len, zero_bindings, binds, f);
                }
                binds[v as usize] = None;
            }
        },
    }
}

/// Like [`for_each_match`] but with owned bindings, so matching can
/// continue on a second text, and with an optional required end.
fn for_each_match_owned(
    pat: &[Pat],
    text: &[u16],
    pos: usize,
    end: Option<usize>,
    zero_bindings: bool,
    binds: &mut Vec<Option<Vec<u16>>>,
    f: &mut impl FnMut(&[Option<Vec<u16>>], usize) -> bool,
) -> bool {
    let limit = end.unwrap_or(text.len());
    let Some((first, rest)) = pat.split_first() else {
        return if end.is_none_or(|e| e == pos) { f(binds, pos) } else { false };
    };
    match *first {
        Pat::Zero => {
            pos < limit
                && text[pos] == ZERO
                && for_each_match_owned(rest, text, pos + 1, end, zero_bindings, binds, f)
        }
        Pat::Var(v) => match binds[v as usize].clone() {
            Some(bound) => {
                let len = bound.len();
                pos + len <= limit
                    && text[pos..pos + len] == bound[..]
                    && for_each_match_owned(rest, text, pos + len, end, zero_bindings, binds, f)
            }
            None => {
                let room = limit.saturating_sub(pos + rest.len());
                for len in 1..=room {
                    if !zero_bindings && text[pos + len - 1] == ZERO {
                        break;
                    }
                    binds[v as usize] = Some(text[pos..pos + len].to_vec());
                    if for_each_match_owned(rest, text, pos + len, end, zero_bindings, binds, f) {
                        binds[v as usize] = None;
                        return true;
                    }
                }
                binds[v as usize] = None;
                false
            }
        },
    }
}

/// Bounds for [`derivable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_len: usize,
    pub max_steps: usize,
}

impl Bounds {
    pub const DEFAULT_MAX_STEPS: usize = 100_000;

    /// `max_len = 2 max(|u|, |v|) + 4`, `max_steps = 10^5`.
    pub fn for_pair(u: &Term, v: &Term) -> Self {
        Bounds {
            max_len: 2 * u.len().max(v.len()) + 4,
            max_steps: Self::DEFAULT_MAX_STEPS,
        }
    }
}

struct Searcher {
    rules: Vec<CompiledRule>,
    symbols: Vec<u16>,
    max_len: usize,
}

impl Searcher {
    fn successors(&self, w: &[u16], out: &mut Vec<Vec<u16>>) {
        if w.contains(&ZERO) {
            for p in (0..w.len()).filter(|&p| w[p] == ZERO) {
                for k in 0..p {
                    out.push([&w[..k], &[ZERO], &w[p + 1..]].concat());
                }
                for k in p + 2..=w.len() {
                    out.push([&w[..p], &[ZERO], &w[k..]].concat());
                }
            }
            return;
        }
        for rule in &self.rules {
            for &dir in rule.search_directions() {
                let (src, tgt) = rule.sides(dir);
                let mut binds: Vec<Span> = vec![None; rule.names.len()];
                let free: Vec<u8> = free_vars(src, tgt);
                for pos in 0..w.len() {
                    for_each_match(src, w, pos, false, &mut binds, &mut |b, end| {
                        self.emit(w, pos, end, tgt, b, &free, out);
                    });
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn emit(&self, w: &[u16], pos: usize, end: usize, tgt: &[Pat], b: &[Span], free: &[u8], out: &mut Vec<Vec<u16>>) {
        let fixed: usize = tgt
            .iter()
            .map(|p| match p {
                Pat::Zero => 1,
                Pat::Var(v) => b[*v as usize].map_or(1, |(_, l)| l),
            })
            .sum();
        if w.len() - (end - pos) + fixed > self.max_len {
            return;
        }
        let symbols = &self.symbols;
        if !free.is_empty() && symbols.is_empty() {
            return;
        }
        let mut choice = vec![0usize; free.len()];
        loop {
            let mut word = Vec::with_capacity(w.len() + fixed);
            word.extend_from_slice(&w[..pos]);
            for p in tgt {
                match p {
                    Pat::Zero => word.push(ZERO),
                    Pat::Var(v) => match b[*v as usize] {
                        Some((s, l)) => word.extend_from_slice(&w[s..s + l]),
                        None => {
                            let k = free.iter().position(|f| f == v).expect("free variable");
                            word.push(symbols[choice[k]]);
                        }
                    },
                }
            }
            word.extend_from_slice(&w[end..]);
            out.push(word);
            // Next assignment of the free variables.
            let mut k = free.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < symbols.len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }
}

fn free_vars(src: &[Pat], tgt: &[Pat]) -> Vec<u8> {
    let bound: BTreeSet<u8> = src
        .iter()
        .filter_map(|p| match p {
            Pat::Var(v) => Some(*v),
            Pat::Zero => None,
        })
        .collect();
    let free: BTreeSet<u8> = tgt
        .iter()
        .filter_map(|p| match p {
            Pat::Var(v) if !bound.contains(v) => Some(*v),
            _ => None,
        })
        .collect();
    free.into_iter().collect()
}

/// All terms one elementary rewrite away from `w`, excluding `w` itself.
/// Variables that occur only on the produced side are instantiated by single
/// letters of `w`. Results longer than `max_len` are dropped.
pub fn one_step(w: &Term, sys: &RewriteSystem, max_len: usize) -> BTreeSet<Term> {
    let alphabet = Alphabet::new([w]);
    let searcher = Searcher {
        rules: sys.rules(),
        symbols: alphabet.symbols().collect(),
        max_len,
    };
    let code = alphabet.encode(w);
    let mut out = Vec::new();
    searcher.successors(&code, &mut out);
    out.into_iter()
        .filter(|c| *c != code)
        .map(|c| alphabet.decode(&c))
        .collect()
}

/// One elementary rewrite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub before: Term,
    pub after: Term,
    pub rule: Rule,
    pub direction: Direction,
    /// 0-based letter offset of the rewritten factor in `before`.
    pub position: usize,
    pub substitution: BTreeMap<Var, Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationProof {
    pub start: Term,
    pub end: Term,
    pub steps: Vec<ProofStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("step {0} does not continue from the previous term")]
    Broken(usize),
    #[error("step {0} is not an elementary rewrite")]
    InvalidStep(usize),
    #[error("proof does not connect its start and end")]
    Endpoints,
}

impl DerivationProof {
    pub fn validate(&self, sys: &RewriteSystem) -> Result<(), ProofError> {
        let mut current = &self.start;
        for (k, step) in self.steps.iter().enumerate() {
            if &step.before != current {
                return Err(ProofError::Broken(k));
            }
            if !check_step(step, sys) {
                return Err(ProofError::InvalidStep(k));
            }
            current = &step.after;
        }
        if current != &self.end {
            return Err(ProofError::Endpoints);
        }
        Ok(())
    }

    /// One JSON object per step.
    pub fn to_json_lines(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("steps serialize") + "\n")
            .collect()
    }
}

/// Re-applies a step from its recorded rule, direction, position and
/// substitution, independently of the matcher.
pub fn check_step(step: &ProofStep, sys: &RewriteSystem) -> bool {
    let rule = match step.rule {
        Rule::Axiom(k) => match sys.axioms.get(k) {
            Some(a) => CompiledRule::axiom(k, a),
            None => return false,
        },
        r => CompiledRule::absorb(r),
    };
    let (src, tgt) = rule.sides(step.direction);
    let instantiate = |side: &[Pat]| -> Option<Vec<Letter>> {
        let mut out = Vec::new();
        for p in side {
            match p {
                Pat::Zero => out.push(Letter::Zero),
                Pat::Var(v) => {
                    let t = step.substitution.get(&rule.names[*v as usize])?;
                    if !rule.zero_bindings && t.contains_zero() {
                        return None;
                    }
                    out.extend_from_slice(t.letters());
                }
            }
        }
        Some(out)
    };
    let (Some(s), Some(t)) = (instantiate(src), instantiate(tgt)) else {
        return false;
    };
    let before = step.before.letters();
    let pos = step.position;
    if pos + s.len() > before.len() || before[pos..pos + s.len()] != s[..] {
        return false;
    }
    let expected = [&before[..pos], &t[..], &before[pos + s.len()..]].concat();
    expected == step.after.letters()
}

/// Finds an elementary rewrite from `before` to `after`, trying axioms in
/// order, then absorption, each forwards then backwards, at increasing
/// positions.
pub fn find_step(before: &Term, after: &Term, sys: &RewriteSystem) -> Option<ProofStep> {
    if before == after {
        return None;
    }
    let alphabet = Alphabet::new([before, after]);
    let b = alphabet.encode(before);
    let a = alphabet.encode(after);
    for rule in sys.rules() {
        for dir in [Direction::Forward, Direction::Backward] {
            let (src, tgt) = rule.sides(dir);
            let mut binds: Vec<Option<Vec<u16>>> = vec![None; rule.names.len()];
            for pos in 0..b.len() {
                if b[..pos] != a[..pos.min(a.len())] {
                    break;
                }
                let mut found: Option<ProofStep> = None;
                for_each_match_owned(src, &b, pos, None, rule.zero_bindings, &mut binds, &mut |bs, end| {
                    let suffix = b.len() - end;
                    if a.len() < pos + suffix || a[a.len() - suffix..] != b[end..] {
                        return false;
                    }
                    let mut inner = bs.to_vec();
                    let window_end = a.len() - suffix;
                    for_each_match_owned(tgt, &a, pos, Some(window_end), rule.zero_bindings, &mut inner, &mut |full, _| {
                        let substitution = full
                            .iter()
                            .enumerate()
                            .filter_map(|(k, x)| x.as_ref().map(|c| (rule.names[k].clone(), alphabet.decode(c))))
                            .collect();
                        found = Some(ProofStep {
                            before: before.clone(),
                            after: after.clone(),
                            rule: rule.rule,
                            direction: dir,
                            position: pos,
                            substitution,
                        });
                        true
                    })
                });
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(DerivationProof),
    No,
    Unknown,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Search {
    pub verdict: Verdict,
    /// Terms whose successors were generated.
    pub expanded: usize,
    /// Distinct terms seen from both ends.
    pub visited: usize,
}

pub fn derivable(u: &Term, v: &Term, sys: &RewriteSystem, bounds: Bounds) -> Verdict {
    search(u, v, sys, bounds).verdict
}

struct SearchSide {
    parents: HashMap<Vec<u16>, Option<Vec<u16>>>,
    frontier: Vec<Vec<u16>>,
}

impl SearchSide {
    fn new(root: Vec<u16>) -> Self {
        SearchSide {
            parents: HashMap::from([(root.clone(), None)]),
            frontier: vec![root],
        }
    }

    /// From `node` back to this side's root.
    fn path_to_root(&self, node: &[u16]) -> Vec<Vec<u16>> {
        let mut path = vec![node.to_vec()];
        while let Some(Some(p)) = self.parents.get(path.last().unwrap()) {
            path.push(p.clone());
        }
        path
    }
}

/// Bidirectional breadth-first search, expanding the smaller live frontier
/// one level at a time.
pub fn search(u: &Term, v: &Term, sys: &RewriteSystem, bounds: Bounds) -> Search {
    let alphabet = Alphabet::new([u, v]);
    let searcher = Searcher {
        rules: sys.rules(),
        symbols: alphabet.symbols().collect(),
        max_len: bounds.max_len,
    };
    let mut sides = [SearchSide::new(alphabet.encode(u)), SearchSide::new(alphabet.encode(v))];
    let mut expanded = 0;
    let visited = |s: &[SearchSide; 2]| s[0].parents.len() + s[1].parents.len();
    if u == v {
        return Search {
            verdict: Verdict::Yes(DerivationProof {
                start: u.clone(),
                end: v.clone(),
                steps: Vec::new(),
            }),
            expanded,
            visited: 1,
        };
    }
    let mut out = Vec::new();
    loop {
        let live: Vec<usize> = (0..2).filter(|&k| !sides[k].frontier.is_empty()).collect();
        let Some(&k) = live.iter().min_by_key(|&&k| sides[k].frontier.len()) else {
            return Search {
                verdict: Verdict::No,
                expanded,
                visited: visited(&sides),
            };
        };
        let frontier = std::mem::take(&mut sides[k].frontier);
        let mut next = Vec::new();
        for node in frontier {
            if expanded >= bounds.max_steps {
                return Search {
                    verdict: Verdict::Unknown,
                    expanded,
                    visited: visited(&sides),
                };
            }
            expanded += 1;
            out.clear();
            searcher.successors(&node, &mut out);
            for s in out.drain(..) {
                if sides[k].parents.contains_key(&s) {
                    continue;
                }
                if sides[1 - k].parents.contains_key(&s) {
                    let mut here = sides[k].path_to_root(&node);
                    here.reverse();
                    here.extend(sides[1 - k].path_to_root(&s));
                    if k == 1 {
                        here.reverse();
                    }
                    let words: Vec<Term> = here.iter().map(|c| alphabet.decode(c)).collect();
                    let proof = proof_from_path(&words, sys);
                    return Search {
                        verdict: Verdict::Yes(proof),
                        expanded,
                        visited: visited(&sides) + 1,
                    };
                }
                sides[k].parents.insert(s.clone(), Some(node.clone()));
                next.push(s);
            }
        }
        sides[k].frontier = next;
    }
}

fn proof_from_path(words: &[Term], sys: &RewriteSystem) -> DerivationProof {
    let steps = words
        .windows(2)
        .map(|w| find_step(&w[0], &w[1], sys).expect("search edges are elementary rewrites"))
        .collect();
    DerivationProof {
        start: words[0].clone(),
        end: words[words.len() - 1].clone(),
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        Term::parse(s).unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<Term> {
        items.iter().map(|s| t(s)).collect()
    }

    #[test]
    fn terms() {
        assert!(t("0").is_zero());
        assert_eq!(t("x*0 y").to_string(), "x*0*y");
        assert_eq!(t("x^2*y").to_string(), "x^2*y");
        assert_eq!(t("x^2 y").as_word(), Some(Word::lit("x*x*y")));
        assert!(matches!(Term::parse(""), Err(ParseError::EmptyWord { .. })));
        assert!(matches!(
            Term::parse("x * X"),
            Err(ParseError::Syntax { position: 4, .. })
        ));
    }

    #[test]
    fn one_step_examples() {
        let w = RewriteSystem::new(vec![Identity::lit("x^2*y = 0")]);
        assert_eq!(one_step(&t("x^2*y"), &w, 10), set(&["0"]));
        let comm = RewriteSystem::new(vec![Identity::lit("x*y = y*x")]);
        assert_eq!(one_step(&t("x*y*x"), &comm, 10), set(&["y*x*x", "x*x*y"]));
        let pump = RewriteSystem::new(vec![Identity::lit("x1*x2*x3 = x1*x1*x2*x3")]);
        assert!(one_step(&t("x1*x2*x3"), &pump, 10).contains(&t("x1*x1*x2*x3")));
    }

    #[test]
    fn absorption() {
        let sys = RewriteSystem::w_axioms();
        assert_eq!(one_step(&t("x*0*y"), &sys, 10), set(&["0*y", "x*0"]));
        assert_eq!(one_step(&t("0"), &sys, 10), BTreeSet::new());
    }

    #[test]
    fn free_variables_use_single_letters() {
        let sys = RewriteSystem::new(vec![Identity::lit("x = x*y")]);
        assert_eq!(one_step(&t("a"), &sys, 10), set(&["a*a"]));
        assert!(one_step(&t("a*b"), &sys, 10).contains(&t("a*b*b")));
    }

    #[test]
    fn derivations() {
        let sys = RewriteSystem::w_axioms();
        let b = |u: &Term, v: &Term| Bounds::for_pair(u, v);
        let (u, v) = (t("x^3"), t("0"));
        match derivable(&u, &v, &sys, b(&u, &v)) {
            Verdict::Yes(p) => {
                assert_eq!(p.steps.len(), 1);
                p.validate(&sys).unwrap();
            }
            other => panic!("{other:?}"),
        }
        let comm = RewriteSystem::new(vec![Identity::lit("x*y = y*x")]);
        assert!(derivable(&t("x*y"), &t("y*x"), &comm, b(&u, &v)).is_yes());
        let bounds = Bounds {
            max_len: 6,
            max_steps: 100_000,
        };
        assert_eq!(derivable(&t("x^2"), &t("0"), &sys, bounds), Verdict::No);
        assert_eq!(derivable(&t("0"), &t("x^2"), &sys, bounds), Verdict::No);
    }

    #[test]
    fn proofs_through_zero_validate_both_ways() {
        let sys = RewriteSystem::w_axioms();
        let (u, v) = (t("x*y*x"), t("y^3*z"));
        let Verdict::Yes(p) = derivable(&u, &v, &sys, Bounds::for_pair(&u, &v)) else {
            panic!("expected a derivation");
        };
        p.validate(&sys).unwrap();
        assert!(p.steps.iter().any(|s| s.direction == Direction::Backward));
        let lines = p.to_json_lines();
        assert_eq!(lines.lines().count(), p.steps.len());
        let first: ProofStep = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
        assert_eq!(first, p.steps[0]);
    }

    #[test]
    fn tampered_steps_fail_validation() {
        let sys = RewriteSystem::w_axioms();
        let step = find_step(&t("x*y"), &t("y*x"), &sys).unwrap();
        assert!(check_step(&step, &sys));
        let mut bad = step.clone();
        bad.position = 1;
        assert!(!check_step(&bad, &sys));
        let mut bad = step;
        bad.rule = Rule::Axiom(0);
        assert!(!check_step(&bad, &sys));
    }

    #[test]
    fn step_budget_gives_unknown() {
        let sys = RewriteSystem::new(vec![Identity::lit("x = x^2")]);
        let bounds = Bounds {
            max_len: 12,
            max_steps: 3,
        };
        assert_eq!(derivable(&t("x*y"), &t("y*x"), &sys, bounds), Verdict::Unknown);
    }
}
