//! Words of the free semigroup and semigroup identities.
//!
//! Text grammar, one identity per line:
//!
//! ```text
//! identity := word '=' word | word '=' '0'
//! word     := factor ((('*' | whitespace)) factor)*
//! factor   := var ('^' digits)?
//! var      := [a-z][a-z0-9]*
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

mod degree;
mod normal;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use degree::{fin_deg_identity, fin_deg_witness, FinDegWitness};
pub use normal::{normal_form_w, w_subvariety_basis, WBasis, WNormalForm, WSubvariety};
pub use parse::{parse_identities, parse_identity, parse_word, IdentityFileError, ParseError};

/// Upper bound on the length of a parsed word, after exponent expansion.
pub const MAX_WORD_LEN: usize = 1 << 16;

/// A variable symbol. Ordered lexicographically by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    /// Panics unless `name` matches `[a-z][a-z0-9]*`.
    pub fn new(name: &str) -> Self {
        assert!(Var::is_valid_name(name), "invalid variable name {name:?}");
        Var(Arc::from(name))
    }

    /// `x1`, `x2`, ... as used in the degree identities.
    pub fn indexed(k: usize) -> Self {
        Var(Arc::from(format!("x{k}")))
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut bytes = name.bytes();
        matches!(bytes.next(), Some(b'a'..=b'z'))
            && bytes.all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A non-empty word over variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Var>);

impl Word {
    /// `None` for an empty letter sequence.
    pub fn new(letters: Vec<Var>) -> Option<Self> {
        (!letters.is_empty()).then_some(Word(letters))
    }

    pub fn var(v: Var) -> Self {
        Word(vec![v])
    }

    /// `x_from x_{from+1} ... x_to` over indexed variables; `None` if empty.
    pub fn indexed_range(from: usize, to: usize) -> Option<Self> {
        Word::new((from..=to).map(Var::indexed).collect())
    }

    /// Parses a word, panicking on malformed input. For literals in code.
    pub fn lit(text: &str) -> Self {
        parse_word(text).unwrap_or_else(|e| panic!("bad word literal {text:?}: {e}"))
    }

    pub fn letters(&self) -> &[Var] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn content(&self) -> BTreeSet<Var> {
        self.0.iter().cloned().collect()
    }

    /// Every variable occurs at most once.
    pub fn is_linear(&self) -> bool {
        self.content().len() == self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self^k`; `None` for `k = 0` since the free semigroup has no empty word.
    pub fn pow(&self, k: usize) -> Option<Word> {
        Word::new((0..k).flat_map(|_| self.0.iter().cloned()).collect())
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.0.contains(v)
    }

    /// Replaces every occurrence of `v` by `w`.
    pub fn substitute(&self, v: &Var, w: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len());
        for x in &self.0 {
            if x == v {
                letters.extend_from_slice(&w.0);
            } else {
                letters.push(x.clone());
            }
        }
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// Applies a variable renaming letter by letter.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> Word {
        Word(self.0.iter().map(f).collect())
    }
}

/// Concatenation of optional words, where `None` stands for the empty word.
pub fn concat_all<'a>(parts: impl IntoIterator<Item = Option<&'a Word>>) -> Option<Word> {
    let letters: Vec<Var> = parts
        .into_iter()
        .flatten()
        .flat_map(|w| w.0.iter().cloned())
        .collect();
    Word::new(letters)
}

/// Writes runs of a repeated variable with an exponent: `x^2*y`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", self.0[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// `u ≈ v`, or the zero-identity `w ≈ 0` abbreviating `wx ≈ xw ≈ w` with
/// `x` fresh.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Pair(Word, Word),
    Zero(Word),
}

impl Identity {
    pub fn pair(lhs: Word, rhs: Word) -> Self {
        Identity::Pair(lhs, rhs)
    }

    pub fn lit(text: &str) -> Self {
        parse_identity(text).unwrap_or_else(|e| panic!("bad identity literal {text:?}: {e}"))
    }

    /// A pair with letter-for-letter equal sides.
    pub fn is_trivial(&self) -> bool {
        matches!(self, Identity::Pair(u, v) if u == v)
    }

    pub fn content(&self) -> BTreeSet<Var> {
        match self {
            Identity::Pair(u, v) => u.content().union(&v.content()).cloned().collect(),
            Identity::Zero(w) => w.content(),
        }
    }

    pub fn lhs(&self) -> &Word {
        match self {
            Identity::Pair(u, _) | Identity::Zero(u) => u,
        }
    }

    /// `None` for a zero-identity.
    pub fn rhs(&self) -> Option<&Word> {
        match self {
            Identity::Pair(_, v) => Some(v),
            Identity::Zero(_) => None,
        }
    }

    /// Longest side, in letters.
    pub fn max_len(&self) -> usize {
        match self {
            Identity::Pair(u, v) => u.len().max(v.len()),
            Identity::Zero(w) => w.len(),
        }
    }

    /// Same identity with sides exchanged; zero-identities are unchanged.
    pub fn flipped(&self) -> Identity {
        match self {
            Identity::Pair(u, v) => Identity::Pair(v.clone(), u.clone()),
            Identity::Zero(_) => self.clone(),
        }
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Identity {
        match self {
            Identity::Pair(u, v) => Identity::Pair(f(u), f(v)),
            Identity::Zero(w) => Identity::Zero(f(w)),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Pair(u, v) => write!(f, "{u} = {v}"),
            Identity::Zero(w) => write!(f, "{w} = 0"),
        }
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

macro_rules! text_serde {
    ($ty:ty, $parse:path) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                $parse(&text).map_err(serde::de::Error::custom)
            }
        }
    };
}

fn parse_var(text: &str) -> Result<Var, String> {
    if Var::is_valid_name(text) {
        Ok(Var::new(text))
    } else {
        Err(format!("invalid variable name {text:?}"))
    }
}

text_serde!(Var, parse_var);
text_serde!(Word, parse_word);
text_serde!(Identity, parse_identity);
