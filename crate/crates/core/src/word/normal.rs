//! Normal forms in the variety `W` defined by `x^2 y ≈ 0` and `xy ≈ yx`.
//!
//! Inside `W` every word equals `0`, a square `x^2`, or a linear word, and
//! commutativity sorts linear words. The proper subvarieties of `W` are cut
//! out by `x^2 ≈ 0` and/or `x1 x2 ... xn ≈ 0`; [`WSubvariety`] models each of
//! them as a Rees quotient of the free object and decides identities there.

use std::fmt;

use super::{Identity, Var, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WNormalForm {
    Zero,
    Square(Var),
    /// Distinct variables in increasing symbol order.
    Linear(Vec<Var>),
}

impl WNormalForm {
    /// The canonical word of this form; `None` for zero.
    pub fn to_word(&self) -> Option<Word> {
        match self {
            WNormalForm::Zero => None,
            WNormalForm::Square(x) => Word::new(vec![x.clone(), x.clone()]),
            WNormalForm::Linear(vars) => Word::new(vars.clone()),
        }
    }

    /// Length of the underlying word, 0 for zero.
    pub fn len(&self) -> usize {
        match self {
            WNormalForm::Zero => 0,
            WNormalForm::Square(_) => 2,
            WNormalForm::Linear(v) => v.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, WNormalForm::Zero)
    }
}

impl fmt::Display for WNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_word() {
            None => f.write_str("0"),
            Some(w) => write!(f, "{w}"),
        }
    }
}

pub fn normal_form_w(w: &Word) -> WNormalForm {
    let letters = w.letters();
    if letters.len() == 2 && letters[0] == letters[1] {
        return WNormalForm::Square(letters[0].clone());
    }
    if w.is_linear() {
        let mut vars = letters.to_vec();
        vars.sort();
        return WNormalForm::Linear(vars);
    }
    WNormalForm::Zero
}

/// A subvariety of `W`: `W ∧ [x^2 ≈ 0 if square_zero] ∧ [x1...xn ≈ 0]`.
///
/// Its relatively free object is the free object of `W` with the ideal of
/// killed forms collapsed to zero. A square is killed by `x^2 ≈ 0`, and also
/// by `x1 x2 ≈ 0` (take `x1 = x2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WSubvariety {
    pub square_zero: bool,
    pub nil_degree: Option<usize>,
}

impl WSubvariety {
    pub const W: WSubvariety = WSubvariety {
        square_zero: false,
        nil_degree: None,
    };

    pub fn reduce(&self, w: &Word) -> WNormalForm {
        let killed = |len: usize| self.nil_degree.is_some_and(|n| len >= n);
        match normal_form_w(w) {
            WNormalForm::Square(_) if self.square_zero || killed(2) => WNormalForm::Zero,
            WNormalForm::Linear(v) if killed(v.len()) => WNormalForm::Zero,
            nf => nf,
        }
    }

    pub fn satisfies(&self, id: &Identity) -> bool {
        match id {
            Identity::Pair(u, v) => self.reduce(u) == self.reduce(v),
            Identity::Zero(w) => self.reduce(w).is_zero(),
        }
    }
}

/// Which of the two basis identities of proper subvarieties of `W` a set of
/// identities entails inside `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WBasis {
    /// `x^2 ≈ 0` follows.
    pub square_zero: bool,
    /// Least `n` with `x1 x2 ... xn ≈ 0` following, if any.
    pub nil_degree: Option<usize>,
}

/// Finds the largest subvariety of `W` satisfying `ids` and reports its
/// basis. The satisfying subvarieties are closed under joins, so the largest
/// one has the weakest `x^2` constraint and the largest nil degree among them.
/// Degrees beyond the longest identity side behave like "no degree".
pub fn w_subvariety_basis(ids: &[Identity]) -> WBasis {
    let longest = ids.iter().map(Identity::max_len).max().unwrap_or(0);
    let degrees: Vec<Option<usize>> = std::iter::once(None)
        .chain((1..=longest).rev().map(Some))
        .collect();
    let holds = |v: WSubvariety| ids.iter().all(|id| v.satisfies(id));

    // x1 ≈ 0 holds in the trivial subvariety, so some degree always fits.
    let nil_degree = degrees
        .iter()
        .copied()
        .find(|&n| {
            holds(WSubvariety {
                square_zero: true,
                nil_degree: n,
            })
        })
        .unwrap_or(Some(1));
    // Degrees 1 and 2 kill squares anyway.
    let square_free_fits = degrees.iter().filter(|n| n.is_none_or(|n| n > 2)).any(|&n| {
        holds(WSubvariety {
            square_zero: false,
            nil_degree: n,
        })
    });
    let square_zero = !square_free_fits || nil_degree.is_some_and(|n| n <= 2);
    WBasis {
        square_zero,
        nil_degree,
    }
}
