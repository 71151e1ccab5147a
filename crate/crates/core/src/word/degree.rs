use serde::{Deserialize, Serialize};

use super::{concat_all, Identity, Word};
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinDegWitness {
    pub l: usize,
    pub i: usize,
    pub j: usize,
}

/// `x1 ... xn ≈ x1 ... x(i-1) (xi ... xj)^l x(j+1) ... xn`.
///
/// Panics unless `1 <= i <= j <= n` and `l >= 1`.
pub fn fin_deg_identity(n: usize, i: usize, j: usize, l: usize) -> Identity {
    assert!(1 <= i && i <= j && j <= n && l >= 1, "bad parameters ({n}, {i}, {j}, {l})");
    let lhs = Word::indexed_range(1, n).expect("n >= 1");
    let prefix = Word::indexed_range(1, i - 1);
    let block = Word::indexed_range(i, j).and_then(|b| b.pow(l));
    let suffix = Word::indexed_range(j + 1, n);
    let rhs = concat_all([prefix.as_ref(), block.as_ref(), suffix.as_ref()]).expect("non-empty block");
    Identity::Pair(lhs, rhs)
}

/// The first `(l, i, j)` in lexicographic order with `2 <= l <= l_max` and
/// `1 <= i <= j <= n` such that `s` satisfies [`fin_deg_identity`].
pub fn fin_deg_witness(s: &FiniteSemigroup, n: usize, l_max: usize) -> Option<FinDegWitness> {
    (2..=l_max)
        .flat_map(|l| (1..=n).flat_map(move |i| (i..=n).map(move |j| FinDegWitness { l, i, j })))
        .find(|w| s.satisfies(&fin_deg_identity(n, w.i, w.j, w.l)).holds)
}
