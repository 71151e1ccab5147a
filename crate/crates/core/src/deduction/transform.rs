use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Identity, Var, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("variable {0} does not occur in the identity")]
    VariableAbsent(Var),
    #[error("zero-identities cannot be multiplied")]
    ZeroIdentity,
}

/// Replaces every occurrence of `var` on both sides by `w`.
pub fn substitute_in_identity(id: &Identity, var: &Var, w: &Word) -> Result<Identity, TransformError> {
    if !id.content().contains(var) {
        return Err(TransformError::VariableAbsent(var.clone()));
    }
    Ok(id.map_words(|side| side.substitute(var, w)))
}

/// Prepends or appends `w` to both sides of a pair identity.
pub fn multiply_identity(id: &Identity, side: Side, w: &Word) -> Result<Identity, TransformError> {
    match id {
        Identity::Zero(_) => Err(TransformError::ZeroIdentity),
        Identity::Pair(..) => Ok(id.map_words(|s| match side {
            Side::Left => w.concat(s),
            Side::Right => s.concat(w),
        })),
    }
}
