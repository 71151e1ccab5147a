//! Finite lattices, their special elements, and equational tools for
//! semigroup identities.

pub mod catalog;
pub mod classify;
pub mod deduction;
pub mod lattice;
pub mod lemmas;
pub mod semigroup;
pub mod word;
pub mod variety;
