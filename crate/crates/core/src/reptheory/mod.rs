//! Finite groups by Cayley table, exact characters, and the built-in
//! character tables used for Galois representations.

mod builtin;
mod character;
mod cyclotomic;
mod group;

use thiserror::Error;

pub use builtin::{builtin_group, character_table, cyclic, dihedral, gl2f3, sl2f3};
pub use character::{Character, CharacterTable};
pub use cyclotomic::Cyclo;
pub use group::{Family, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("no built-in character table for {0}")]
    NoTable(String),
    #[error("unknown character {0:?}")]
    UnknownCharacter(String),
    #[error("element index {index} out of range for a group of order {order}")]
    BadElement { index: usize, order: usize },
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("characters live on different groups")]
    GroupMismatch,
    #[error("{0} is not constant on conjugacy classes")]
    NotClassFunction(String),
    #[error("{0} is not the character of a representation")]
    NotACharacter(String),
    #[error("expected a non-negative integer: {0}")]
    NonIntegral(String),
    #[error("orthogonality fails: {0}")]
    Orthogonality(String),
}
