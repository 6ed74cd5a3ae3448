//! Two-dimensional algebras over exact fields: endo-commutativity,
//! isomorphism search, equivalence relations on `K*`, and exhaustive
//! classification of type-II₁ endo-commutative straight algebras over small
//! finite fields.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod equiv;
pub mod error;
pub mod fields;
pub mod iso;
pub mod json;

pub use error::{Error, Result};
