//! Symmetric vertices of indecomposable modules carrying invariant symmetric
//! bilinear forms, over finite fields of characteristic two.
//!
//! Everything here is exact: GF(2^m) arithmetic, dense linear algebra,
//! groups as multiplication tables, modules as generator matrices.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod bitmat;
pub mod blocks;
pub mod field;
pub mod forms;
pub mod group;
pub mod linalg;
pub mod poly;
pub mod rep;
pub mod vertex;

use alloc::string::String;

pub use field::{Fe, Field};
pub use group::{GroupTable, Subgroup};
pub use linalg::{Matrix, Subspace};
pub use rep::ModuleRep;

/// Deterministic generator used wherever a seed is accepted.
pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field: {0}")]
    Field(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("not a representation: {0}")]
    NotRep(String),
    #[error("form is not invariant")]
    NotInvariant,
    #[error("form is degenerate")]
    Degenerate,
    #[error("not absolutely indecomposable over this field; raise the field degree ({0})")]
    NotSplit(String),
    #[error("module is decomposable")]
    Decomposable,
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
