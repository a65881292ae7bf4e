//! Exact-arithmetic toolkit for the topological K-theory of classifying
//! spaces of discrete groups, computed up to finite torsion from finite
//! combinatorial input.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: integer matrices, Smith normal form, chain complexes.
//! * [`abelian`]: finitely generated, adic and divisible abelian groups.
//! * [`groups`]: finite groups, conjugacy data, augmentation towers.
//! * [`complexes`]: CW complexes with cellular finite-group actions.
//! * [`pro`]: towers of abelian groups, pro-isomorphisms, `lim`/`lim^1`.
//! * [`assemble`]: the K-theory presentations and example pipelines.

#![forbid(unsafe_code)]

pub mod abelian;
pub mod assemble;
pub mod complexes;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod pro;

pub use error::{Error, Result};

/// Version tag written into, and expected from, every JSON document.
pub const SCHEMA: &str = "kborel/1";
