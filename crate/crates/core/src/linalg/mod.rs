//! Exact integer linear algebra: matrices, Smith normal form, lattices and
//! homology of chain complexes.

mod chain;
mod lattice;
mod matrix;
mod smith;

pub use chain::{betti, homology, ChainComplex, Field};
pub use lattice::Lattice;
pub use matrix::{IntMatrix, IntValue, MatrixDump};
pub use smith::{integer_kernel, smith_normal_form, unimodular_inverse, SmithForm};
