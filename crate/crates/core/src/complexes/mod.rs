//! Finite CW complexes, cellular actions of finite groups, fixed
//! subcomplexes, rational quotient Betti numbers, and the acyclicity
//! hypotheses used when assembling K-groups.

mod action;
mod cw;
mod hypotheses;

pub use action::{GCwComplex, GCwRepr, SignedPermutation};
pub use cw::{surface_complex, ComplexRepr, CwComplex};
pub use hypotheses::{check_acyclicity, smith_consistency, AcyclicityReport, Coefficients, SmithReport, Witness, WitnessGroup};

#[cfg(test)]
mod tests;
