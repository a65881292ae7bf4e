use serde::{Deserialize, Serialize};

use super::FgAbGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UctDirection {
    CohomologyToHomology,
    HomologyToCohomology,
}

/// Split universal coefficient transfer between K-cohomology and
/// K-homology of a space with finitely generated K-groups.
///
/// In either direction the output in degree `k` is
/// `hom(input_k, Z) ⊕ ext(input_{k+1}, Z)`, degrees mod 2. The result is
/// returned as `(degree 0, degree 1)`.
pub fn uct_transfer(even: &FgAbGroup, odd: &FgAbGroup, _direction: UctDirection) -> (FgAbGroup, FgAbGroup) {
    let out_even = even.hom_to_z().direct_sum(&odd.ext_to_z());
    let out_odd = odd.hom_to_z().direct_sum(&even.ext_to_z());
    (out_even, out_odd)
}
