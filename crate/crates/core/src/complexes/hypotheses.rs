use serde::{Deserialize, Serialize};

use super::action::GCwComplex;
use super::cw::CwComplex;
use crate::abelian::{FgAbGroup, Prime};
use crate::groups::is_power_of;
use crate::linalg::Field;
use crate::{Error, Result};

/// Coefficients for reduced homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Integers,
    Rationals,
    Fp(u64),
}

impl Coefficients {
    pub fn field(self) -> Option<Field> {
        match self {
            Coefficients::Integers => None,
            Coefficients::Rationals => Some(Field::Rationals),
            Coefficients::Fp(p) => Some(Field::Fp(p)),
        }
    }
}

/// A non-vanishing reduced homology group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessGroup {
    Integral { group: FgAbGroup },
    Vector { field: Field, dimension: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `-1` for the empty complex, whose augmented complex has `Z` there.
    pub degree: i64,
    pub group: WitnessGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub coefficients: Coefficients,
    pub acyclic: bool,
    pub witness: Option<Witness>,
}

/// Whether the reduced homology vanishes in every degree; otherwise the
/// lowest non-vanishing degree.
pub fn check_acyclicity(x: &CwComplex, coefficients: Coefficients) -> Result<AcyclicityReport> {
    let witness = if x.is_empty_space() {
        let group = match coefficients.field() {
            None => WitnessGroup::Integral { group: FgAbGroup::free(1) },
            Some(field) => WitnessGroup::Vector { field, dimension: 1 },
        };
        Some(Witness { degree: -1, group })
    } else {
        match coefficients.field() {
            None => {
                let mut h = x.homology();
                h[0] = FgAbGroup::from_invariant_factors(h[0].free_rank() - 1, h[0].torsion().to_vec())?;
                h.into_iter()
                    .enumerate()
                    .find(|(_, g)| !g.is_zero())
                    .map(|(n, group)| Witness { degree: n as i64, group: WitnessGroup::Integral { group } })
            }
            Some(field) => {
                let mut b = x.betti(field)?;
                b[0] -= 1;
                b.into_iter()
                    .enumerate()
                    .find(|&(_, d)| d > 0)
                    .map(|(n, dimension)| Witness { degree: n as i64, group: WitnessGroup::Vector { field, dimension } })
            }
        }
    };
    Ok(AcyclicityReport { coefficients, acyclic: witness.is_none(), witness })
}

/// Outcome of checking the Smith-theory conclusion for one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithReport {
    pub element: usize,
    pub prime: Prime,
    /// Whether the complex is `F_p`-acyclic; nothing is asserted otherwise.
    pub hypothesis_met: bool,
    /// Betti numbers of the fixed set over `F_p`.
    pub fixed_betti: Vec<usize>,
    pub fixed_nonempty: bool,
    pub fixed_acyclic: bool,
}

/// For `F_p`-acyclic `x` and `g` of `p`-power order, checks that the fixed
/// set of `g` is non-empty and `F_p`-acyclic. A failure contradicts Smith
/// theory and is reported as an internal inconsistency.
pub fn smith_consistency(x: &GCwComplex, g: usize, p: Prime) -> Result<SmithReport> {
    if g >= x.group().order() {
        return Err(Error::InvalidArgument(format!("element {g} is out of range")));
    }
    let order = x.group().element_order(g);
    if !is_power_of(order, p) {
        return Err(Error::InvalidArgument(format!("element {g} has order {order}, not a power of {p}")));
    }
    let coefficients = Coefficients::Fp(p.get());
    let hypothesis_met = check_acyclicity(x.base(), coefficients)?.acyclic;
    let fixed = x.fixed_subcomplex(g)?;
    let fixed_betti = fixed.base().betti(Field::Fp(p.get()))?;
    let fixed_nonempty = !fixed.base().is_empty_space();
    let fixed_acyclic = check_acyclicity(fixed.base(), coefficients)?.acyclic;
    if hypothesis_met && !(fixed_nonempty && fixed_acyclic) {
        return Err(Error::Inconsistent(format!(
            "the fixed set of element {g} is {} on an F_{p}-acyclic complex",
            if fixed_nonempty { "not F_p-acyclic" } else { "empty" }
        )));
    }
    Ok(SmithReport { element: g, prime: p, hypothesis_met, fixed_betti, fixed_nonempty, fixed_acyclic })
}
