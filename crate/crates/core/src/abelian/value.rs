use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{AdicGroup, DivisibleGroup, FgAbGroup, Prime};
use crate::{Error, Result};

/// Any of the three abelian-group value types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GroupValue {
    Fg(FgAbGroup),
    Adic(AdicGroup),
    Divisible(DivisibleGroup),
}

impl GroupValue {
    pub fn kind_name(&self) -> &'static str {
        match self {
            GroupValue::Fg(_) => "finitely generated group",
            GroupValue::Adic(_) => "adic group",
            GroupValue::Divisible(_) => "divisible group",
        }
    }

    pub fn direct_sum(&self, other: &GroupValue) -> Result<GroupValue> {
        match (self, other) {
            (GroupValue::Fg(a), GroupValue::Fg(b)) => Ok(GroupValue::Fg(a.direct_sum(b))),
            (GroupValue::Adic(a), GroupValue::Adic(b)) => Ok(GroupValue::Adic(a.direct_sum(b))),
            (GroupValue::Divisible(a), GroupValue::Divisible(b)) => Ok(GroupValue::Divisible(a.direct_sum(b))),
            _ => Err(Error::MixedKinds(self.kind_name(), other.kind_name())),
        }
    }

    pub fn invert_primes(&self, primes: &BTreeSet<Prime>) -> GroupValue {
        match self {
            GroupValue::Fg(a) => GroupValue::Fg(a.invert_primes(primes)),
            GroupValue::Adic(a) => GroupValue::Adic(a.invert_primes(primes)),
            GroupValue::Divisible(a) => GroupValue::Divisible(a.invert_primes(primes)),
        }
    }

    pub fn dim_hat_p(&self, p: Prime) -> usize {
        match self {
            GroupValue::Fg(a) => a.dim_hat_p(p),
            GroupValue::Adic(a) => a.dim_hat_p(p),
            GroupValue::Divisible(a) => a.dim_hat_p(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupValue::Fg(a) => a.is_zero(),
            GroupValue::Adic(a) => a.is_zero(),
            GroupValue::Divisible(a) => a.is_zero(),
        }
    }
}

impl From<FgAbGroup> for GroupValue {
    fn from(g: FgAbGroup) -> Self {
        GroupValue::Fg(g)
    }
}

impl From<AdicGroup> for GroupValue {
    fn from(g: AdicGroup) -> Self {
        GroupValue::Adic(g)
    }
}

impl From<DivisibleGroup> for GroupValue {
    fn from(g: DivisibleGroup) -> Self {
        GroupValue::Divisible(g)
    }
}

/// `Σ_k (-1)^k dim_p^(C_k)` over a finite sequence of terms.
pub fn euler_dim_hat_sum<I>(dims: I) -> i64
where
    I: IntoIterator<Item = usize>,
{
    dims.into_iter()
        .enumerate()
        .map(|(k, d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// The alternating `dim_p^` sum of a chain complex of groups whose homology
/// is finite must vanish; this evaluates it for one prime.
pub fn euler_balanced(terms: &[GroupValue], p: Prime) -> bool {
    euler_dim_hat_sum(terms.iter().map(|t| t.dim_hat_p(p))) == 0
}
