use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::homs::check_hom;
use crate::abelian::{AdicGroup, FgAbGroup, Prime};
use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// One explicit level `M_n` of a tower together with `M_n -> M_{n-1}`.
/// The first level carries no map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub group: FgAbGroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<IntMatrix>,
}

/// How a tower continues past its explicit prefix `M_1, ..., M_L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TailRule {
    /// `M_n = M_L` with identity maps for `n > L`.
    Constant,
    /// `M_n = M_L` with zero maps for `n > L`.
    EventuallyZero,
    /// `M_n = A / p^{n} A` for `n > L` with the projections. When the prefix
    /// is non-empty, `junction` is the map `A / p^{L+1} A -> M_L`.
    PAdicQuotient {
        group: FgAbGroup,
        p: Prime,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        junction: Option<IntMatrix>,
    },
    /// Surjective maps whose levels are not materialized past the prefix;
    /// `limit` records the inverse limit when it is known.
    Stabilizing {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limit: Option<AdicGroup>,
    },
}

/// A tower `M_1 <- M_2 <- ...` of finitely generated abelian groups given by
/// a finite prefix and a tail rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TowerRepr", into = "TowerRepr")]
pub struct Tower {
    prefix: Vec<TowerLevel>,
    tail: TailRule,
}

#[derive(Serialize, Deserialize)]
struct TowerRepr {
    prefix: Vec<TowerLevel>,
    tail: TailRule,
}

impl TryFrom<TowerRepr> for Tower {
    type Error = Error;
    fn try_from(r: TowerRepr) -> Result<Self> {
        Tower::new(r.prefix, r.tail)
    }
}

impl From<Tower> for TowerRepr {
    fn from(t: Tower) -> Self {
        TowerRepr { prefix: t.prefix, tail: t.tail }
    }
}

/// Cyclic orders of the generators of `A / p^n A`, indexed by the
/// generators of `A`; a `1` marks a generator that dies.
fn quotient_orders(a: &FgAbGroup, p: Prime, n: usize) -> Vec<BigInt> {
    let pn: BigInt = Pow::pow(BigInt::from(p.get()), n);
    a.generator_orders()
        .into_iter()
        .map(|d| if d.is_zero() { pn.clone() } else { d.gcd(&pn) })
        .collect()
}

/// Positions of the surviving generators of `A / p^n A` among its standard
/// generators. The orders `gcd(d_i, p^n)` and `p^n` already form a
/// divisibility chain, so survivors keep their relative order.
fn survivor_positions(orders: &[BigInt]) -> Vec<Option<usize>> {
    let mut next = 0;
    orders
        .iter()
        .map(|d| {
            if d.is_one() {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

/// `A / p^n A` in canonical form.
pub(crate) fn padic_level(a: &FgAbGroup, p: Prime, n: usize) -> FgAbGroup {
    let orders = quotient_orders(a, p, n);
    FgAbGroup::from_cyclic_orders(
        0,
        orders.into_iter().filter(|d| !d.is_one()).map(|d| d.to_biguint().expect("positive order")),
    )
}

/// The map `A / p^n A -> B / p^n B` induced by `phi: A -> B`.
pub(crate) fn padic_induced(a: &FgAbGroup, b: &FgAbGroup, p: Prime, n: usize, phi: &IntMatrix) -> IntMatrix {
    let src = survivor_positions(&quotient_orders(a, p, n));
    let dst_orders = quotient_orders(b, p, n);
    let dst = survivor_positions(&dst_orders);
    let cols = src.iter().flatten().count();
    let rows = dst.iter().flatten().count();
    let mut m = IntMatrix::zeros(rows, cols);
    let mut triplets = Vec::new();
    for (i, pi) in dst.iter().enumerate() {
        let Some(pi) = pi else { continue };
        for (j, pj) in src.iter().enumerate() {
            let Some(pj) = pj else { continue };
            let v = phi.get(i, j).mod_floor(&dst_orders[i]);
            if !v.is_zero() {
                triplets.push((*pi, *pj, v));
            }
        }
    }
    if !triplets.is_empty() {
        m = IntMatrix::from_triplets(rows, cols, &triplets).expect("indices in range");
    }
    m
}

impl Tower {
    pub fn new(prefix: Vec<TowerLevel>, tail: TailRule) -> Result<Self> {
        for (i, level) in prefix.iter().enumerate() {
            match (i, &level.map) {
                (0, Some(_)) => return Err(Error::InvalidTower("the first level has no map".into())),
                (0, None) => {}
                (_, None) => return Err(Error::InvalidTower(format!("level {} is missing its map", i + 1))),
                (_, Some(m)) => check_hom(&level.group, &prefix[i - 1].group, m)?,
            }
        }
        match &tail {
            TailRule::Constant | TailRule::EventuallyZero | TailRule::Stabilizing { .. } if prefix.is_empty() => {
                return Err(Error::InvalidTower("this tail rule needs a non-empty prefix".into()));
            }
            TailRule::PAdicQuotient { group, p, junction } => match (prefix.last(), junction) {
                (None, None) => {}
                (None, Some(_)) => return Err(Error::InvalidTower("junction given without a prefix".into())),
                (Some(_), None) => return Err(Error::InvalidTower("p-adic tail after a prefix needs a junction".into())),
                (Some(last), Some(j)) => check_hom(&padic_level(group, *p, prefix.len() + 1), &last.group, j)?,
            },
            _ => {}
        }
        Ok(Tower { prefix, tail })
    }

    /// A tower with the given levels and maps followed by a constant tail.
    pub fn constant_after(groups: Vec<FgAbGroup>, maps: Vec<IntMatrix>) -> Result<Self> {
        Self::new(Self::levels(groups, maps)?, TailRule::Constant)
    }

    /// Zips groups `M_1..M_L` with maps `M_2 -> M_1, ..., M_L -> M_{L-1}`.
    pub fn levels(groups: Vec<FgAbGroup>, maps: Vec<IntMatrix>) -> Result<Vec<TowerLevel>> {
        if !groups.is_empty() && maps.len() + 1 != groups.len() {
            return Err(Error::InvalidTower(format!("{} levels need {} maps", groups.len(), groups.len() - 1)));
        }
        let mut maps = maps.into_iter();
        Ok(groups
            .into_iter()
            .enumerate()
            .map(|(i, group)| TowerLevel { group, map: if i == 0 { None } else { maps.next() } })
            .collect())
    }

    /// The tower `A/pA <- A/p^2A <- ...` of projections.
    pub fn padic(group: FgAbGroup, p: Prime) -> Self {
        Tower { prefix: Vec::new(), tail: TailRule::PAdicQuotient { group, p, junction: None } }
    }

    pub fn prefix(&self) -> &[TowerLevel] {
        &self.prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    /// `M_n` for `n >= 1`.
    pub fn level(&self, n: usize) -> Result<FgAbGroup> {
        if n == 0 {
            return Err(Error::InvalidArgument("tower levels start at 1".into()));
        }
        if let Some(l) = self.prefix.get(n - 1) {
            return Ok(l.group.clone());
        }
        match &self.tail {
            TailRule::Constant | TailRule::EventuallyZero => Ok(self.prefix.last().expect("validated").group.clone()),
            TailRule::PAdicQuotient { group, p, .. } => Ok(padic_level(group, *p, n)),
            TailRule::Stabilizing { .. } => {
                Err(Error::Unsupported(format!("level {n} lies past the explicit prefix of a stabilizing tower")))
            }
        }
    }

    /// The structure map `M_n -> M_{n-1}` for `n >= 2`.
    pub fn map(&self, n: usize) -> Result<IntMatrix> {
        if n < 2 {
            return Err(Error::InvalidArgument("structure maps start at level 2".into()));
        }
        let l = self.prefix.len();
        if n <= l {
            return Ok(self.prefix[n - 1].map.clone().expect("validated"));
        }
        match &self.tail {
            TailRule::Constant => Ok(IntMatrix::identity(self.prefix[l - 1].group.num_generators())),
            TailRule::EventuallyZero => {
                let k = self.prefix[l - 1].group.num_generators();
                Ok(IntMatrix::zeros(k, k))
            }
            TailRule::PAdicQuotient { group, p, junction } => {
                if n == l + 1 {
                    if let Some(j) = junction {
                        return Ok(j.clone());
                    }
                }
                Ok(padic_projection(group, *p, n))
            }
            TailRule::Stabilizing { .. } => {
                Err(Error::Unsupported(format!("map {n} lies past the explicit prefix of a stabilizing tower")))
            }
        }
    }

    /// Number of levels that can be materialized, `None` when unbounded.
    pub fn materialized_depth(&self) -> Option<usize> {
        match self.tail {
            TailRule::Stabilizing { .. } => Some(self.prefix.len()),
            _ => None,
        }
    }
}

/// The projection `A / p^n A -> A / p^{n-1} A`.
fn padic_projection(a: &FgAbGroup, p: Prime, n: usize) -> IntMatrix {
    let src = survivor_positions(&quotient_orders(a, p, n));
    let dst = survivor_positions(&quotient_orders(a, p, n - 1));
    let rows = dst.iter().flatten().count();
    let cols = src.iter().flatten().count();
    let triplets: Vec<(usize, usize, BigInt)> = src
        .iter()
        .zip(&dst)
        .filter_map(|(s, d)| Some((d.as_ref().copied()?, s.as_ref().copied()?, BigInt::one())))
        .collect();
    IntMatrix::from_triplets(rows, cols, &triplets).expect("indices in range")
}

/// `p`-primary part of the torsion of `a`, as a list of prime powers.
pub(crate) fn p_primary(a: &FgAbGroup, p: Prime) -> Vec<BigUint> {
    let pb = BigUint::from(p.get());
    let mut out: Vec<BigUint> = a
        .torsion()
        .iter()
        .map(|d| {
            let mut q = BigUint::one();
            let mut d = d.clone();
            while d.is_multiple_of(&pb) {
                d /= &pb;
                q *= &pb;
            }
            q
        })
        .filter(|q| !q.is_one())
        .collect();
    out.sort();
    out
}
