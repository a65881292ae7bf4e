use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::prime::{prime_divisors_big, Prime};
use crate::linalg::IntValue;
use crate::{Error, Result};

/// A finitely generated abelian group `Z^free ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` in
/// invariant-factor form: `1 < d_1 | d_2 | ... | d_k`.
///
/// The form is canonical, so structural equality is isomorphism.
/// The standard generators are ordered torsion first (in the order of the
/// factors), then the free generators; homomorphisms between groups are
/// written as integer matrices in these bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FgRepr", into = "FgRepr")]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        FgAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(0, [BigUint::from(n)])
    }

    /// `Z^free` plus cyclic summands of the given orders, in any order.
    pub fn new(free_rank: usize, orders: &[u64]) -> Self {
        Self::from_cyclic_orders(free_rank, orders.iter().map(|&n| BigUint::from(n)))
    }

    /// Checks that `factors` already is an invariant-factor chain.
    pub fn from_invariant_factors(free_rank: usize, factors: Vec<BigUint>) -> Result<Self> {
        if factors.iter().any(|d| d.is_zero() || d.is_one()) {
            return Err(Error::InvalidArgument("invariant factors must be at least 2".into()));
        }
        if factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidArgument("invariant factors must form a divisibility chain".into()));
        }
        Ok(FgAbGroup { free_rank, torsion: factors })
    }

    /// Canonicalizes an arbitrary direct sum of cyclic groups. An order of
    /// zero stands for a copy of `Z`.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigUint>>(free_rank: usize, orders: I) -> Self {
        let mut free_rank = free_rank;
        let mut list: Vec<BigUint> = Vec::new();
        for n in orders {
            if n.is_zero() {
                free_rank += 1;
            } else if !n.is_one() {
                list.push(n);
            }
        }
        // gcd to the left, lcm to the right: sorts every prime's exponents.
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let g = list[i].gcd(&list[j]);
                let l = list[i].lcm(&list[j]);
                list[i] = g;
                list[j] = l;
            }
        }
        list.retain(|d| !d.is_one());
        FgAbGroup { free_rank, torsion: list }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    /// Number of standard generators, torsion ones first.
    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Orders of the standard generators; `0` marks a free generator.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        self.torsion
            .iter()
            .map(|d| BigInt::from(d.clone()))
            .chain(std::iter::repeat_n(BigInt::zero(), self.free_rank))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }

    /// Primes at which the torsion subgroup is non-trivial.
    pub fn torsion_support(&self) -> BTreeSet<Prime> {
        self.torsion.last().map(prime_divisors_big).unwrap_or_default()
    }

    /// Number of invariant factors divisible by `p`, i.e. `dim_{F_p}` of the
    /// `p`-torsion.
    pub fn p_torsion_count(&self, p: Prime) -> usize {
        let pb = BigUint::from(p.get());
        self.torsion.iter().filter(|d| d.is_multiple_of(&pb)).count()
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        Self::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// `hom(A, Z)`: the free part survives, torsion dies.
    pub fn hom_to_z(&self) -> FgAbGroup {
        FgAbGroup::free(self.free_rank)
    }

    /// `ext(A, Z)`: `ext(Z/n, Z) = Z/n` and `ext(Z, Z) = 0`.
    pub fn ext_to_z(&self) -> FgAbGroup {
        FgAbGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// `A ⊗ Z[1/P]` as far as the invariant-factor record goes: every
    /// torsion factor loses its `P`-primary part.
    pub fn invert_primes(&self, primes: &BTreeSet<Prime>) -> FgAbGroup {
        let stripped = self.torsion.iter().map(|d| {
            let mut d = d.clone();
            for p in primes {
                let pb = BigUint::from(p.get());
                while d.is_multiple_of(&pb) {
                    d /= &pb;
                }
            }
            d
        });
        Self::from_cyclic_orders(self.free_rank, stripped)
    }

    /// `dim_p^(A)`; equal to the free rank for finitely generated groups.
    pub fn dim_hat_p(&self, _p: Prime) -> usize {
        self.free_rank
    }
}

#[derive(Serialize, Deserialize)]
struct FgRepr {
    free: usize,
    #[serde(default)]
    torsion: Vec<IntValue>,
}

impl TryFrom<FgRepr> for FgAbGroup {
    type Error = Error;
    fn try_from(r: FgRepr) -> Result<Self> {
        let mut orders = Vec::with_capacity(r.torsion.len());
        for v in &r.torsion {
            let n = v.to_bigint()?;
            let Some(n) = n.to_biguint().filter(|n| !n.is_zero()) else {
                return Err(Error::InvalidArgument(format!("torsion order must be positive, got {n}")));
            };
            orders.push(n);
        }
        Ok(FgAbGroup::from_cyclic_orders(r.free, orders))
    }
}

impl From<FgAbGroup> for FgRepr {
    fn from(g: FgAbGroup) -> Self {
        FgRepr {
            free: g.free_rank,
            torsion: g.torsion.iter().map(|d| IntValue::from(&BigInt::from(d.clone()))).collect(),
        }
    }
}
