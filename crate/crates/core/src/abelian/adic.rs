use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::Prime;
use crate::{Error, Result};

fn add_ranks(a: &BTreeMap<Prime, usize>, b: &BTreeMap<Prime, usize>) -> BTreeMap<Prime, usize> {
    let mut out = a.clone();
    for (&p, &r) in b {
        *out.entry(p).or_insert(0) += r;
    }
    out
}

fn strip_zeros(ranks: BTreeMap<Prime, usize>) -> BTreeMap<Prime, usize> {
    ranks.into_iter().filter(|&(_, r)| r > 0).collect()
}

/// `Z^z × ∏_p (Z_p^)^{r_p}`, known up to a finite abelian group whose
/// torsion is supported on the `ambiguity` primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "AdicRepr", into = "AdicRepr")]
pub struct AdicGroup {
    z_rank: usize,
    p_ranks: BTreeMap<Prime, usize>,
    ambiguity: BTreeSet<Prime>,
    rationalized: bool,
}

impl AdicGroup {
    pub fn new(z_rank: usize, p_ranks: BTreeMap<Prime, usize>, ambiguity: BTreeSet<Prime>) -> Self {
        AdicGroup { z_rank, p_ranks: strip_zeros(p_ranks), ambiguity, rationalized: false }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn z_rank(&self) -> usize {
        self.z_rank
    }

    pub fn p_ranks(&self) -> &BTreeMap<Prime, usize> {
        &self.p_ranks
    }

    pub fn p_rank(&self, p: Prime) -> usize {
        self.p_ranks.get(&p).copied().unwrap_or(0)
    }

    pub fn ambiguity(&self) -> &BTreeSet<Prime> {
        &self.ambiguity
    }

    /// Set once primes have been inverted: the `p`-adic summands then read
    /// as copies of `Q_p^`.
    pub fn is_rationalized(&self) -> bool {
        self.rationalized
    }

    pub fn is_zero(&self) -> bool {
        self.z_rank == 0 && self.p_ranks.is_empty() && self.ambiguity.is_empty()
    }

    pub fn with_ambiguity(mut self, ambiguity: BTreeSet<Prime>) -> Self {
        self.ambiguity = ambiguity;
        self
    }

    pub fn direct_sum(&self, other: &AdicGroup) -> AdicGroup {
        AdicGroup {
            z_rank: self.z_rank + other.z_rank,
            p_ranks: add_ranks(&self.p_ranks, &other.p_ranks),
            ambiguity: self.ambiguity.union(&other.ambiguity).copied().collect(),
            rationalized: self.rationalized || other.rationalized,
        }
    }

    /// `⊗ Z[1/P]`: ambiguity at `P` disappears; `Z_p^` for `p ∈ P` becomes
    /// `Q_p^`, which keeps its rank and sets the rationalized marker.
    pub fn invert_primes(&self, primes: &BTreeSet<Prime>) -> AdicGroup {
        AdicGroup {
            z_rank: self.z_rank,
            p_ranks: self.p_ranks.clone(),
            ambiguity: self.ambiguity.difference(primes).copied().collect(),
            rationalized: self.rationalized || self.p_ranks.keys().any(|p| primes.contains(p)),
        }
    }

    /// `dim_p^`: `Z` and `Z_p^` count one each, `Z_q^` for `q != p` and
    /// finite groups count zero.
    pub fn dim_hat_p(&self, p: Prime) -> usize {
        self.z_rank + self.p_rank(p)
    }

    /// Rank-level Pontryagin dual: `Z_p^` pairs with `Z/p^∞`.
    ///
    /// Defined on non-rationalized groups only; `Q_p^` is self-dual and has
    /// no Prüfer counterpart.
    pub fn pontryagin_dual(&self) -> Result<DivisibleGroup> {
        if self.rationalized {
            return Err(Error::Unsupported("Pontryagin dual of a rationalized adic group".into()));
        }
        Ok(DivisibleGroup {
            z_rank: self.z_rank,
            prufer_ranks: self.p_ranks.clone(),
            ambiguity: self.ambiguity.clone(),
        })
    }
}

/// `Z^z × ∐_p (Z/p^∞)^{r_p}`, known up to a finite abelian group whose
/// torsion is supported on the `ambiguity` primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "DivisibleRepr", into = "DivisibleRepr")]
pub struct DivisibleGroup {
    z_rank: usize,
    prufer_ranks: BTreeMap<Prime, usize>,
    ambiguity: BTreeSet<Prime>,
}

impl DivisibleGroup {
    pub fn new(z_rank: usize, prufer_ranks: BTreeMap<Prime, usize>, ambiguity: BTreeSet<Prime>) -> Self {
        DivisibleGroup { z_rank, prufer_ranks: strip_zeros(prufer_ranks), ambiguity }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn z_rank(&self) -> usize {
        self.z_rank
    }

    pub fn prufer_ranks(&self) -> &BTreeMap<Prime, usize> {
        &self.prufer_ranks
    }

    pub fn prufer_rank(&self, p: Prime) -> usize {
        self.prufer_ranks.get(&p).copied().unwrap_or(0)
    }

    pub fn ambiguity(&self) -> &BTreeSet<Prime> {
        &self.ambiguity
    }

    pub fn is_zero(&self) -> bool {
        self.z_rank == 0 && self.prufer_ranks.is_empty() && self.ambiguity.is_empty()
    }

    pub fn with_ambiguity(mut self, ambiguity: BTreeSet<Prime>) -> Self {
        self.ambiguity = ambiguity;
        self
    }

    pub fn direct_sum(&self, other: &DivisibleGroup) -> DivisibleGroup {
        DivisibleGroup {
            z_rank: self.z_rank + other.z_rank,
            prufer_ranks: add_ranks(&self.prufer_ranks, &other.prufer_ranks),
            ambiguity: self.ambiguity.union(&other.ambiguity).copied().collect(),
        }
    }

    /// `Z/p^∞ ⊗ Z[1/p] = 0`, so Prüfer summands at `P` vanish.
    pub fn invert_primes(&self, primes: &BTreeSet<Prime>) -> DivisibleGroup {
        DivisibleGroup {
            z_rank: self.z_rank,
            prufer_ranks: self.prufer_ranks.iter().filter(|(p, _)| !primes.contains(p)).map(|(&p, &r)| (p, r)).collect(),
            ambiguity: self.ambiguity.difference(primes).copied().collect(),
        }
    }

    /// The `p`-completion of a divisible group vanishes, so only the copies
    /// of `Z` contribute.
    pub fn dim_hat_p(&self, _p: Prime) -> usize {
        self.z_rank
    }

    pub fn pontryagin_dual(&self) -> AdicGroup {
        AdicGroup {
            z_rank: self.z_rank,
            p_ranks: self.prufer_ranks.clone(),
            ambiguity: self.ambiguity.clone(),
            rationalized: false,
        }
    }

    /// `ext(-, Z)` at rank level: `ext(Z/p^∞, Z) ≅ Z_p^`, `ext(Z, Z) = 0`.
    /// Finite ambiguity is self-dual and carried over.
    pub fn ext_to_z(&self) -> AdicGroup {
        AdicGroup {
            z_rank: 0,
            p_ranks: self.prufer_ranks.clone(),
            ambiguity: self.ambiguity.clone(),
            rationalized: false,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AdicRepr {
    z: usize,
    #[serde(default)]
    adic: BTreeMap<Prime, usize>,
    #[serde(default)]
    ambiguity: BTreeSet<Prime>,
    #[serde(default)]
    rationalized: bool,
}

impl From<AdicRepr> for AdicGroup {
    fn from(r: AdicRepr) -> Self {
        let mut g = AdicGroup::new(r.z, r.adic, r.ambiguity);
        g.rationalized = r.rationalized;
        g
    }
}

impl From<AdicGroup> for AdicRepr {
    fn from(g: AdicGroup) -> Self {
        AdicRepr { z: g.z_rank, adic: g.p_ranks, ambiguity: g.ambiguity, rationalized: g.rationalized }
    }
}

#[derive(Serialize, Deserialize)]
struct DivisibleRepr {
    z: usize,
    #[serde(default)]
    prufer: BTreeMap<Prime, usize>,
    #[serde(default)]
    ambiguity: BTreeSet<Prime>,
}

impl From<DivisibleRepr> for DivisibleGroup {
    fn from(r: DivisibleRepr) -> Self {
        DivisibleGroup::new(r.z, r.prufer, r.ambiguity)
    }
}

impl From<DivisibleGroup> for DivisibleRepr {
    fn from(g: DivisibleGroup) -> Self {
        DivisibleRepr { z: g.z_rank, prufer: g.prufer_ranks, ambiguity: g.ambiguity }
    }
}
