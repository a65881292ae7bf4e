use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix, SmithForm};
use crate::abelian::{FgAbGroup, Prime};
use crate::{Error, Result};

/// Coefficient field for Betti numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    /// `F_p`; the modulus is validated when used.
    Fp(u64),
}

/// A bounded chain complex of finitely generated free abelian groups
/// `C_top -> ... -> C_1 -> C_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[n - 1]` is `d_n : C_n -> C_{n-1}`, a `ranks[n-1] x ranks[n]` matrix.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Validates shapes and `d_{n-1} d_n = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let expected = ranks.len().saturating_sub(1);
        if boundaries.len() != expected {
            return Err(Error::Dimension(format!(
                "{} chain groups need {expected} boundary matrices, got {}",
                ranks.len(),
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let n = i + 1;
            if d.rows() != ranks[n - 1] || d.cols() != ranks[n] {
                return Err(Error::Dimension(format!(
                    "d_{n} is {} x {}, expected {} x {}",
                    d.rows(),
                    d.cols(),
                    ranks[n - 1],
                    ranks[n]
                )));
            }
        }
        for n in 1..boundaries.len() {
            if !boundaries[n - 1].mul(&boundaries[n])?.is_zero() {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// A complex with the given ranks and all differentials zero.
    pub fn zero_differentials(ranks: Vec<usize>) -> Self {
        let boundaries = (1..ranks.len()).map(|n| IntMatrix::zeros(ranks[n - 1], ranks[n])).collect();
        ChainComplex { ranks, boundaries }
    }

    /// The complex with no chain groups at all.
    pub fn empty() -> Self {
        ChainComplex { ranks: Vec::new(), boundaries: Vec::new() }
    }

    /// Number of degrees, `top_dim + 1` (zero for the empty complex).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `d_n`, or `None` for `n = 0` and beyond the top.
    pub fn boundary(&self, n: usize) -> Option<&IntMatrix> {
        n.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// `H_n = ker d_n / im d_{n+1}` for `n = 0..=top_dim`.
pub fn homology(c: &ChainComplex) -> Vec<FgAbGroup> {
    let forms: Vec<SmithForm> = c.boundaries.iter().map(smith_normal_form).collect();
    (0..c.len())
        .map(|n| {
            let outgoing = if n == 0 { 0 } else { forms[n - 1].rank };
            let (incoming, torsion) = match forms.get(n) {
                Some(f) => (f.rank, f.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()),
                None => (0, Vec::new()),
            };
            let free = c.ranks[n] - outgoing - incoming;
            FgAbGroup::from_invariant_factors(free, torsion.into_iter().map(|d| d.magnitude().clone()).collect())
                .expect("Smith form factors form a divisibility chain")
        })
        .collect()
}

/// Betti numbers `dim H_n(c ⊗ field)`, `n = 0..=top_dim`.
pub fn betti(c: &ChainComplex, field: Field) -> Result<Vec<usize>> {
    let ranks: Vec<usize> = match field {
        Field::Rationals => c.boundaries.iter().map(|d| smith_normal_form(d).rank).collect(),
        Field::Fp(p) => {
            let p = Prime::new(p)?;
            c.boundaries.iter().map(|d| d.rank_mod(p.get())).collect()
        }
    };
    Ok((0..c.len())
        .map(|n| {
            let outgoing = if n == 0 { 0 } else { ranks[n - 1] };
            let incoming = ranks.get(n).copied().unwrap_or(0);
            c.ranks[n] - outgoing - incoming
        })
        .collect())
}
