use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::FgAbGroup;
use crate::linalg::{betti, homology, ChainComplex, Field, IntMatrix, IntValue};
use crate::{Error, Result};

/// A finite CW complex, recorded through its cellular chain complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwComplex {
    chain: ChainComplex,
    labels: Vec<Vec<String>>,
}

/// JSON form: ranks, sparse boundary triplets per degree (entry `k` is
/// `d_{k+1}`) and optional cell labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexRepr {
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub boundaries: Vec<Vec<(usize, usize, IntValue)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
}

impl CwComplex {
    /// Checks that `d_1` sends every 1-cell to a sum of vertices with total
    /// coefficient zero, as attaching maps of edges do.
    pub fn new(chain: ChainComplex, labels: Option<Vec<Vec<String>>>) -> Result<Self> {
        if let Some(d1) = chain.boundary(1) {
            for j in 0..d1.cols() {
                let total: BigInt = d1.column(j).iter().sum();
                if !total.is_zero() {
                    return Err(Error::InvalidComplex(format!("the boundary of 1-cell {j} has augmentation {total}")));
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != chain.len() || l.iter().zip(chain.ranks()).any(|(row, &r)| row.len() != r) {
                    return Err(Error::InvalidComplex("labels do not match the cell counts".into()));
                }
                l
            }
            None => default_labels(chain.ranks()),
        };
        Ok(CwComplex { chain, labels })
    }

    pub fn from_boundaries(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        Self::new(ChainComplex::new(ranks, boundaries)?, None)
    }

    pub fn from_repr(r: &ComplexRepr) -> Result<Self> {
        let n = r.ranks.len();
        if r.boundaries.len() > n.saturating_sub(1) {
            return Err(Error::Dimension(format!("{} boundary maps for {n} degrees", r.boundaries.len())));
        }
        let mut mats = Vec::with_capacity(n.saturating_sub(1));
        for k in 1..n {
            let triplets = match r.boundaries.get(k - 1) {
                Some(t) => t.iter().map(|(i, j, v)| Ok((*i, *j, v.to_bigint()?))).collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            mats.push(IntMatrix::from_triplets(r.ranks[k - 1], r.ranks[k], &triplets)?);
        }
        Self::new(ChainComplex::new(r.ranks.clone(), mats)?, r.labels.clone())
    }

    pub fn to_repr(&self) -> ComplexRepr {
        ComplexRepr {
            ranks: self.chain.ranks().to_vec(),
            boundaries: self.chain.boundaries().iter().map(|d| d.to_dump().entries).collect(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn ranks(&self) -> &[usize] {
        self.chain.ranks()
    }

    pub fn num_cells(&self) -> usize {
        self.chain.ranks().iter().sum()
    }

    /// No cells at all (the empty space).
    pub fn is_empty_space(&self) -> bool {
        self.num_cells() == 0
    }

    pub fn homology(&self) -> Vec<FgAbGroup> {
        homology(&self.chain)
    }

    pub fn betti(&self, field: Field) -> Result<Vec<usize>> {
        betti(&self.chain, field)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chain.euler_characteristic()
    }

    /// The subcomplex on the given cells of each degree, which must be
    /// closed under taking boundaries.
    pub fn subcomplex(&self, cells: &[Vec<usize>]) -> Result<CwComplex> {
        let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
        let mut mats = Vec::new();
        for n in 1..cells.len() {
            let d = self.chain.boundary(n).expect("degree in range");
            for &j in &cells[n] {
                for i in 0..d.rows() {
                    if !d.get(i, j).is_zero() && !cells[n - 1].contains(&i) {
                        return Err(Error::InvalidComplex(format!(
                            "cell {j} of dimension {n} has a boundary cell outside the subcomplex"
                        )));
                    }
                }
            }
            mats.push(d.select(&cells[n - 1], &cells[n]));
        }
        let labels = cells
            .iter()
            .enumerate()
            .map(|(n, cs)| cs.iter().map(|&c| self.labels[n][c].clone()).collect())
            .collect();
        Self::new(ChainComplex::new(ranks, mats)?, Some(labels))
    }

    pub fn point() -> Self {
        Self::from_boundaries(vec![1], vec![]).expect("valid")
    }

    /// `S^n` with one 0-cell and one n-cell.
    pub fn sphere(n: usize) -> Self {
        if n == 0 {
            return Self::from_boundaries(vec![2], vec![]).expect("valid");
        }
        let mut ranks = vec![0; n + 1];
        ranks[0] = 1;
        ranks[n] = 1;
        Self::new(ChainComplex::zero_differentials(ranks), None).expect("valid")
    }

    pub fn circle() -> Self {
        Self::sphere(1)
    }

    pub fn real_projective_plane() -> Self {
        Self::from_boundaries(vec![1, 1, 1], vec![IntMatrix::zeros(1, 1), IntMatrix::from_i64(&[&[2]]).expect("shape")])
            .expect("valid")
    }

    pub fn torus() -> Self {
        surface_complex(1)
    }

    /// One vertex, edges `a`, `b`, and a face attached along `a b a b^{-1}`.
    pub fn klein_bottle() -> Self {
        Self::from_boundaries(
            vec![1, 2, 1],
            vec![IntMatrix::zeros(1, 2), IntMatrix::from_i64(&[&[2], &[0]]).expect("shape")],
        )
        .expect("valid")
    }

    /// The complex with no cells.
    pub fn empty() -> Self {
        Self::new(ChainComplex::empty(), None).expect("valid")
    }
}

fn default_labels(ranks: &[usize]) -> Vec<Vec<String>> {
    ranks
        .iter()
        .enumerate()
        .map(|(n, &r)| (0..r).map(|i| format!("e{n}_{i}")).collect())
        .collect()
}

/// The closed orientable surface of genus `g`: one vertex, `2g` edges and
/// one face whose commutator attaching map has zero cellular boundary.
pub fn surface_complex(genus: usize) -> CwComplex {
    CwComplex::new(ChainComplex::zero_differentials(vec![1, 2 * genus, 1]), None).expect("valid")
}
