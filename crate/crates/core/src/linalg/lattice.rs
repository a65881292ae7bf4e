use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A subgroup of `Z^dim`, stored as an echelon basis with positive pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    /// The lattice spanned by `generators`, each of length `dim`.
    pub fn span<I>(dim: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut rows: Vec<Vec<BigInt>> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator length must equal the ambient rank"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        let mut basis = Vec::new();
        for col in 0..dim {
            loop {
                let live: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
                if live.is_empty() {
                    break;
                }
                let piv = *live.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
                let mut finished = true;
                for &r in &live {
                    if r == piv {
                        continue;
                    }
                    let q = rows[r][col].div_floor(&rows[piv][col]);
                    let (src, dst) = pair_mut(&mut rows, piv, r);
                    for k in col..dim {
                        if !src[k].is_zero() {
                            dst[k] -= &q * &src[k];
                        }
                    }
                    finished &= dst[col].is_zero();
                }
                if finished {
                    let mut row = rows.swap_remove(piv);
                    if row[col].is_negative() {
                        row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    basis.push(row);
                    break;
                }
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        Lattice { dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for row in &self.basis {
            let col = row.iter().position(|x| !x.is_zero()).expect("basis rows are non-zero");
            if v[..col].iter().any(|x| !x.is_zero()) {
                return false;
            }
            if v[col].is_zero() {
                continue;
            }
            let (q, r) = v[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            for k in col..self.dim {
                v[k] -= &q * &row[k];
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}
