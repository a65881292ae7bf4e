use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{FgAbGroup, Prime};
use crate::linalg::{smith_normal_form, unimodular_inverse, IntMatrix, Lattice};
use crate::pro::{TailRule, Tower, TowerLevel};
use crate::{Error, Result};

/// A commutative ring, free of finite rank over `Z`, with an augmentation
/// ideal `I` whose powers can be listed as sublattices.
pub trait AugmentedRing {
    /// Rank of the ring as an abelian group.
    fn rank(&self) -> usize;
    /// Product of two coefficient vectors.
    fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt>;
    /// Generators of `I`.
    fn ideal_generators(&self) -> Vec<Vec<BigInt>>;

    /// `I^n` as a sublattice of the ring; `I^0` is the whole ring.
    fn ideal_power(&self, n: usize) -> Lattice {
        let r = self.rank();
        let whole = Lattice::span(r, (0..r).map(|i| unit(r, i)));
        let gens = self.ideal_generators();
        let mut acc = whole;
        for _ in 0..n {
            let products: Vec<Vec<BigInt>> = acc
                .basis()
                .iter()
                .flat_map(|u| gens.iter().map(move |g| (u, g)))
                .map(|(u, g)| self.multiply(u, g))
                .collect();
            acc = Lattice::span(r, products);
        }
        acc
    }
}

fn unit(r: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); r];
    v[i] = BigInt::one();
    v
}

/// `Z[t]/(t^m - 1)`, the representation ring of `Z/m`, with coefficient
/// vectors in the basis `1, t, ..., t^{m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicRepRing {
    m: usize,
}

impl CyclicRepRing {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("the cyclic representation ring needs m >= 1".into()));
        }
        Ok(CyclicRepRing { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The augmentation `t -> 1`.
    pub fn augmentation(&self, a: &[BigInt]) -> BigInt {
        a.iter().sum()
    }
}

impl AugmentedRing for CyclicRepRing {
    fn rank(&self) -> usize {
        self.m
    }

    fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let m = self.m;
        let mut out = vec![BigInt::zero(); m];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % m] += x * y;
            }
        }
        out
    }

    /// `t^j (t - 1)` for every `j`; together they span `I = (t - 1)`.
    fn ideal_generators(&self) -> Vec<Vec<BigInt>> {
        let m = self.m;
        if m == 1 {
            return Vec::new();
        }
        (0..m)
            .map(|j| {
                let mut v = vec![BigInt::zero(); m];
                v[(j + 1) % m] += 1;
                v[j] -= 1;
                v
            })
            .collect()
    }
}

/// A representation ring given by structure constants in a basis of
/// irreducible characters. Index `0` must be the trivial character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepRingRepr", into = "RepRingRepr")]
pub struct RepRingTable {
    structure: Vec<Vec<Vec<i64>>>,
    augmentation: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RepRingRepr {
    irreducibles: usize,
    structure: Vec<Vec<Vec<i64>>>,
    augmentation: Vec<i64>,
}

impl TryFrom<RepRingRepr> for RepRingTable {
    type Error = Error;
    fn try_from(r: RepRingRepr) -> Result<Self> {
        if r.structure.len() != r.irreducibles {
            return Err(Error::InvalidArgument(format!(
                "{} irreducibles but {} structure slices",
                r.irreducibles,
                r.structure.len()
            )));
        }
        RepRingTable::new(r.structure, r.augmentation)
    }
}

impl From<RepRingTable> for RepRingRepr {
    fn from(t: RepRingTable) -> Self {
        RepRingRepr { irreducibles: t.augmentation.len(), structure: t.structure, augmentation: t.augmentation }
    }
}

impl RepRingTable {
    /// Validates shape, unit, commutativity, associativity, non-negativity
    /// and multiplicativity of the augmentation.
    pub fn new(structure: Vec<Vec<Vec<i64>>>, augmentation: Vec<i64>) -> Result<Self> {
        let k = augmentation.len();
        let bad = |msg: String| Err(Error::InvalidArgument(format!("representation ring table: {msg}")));
        if k == 0 {
            return bad("no irreducibles".into());
        }
        if structure.len() != k || structure.iter().any(|s| s.len() != k || s.iter().any(|c| c.len() != k)) {
            return bad(format!("structure constants must form a {k} x {k} x {k} array"));
        }
        if augmentation[0] != 1 || augmentation.iter().any(|&d| d <= 0) {
            return bad("dimensions must be positive with the trivial character first".into());
        }
        let c = &structure;
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if c[i][j][l] < 0 {
                        return bad("negative multiplicity".into());
                    }
                    if c[i][j][l] != c[j][i][l] {
                        return bad("multiplication is not commutative".into());
                    }
                }
                if c[0][i][j] != i64::from(i == j) {
                    return bad("index 0 is not the unit".into());
                }
                let dim: i64 = (0..k).map(|l| c[i][j][l] * augmentation[l]).sum();
                if dim != augmentation[i] * augmentation[j] {
                    return bad("the augmentation is not multiplicative".into());
                }
            }
        }
        let table = RepRingTable { structure, augmentation };
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let (ei, ej, el) = (unit(k, i), unit(k, j), unit(k, l));
                    let left = table.multiply(&table.multiply(&ei, &ej), &el);
                    let right = table.multiply(&ei, &table.multiply(&ej, &el));
                    if left != right {
                        return bad("multiplication is not associative".into());
                    }
                }
            }
        }
        Ok(table)
    }

    /// The table of `Z/m` in the basis of its characters `chi^i`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("the cyclic representation ring needs m >= 1".into()));
        }
        let structure = (0..m)
            .map(|i| (0..m).map(|j| (0..m).map(|l| i64::from((i + j) % m == l)).collect()).collect())
            .collect();
        Self::new(structure, vec![1; m])
    }

    /// The table of `S_3`: trivial, sign, and the 2-dimensional character.
    pub fn symmetric3() -> Self {
        let structure = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
            vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 1]],
        ];
        Self::new(structure, vec![1, 1, 2]).expect("valid table")
    }

    pub fn irreducibles(&self) -> usize {
        self.augmentation.len()
    }
}

impl AugmentedRing for RepRingTable {
    fn rank(&self) -> usize {
        self.augmentation.len()
    }

    fn multiply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let k = self.rank();
        let mut out = vec![BigInt::zero(); k];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (l, &c) in self.structure[i][j].iter().enumerate() {
                    if c != 0 {
                        out[l] += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// `chi_i - dim(chi_i) chi_0` for the non-trivial characters.
    fn ideal_generators(&self) -> Vec<Vec<BigInt>> {
        let k = self.rank();
        (1..k)
            .map(|i| {
                let mut v = unit(k, i);
                v[0] -= self.augmentation[i];
                v
            })
            .collect()
    }
}

/// `R / I^n` with the coordinates that present it: the rows of `project`
/// send a ring element to its coordinates in the standard generators, and
/// the columns of `lift` send generators back to ring elements.
struct Quotient {
    group: FgAbGroup,
    project: IntMatrix,
    lift: IntMatrix,
}

fn quotient(r: usize, ideal: &Lattice) -> Quotient {
    let basis = ideal.basis();
    let inclusion = if basis.is_empty() {
        IntMatrix::zeros(r, 0)
    } else {
        IntMatrix::from_rows(basis.len(), r, basis).expect("lattice basis").transpose()
    };
    let snf = smith_normal_form(&inclusion);
    let left_inv = unimodular_inverse(&snf.left).expect("unimodular transform");
    // Coordinate i of U x has order d_i (i < rank) or is free (i >= rank);
    // keep the torsion coordinates with d_i > 1, then the free ones.
    let mut keep: Vec<usize> = (0..snf.rank).filter(|&i| !snf.invariant_factors[i].is_one()).collect();
    keep.extend(snf.rank..r);
    let all: Vec<usize> = (0..r).collect();
    let torsion = snf.invariant_factors[..snf.rank]
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.abs().to_biguint().expect("positive"))
        .collect();
    let group = FgAbGroup::from_invariant_factors(r - snf.rank, torsion).expect("smith form divisibility chain");
    Quotient { group, project: snf.left.select(&keep, &all), lift: left_inv.select(&all, &keep) }
}

/// The tower `R/I <- R/I^2 <- ... <- R/I^depth` with its projections.
pub fn augmentation_tower<R: AugmentedRing + ?Sized>(ring: &R, depth: usize) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::InvalidArgument("augmentation tower depth must be at least 1".into()));
    }
    let r = ring.rank();
    let quotients: Vec<Quotient> = (1..=depth).map(|n| quotient(r, &ring.ideal_power(n))).collect();
    let mut prefix: Vec<TowerLevel> = Vec::with_capacity(depth);
    for (n, q) in quotients.iter().enumerate() {
        let map = if n == 0 {
            None
        } else {
            let prev = &quotients[n - 1];
            let m = prev.project.mul(&q.lift).expect("composable");
            Some(reduce(&prev.group, &m))
        };
        prefix.push(TowerLevel { group: q.group.clone(), map });
    }
    Tower::new(prefix, TailRule::Stabilizing { limit: None })
}

fn reduce(dst: &FgAbGroup, m: &IntMatrix) -> IntMatrix {
    use num_integer::Integer;
    let orders = dst.generator_orders();
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| if orders[i].is_zero() { x.clone() } else { x.mod_floor(&orders[i]) })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(m.rows(), m.cols(), &rows).expect("shape preserved")
}

/// Outcome of the stabilization search for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionRank {
    pub prime: Prime,
    /// Stable number of `p`-primary cyclic factors of `R / I^n`.
    pub rank: usize,
    /// Depth at which the signature was found stable.
    pub depth: usize,
    /// `(p-primary factor count, growth of the p-length)` per level.
    pub signatures: Vec<(usize, usize)>,
}

/// Rank over `Z_p^` of the `I`-adic completion, read off the growth of the
/// `p`-primary torsion of `R / I^n`.
///
/// Heuristic: the signature of level `n` is the number of `p`-primary cyclic
/// factors together with the increase of the `p`-length over level `n - 1`.
/// The rank is declared once three consecutive levels share a signature and
/// the length keeps growing (or the count is zero).
pub fn completion_rank<R: AugmentedRing + ?Sized>(ring: &R, p: Prime, max_depth: usize) -> Result<CompletionRank> {
    let r = ring.rank();
    let mut signatures = Vec::new();
    let mut prev_length = 0usize;
    let mut ideal = ring.ideal_power(0);
    let gens = ring.ideal_generators();
    for n in 1..=max_depth {
        ideal = Lattice::span(
            r,
            ideal
                .basis()
                .iter()
                .flat_map(|u| gens.iter().map(move |g| (u, g)))
                .map(|(u, g)| ring.multiply(u, g))
                .collect::<Vec<_>>(),
        );
        let group = quotient(r, &ideal).group;
        let count = group.p_torsion_count(p);
        let length: usize = group.torsion().iter().map(|d| p.valuation_big(d) as usize).sum();
        signatures.push((count, length - prev_length));
        prev_length = length;
        let k = signatures.len();
        if k >= 3 && signatures[k - 1] == signatures[k - 2] && signatures[k - 2] == signatures[k - 3] {
            let (count, growth) = signatures[k - 1];
            if count == 0 || growth > 0 {
                return Ok(CompletionRank { prime: p, rank: count, depth: n, signatures });
            }
        }
    }
    Err(Error::NotStabilized(max_depth))
}
