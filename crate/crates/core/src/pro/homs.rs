//! Homomorphisms between finitely generated abelian groups, written as
//! integer matrices in the standard generators (torsion first, then free).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::FgAbGroup;
use crate::linalg::{integer_kernel, IntMatrix, Lattice};
use crate::{Error, Result};

/// Relations `d_i e_i` of `g` inside `Z^{generators}`.
pub(crate) fn relations(g: &FgAbGroup) -> Lattice {
    let orders = g.generator_orders();
    let n = orders.len();
    Lattice::span(
        n,
        orders.iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(i, d)| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = d.clone();
            v
        }),
    )
}

/// Reduces the rows belonging to torsion generators of `dst` modulo their
/// orders, so equal homomorphisms get equal matrices.
pub(crate) fn normalize(dst: &FgAbGroup, m: &IntMatrix) -> IntMatrix {
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

/// Checks that `m` describes a well-defined homomorphism `src -> dst`.
pub(crate) fn check_hom(src: &FgAbGroup, dst: &FgAbGroup, m: &IntMatrix) -> Result<()> {
    if m.rows() != dst.num_generators() || m.cols() != src.num_generators() {
        return Err(Error::Dimension(format!(
            "map matrix is {} x {}, expected {} x {}",
            m.rows(),
            m.cols(),
            dst.num_generators(),
            src.num_generators()
        )));
    }
    let rel = relations(dst);
    for (j, d) in src.generator_orders().iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let image: Vec<BigInt> = m.column(j).iter().map(|x| x * d).collect();
        if !rel.contains(&image) {
            return Err(Error::InvalidTower(format!(
                "generator {j} of order {d} is sent to an element whose order does not divide {d}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn is_zero_map(dst: &FgAbGroup, m: &IntMatrix) -> bool {
    let rel = relations(dst);
    (0..m.cols()).all(|j| rel.contains(&m.column(j)))
}

/// `im(m)` as a lattice of `Z^{gens(dst)}`, relations included.
pub(crate) fn image(dst: &FgAbGroup, m: &IntMatrix) -> Lattice {
    let rel = relations(dst);
    Lattice::span(
        m.rows(),
        (0..m.cols()).map(|j| m.column(j)).chain(rel.basis().iter().cloned()),
    )
}

/// Preimage of the relations of `dst`: generators of `ker(m)` as a lattice
/// of `Z^{gens(src)}` (it contains the relations of `src`).
pub(crate) fn kernel(src: &FgAbGroup, dst: &FgAbGroup, m: &IntMatrix) -> Lattice {
    let rel = relations(dst);
    let rel_cols: Vec<Vec<BigInt>> = rel.basis().to_vec();
    let k = m.cols();
    let rel_matrix = if rel_cols.is_empty() {
        IntMatrix::zeros(m.rows(), 0)
    } else {
        IntMatrix::from_rows(rel_cols.len(), m.rows(), &rel_cols).expect("relation rows").transpose()
    };
    let stacked = m.hconcat(&rel_matrix).expect("same row count");
    let gens = integer_kernel(&stacked).into_iter().map(|v| v[..k].to_vec());
    let src_rel = relations(src);
    Lattice::span(k, gens.chain(src_rel.basis().iter().cloned()))
}

/// Whether `m` kills every vector of `lattice`.
pub(crate) fn kills(dst: &FgAbGroup, m: &IntMatrix, lattice: &Lattice) -> bool {
    let rel = relations(dst);
    lattice.basis().iter().all(|v| rel.contains(&m.mul_vec(v).expect("shape")))
}

/// `m2 . m1`, normalized in the final target.
pub(crate) fn compose(dst: &FgAbGroup, m2: &IntMatrix, m1: &IntMatrix) -> IntMatrix {
    normalize(dst, &m2.mul(m1).expect("composable maps"))
}
