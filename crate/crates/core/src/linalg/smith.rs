//! Smith normal form over the integers.
//!
//! Elimination with a smallest-absolute-value pivot: the pivot is moved to
//! the diagonal, its row and column are cleared by Euclidean division, and
//! whenever a remainder survives the smaller remainder becomes the new
//! pivot. Once the cross is clear, any entry of the trailing block that the
//! pivot does not divide is folded into the pivot row, which forces another
//! round with a strictly smaller pivot. Both transforms are accumulated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of [`smith_normal_form`]: `left * m * right` is diagonal with
/// entries `invariant_factors` followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Non-zero diagonal entries `d_1 | d_2 | ...`, all positive (units included).
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular, `rows x rows`.
    pub left: IntMatrix,
    /// Unimodular, `cols x cols`.
    pub right: IntMatrix,
}

impl SmithForm {
    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.a.iter_mut().chain(self.v.iter_mut()) {
                row.swap(i, j);
            }
        }
    }

    /// row_i <- row_i - q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &BigInt) {
        for (mat, width) in [(&mut self.a, self.cols), (&mut self.u, self.rows)] {
            let (src, dst) = if t < i {
                let (lo, hi) = mat.split_at_mut(i);
                (&lo[t], &mut hi[0])
            } else {
                let (lo, hi) = mat.split_at_mut(t);
                (&hi[0], &mut lo[i])
            };
            for k in 0..width {
                if !src[k].is_zero() {
                    dst[k] -= q * &src[k];
                }
            }
        }
    }

    /// col_j <- col_j - q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            if !row[t].is_zero() {
                let delta = q * &row[t];
                row[j] -= delta;
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut().chain(self.u[t].iter_mut()) {
            *x = -&*x;
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        a: m.to_rows(),
        u: IntMatrix::identity(rows).to_rows(),
        v: IntMatrix::identity(cols).to_rows(),
        rows,
        cols,
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&w.a, t, rows, cols) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_axpy(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_axpy(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived in the cross.
                let (bi, bj) = min_abs_in_cross(&w.a, t, rows, cols);
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            let pivot = w.a[t][t].clone();
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => w.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        factors.push(w.a[t][t].clone());
        t += 1;
    }
    let rank = factors.len();
    SmithForm {
        invariant_factors: factors,
        rank,
        left: IntMatrix::from_raw(rows, rows, w.u.into_iter().flatten().collect()),
        right: IntMatrix::from_raw(cols, cols, w.v.into_iter().flatten().collect()),
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let cells = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
    cells
        .filter(|&(i, j)| !a[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        .expect("cross contains the pivot")
}

/// Inverse of a unimodular matrix, via its own Smith form
/// (`P u Q = I` gives `u^{-1} = Q P`).
pub fn unimodular_inverse(u: &IntMatrix) -> Option<IntMatrix> {
    if u.rows() != u.cols() {
        return None;
    }
    let snf = smith_normal_form(u);
    if snf.rank != u.rows() || snf.invariant_factors.iter().any(|d| !d.is_one()) {
        return None;
    }
    snf.right.mul(&snf.left).ok()
}

/// A Z-basis (as columns) of the kernel of `m`, read off the right transform.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols()).map(|j| snf.right.column(j)).collect()
}
