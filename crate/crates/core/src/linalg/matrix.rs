use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dense matrix of arbitrary-precision integers.
///
/// Storage is dense row-major. Every matrix the library builds is at desk
/// scale (cellular boundaries of small complexes, ideal lattices of rank at
/// most a few dozen), so sparse storage is only used at the serialization
/// boundary, where matrices are exchanged as `(row, col, value)` triplets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: usize, cols: usize, entries: &[Vec<T>]) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::Dimension(format!("expected {rows} rows, got {}", entries.len())));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Convenience constructor for literal matrices; the shape is taken from
    /// the input, with a zero-row input giving a `0 x 0` matrix.
    pub fn from_i64(entries: &[&[i64]]) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = entries.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(rows, cols, &owned)
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, BigInt)]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            if *i >= rows || *j >= cols {
                return Err(Error::Dimension(format!("entry ({i}, {j}) outside a {rows} x {cols} matrix")));
            }
            m.data[i * cols + j] += v;
        }
        Ok(m)
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d.clone().into();
        }
        m
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(i, j)`.
    ///
    /// # Panics
    /// If the index lies outside the declared shape.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range for {} x {}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        assert!(i < self.rows, "row {i} out of range for {} rows", self.rows);
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        assert!(j < self.cols, "column {j} out of range for {} columns", self.cols);
        (0..self.rows).map(|i| self.data[i * self.cols + j].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {} x {} by {} x {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot add {} x {} and {} x {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(IntMatrix::from_raw(self.rows, self.cols, data))
    }

    /// Submatrix on the given row and column index lists, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix::from_raw(rows.len(), cols.len(), data)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hconcat of {} and {} rows", self.rows, other.rows)));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(IntMatrix::from_raw(self.rows, cols, data))
    }

    /// Rank over `F_p`, by Gaussian elimination on residues.
    pub fn rank_mod(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        let r = ((x % &pb) + &pb) % &pb;
                        r.to_u64().expect("residue fits in u64")
                    })
                    .collect()
            })
            .collect();
        let p128 = p as u128;
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| a[r][col] != 0) else { continue };
            a.swap(rank, piv);
            let inv = mod_inverse(a[rank][col], p);
            for j in col..self.cols {
                a[rank][j] = ((a[rank][j] as u128 * inv as u128) % p128) as u64;
            }
            for r in 0..self.rows {
                if r != rank && a[r][col] != 0 {
                    let f = a[r][col] as u128;
                    for j in col..self.cols {
                        let sub = (f * a[rank][j] as u128) % p128;
                        a[r][j] = ((a[r][j] as u128 + p128 - sub) % p128) as u64;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut result: u128 = 1;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    result as u64
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// JSON interchange form of a matrix: shape plus non-zero triplets.
///
/// Values are written as JSON numbers when they fit in an `i64` and as
/// decimal strings otherwise; both forms are accepted on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, IntValue)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntValue {
    Small(i64),
    Big(String),
}

impl IntValue {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntValue::Small(v) => Ok(BigInt::from(*v)),
            IntValue::Big(s) => s
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&BigInt> for IntValue {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntValue::Small(x),
            None => IntValue::Big(v.to_string()),
        }
    }
}

impl IntMatrix {
    pub fn to_dump(&self) -> MatrixDump {
        let mut entries = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    entries.push((i, j, IntValue::from(v)));
                }
            }
        }
        MatrixDump { rows: self.rows, cols: self.cols, entries }
    }

    pub fn from_dump(dump: &MatrixDump) -> Result<Self> {
        let triplets = dump
            .entries
            .iter()
            .map(|(i, j, v)| Ok((*i, *j, v.to_bigint()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_triplets(dump.rows, dump.cols, &triplets)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_dump().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Dense row lists are accepted on input as a convenience.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Input {
            Dump(MatrixDump),
            Rows(Vec<Vec<IntValue>>),
        }
        let m = match Input::deserialize(d)? {
            Input::Dump(dump) => IntMatrix::from_dump(&dump),
            Input::Rows(rows) => rows
                .iter()
                .map(|r| r.iter().map(IntValue::to_bigint).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
                .and_then(|rows| IntMatrix::from_rows(rows.len(), rows.first().map_or(0, Vec::len), &rows)),
        };
        m.map_err(serde::de::Error::custom)
    }
}
