use std::collections::BTreeMap;

use serde::Serialize;

use super::package::{class_label, ClassData, GroupPackage};
use crate::abelian::Prime;
use crate::complexes::GCwComplex;
use crate::Result;

/// Degree mod 2, for any integer degree.
pub fn parity(k: i64) -> usize {
    k.rem_euclid(2) as usize
}

/// Sum of the entries of `betti` in degrees congruent to `k` mod 2.
pub(crate) fn parity_sum(betti: &[usize], k: i64) -> usize {
    let k = parity(k);
    betti.iter().skip(k).step_by(2).sum()
}

/// `r_p^k`: over the classes of `p`-power elements, the rational Betti
/// numbers of the centralizer quotients in degrees `k + 2i`.
/// Zero for primes outside the package.
pub fn r_pk_from_package(pkg: &GroupPackage, p: Prime, k: i64) -> usize {
    pkg.classes().iter().filter(|c| c.p == p).map(|c| parity_sum(&c.betti, k)).sum()
}

/// The class data of a finite group acting on a complex: for every class of
/// `p`-power elements, the rational Betti numbers of the fixed set modulo
/// the centralizer.
pub fn complex_classes(x: &GCwComplex) -> Result<Vec<ClassData>> {
    let g = x.group();
    let mut out = Vec::new();
    for p in g.primes() {
        for class in g.con_p(p) {
            let fixed = x.fixed_subcomplex(class.representative)?;
            out.push(ClassData {
                p,
                label: class_label(class.representative, class.order_of_rep),
                betti: fixed.rational_quotient_betti(),
            });
        }
    }
    Ok(out)
}

/// `r_p^k` computed from a finite group acting on a complex.
pub fn r_pk_from_complex(x: &GCwComplex, p: Prime, k: i64) -> Result<usize> {
    Ok(complex_classes(x)?.iter().filter(|c| c.p == p).map(|c| parity_sum(&c.betti, k)).sum())
}

/// `r_p^0` and `r_p^1` for every relevant prime.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RTable {
    rows: Vec<RRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RRow {
    pub p: Prime,
    pub r0: usize,
    pub r1: usize,
}

impl RTable {
    /// One row per prime in `primes`, summing the classes.
    pub fn from_classes<'a, I>(primes: I, classes: &[ClassData]) -> Self
    where
        I: IntoIterator<Item = &'a Prime>,
    {
        let mut rows: BTreeMap<Prime, RRow> = primes.into_iter().map(|&p| (p, RRow { p, r0: 0, r1: 0 })).collect();
        for c in classes {
            let row = rows.entry(c.p).or_insert(RRow { p: c.p, r0: 0, r1: 0 });
            row.r0 += parity_sum(&c.betti, 0);
            row.r1 += parity_sum(&c.betti, 1);
        }
        RTable { rows: rows.into_values().collect() }
    }

    pub fn from_package(pkg: &GroupPackage) -> Self {
        Self::from_classes(pkg.primes(), pkg.classes())
    }

    pub fn from_complex(x: &GCwComplex) -> Result<Self> {
        Ok(Self::from_classes(&x.group().primes(), &complex_classes(x)?))
    }

    pub fn rows(&self) -> &[RRow] {
        &self.rows
    }

    pub fn get(&self, p: Prime, k: i64) -> usize {
        self.rows
            .iter()
            .find(|r| r.p == p)
            .map(|r| if parity(k) == 0 { r.r0 } else { r.r1 })
            .unwrap_or(0)
    }

    /// Non-zero exponents in degree `k`.
    pub fn exponents(&self, k: i64) -> BTreeMap<Prime, usize> {
        self.rows.iter().map(|r| (r.p, self.get(r.p, k))).filter(|&(_, v)| v > 0).collect()
    }
}
