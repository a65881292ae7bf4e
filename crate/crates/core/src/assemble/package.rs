use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::abelian::{FgAbGroup, Prime};
use crate::groups::FiniteGroup;
use crate::{Error, Result};

/// One conjugacy class of non-trivial `p`-power-order elements, with the
/// rational Betti numbers of its centralizer quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub p: Prime,
    pub label: String,
    pub betti: Vec<usize>,
}

/// K-theoretic data of the quotient space `G\X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuotientData {
    /// Rational Betti numbers. With `torsion_free` the integral cohomology
    /// is free and the K-groups follow exactly; otherwise only their ranks.
    Betti {
        betti: Vec<usize>,
        #[serde(default)]
        torsion_free: bool,
    },
    /// The K-groups `K^0(G\X)` and `K^1(G\X)` themselves.
    KGroups { k0: FgAbGroup, k1: FgAbGroup },
}

/// Everything the assembly needs to know about a group `G` with a finite
/// model `X` for proper actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PackageRepr", into = "PackageRepr")]
pub struct GroupPackage {
    name: String,
    primes: BTreeSet<Prime>,
    classes: Vec<ClassData>,
    quotient: QuotientData,
    dim_bound: usize,
    sharp: bool,
}

#[derive(Serialize, Deserialize)]
struct PackageRepr {
    name: String,
    primes: BTreeSet<Prime>,
    #[serde(default)]
    classes: Vec<ClassData>,
    quotient: QuotientData,
    dim_bound: usize,
    /// The unknown finite groups of the sequence are known to vanish.
    #[serde(default)]
    sharp: bool,
}

impl TryFrom<PackageRepr> for GroupPackage {
    type Error = Error;
    fn try_from(r: PackageRepr) -> Result<Self> {
        let pkg = GroupPackage::new(r.name, r.primes, r.classes, r.quotient, r.dim_bound)?;
        Ok(if r.sharp { pkg.sharpened() } else { pkg })
    }
}

impl From<GroupPackage> for PackageRepr {
    fn from(p: GroupPackage) -> Self {
        PackageRepr {
            name: p.name,
            primes: p.primes,
            classes: p.classes,
            quotient: p.quotient,
            dim_bound: p.dim_bound,
            sharp: p.sharp,
        }
    }
}

/// Names accepted by [`GroupPackage::builtin`].
pub const BUILTIN_PACKAGES: [&str; 2] = ["sl3z", "trivial"];

impl GroupPackage {
    pub fn new(
        name: String,
        primes: BTreeSet<Prime>,
        classes: Vec<ClassData>,
        quotient: QuotientData,
        dim_bound: usize,
    ) -> Result<Self> {
        for c in &classes {
            if !primes.contains(&c.p) {
                return Err(Error::InvalidPackage(format!(
                    "class {:?} has prime {} outside the declared primes",
                    c.label, c.p
                )));
            }
            if c.betti.len() > dim_bound + 1 {
                return Err(Error::InvalidPackage(format!(
                    "class {:?} has {} Betti numbers but the dimension bound is {dim_bound}",
                    c.label,
                    c.betti.len()
                )));
            }
        }
        match &quotient {
            QuotientData::Betti { betti, .. } => {
                if betti.len() > dim_bound + 1 {
                    return Err(Error::InvalidPackage(format!(
                        "quotient has {} Betti numbers but the dimension bound is {dim_bound}",
                        betti.len()
                    )));
                }
                if betti.first().copied().unwrap_or(0) == 0 {
                    return Err(Error::InvalidPackage("the quotient space must be non-empty".into()));
                }
            }
            QuotientData::KGroups { k0, .. } => {
                if k0.free_rank() == 0 {
                    return Err(Error::InvalidPackage("K^0 of a non-empty space has positive rank".into()));
                }
            }
        }
        Ok(GroupPackage { name, primes, classes, quotient, dim_bound, sharp: false })
    }

    /// Marks the unknown finite groups of the sequences as zero.
    pub fn sharpened(mut self) -> Self {
        self.sharp = true;
        self
    }

    /// `sl3z`: four classes of 2-power order and two of 3-power order, all
    /// with rationally acyclic centralizer quotients, over a contractible
    /// quotient of dimension 3. `trivial`: the trivial group.
    pub fn builtin(name: &str) -> Result<Self> {
        let pt = || QuotientData::Betti { betti: vec![1], torsion_free: true };
        match name {
            "sl3z" => {
                let class = |p: u64, label: &str| ClassData { p: Prime::new(p).expect("prime"), label: label.into(), betti: vec![1] };
                let classes = vec![
                    class(2, "2A"),
                    class(2, "2B"),
                    class(2, "2C"),
                    class(2, "2D"),
                    class(3, "3A"),
                    class(3, "3B"),
                ];
                let primes = [2, 3].into_iter().map(|p| Prime::new(p).expect("prime")).collect();
                Self::new("sl3z".into(), primes, classes, pt(), 3)
            }
            "trivial" => Self::new("trivial".into(), BTreeSet::new(), Vec::new(), pt(), 0),
            _ => Err(Error::InvalidArgument(format!(
                "unknown built-in package {name:?}; available: {}",
                BUILTIN_PACKAGES.join(", ")
            ))),
        }
    }

    /// The package of a finite group with `X` a point: one class per
    /// conjugacy class of `p`-power elements, each with a point as
    /// centralizer quotient. Finite groups are sharp.
    pub fn from_finite_group(name: &str, g: &FiniteGroup) -> Self {
        let primes = g.primes();
        let classes = primes
            .iter()
            .flat_map(|&p| g.con_p(p))
            .map(|c| ClassData { p: c.prime, label: class_label(c.representative, c.order_of_rep), betti: vec![1] })
            .collect();
        Self::new(name.into(), primes, classes, QuotientData::Betti { betti: vec![1], torsion_free: true }, 0)
            .expect("consistent by construction")
            .sharpened()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn primes(&self) -> &BTreeSet<Prime> {
        &self.primes
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn quotient(&self) -> &QuotientData {
        &self.quotient
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn is_sharp(&self) -> bool {
        self.sharp
    }
}

/// Label of a class of a concrete finite group: representative and order.
pub(crate) fn class_label(representative: usize, order: usize) -> String {
    format!("g{representative} (order {order})")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let s = GroupPackage::builtin("sl3z").unwrap();
        assert_eq!(s.classes().len(), 6);
        assert!(!s.is_sharp());
        assert!(GroupPackage::builtin("sl2z").is_err());
        assert!(GroupPackage::builtin("trivial").unwrap().classes().is_empty());
    }

    #[test]
    fn class_primes_must_be_declared() {
        let json = r#"{"name":"x","primes":[2],"classes":[{"p":3,"label":"a","betti":[1]}],
                       "quotient":{"betti":[1]},"dim_bound":1}"#;
        let err = serde_json::from_str::<GroupPackage>(json).unwrap_err();
        assert!(err.to_string().contains("outside the declared primes"));
    }

    #[test]
    fn betti_length_bounded() {
        let json = r#"{"name":"x","primes":[2],"classes":[{"p":2,"label":"a","betti":[1,0,1]}],
                       "quotient":{"betti":[1]},"dim_bound":1}"#;
        assert!(serde_json::from_str::<GroupPackage>(json).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = GroupPackage::builtin("sl3z").unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<GroupPackage>(&text).unwrap(), s);
        let k = r#"{"name":"k","primes":[],"quotient":{"k0":{"free":2},"k1":{"free":0,"torsion":[3]}},"dim_bound":2}"#;
        let pkg: GroupPackage = serde_json::from_str(k).unwrap();
        assert!(matches!(pkg.quotient(), QuotientData::KGroups { .. }));
    }

    #[test]
    fn finite_group_package() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let pkg = GroupPackage::from_finite_group("S3", &s3);
        assert_eq!(pkg.classes().len(), 2);
        assert!(pkg.is_sharp());
    }
}
