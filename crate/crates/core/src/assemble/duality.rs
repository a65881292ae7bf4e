use std::collections::BTreeSet;

use serde::Serialize;

use super::presentation::{assemble_cohomology, assemble_homology, Assembly, KPresentation, Kind};
use crate::abelian::{euler_dim_hat_sum, DivisibleGroup, GroupValue, Prime};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub cohomology_degree: usize,
    pub homology_degree: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: if passed { String::new() } else { detail.into() } }
}

/// Compares the adic term of the cohomology sequence in degree `k + 1`
/// with the Prüfer term of the homology sequence in degree `k`: they must
/// be Pontryagin dual, and `ext(Z/p^∞, Z) = Z_p^` must carry the same
/// `dim_p^`. Both sequences must also satisfy the Euler predicate.
pub fn duality_check(coh: &KPresentation, hom: &KPresentation) -> Result<DualityReport> {
    if coh.kind != Kind::Cohomology || hom.kind != Kind::Homology {
        return Err(Error::InvalidArgument("duality_check takes a cohomology and a homology presentation".into()));
    }
    if coh.degree != (hom.degree + 1) % 2 {
        return Err(Error::InvalidArgument(format!(
            "the cohomology degree must be one more than the homology degree, got {} and {}",
            coh.degree, hom.degree
        )));
    }
    let mut checks = Vec::new();
    let (GroupValue::Adic(adic), GroupValue::Divisible(prufer)) = (coh.middle_term(), hom.middle_term()) else {
        return Err(Error::InvalidArgument("presentations have unexpected middle terms".into()));
    };
    match adic.pontryagin_dual() {
        Ok(dual) => {
            let same = dual.prufer_ranks() == prufer.prufer_ranks() && dual.ambiguity() == prufer.ambiguity();
            checks.push(check(
                "pontryagin_dual",
                same,
                format!("dual of {:?} is {:?} but the homology term is {:?}", adic, dual, prufer),
            ));
        }
        Err(e) => checks.push(check("pontryagin_dual", false, e.to_string())),
    }
    let mut primes: BTreeSet<Prime> = coh.relevant_primes();
    primes.extend(hom.relevant_primes());
    for &p in &primes {
        let ext = prufer.ext_to_z();
        let two_term = euler_dim_hat_sum([adic.dim_hat_p(p), ext.dim_hat_p(p)]);
        checks.push(check(
            format!("rank_transfer_{p}"),
            two_term == 0,
            format!("dim_{p}^ of the adic term is {} but of ext(prufer, Z) is {}", adic.dim_hat_p(p), ext.dim_hat_p(p)),
        ));
        for pres in [coh, hom] {
            let label = match pres.kind {
                Kind::Cohomology => "cohomology",
                Kind::Homology => "homology",
            };
            checks.push(check(
                format!("euler_{label}_{p}"),
                pres.euler_balanced(p),
                format!("alternating dim_{p}^ sum of the {label} sequence is not zero"),
            ));
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(DualityReport { cohomology_degree: coh.degree, homology_degree: hom.degree, passed, checks })
}

/// K-homology ranks of `BG` from its K-cohomology by the universal
/// coefficient sequence: `K_k` keeps the free rank of `K^k` and gets
/// `(Z/p^∞)^r` for every `(Z_p^)^r` in `K^{k+1}`, since
/// `ext(Z/p^∞, Z) = Z_p^`. Returns `(K_0, K_1)`.
pub fn borel_uct(coh0: &KPresentation, coh1: &KPresentation) -> Result<(DivisibleGroup, DivisibleGroup)> {
    if coh0.kind != Kind::Cohomology || coh1.kind != Kind::Cohomology || coh0.degree != 0 || coh1.degree != 1 {
        return Err(Error::InvalidArgument("borel_uct takes the cohomology presentations of degrees 0 and 1".into()));
    }
    let adic = |p: &KPresentation| match &p.value {
        GroupValue::Adic(a) => Ok(a.clone()),
        _ => Err(Error::InvalidArgument("cohomology values are adic".into())),
    };
    let (t0, t1) = (adic(coh0)?, adic(coh1)?);
    let dual0 = crate::abelian::AdicGroup::new(0, t0.p_ranks().clone(), t0.ambiguity().clone()).pontryagin_dual()?;
    let dual1 = crate::abelian::AdicGroup::new(0, t1.p_ranks().clone(), t1.ambiguity().clone()).pontryagin_dual()?;
    let amb: BTreeSet<Prime> = t0.ambiguity().union(t1.ambiguity()).copied().collect();
    let k0 = DivisibleGroup::new(t0.z_rank(), dual1.prufer_ranks().clone(), amb.clone());
    let k1 = DivisibleGroup::new(t1.z_rank(), dual0.prufer_ranks().clone(), amb);
    Ok((k0, k1))
}

/// Runs [`borel_uct`] on the assembled cohomology and compares with the
/// assembled homology at the level of ranks.
pub fn uct_cross_check(a: &Assembly) -> Result<(DivisibleGroup, DivisibleGroup)> {
    let (k0, k1) = borel_uct(&assemble_cohomology(a, 0), &assemble_cohomology(a, 1))?;
    for (k, derived) in [(0, &k0), (1, &k1)] {
        let direct = match assemble_homology(a, k).value {
            GroupValue::Divisible(d) => d,
            _ => unreachable!("homology values are divisible"),
        };
        if direct.z_rank() != derived.z_rank() || direct.prufer_ranks() != derived.prufer_ranks() {
            return Err(Error::Inconsistent(format!(
                "K_{k}(BG): universal coefficients give {derived:?}, the homology sequence gives {direct:?}"
            )));
        }
    }
    Ok((k0, k1))
}
