use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::duality::{duality_check, uct_cross_check, DualityReport};
use super::presentation::{
    assemble_cohomology, assemble_homology, rationalize, Assembly, KPresentation, QuotientK, Rationalization,
};
use super::rtable::{parity, RTable};
use crate::abelian::{AdicGroup, FgAbGroup, GroupValue, Prime};
use crate::complexes::surface_complex;
use crate::groups::{ConPClass, FiniteGroup};
use crate::{Error, Result};

/// Everything the assembly produces for one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssemblyReport {
    pub r_table: RTable,
    /// Degrees 0 and 1.
    pub cohomology: Vec<KPresentation>,
    pub homology: Vec<KPresentation>,
    pub reduced_cohomology: Vec<KPresentation>,
    pub reduced_homology: Vec<KPresentation>,
    pub rationalized: Vec<Rationalization>,
    /// `(K^1, K_0)` and `(K^0, K_1)`.
    pub duality: Vec<DualityReport>,
    /// The Euler predicate holds for every sequence and prime.
    pub euler_balanced: bool,
}

pub fn assembly_report(a: &Assembly) -> Result<AssemblyReport> {
    let cohomology: Vec<KPresentation> = (0..2).map(|k| assemble_cohomology(a, k)).collect();
    let homology: Vec<KPresentation> = (0..2).map(|k| assemble_homology(a, k)).collect();
    let reduced_cohomology = cohomology.iter().map(KPresentation::reduce).collect::<Result<Vec<_>>>()?;
    let reduced_homology = homology.iter().map(KPresentation::reduce).collect::<Result<Vec<_>>>()?;
    let rationalized = cohomology.iter().chain(&homology).map(rationalize).collect();
    let duality = vec![duality_check(&cohomology[1], &homology[0])?, duality_check(&cohomology[0], &homology[1])?];
    uct_cross_check(a)?;
    let euler_balanced = cohomology
        .iter()
        .chain(&homology)
        .chain(&reduced_cohomology)
        .chain(&reduced_homology)
        .all(|p| p.relevant_primes().into_iter().all(|q| p.euler_balanced(q)));
    Ok(AssemblyReport {
        r_table: a.r.clone(),
        cohomology,
        homology,
        reduced_cohomology,
        reduced_homology,
        rationalized,
        duality,
        euler_balanced,
    })
}

/// `con_p(G)` for every prime dividing `|G|`.
pub fn con_p_tables(g: &FiniteGroup) -> BTreeMap<Prime, Vec<ConPClass>> {
    g.primes().into_iter().map(|p| (p, g.con_p(p))).collect()
}

/// `K̃^k(BM)` for a finite group `M`: the completed part only.
pub fn finite_reduced_cohomology(m: &FiniteGroup, k: i64) -> AdicGroup {
    let ranks: BTreeMap<Prime, usize> = if parity(k) == 0 {
        m.primes().into_iter().map(|p| (p, m.con_p(p).len())).filter(|&(_, r)| r > 0).collect()
    } else {
        BTreeMap::new()
    };
    AdicGroup::new(0, ranks, BTreeSet::new())
}

/// The long exact sequence for groups in which every non-trivial finite
/// subgroup lies in a unique maximal one, maximal ones being
/// self-normalizing:
/// `… → K̃^k(G\E̲G) → K̃^k(BG) → ∏_i K̃^k(BM_i) → K̃^{k+1}(G\E̲G) → …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MnmReport {
    pub degree: usize,
    /// `K̃^k(G\E̲G)`.
    pub quotient: FgAbGroup,
    /// `K̃^k(BM_i)` for each maximal finite subgroup.
    pub subgroup_terms: Vec<AdicGroup>,
    pub product: AdicGroup,
    /// Torsion-free quotient K-groups kill the connecting maps, leaving
    /// split short exact sequences.
    pub split: bool,
    /// `K̃^k(BG)` when the sequence splits.
    pub resolved: Option<AdicGroup>,
    /// `K̃^k(BG)` up to finite torsion at the primes of the subgroups
    /// (and of the quotient torsion).
    pub value: AdicGroup,
}

pub fn mnm_assemble(maximal: &[FiniteGroup], quotient: &QuotientK, k: i64) -> Result<MnmReport> {
    let degree = parity(k);
    let q = quotient.cohomology(k);
    let reduced_q = if degree == 0 {
        let free = q
            .free_rank()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidArgument("the quotient space must be non-empty".into()))?;
        FgAbGroup::from_invariant_factors(free, q.torsion().to_vec())?
    } else {
        q.clone()
    };
    let subgroup_terms: Vec<AdicGroup> = maximal.iter().map(|m| finite_reduced_cohomology(m, k)).collect();
    let product = subgroup_terms.iter().fold(AdicGroup::zero(), |acc, t| acc.direct_sum(t));
    let primes: BTreeSet<Prime> = maximal.iter().flat_map(FiniteGroup::primes).collect();
    let split = quotient.is_torsion_free();
    let resolved_value = AdicGroup::new(reduced_q.free_rank(), product.p_ranks().clone(), BTreeSet::new());
    let mut ambiguity = primes;
    ambiguity.extend(reduced_q.torsion_support());
    if let super::presentation::QuotientTorsion::Within { primes } = &quotient.torsion {
        ambiguity.extend(primes.iter().copied());
    }
    let value = resolved_value.clone().with_ambiguity(if split { BTreeSet::new() } else { ambiguity });
    Ok(MnmReport {
        degree,
        quotient: reduced_q,
        subgroup_terms,
        product,
        split,
        resolved: split.then_some(resolved_value),
        value,
    })
}

/// `K^k(BF)` for a cocompact Fuchsian group of signature
/// `(g; γ_1, …, γ_t)`, from the split sequence
/// `0 → K̃^k(S_g) → K̃^k(BF) → ∏_i K̃^k(B Z/γ_i) → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuchsianReport {
    pub genus: usize,
    pub periods: Vec<u64>,
    pub degree: usize,
    /// `K^k(S_g)`.
    pub surface: FgAbGroup,
    /// `(γ_i, K̃^k(B Z/γ_i))`.
    pub contributions: Vec<(u64, AdicGroup)>,
    /// `K^k(BF)`.
    pub value: AdicGroup,
}

pub fn fuchsian_pipeline(genus: usize, periods: &[u64], k: i64) -> Result<FuchsianReport> {
    if let Some(&bad) = periods.iter().find(|&&g| g < 2) {
        return Err(Error::InvalidArgument(format!("cone orders must be at least 2, got {bad}")));
    }
    let degree = parity(k);
    let surface = QuotientK::from_complex(&surface_complex(genus)).cohomology(k).clone();
    let mut contributions = Vec::new();
    let mut value = AdicGroup::new(surface.free_rank(), BTreeMap::new(), BTreeSet::new());
    for &gamma in periods {
        let order = usize::try_from(gamma).map_err(|_| Error::InvalidArgument(format!("cone order {gamma} is too large")))?;
        let term = finite_reduced_cohomology(&FiniteGroup::cyclic(order), k);
        value = value.direct_sum(&term);
        contributions.push((gamma, term));
    }
    Ok(FuchsianReport { genus, periods: periods.to_vec(), degree, surface, contributions, value })
}

/// Unreduced `K^k(BG)` from an [`MnmReport`]: adds `K^k(pt)`.
pub fn mnm_unreduced(report: &MnmReport) -> Option<GroupValue> {
    report.resolved.as_ref().map(|r| {
        let z = if report.degree == 0 { 1 } else { 0 };
        AdicGroup::new(r.z_rank() + z, r.p_ranks().clone(), BTreeSet::new()).into()
    })
}
