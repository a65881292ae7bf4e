use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::map::TowerMap;
use super::tower::{padic_level, TailRule, Tower};
use crate::abelian::{AdicGroup, DivisibleGroup, FgAbGroup, GroupValue};
use crate::{Error, Result};

/// `lim` and `lim^1` of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    pub lim: GroupValue,
    pub lim1: FgAbGroup,
}

/// `colim_n Hom(M_n, Z)` and `colim_n Ext(M_n, Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitReport {
    pub hom: GroupValue,
    pub ext: GroupValue,
}

/// Whether every `M_m` receives a zero map from some later level.
pub fn is_pro_trivial(t: &Tower) -> Result<bool> {
    Ok(match t.tail() {
        TailRule::EventuallyZero => true,
        TailRule::Constant => t.level(t.prefix_len())?.is_zero(),
        TailRule::PAdicQuotient { group, p, .. } => padic_level(group, *p, 1).is_zero(),
        // Surjective maps keep every non-zero level alive.
        TailRule::Stabilizing { .. } => t.prefix().iter().all(|l| l.group.is_zero()),
    })
}

/// `lim` and `lim^1`. All tails handled here satisfy Mittag-Leffler, so
/// `lim^1` vanishes.
pub fn lim_lim1(t: &Tower) -> Result<LimitReport> {
    let lim: GroupValue = match t.tail() {
        TailRule::Constant => t.level(t.prefix_len())?.into(),
        TailRule::EventuallyZero => FgAbGroup::zero().into(),
        TailRule::PAdicQuotient { group, p, .. } => {
            let rank = group.free_rank();
            let ranks: BTreeMap<_, _> = [(*p, rank)].into_iter().collect();
            let ambiguity: BTreeSet<_> = if group.p_torsion_count(*p) > 0 { [*p].into() } else { BTreeSet::new() };
            AdicGroup::new(0, ranks, ambiguity).into()
        }
        TailRule::Stabilizing { limit: Some(limit) } => limit.clone().into(),
        TailRule::Stabilizing { limit: None } => {
            return Err(Error::Unsupported("the limit of this stabilizing tower is not recorded".into()))
        }
    };
    Ok(LimitReport { lim, lim1: FgAbGroup::zero() })
}

/// Colimits of the dual direct system `Hom(M_n, Z)` and `Ext(M_n, Z)`.
pub fn colim_hom_ext(t: &Tower) -> Result<ColimitReport> {
    Ok(match t.tail() {
        TailRule::Constant => {
            let m = t.level(t.prefix_len())?;
            ColimitReport { hom: m.hom_to_z().into(), ext: m.ext_to_z().into() }
        }
        TailRule::EventuallyZero => ColimitReport { hom: FgAbGroup::zero().into(), ext: FgAbGroup::zero().into() },
        TailRule::PAdicQuotient { group, p, .. } => {
            let ranks: BTreeMap<_, _> = [(*p, group.free_rank())].into_iter().collect();
            let ambiguity: BTreeSet<_> = if group.p_torsion_count(*p) > 0 { [*p].into() } else { BTreeSet::new() };
            ColimitReport {
                hom: FgAbGroup::zero().into(),
                ext: DivisibleGroup::new(0, ranks, ambiguity).into(),
            }
        }
        TailRule::Stabilizing { limit: Some(limit) } => ColimitReport {
            hom: FgAbGroup::free(limit.z_rank()).into(),
            ext: DivisibleGroup::new(0, limit.p_ranks().clone(), limit.ambiguity().clone()).into(),
        },
        TailRule::Stabilizing { limit: None } => {
            return Err(Error::Unsupported("the limit of this stabilizing tower is not recorded".into()))
        }
    })
}

/// Invariants of both ends of a tower map, checked for agreement when the
/// map is a pro-isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushforwardReport {
    pub pro_isomorphism: bool,
    pub source_limits: LimitReport,
    pub target_limits: LimitReport,
    pub source_colimits: ColimitReport,
    pub target_colimits: ColimitReport,
    /// Whether the invariants of source and target coincide.
    pub invariants_agree: bool,
}

pub fn pro_pushforward_check(f: &TowerMap) -> Result<PushforwardReport> {
    let pro_isomorphism = f.is_pro_isomorphism()?;
    let source_limits = lim_lim1(f.source())?;
    let target_limits = lim_lim1(f.target())?;
    let source_colimits = colim_hom_ext(f.source())?;
    let target_colimits = colim_hom_ext(f.target())?;
    let invariants_agree = same_value(&source_limits.lim, &target_limits.lim)
        && source_limits.lim1 == target_limits.lim1
        && same_value(&source_colimits.hom, &target_colimits.hom)
        && same_value(&source_colimits.ext, &target_colimits.ext);
    if pro_isomorphism && !invariants_agree {
        return Err(Error::Inconsistent("a pro-isomorphism changed lim, lim^1 or the colimits".into()));
    }
    Ok(PushforwardReport {
        pro_isomorphism,
        source_limits,
        target_limits,
        source_colimits,
        target_colimits,
        invariants_agree,
    })
}

/// Equality of invariants, treating the zero group of every kind alike.
fn same_value(a: &GroupValue, b: &GroupValue) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}
