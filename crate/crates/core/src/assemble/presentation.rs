use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::package::{GroupPackage, QuotientData};
use super::rtable::{parity, parity_sum, RTable};
use crate::abelian::{
    euler_balanced, uct_transfer, AdicGroup, DivisibleGroup, FgAbGroup, GroupValue, Notation, Prime, Render, UctDirection,
};
use crate::complexes::{check_acyclicity, Coefficients, CwComplex, GCwComplex, WitnessGroup};
use crate::{Error, Result};

/// How the hypotheses of the assembly were established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    /// Checked on the input complex.
    Verified,
    /// Skipped at the user's request.
    Assumed,
    /// Part of a package's data.
    Given,
}

/// What is known about the torsion of the quotient's K-groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum QuotientTorsion {
    /// The recorded groups are exact.
    Exact,
    /// Only the ranks are recorded; the torsion is finite and supported on
    /// these primes.
    Within { primes: BTreeSet<Prime> },
    /// Only the ranks are recorded; nothing is known about the torsion.
    Unknown,
}

/// `K^0(G\X)` and `K^1(G\X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientK {
    pub k0: FgAbGroup,
    pub k1: FgAbGroup,
    pub torsion: QuotientTorsion,
}

impl QuotientK {
    pub fn from_data(q: &QuotientData) -> Self {
        match q {
            QuotientData::Betti { betti, torsion_free } => QuotientK {
                k0: FgAbGroup::free(parity_sum(betti, 0)),
                k1: FgAbGroup::free(parity_sum(betti, 1)),
                torsion: if *torsion_free { QuotientTorsion::Exact } else { QuotientTorsion::Unknown },
            },
            QuotientData::KGroups { k0, k1 } => QuotientK { k0: k0.clone(), k1: k1.clone(), torsion: QuotientTorsion::Exact },
        }
    }

    /// From the integral cellular homology of a complex. Free cohomology
    /// makes the Atiyah-Hirzebruch spectral sequence collapse with no
    /// extension problems; otherwise the ranks are exact and the torsion
    /// lives at the primes of the cohomology torsion.
    pub fn from_complex(c: &CwComplex) -> Self {
        let h = c.homology();
        let free: Vec<usize> = h.iter().map(FgAbGroup::free_rank).collect();
        let torsion: BTreeSet<Prime> = h.iter().flat_map(FgAbGroup::torsion_support).collect();
        QuotientK {
            k0: FgAbGroup::free(parity_sum(&free, 0)),
            k1: FgAbGroup::free(parity_sum(&free, 1)),
            torsion: if torsion.is_empty() { QuotientTorsion::Exact } else { QuotientTorsion::Within { primes: torsion } },
        }
    }

    pub fn cohomology(&self, k: i64) -> &FgAbGroup {
        if parity(k) == 0 {
            &self.k0
        } else {
            &self.k1
        }
    }

    /// `K_k(G\X)` by the universal coefficient transfer.
    pub fn homology(&self, k: i64) -> FgAbGroup {
        let (h0, h1) = uct_transfer(&self.k0, &self.k1, UctDirection::CohomologyToHomology);
        if parity(k) == 0 {
            h0
        } else {
            h1
        }
    }

    /// Primes at which `K^*(G\X)` may have torsion (known or not).
    fn torsion_primes(&self) -> BTreeSet<Prime> {
        let mut out: BTreeSet<Prime> = self.k0.torsion_support().union(&self.k1.torsion_support()).copied().collect();
        if let QuotientTorsion::Within { primes } = &self.torsion {
            out.extend(primes.iter().copied());
        }
        out
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion == QuotientTorsion::Exact && self.k0.is_torsion_free() && self.k1.is_torsion_free()
    }
}

/// Why the unknown finite groups of the sequences may be taken to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sharpness {
    None,
    /// `G` is finite: `K^*(BG)` is `K^*(pt)` plus the completed part.
    FiniteGroup,
    /// The package asserts the finite groups vanish.
    External,
}

/// The input of the assembly: primes, the `r`-table, and the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assembly {
    pub primes: BTreeSet<Prime>,
    pub r: RTable,
    pub quotient: QuotientK,
    pub sharpness: Sharpness,
    pub hypotheses: HypothesisStatus,
}

impl Assembly {
    pub fn from_package(pkg: &GroupPackage) -> Self {
        Assembly {
            primes: pkg.primes().clone(),
            r: RTable::from_package(pkg),
            quotient: QuotientK::from_data(pkg.quotient()),
            sharpness: if pkg.is_sharp() { Sharpness::External } else { Sharpness::None },
            hypotheses: HypothesisStatus::Given,
        }
    }

    /// A finite group acting on a complex that must be acyclic unless
    /// `assume_acyclic` is set.
    pub fn from_complex(x: &GCwComplex, assume_acyclic: bool) -> Result<Self> {
        let hypotheses = if assume_acyclic {
            HypothesisStatus::Assumed
        } else {
            let report = check_acyclicity(x.base(), Coefficients::Integers)?;
            if let Some(w) = report.witness {
                let group = match w.group {
                    WitnessGroup::Integral { group } => group.render(Notation::Ascii),
                    WitnessGroup::Vector { dimension, .. } => format!("dimension {dimension}"),
                };
                return Err(Error::Hypothesis(format!(
                    "the complex is not acyclic: reduced H_{} = {group}",
                    w.degree
                )));
            }
            HypothesisStatus::Verified
        };
        Ok(Assembly {
            primes: x.group().primes(),
            r: RTable::from_complex(x)?,
            quotient: QuotientK::from_complex(&x.quotient()),
            sharpness: Sharpness::FiniteGroup,
            hypotheses,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Cohomology,
    Homology,
}

/// One position of the five-term exact sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Term {
    /// An unknown finite group with torsion at the given primes.
    Finite { support: BTreeSet<Prime> },
    Known { value: GroupValue },
    /// `K^k(BG)` or `K_k(BG)`, the group being computed.
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub name: String,
    pub term: Term,
}

/// The exact sequence computing `K^k(BG)` (cohomology) or `K_k(BG)`
/// (homology), together with what it determines about the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KPresentation {
    pub kind: Kind,
    pub degree: usize,
    pub reduced: bool,
    pub primes: BTreeSet<Prime>,
    /// `r_p^k` (cohomology) or `r_p^{k+1}` (homology).
    pub exponents: BTreeMap<Prime, usize>,
    pub slots: Vec<Slot>,
    /// The target up to finite torsion at the ambiguity primes.
    pub value: GroupValue,
    /// The target itself, when the finite groups are known to vanish.
    pub resolved: Option<GroupValue>,
    pub quotient_torsion: QuotientTorsion,
}

fn finite(name: &str, primes: &BTreeSet<Prime>) -> Slot {
    Slot { name: name.into(), term: Term::Finite { support: primes.clone() } }
}

fn known(name: &str, value: GroupValue) -> Slot {
    Slot { name: name.into(), term: Term::Known { value } }
}

fn target(name: &str) -> Slot {
    Slot { name: name.into(), term: Term::Target }
}

fn resolvable(a: &Assembly) -> bool {
    match a.sharpness {
        Sharpness::None => false,
        Sharpness::FiniteGroup => true,
        Sharpness::External => a.quotient.is_torsion_free(),
    }
}

/// `0 → A → K^k(G\X) → K^k(BG) → B × ∏_p (Z_p^)^{r_p^k} → C → 0` with
/// `A`, `B`, `C` finite and supported on the primes of `G`.
pub fn assemble_cohomology(a: &Assembly, k: i64) -> KPresentation {
    let k = parity(k) as i64;
    let q = a.quotient.cohomology(k).clone();
    let r = a.r.exponents(k);
    let ambiguity: BTreeSet<Prime> = a.primes.union(&a.quotient.torsion_primes()).copied().collect();
    let value = AdicGroup::new(q.free_rank(), r.clone(), ambiguity);
    let resolved = resolvable(a).then(|| AdicGroup::new(q.free_rank(), r.clone(), BTreeSet::new()).into());
    KPresentation {
        kind: Kind::Cohomology,
        degree: k as usize,
        reduced: false,
        primes: a.primes.clone(),
        exponents: r.clone(),
        slots: vec![
            finite("A", &a.primes),
            known("quotient", q.into()),
            target("target"),
            known("adic", AdicGroup::new(0, r, a.primes.clone()).into()),
            finite("C", &a.primes),
        ],
        value: value.into(),
        resolved,
        quotient_torsion: a.quotient.torsion.clone(),
    }
}

/// `0 → C' → ⊕_p (Z/p^∞)^{r_p^{k+1}} × B' → K_k(BG) → K_k(G\X) → A' → 0`.
pub fn assemble_homology(a: &Assembly, k: i64) -> KPresentation {
    let k = parity(k) as i64;
    let q = a.quotient.homology(k);
    let r = a.r.exponents(k + 1);
    let ambiguity: BTreeSet<Prime> = a.primes.union(&a.quotient.torsion_primes()).copied().collect();
    let value = DivisibleGroup::new(q.free_rank(), r.clone(), ambiguity);
    let resolved = resolvable(a).then(|| DivisibleGroup::new(q.free_rank(), r.clone(), BTreeSet::new()).into());
    KPresentation {
        kind: Kind::Homology,
        degree: k as usize,
        reduced: false,
        primes: a.primes.clone(),
        exponents: r.clone(),
        slots: vec![
            finite("C'", &a.primes),
            known("prufer", DivisibleGroup::new(0, r, a.primes.clone()).into()),
            target("target"),
            known("quotient", q.into()),
            finite("A'", &a.primes),
        ],
        value: value.into(),
        resolved,
        quotient_torsion: a.quotient.torsion.clone(),
    }
}

fn drop_one_z(v: &GroupValue) -> Result<GroupValue> {
    let short = || Error::InvalidArgument("cannot split off K(pt) from a group of rank zero".into());
    Ok(match v {
        GroupValue::Fg(g) => {
            let free = g.free_rank().checked_sub(1).ok_or_else(short)?;
            FgAbGroup::from_invariant_factors(free, g.torsion().to_vec())?.into()
        }
        GroupValue::Adic(g) => {
            let z = g.z_rank().checked_sub(1).ok_or_else(short)?;
            AdicGroup::new(z, g.p_ranks().clone(), g.ambiguity().clone()).into()
        }
        GroupValue::Divisible(g) => {
            let z = g.z_rank().checked_sub(1).ok_or_else(short)?;
            DivisibleGroup::new(z, g.prufer_ranks().clone(), g.ambiguity().clone()).into()
        }
    })
}

impl KPresentation {
    /// The reduced sequence: `K^*(pt)` split off the quotient and the target.
    pub fn reduce(&self) -> Result<KPresentation> {
        let mut out = self.clone();
        if self.reduced {
            return Ok(out);
        }
        out.reduced = true;
        if self.degree == 0 {
            for slot in &mut out.slots {
                if slot.name == "quotient" {
                    if let Term::Known { value } = &slot.term {
                        slot.term = Term::Known { value: drop_one_z(value)? };
                    }
                }
            }
            out.value = drop_one_z(&self.value)?;
            out.resolved = self.resolved.as_ref().map(drop_one_z).transpose()?;
        }
        Ok(out)
    }

    /// The adic term of a cohomology sequence or the Prüfer term of a
    /// homology sequence.
    pub fn middle_term(&self) -> &GroupValue {
        let name = match self.kind {
            Kind::Cohomology => "adic",
            Kind::Homology => "prufer",
        };
        self.slots
            .iter()
            .find_map(|s| match (&s.term, s.name == name) {
                (Term::Known { value }, true) => Some(value),
                _ => None,
            })
            .expect("every presentation has a middle term")
    }

    pub fn quotient_term(&self) -> &GroupValue {
        self.slots
            .iter()
            .find_map(|s| match (&s.term, s.name == "quotient") {
                (Term::Known { value }, true) => Some(value),
                _ => None,
            })
            .expect("every presentation has a quotient term")
    }

    /// Values of the five slots for `dim_p^` bookkeeping: finite groups
    /// count as zero and the target as its determined value.
    pub fn slot_values(&self) -> Vec<GroupValue> {
        self.slots
            .iter()
            .map(|s| match &s.term {
                Term::Finite { .. } => FgAbGroup::zero().into(),
                Term::Known { value } => value.clone(),
                Term::Target => self.value.clone(),
            })
            .collect()
    }

    /// The alternating `dim_p^` sum over the sequence vanishes at `p`.
    pub fn euler_balanced(&self, p: Prime) -> bool {
        euler_balanced(&self.slot_values(), p)
    }

    /// Primes at which the Euler predicate is worth checking.
    pub fn relevant_primes(&self) -> BTreeSet<Prime> {
        let mut out = self.primes.clone();
        out.extend(self.exponents.keys().copied());
        out
    }

    /// `K^k(BG)` or `K_k(BG)` in the symbols of the sequence.
    pub fn target_name(&self, n: Notation) -> String {
        let tilde = if self.reduced {
            match n {
                Notation::Unicode => "K̃",
                Notation::Ascii => "K~",
            }
        } else {
            "K"
        };
        match self.kind {
            Kind::Cohomology => format!("{tilde}^{}(BG)", self.degree),
            Kind::Homology => format!("{tilde}_{}(BG)", self.degree),
        }
    }

    fn quotient_name(&self, n: Notation) -> String {
        self.target_name(n).replace("(BG)", "(G\\X)")
    }
}

impl Render for KPresentation {
    /// The sequence on one line.
    fn render(&self, n: Notation) -> String {
        let arrow = match n {
            Notation::Unicode => " → ",
            Notation::Ascii => " -> ",
        };
        let mut parts = vec!["0".to_string()];
        for s in &self.slots {
            parts.push(match &s.term {
                Term::Finite { .. } => s.name.clone(),
                Term::Target => self.target_name(n),
                Term::Known { value } if s.name == "quotient" => {
                    format!("{} = {}", self.quotient_name(n), value.render(n))
                }
                Term::Known { value } => {
                    let extra = if self.kind == Kind::Cohomology { "B" } else { "B'" };
                    format!("[{}] × {extra}", value.render(n))
                }
            });
        }
        parts.push("0".into());
        let mut out = parts.join(arrow);
        if n == Notation::Ascii {
            out = out.replace('×', "x");
        }
        out
    }
}

/// The isomorphism obtained by inverting the primes of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rationalization {
    pub kind: Kind,
    pub degree: usize,
    pub reduced: bool,
    pub inverted: BTreeSet<Prime>,
    /// `K(G\X) ⊗ Z[1/P]`, recorded by its finitely generated model.
    pub quotient: FgAbGroup,
    /// `K(BG) ⊗ Z[1/P]`.
    pub value: GroupValue,
}

/// Inverts the primes of the presentation in every slot: the finite
/// groups vanish, `Z_p^` becomes `Q_p^`, and Prüfer groups at `P` die.
pub fn rationalize(pres: &KPresentation) -> Rationalization {
    let quotient = match pres.quotient_term() {
        GroupValue::Fg(g) => g.invert_primes(&pres.primes),
        _ => unreachable!("quotient terms are finitely generated"),
    };
    Rationalization {
        kind: pres.kind,
        degree: pres.degree,
        reduced: pres.reduced,
        inverted: pres.primes.clone(),
        quotient,
        value: pres.value.invert_primes(&pres.primes),
    }
}

impl Render for Rationalization {
    fn render(&self, n: Notation) -> String {
        let z = match n {
            Notation::Unicode => "ℤ",
            Notation::Ascii => "Z",
        };
        let local = if self.inverted.is_empty() {
            z.to_string()
        } else {
            let prod: u64 = self.inverted.iter().map(|p| p.get()).product();
            format!("{z}[1/{prod}]")
        };
        let with_local = |rank: usize, rest: String| -> String {
            let mut parts = Vec::new();
            match rank {
                0 => {}
                1 => parts.push(local.clone()),
                r => parts.push(format!("{local}^{r}")),
            }
            if rest != "0" {
                parts.push(rest);
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(if n == Notation::Unicode { " ⊕ " } else { " + " })
            }
        };
        let quotient_torsion = FgAbGroup::from_cyclic_orders(0, self.quotient.torsion().iter().cloned());
        let q = with_local(self.quotient.free_rank(), quotient_torsion.render(n));
        let value = match &self.value {
            GroupValue::Adic(g) => {
                with_local(g.z_rank(), AdicGroup::new(0, g.p_ranks().clone(), g.ambiguity().clone()).invert_primes(&self.inverted).render(n))
            }
            GroupValue::Divisible(g) => {
                with_local(g.z_rank(), DivisibleGroup::new(0, g.prufer_ranks().clone(), g.ambiguity().clone()).render(n))
            }
            GroupValue::Fg(g) => with_local(g.free_rank(), FgAbGroup::from_cyclic_orders(0, g.torsion().iter().cloned()).render(n)),
        };
        let tilde = if self.reduced { if n == Notation::Unicode { "K̃" } else { "K~" } } else { "K" };
        let (t, quot) = match self.kind {
            Kind::Cohomology => (format!("{tilde}^{}(BG)", self.degree), format!("{tilde}^{}(G\\X)", self.degree)),
            Kind::Homology => (format!("{tilde}_{}(BG)", self.degree), format!("{tilde}_{}(G\\X)", self.degree)),
        };
        let tensor = if n == Notation::Unicode { "⊗" } else { "(x)" };
        format!("{t} {tensor} {local} ≅ {value}   [{quot} {tensor} {local} ≅ {q}]").replace(
            '≅',
            if n == Notation::Unicode { "≅" } else { "=" },
        )
    }
}
