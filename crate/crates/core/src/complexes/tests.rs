use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::abelian::{FgAbGroup, Prime};
use crate::groups::FiniteGroup;
use crate::linalg::{Field, IntMatrix};
use crate::Error;

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

#[test]
fn flip_fixes_the_midpoint() {
    let x = GCwComplex::interval_with_flip();
    let fixed = x.fixed_subcomplex(1).unwrap();
    assert_eq!(fixed.base().ranks(), &[1, 0]);
    assert_eq!(fixed.group().order(), 2);
    assert_eq!(x.fixed_subcomplex(0).unwrap().base(), x.base());
    assert_eq!(x.rational_quotient_cohomology(&[0, 1]).unwrap(), vec![1, 0]);
    assert_eq!(x.rational_quotient_cohomology(&[0]).unwrap(), vec![1, 0]);
}

#[test]
fn integral_quotients() {
    let q = GCwComplex::interval_with_flip().quotient();
    assert_eq!(q.ranks(), &[2, 1]);
    assert_eq!(q.homology(), vec![FgAbGroup::free(1), FgAbGroup::zero()]);
    let c = GCwComplex::antipodal_circle().quotient();
    assert_eq!(c.homology(), vec![FgAbGroup::free(1), FgAbGroup::free(1)]);
    assert_eq!(GCwComplex::rotated_disk(6).unwrap().quotient().homology()[1], FgAbGroup::zero());
}

#[test]
fn antipodal_circle() {
    let x = GCwComplex::antipodal_circle();
    assert_eq!(x.rational_quotient_betti(), vec![1, 1]);
    let fixed = x.fixed_subcomplex(1).unwrap();
    assert!(fixed.base().is_empty_space());
    assert_eq!(x.orbit_counts(), vec![2, 2]);
}

#[test]
fn trivial_subgroup_gives_plain_betti() {
    for x in [GCwComplex::antipodal_circle(), GCwComplex::interval_with_flip(), GCwComplex::rotated_disk(5).unwrap()] {
        assert_eq!(x.rational_quotient_cohomology(&[0]).unwrap(), x.base().betti(Field::Rationals).unwrap());
    }
}

#[test]
fn rejects_non_subgroups() {
    let x = GCwComplex::rotated_disk(4).unwrap();
    assert!(x.rational_quotient_cohomology(&[0, 1]).is_err());
    assert_eq!(x.rational_quotient_cohomology(&[0, 2]).unwrap(), vec![1, 0, 0]);
}

#[test]
fn acyclicity() {
    for c in [Coefficients::Integers, Coefficients::Rationals, Coefficients::Fp(2), Coefficients::Fp(3)] {
        assert!(check_acyclicity(&CwComplex::point(), c).unwrap().acyclic);
    }
    let s2 = check_acyclicity(&CwComplex::sphere(2), Coefficients::Integers).unwrap();
    assert_eq!(
        s2.witness,
        Some(Witness { degree: 2, group: WitnessGroup::Integral { group: FgAbGroup::free(1) } })
    );
    let rp2 = CwComplex::real_projective_plane();
    assert!(check_acyclicity(&rp2, Coefficients::Fp(3)).unwrap().acyclic);
    assert!(check_acyclicity(&rp2, Coefficients::Rationals).unwrap().acyclic);
    let f2 = check_acyclicity(&rp2, Coefficients::Fp(2)).unwrap();
    assert_eq!(f2.witness.unwrap().degree, 1);
    let z = check_acyclicity(&rp2, Coefficients::Integers).unwrap();
    assert_eq!(z.witness.unwrap().group, WitnessGroup::Integral { group: FgAbGroup::cyclic(2) });
    let empty = check_acyclicity(&CwComplex::empty(), Coefficients::Integers).unwrap();
    assert_eq!(empty.witness.unwrap().degree, -1);
    assert!(check_acyclicity(&CwComplex::point(), Coefficients::Fp(4)).is_err());
}

#[test]
fn smith_theory() {
    let x = GCwComplex::interval_with_flip();
    let r = smith_consistency(&x, 1, p(2)).unwrap();
    assert!(r.hypothesis_met && r.fixed_nonempty && r.fixed_acyclic);
    assert!(smith_consistency(&x, 1, p(3)).is_err());
    let pt = GCwComplex::point(FiniteGroup::symmetric(3).unwrap());
    for g in 0..6 {
        let order = pt.group().element_order(g);
        let q = if order == 3 { 3 } else { 2 };
        assert!(smith_consistency(&pt, g, p(q)).unwrap().fixed_nonempty);
    }
    // The free circle action fails the hypothesis, so nothing is asserted.
    let c = GCwComplex::antipodal_circle();
    let r = smith_consistency(&c, 1, p(2)).unwrap();
    assert!(!r.hypothesis_met && !r.fixed_nonempty);
}

#[test]
fn action_validation() {
    let base = GCwComplex::interval_with_flip().base().clone();
    let z2 = FiniteGroup::cyclic(2);
    // The flip may not reverse the fixed middle vertex.
    let bad_sign = vec![vec![(2, 1), (1, -1), (0, 1)], vec![(1, 1), (0, 1)]];
    assert!(matches!(
        GCwComplex::new(base.clone(), z2.clone(), BTreeMap::from([(1, bad_sign)])),
        Err(Error::InvalidAction(_))
    ));
    // Swapping the edges with the wrong sign breaks the boundary.
    let non_equivariant = vec![vec![(2, 1), (1, 1), (0, 1)], vec![(1, 1), (0, 1)]];
    assert!(GCwComplex::new(base.clone(), z2.clone(), BTreeMap::from([(1, non_equivariant)])).is_err());
    // Z/3 cannot act by a transposition.
    let z3 = FiniteGroup::cyclic(3);
    let flip = vec![vec![(2, 1), (1, 1), (0, 1)], vec![(1, -1), (0, -1)]];
    assert!(GCwComplex::new(base.clone(), z3, BTreeMap::from([(1, flip.clone())])).is_err());
    // An edge flipped onto itself is not admissible.
    let edge = CwComplex::from_boundaries(vec![2, 1], vec![IntMatrix::from_i64(&[&[-1], &[1]]).unwrap()]).unwrap();
    let reverse = vec![vec![(1, 1), (0, 1)], vec![(0, -1)]];
    assert!(GCwComplex::new(edge, z2, BTreeMap::from([(1, reverse)])).is_err());
}

#[test]
fn json_round_trip() {
    let x = GCwComplex::interval_with_flip();
    let s = serde_json::to_string(&x.to_repr()).unwrap();
    let back = GCwComplex::from_repr(&serde_json::from_str(&s).unwrap(), 100).unwrap();
    assert_eq!(back, x);
    let text = r#"{"ranks":[3,2],"boundaries":[[[0,0,-1],[1,0,1],[1,1,-1],[2,1,1]]],
        "group":{"order":2,"table":[[0,1],[1,0]]},
        "action":{"1":{"0":[[2,1],[1,1],[0,1]],"1":[[1,-1],[0,-1]]}}}"#;
    let y = GCwComplex::from_repr(&serde_json::from_str(text).unwrap(), 100).unwrap();
    assert_eq!(y, x);
    let text = r#"{"ranks":[1],"group":{"order":2,"table":[[0,1],[1,0]]}}"#;
    let pt = GCwComplex::from_repr(&serde_json::from_str(text).unwrap(), 100).unwrap();
    assert_eq!(pt, GCwComplex::point(crate::groups::FiniteGroup::cyclic(2)));
}

#[test]
fn fixed_sets_are_monotone() {
    let x = GCwComplex::rotated_disk(12).unwrap();
    for g in x.group().elements() {
        let fg = x.fixed_subcomplex(g).unwrap();
        for k in 1..=12 {
            let fk = x.fixed_subcomplex(x.group().power(g, k)).unwrap();
            assert!(fk.base().num_cells() >= fg.base().num_cells());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_counts_orbits(k in 1usize..10, m_choice in 0usize..4) {
        let divisors: Vec<usize> = (1..=k).filter(|d| k % d == 0).collect();
        let m = divisors[m_choice % divisors.len()];
        let x = GCwComplex::rotated_polygon(k, m).unwrap();
        let b = x.rational_quotient_betti();
        let chi_b: i64 = b.iter().enumerate().map(|(n, &v)| if n % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
        let chi_o: i64 = x.orbit_counts().iter().enumerate().map(|(n, &v)| if n % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
        prop_assert_eq!(chi_b, chi_o);
        prop_assert_eq!(&b, &vec![1, 1]);
        prop_assert_eq!(x.quotient().betti(Field::Rationals).unwrap(), b);
    }

    #[test]
    fn smith_theory_on_disks(k in 2usize..13) {
        let x = GCwComplex::rotated_disk(k).unwrap();
        for g in x.group().elements() {
            for q in x.group().primes() {
                if crate::groups::is_power_of(x.group().element_order(g), q) {
                    let r = smith_consistency(&x, g, q).unwrap();
                    prop_assert!(r.hypothesis_met && r.fixed_nonempty && r.fixed_acyclic);
                }
            }
        }
        let chi: i64 = x.orbit_counts().iter().enumerate().map(|(n, &v)| if n % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
        prop_assert_eq!(chi, 1);
        prop_assert_eq!(x.rational_quotient_betti(), vec![1, 0, 0]);
        prop_assert_eq!(x.quotient().betti(Field::Rationals).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn mutated_actions_are_rejected(k in 3usize..8, cell in 0usize..16, dim in 0usize..3) {
        let x = GCwComplex::rotated_disk(k).unwrap();
        let mut gen: Vec<SignedPermutation> = x.action(1).to_vec();
        let n = dim % 3;
        let c = cell % gen[n].len();
        gen[n][c].1 = -gen[n][c].1;
        let given = BTreeMap::from([(1, gen)]);
        prop_assert!(GCwComplex::new(x.base().clone(), x.group().clone(), given).is_err());
    }
}
