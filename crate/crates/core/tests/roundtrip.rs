use kborel_core::assemble::GroupPackage;
use kborel_core::complexes::{CwComplex, GCwComplex};
use kborel_core::groups::DEFAULT_ORDER_CAP;
use kborel_core::pro::Tower;

#[test]
fn package_json() {
    for name in kborel_core::assemble::BUILTIN_PACKAGES {
        let pkg = GroupPackage::builtin(name).unwrap();
        let text = serde_json::to_string(&pkg).unwrap();
        let back: GroupPackage = serde_json::from_str(&text).unwrap();
        assert_eq!(back, pkg);
    }
}

#[test]
fn bad_package_rejected() {
    let text = r#"{"name":"x","primes":[2],"classes":[{"p":3,"label":"a","betti":[1]}],"quotient":{"betti":[1]},"dim_bound":0}"#;
    assert!(serde_json::from_str::<GroupPackage>(text).is_err());
    let text = r#"{"name":"x","primes":[4],"quotient":{"betti":[1]},"dim_bound":0}"#;
    assert!(serde_json::from_str::<GroupPackage>(text).is_err());
}

#[test]
fn complex_json() {
    for c in [CwComplex::real_projective_plane(), CwComplex::torus(), CwComplex::klein_bottle(), CwComplex::sphere(3)] {
        let back = CwComplex::from_repr(&c.to_repr()).unwrap();
        assert_eq!(back.homology(), c.homology());
        assert_eq!(back.ranks(), c.ranks());
    }
}

#[test]
fn gcw_json() {
    for x in [GCwComplex::interval_with_flip(), GCwComplex::antipodal_circle(), GCwComplex::rotated_disk(5).unwrap()] {
        let text = serde_json::to_string(&x.to_repr()).unwrap();
        let back = GCwComplex::from_repr(&serde_json::from_str(&text).unwrap(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(back.quotient().homology(), x.quotient().homology());
        assert_eq!(back.orbit_counts(), x.orbit_counts());
    }
}

#[test]
fn tower_json() {
    let text = r#"{"prefix":[{"group":{"free":0,"torsion":[2]}}],"tail":{"rule":"p_adic_quotient","group":{"free":1,"torsion":[]},"p":2,"junction":[[1]]}}"#;
    match serde_json::from_str::<Tower>(text) {
        Ok(t) => {
            let again: Tower = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
            assert_eq!(again, t);
        }
        Err(e) => panic!("{e}"),
    }
}
