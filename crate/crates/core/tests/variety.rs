use lattice_forge::semigroup::catalog;
use lattice_forge::variety::*;

#[test]
fn witnesses_separate() {
    let all = catalog::all();
    for a in &all {
        for b in &all {
            match in_variety(a, std::slice::from_ref(b), DEFAULT_CAP).unwrap() {
                Membership::No(id) => {
                    assert!(b.satisfies(&id).holds, "{id} in {}", b.label());
                    assert!(!a.satisfies(&id).holds, "{id} in {}", a.label());
                }
                Membership::Yes => {}
                Membership::ResourceLimit(c) => panic!("cap {c} hit for {} in {}", a.label(), b.label()),
            }
        }
    }
}

#[test]
fn membership_is_monotone() {
    let all = catalog::all();
    for a in &all {
        for b in &all {
            if in_variety(a, std::slice::from_ref(b), DEFAULT_CAP).unwrap() != Membership::Yes {
                continue;
            }
            for c in &all {
                let bs = [b.clone(), c.clone()];
                assert_eq!(in_variety(a, &bs, DEFAULT_CAP).unwrap(), Membership::Yes);
            }
        }
    }
}

#[test]
fn oversized_inputs_are_refused() {
    let big = catalog::n4().direct_product(&catalog::sl2()).unwrap();
    assert!(matches!(
        in_variety(&big, &[catalog::t1()], DEFAULT_CAP),
        Err(VarietyError::OrderLimit { order: 8, .. })
    ));
}

#[test]
fn full_catalog_proxy() {
    let gl = build_variety_lattice(&catalog::all(), DEFAULT_CAP).unwrap();
    assert!(gl.join_is_exact);
    assert!(!gl.meet_is_exact);
    let zm2 = gl.node("V(ZM2)").unwrap();
    let n4 = gl.node("V(N4)").unwrap();
    assert!(gl.lattice.leq(zm2, n4));
    // ZM3 generates the same variety as ZM2.
    assert!(gl.nodes[zm2].subsets.contains(&vec!["ZM3".to_string()]));
    let meta = serde_json::to_value(gl.metadata()).unwrap();
    assert_eq!(meta["meet_is_exact"], false);
    assert_eq!(probe_special_elements(&gl).label, "EXPLORATORY");
}
