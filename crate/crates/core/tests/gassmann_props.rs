use proptest::prelude::*;
use siblings::gassmann::{build_8t15, symmetric_group, FiniteGroup, Subgroup};

fn order_four(g: &FiniteGroup) -> Vec<Subgroup> {
    g.two_generated_subgroups().into_iter().filter(|h| h.order() == 4).collect()
}

#[test]
fn gassmann_iff_equal_coset_types() {
    let m = build_8t15();
    let g = &m.group;
    let subs = order_four(g);
    assert!(subs.len() > 4);
    let cyclic: Vec<Subgroup> = (0..g.order()).map(|x| g.generated(&[x])).collect();
    let mut equivalent_pairs = 0;
    for h1 in &subs {
        for h2 in &subs {
            let by_classes = g.is_gassmann_equivalent(h1, h2).unwrap();
            let by_cosets = cyclic
                .iter()
                .all(|c| g.coset_type(h1, c).unwrap() == g.coset_type(h2, c).unwrap());
            assert_eq!(by_classes, by_cosets, "{:?} {:?}", h1.elements(), h2.elements());
            equivalent_pairs += usize::from(by_classes);
        }
    }
    assert!(equivalent_pairs > subs.len());
}

#[test]
fn twisted_section_is_the_only_kind_of_sibling() {
    let m = build_8t15();
    let g = &m.group;
    let twisted = m.twisted(&m.cocycle).unwrap();
    for h in order_four(g) {
        if g.is_gassmann_equivalent(&m.section, &h).unwrap()
            && !g.are_conjugate_subgroups(&m.section, &h).unwrap()
        {
            assert!(g.are_conjugate_subgroups(&twisted, &h).unwrap());
        }
    }
}

#[test]
fn point_stabilizers_of_small_symmetric_groups() {
    for n in [3, 4] {
        let s = symmetric_group(n);
        let g = &s.group;
        for a in 0..n {
            for b in 0..n {
                let (ha, hb) = (s.point_stabilizer(a), s.point_stabilizer(b));
                assert!(g.is_gassmann_equivalent(&ha, &hb).unwrap());
                assert!(g.are_conjugate_subgroups(&ha, &hb).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugates_are_gassmann_equivalent(x in 0usize..32, a in 0usize..32, b in 0usize..32) {
        let m = build_8t15();
        let g = &m.group;
        let h = g.generated(&[a, b]);
        let hx = g.conjugate_subgroup(x, &h);
        prop_assert!(g.is_gassmann_equivalent(&h, &hx).unwrap());
        prop_assert!(g.are_conjugate_subgroups(&h, &hx).unwrap());
        prop_assert_eq!(g.class_intersections(&h).unwrap(), g.class_intersections(&hx).unwrap());
    }
}
