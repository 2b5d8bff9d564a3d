use std::sync::Arc;

use proptest::prelude::*;
use siblings::galois::F2Poly;
use siblings::tower::{auto_phi1, auto_psi, preset, TowerElement, TowerSpec};

fn element(spec: &Arc<TowerSpec>, bits: &[u8]) -> TowerElement {
    let mut acc = TowerElement::zero(spec);
    for (mask, &b) in bits.iter().enumerate().take(spec.dimension()) {
        if b != 0 {
            let c = F2Poly::from_bits(u64::from(b));
            acc = &acc + &TowerElement::monomial(spec, mask).scale(&c);
        }
    }
    acc
}

fn bits(n: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..16, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in bits(8), b in bits(8), c in bits(8)) {
        let k = preset("paper:K").unwrap();
        let (x, y, z) = (element(&k, &a), element(&k, &b), element(&k, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &x, TowerElement::zero(&k));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn automorphisms_preserve_products(a in bits(32), b in bits(32), l in prop::sample::select(vec![3u32, 5, 7])) {
        let n = preset("paper:N").unwrap();
        let (x, y) = (element(&n, &a), element(&n, &b));
        let phi = auto_phi1(&n).unwrap();
        let psi = auto_psi(&n, l).unwrap();
        for s in [&phi, &psi] {
            prop_assert_eq!(s.apply(&(&x * &y)), &s.apply(&x) * &s.apply(&y));
            prop_assert_eq!(s.apply(&(&x + &y)), &s.apply(&x) + &s.apply(&y));
        }
    }
}
