use proptest::prelude::*;
use siblings::galois::{enumerate_monic, F2Poly, FieldRef, FqField, Poly};

fn field(k: usize) -> FieldRef {
    FqField::conventional(2, k).unwrap()
}

fn poly_from(field: &FieldRef, idx: &[u8]) -> Poly {
    let q = field.order_u128().unwrap();
    let c = idx
        .iter()
        .map(|&i| field.element_at(i as u128 % q))
        .collect();
    Poly::from_coeffs(field.clone(), c)
}

fn coeffs() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), 0..13)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn distributive(k in 1usize..3, a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = field(k);
        let (a, b, c) = (poly_from(&f, &a), poly_from(&f, &b), poly_from(&f, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn divmod_reconstructs(k in 1usize..3, a in coeffs(), b in coeffs()) {
        let f = field(k);
        let (a, b) = (poly_from(&f, &a), poly_from(&f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.try_divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
    }

    #[test]
    fn factor_product_and_irreducibility(k in 1usize..3, a in coeffs()) {
        let f = field(k);
        let a = poly_from(&f, &a);
        prop_assume!(!a.is_zero());
        let fac = a.factor().unwrap();
        prop_assert_eq!(fac.product(&f), a.clone());
        for (p, _) in &fac.factors {
            prop_assert!(p.is_monic());
            prop_assert!(p.is_irreducible().unwrap());
        }
        if a.degree().unwrap() > 0 {
            let single = fac.factors.len() == 1 && fac.factors[0].1 == 1;
            prop_assert_eq!(a.is_irreducible().unwrap(), single);
        }
    }

    #[test]
    fn f2poly_matches_generic(a in any::<u64>(), b in any::<u64>(), m in 1u64..u64::MAX) {
        let f2 = field(1);
        let (pa, pb, pm) = (F2Poly::from_bits(a), F2Poly::from_bits(b), F2Poly::from_bits(m));
        prop_assert_eq!((&pa * &pb).to_poly(&f2), &pa.to_poly(&f2) * &pb.to_poly(&f2));
        let (q, r) = pa.divmod(&pm).unwrap();
        let (gq, gr) = pa.to_poly(&f2).try_divmod(&pm.to_poly(&f2)).unwrap();
        prop_assert_eq!(q.to_poly(&f2), gq);
        prop_assert_eq!(r.to_poly(&f2), gr);
    }
}

#[test]
fn artin_schreier_roots_in_f256() {
    let f = field(8);
    for c in f.elements() {
        let roots = f.artin_schreier_roots(&c).unwrap();
        assert_eq!(roots.is_empty(), f.trace(&c) == 1);
        if let [r0, r1] = roots.as_slice() {
            assert_eq!(f.add(&f.square(r0), r0), c);
            assert_eq!(f.add(r0, r1), f.one());
        }
    }
}

#[test]
fn monic_enumeration_is_complete() {
    let f2 = field(1);
    for d in 0..=8 {
        let all = enumerate_monic(f2.clone(), d);
        assert_eq!(all.len(), 1 << d);
        let set: std::collections::HashSet<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(set.len(), all.len());
    }
}
