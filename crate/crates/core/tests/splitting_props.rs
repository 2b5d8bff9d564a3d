use std::collections::BTreeMap;

use siblings::galois::{primes_up_to, Poly};
use siblings::splitting::{
    base_field, chebotarev_counts, FieldDesc, PrimeOfBase, SplittingType,
};
use siblings::tower::preset;

fn tower(name: &str, q: u32) -> FieldDesc {
    FieldDesc::tower(preset(name).unwrap(), q).unwrap()
}

/// Residue degrees over `F_2` of the primes above `p`, read off from the
/// primes of `F_4[T]` above `p` and their splitting over `F_4(T)`.
fn via_f4(k4: &FieldDesc, p: &Poly) -> SplittingType {
    let f4 = base_field(4).unwrap();
    let lifted = Poly::parse(f4, &p.to_string()).unwrap();
    let fac = lifted.factor().unwrap();
    // an odd-degree prime stays prime in F_4[T] and its residue field doubles
    let widen = if fac.factors.len() == 1 { 2 } else { 1 };
    let mut degs = Vec::new();
    for (q, _) in &fac.factors {
        let st = k4.splitting_type(&PrimeOfBase::new(q.clone()).unwrap()).unwrap();
        degs.extend(st.degrees().iter().map(|d| d * widen));
    }
    SplittingType::new(degs)
}

#[test]
fn norm_transitivity() {
    let f2 = base_field(2).unwrap();
    let primes: Vec<Poly> = primes_up_to(f2, 8).into_iter().take(50).collect();
    assert_eq!(primes.len(), 50);
    for name in ["paper:K", "paper:Kprime"] {
        let (k2, k4) = (tower(name, 2), tower(name, 4));
        for p in &primes {
            let direct = k2.splitting_type(&PrimeOfBase::new(p.clone()).unwrap()).unwrap();
            assert_eq!(direct, via_f4(&k4, p), "{name} at {p}");
        }
    }
}

fn frequencies(counts: &[(usize, SplittingType)]) -> BTreeMap<SplittingType, f64> {
    let mut out = BTreeMap::new();
    for (_, st) in counts {
        *out.entry(st.clone()).or_insert(0.0) += 1.0 / counts.len() as f64;
    }
    out
}

#[test]
fn quadratic_field_splits_half_the_time() {
    let counts = chebotarev_counts(&tower("F2(T)(aT)", 2), 10, None).unwrap();
    let freq = frequencies(&counts);
    let split = freq.get(&SplittingType::new(vec![1, 1])).copied().unwrap_or(0.0);
    let inert = freq.get(&SplittingType::new(vec![2])).copied().unwrap_or(0.0);
    assert!((split - 0.5).abs() <= 0.05, "split {split}");
    assert!((inert - 0.5).abs() <= 0.05, "inert {inert}");
}

#[test]
fn constant_extension_follows_degree_parity() {
    for (d, st) in chebotarev_counts(&tower("F4(T)", 2), 10, None).unwrap() {
        let want = if d % 2 == 0 { vec![1, 1] } else { vec![2] };
        assert_eq!(st, SplittingType::new(want), "degree {d}");
    }
}

#[test]
fn types_have_full_degree() {
    let f2 = base_field(2).unwrap();
    for name in ["paper:K", "paper:Kprime", "paper:F", "paper:Kgamma"] {
        let k = tower(name, 2);
        for p in primes_up_to(f2.clone(), 5) {
            let st = k.splitting_type(&PrimeOfBase::new(p).unwrap()).unwrap();
            assert_eq!(st.total(), k.degree());
        }
    }
}
