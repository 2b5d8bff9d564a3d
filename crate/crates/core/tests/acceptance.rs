//! Acceptance criteria, one test per criterion. Each test writes a single
//! `criterion N: PASS|FAIL ...` line straight to stderr so the lines show up
//! even when test output is captured.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use siblings::galois::{primes_up_to, F2Poly, FieldRef, FqField, Poly};
use siblings::gassmann::build_8t15;
use siblings::goss::{euler_product_check, goss_exponent, zeta_table, LaurentSeries, SPoint};
use siblings::paperlab::{
    family_display, verify_defining_polynomials, verify_group_theory, verify_example_prime,
    FamilyParams, Status, EXAMPLE_P, GAMMA_POLY, KPRIME_POLY, K_POLY,
};
use siblings::splitting::{
    b_prime_power, base_field, brute_force_ideal_count, chebotarev_counts, equivalence_sweep,
    prime_power_counts, FieldDesc, PrimeOfBase, SplittingType,
};
use siblings::tower::{conjugate_product, min_poly_base, preset, BaseXPoly, XPoly};
use siblings::witt::{from_integer, witt_add, witt_formula_oracle, witt_mul, WittVector};

fn report(n: u32, ok: bool, detail: &str) {
    let line = format!("criterion {n}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {n} failed: {detail}");
}

fn base(s: &str) -> BaseXPoly {
    BaseXPoly::parse(s).unwrap()
}

fn k_conjugates(shift: &str) -> Vec<String> {
    ["(T^2+z*T)*a", "(T^2+z*T)*(a+1)", "(T^2+(z+1)*T)*(a+aT)", "(T^2+(z+1)*T)*(a+aT+1)"]
        .iter()
        .map(|c| format!("X^2+X+{c}{shift}"))
        .collect()
}

fn product_in(spec: &str, forms: &[String]) -> BaseXPoly {
    let s = preset(spec).unwrap();
    let qs: Vec<XPoly> = forms.iter().map(|f| XPoly::parse(&s, f).unwrap()).collect();
    conjugate_product(&qs).unwrap()
}

#[test]
fn criterion_01_k_polynomial() {
    let start = Instant::now();
    let got = product_in("paper:L", &k_conjugates(""));
    let elapsed = start.elapsed();
    let ok = got == base(K_POLY) && elapsed < Duration::from_secs(1);
    report(1, ok, &format!("conjugate product = {got} in {elapsed:.2?}"));
}

#[test]
fn criterion_02_kprime_and_gamma_polynomials() {
    let kp = product_in("paper:L", &k_conjugates("+T^3"));
    let c = "a*T+(T^2+(z+1)*T)*aT";
    let forms: Vec<String> = ["", "+T", "+(T^2+(z+1)*T)", "+(T^2+z*T)"]
        .iter()
        .map(|t| format!("X^2+X+{c}{t}"))
        .collect();
    let gamma = product_in("paper:M", &forms);
    let gamma_min = min_poly_base(&preset("paper:Kgamma").unwrap().top_element()).unwrap();
    let ok = kp == base(KPRIME_POLY) && gamma == base(GAMMA_POLY) && gamma_min == gamma;
    report(2, ok, &format!("K' product {}, gamma product and min poly {}", kp == base(KPRIME_POLY), gamma == base(GAMMA_POLY) && gamma_min == gamma));
}

/// Coefficient vectors over `F_2[T]`, constant term first.
type Dense = Vec<F2Poly>;

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![F2Poly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn dense_pow(a: &Dense, e: usize) -> Dense {
    (0..e).fold(vec![F2Poly::one()], |acc, _| dense_mul(&acc, a))
}

/// Writes `h` (degree 8) as `P(X^2+X)` and returns `P`.
fn decompose(h: &BaseXPoly) -> Dense {
    let mut rest: Dense = (0..=8).map(|i| h.coeff(i).0).collect();
    let y = vec![F2Poly::zero(), F2Poly::one(), F2Poly::one()];
    let mut p = vec![F2Poly::zero(); 5];
    for k in (0..=4).rev() {
        let c = rest[2 * k].clone();
        let term = dense_pow(&y, k);
        for (i, t) in term.iter().enumerate() {
            rest[i] = &rest[i] + &(t * &c);
        }
        p[k] = c;
    }
    assert!(rest.iter().all(F2Poly::is_zero), "not a polynomial in X^2+X");
    p
}

/// `P(X^2 + X + shift)`.
fn substitute(p: &Dense, shift: &F2Poly) -> BaseXPoly {
    let y = vec![shift.clone(), F2Poly::one(), F2Poly::one()];
    let mut acc = vec![F2Poly::zero(); 9];
    for (k, c) in p.iter().enumerate() {
        for (i, t) in dense_pow(&y, k).iter().enumerate() {
            acc[i] = &acc[i] + &(t * c);
        }
    }
    BaseXPoly::from_integral(acc)
}

#[test]
fn criterion_03_family_polynomials() {
    // β + α_{T^p} satisfies θ^2 + θ = c + T^p where P(c) = 0 and P(X^2+X) is
    // the polynomial of β, so its polynomial is P(X^2 + X + T^p).
    let p_of_c = decompose(&base(K_POLY));
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let n = preset(&format!("paper:N({p})")).unwrap();
        let fk = min_poly_base(&n.require("kp").unwrap()).unwrap();
        let fkp = min_poly_base(&n.require("kpp").unwrap()).unwrap();
        let tp = F2Poly::monomial(p as usize);
        let oracle_k = substitute(&p_of_c, &tp);
        let oracle_kp = substitute(&p_of_c, &(&tp + &F2Poly::monomial(3)));
        ok &= fk == oracle_k && fkp == oracle_kp;
        let report = verify_defining_polynomials(FamilyParams::new(p).unwrap()).unwrap();
        ok &= report.status() == Status::Pass;
        for (name, display, computed) in [
            (format!("K({p}): family formula"), family_display(p, false), &fk),
            (format!("K'({p}): family formula"), family_display(p, true), &fkp),
        ] {
            let entry = report.find(&name).expect("family entry");
            let expected = if display == *computed { Status::Pass } else { Status::PaperDiscrepancy };
            ok &= entry.status == expected
                && entry.expected == display.to_string()
                && entry.computed == computed.to_string();
            notes.push(format!("{name} {}", entry.status));
        }
        let decided = report.find("family formula at p=3 against K'").expect("p=3 entry");
        ok &= decided.status != Status::Fail;
        if p == 3 {
            ok &= fk == base(KPRIME_POLY) && fkp == base(K_POLY);
            notes.push(format!("p=3 formula vs K' {}", decided.status));
        }
    }
    report(3, ok, &notes.join("; "));
}

#[test]
fn criterion_04_example_prime() {
    let r = verify_example_prime().unwrap();
    let failed: Vec<&str> = r.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.check.as_str()).collect();
    let ok = failed.is_empty() && r.checks.len() >= 9;
    report(4, ok, &format!("{} checks, not passing: {failed:?}", r.checks.len()));
}

#[test]
fn criterion_05_group_suite() {
    let start = Instant::now();
    let r = verify_group_theory().unwrap();
    let elapsed = start.elapsed();
    let h = build_8t15();
    let failed: Vec<&str> = r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.check.as_str()).collect();
    let ok = failed.is_empty() && h.group.order() == 32 && elapsed < Duration::from_secs(10);
    report(5, ok, &format!("{} checks in {elapsed:.2?}, failed: {failed:?}", r.checks.len()));
}

#[test]
fn criterion_06_equivalence_sweep() {
    let k = FieldDesc::tower(preset("paper:K").unwrap(), 2).unwrap();
    let l = FieldDesc::tower(preset("paper:Kprime").unwrap(), 2).unwrap();
    let s2 = equivalence_sweep(&k, &l, 8, None).unwrap();
    let k4 = FieldDesc::tower(preset("paper:K").unwrap(), 4).unwrap();
    let l4 = FieldDesc::tower(preset("paper:Kprime").unwrap(), 4).unwrap();
    let s4 = equivalence_sweep(&k4, &l4, 4, None).unwrap();
    let wit: Vec<&str> = s4.mismatches().iter().filter(|r| r.degree == 4).map(|r| r.prime.as_str()).collect();
    let ok = s2.records.len() == 71 && s2.all_equal() && wit.contains(&EXAMPLE_P);
    report(
        6,
        ok,
        &format!(
            "F_2: {} primes, {} exceptions; F_4: {} degree-4 witnesses",
            s2.records.len(),
            s2.mismatches().len(),
            wit.len()
        ),
    );
}

#[test]
fn criterion_07_zeta_tables() {
    let k = FieldDesc::tower(preset("paper:K").unwrap(), 2).unwrap();
    let l = FieldDesc::tower(preset("paper:Kprime").unwrap(), 2).unwrap();
    let tk = zeta_table(&k, 6, 2, 8).unwrap();
    let tl = zeta_table(&l, 6, 2, 8).unwrap();
    let parity = tk.rows.iter().chain(&tl.rows).all(|r| {
        let b: BigUint = r.b.parse().unwrap();
        BigUint::from(r.a) == b % 2u32
    });
    let ok = tk.rows.len() == 127 && tk.same_coefficients(&tl) && parity;
    report(7, ok, &format!("{} monic f, tables equal {}, A = B mod 2 {parity}", tk.rows.len(), tk.same_coefficients(&tl)));
}

#[test]
fn criterion_08_prime_power_counts() {
    let f2 = base_field(2).unwrap();
    let primes: Vec<Poly> = primes_up_to(f2.clone(), 6).into_iter().take(20).collect();
    assert_eq!(primes.len(), 20);
    let mut checked = 0;
    let mut bad = Vec::new();
    for name in ["paper:K", "paper:Kprime", "paper:F"] {
        let k = FieldDesc::tower(preset(name).unwrap(), 2).unwrap();
        for q in &primes {
            let st = k.splitting_type(&PrimeOfBase::new(q.clone()).unwrap()).unwrap();
            let counts = prime_power_counts(&st, 4);
            let mut qm = Poly::one(f2.clone());
            for m in 1..=4 {
                qm = &qm * q;
                checked += 1;
                if b_prime_power(&counts, m) != brute_force_ideal_count(&k, &qm).unwrap() {
                    bad.push(format!("{name} ({q})^{m}"));
                }
            }
        }
    }
    report(8, bad.is_empty(), &format!("{checked} prime powers, mismatches {bad:?}"));
}

#[test]
fn criterion_09_witt_vectors() {
    let mut bad = 0;
    let mut checked = 0;
    for n in 1..=6usize {
        let bound = 1u64 << (n - 1);
        for a in 0..bound {
            for b in 0..bound {
                let (wa, wb) = (from_integer(a, 2, n).unwrap(), from_integer(b, 2, n).unwrap());
                checked += 1;
                if witt_add(&wa, &wb).unwrap() != from_integer(a + b, 2, n).unwrap()
                    || witt_mul(&wa, &wb).unwrap() != from_integer(a * b, 2, n).unwrap()
                {
                    bad += 1;
                }
            }
        }
    }
    let mut oracle_ok = 0;
    for x in 0..4u32 {
        for y in 0..4u32 {
            let wx = WittVector::new(2, vec![x & 1, x >> 1]).unwrap();
            let wy = WittVector::new(2, vec![y & 1, y >> 1]).unwrap();
            let sum = witt_add(&wx, &wy).unwrap();
            if witt_formula_oracle(&wx, &wy, 2).unwrap() == sum.coords() {
                oracle_ok += 1;
            }
        }
    }
    report(9, bad == 0 && oracle_ok == 16, &format!("{checked} operand pairs, {bad} failures; oracle {oracle_ok}/16"));
}

fn random_unit_series(f: &FieldRef, rng: &mut ChaCha8Rng, v: i64, prec: usize) -> LaurentSeries {
    let mut c: Vec<_> = (0..prec).map(|_| f.from_int(rng.gen_range(0..2))).collect();
    c[0] = f.one();
    LaurentSeries::new(f, v, c)
}

fn random_point(f: &FieldRef, rng: &mut ChaCha8Rng, prec: usize) -> SPoint {
    let v = -rng.gen_range(1..4);
    let x = random_unit_series(f, rng, v, prec);
    let digits = (0..8).map(|_| rng.gen_range(0..2)).collect();
    SPoint::new(x, digits).unwrap()
}

fn random_poly(f: &FieldRef, rng: &mut ChaCha8Rng) -> Poly {
    let d = rng.gen_range(1..7);
    let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..2)).collect();
    c.push(1);
    Poly::from_ints(f.clone(), &c)
}

#[test]
fn criterion_10_goss_exponential() {
    const M: usize = 32;
    let f2 = FqField::prime(2).unwrap();
    let mut exact = 0;
    for fs in ["T", "T+1", "T^2+T+1"] {
        let f = Poly::parse(f2.clone(), fs).unwrap();
        let base = LaurentSeries::from_poly(&f, M);
        for j in -3i64..=3 {
            let s = SPoint::integer(&f2, j, 8, M);
            if goss_exponent(&f, &s).unwrap().agrees_with(&base.pow(j).unwrap()) {
                exact += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x3a3);
    let mut laws = 0;
    for _ in 0..50 {
        let (f, g) = (random_poly(&f2, &mut rng), random_poly(&f2, &mut rng));
        let (s, t) = (random_point(&f2, &mut rng, M), random_point(&f2, &mut rng, M));
        let st = s.add(&t);
        let lhs = goss_exponent(&f, &st).unwrap();
        let rhs = goss_exponent(&f, &s).unwrap().mul(&goss_exponent(&f, &t).unwrap());
        let fg = &f * &g;
        let lhs2 = goss_exponent(&fg, &s).unwrap();
        let rhs2 = goss_exponent(&f, &s).unwrap().mul(&goss_exponent(&g, &s).unwrap());
        if lhs.agrees_with(&rhs) && lhs2.agrees_with(&rhs2) {
            laws += 1;
        }
    }
    report(10, exact == 21 && laws == 50, &format!("f^(s_j) = f^j {exact}/21; laws {laws}/50"));
}

#[test]
fn criterion_11_chebotarev_frequencies() {
    let start = Instant::now();
    let k = FieldDesc::tower(preset("paper:K").unwrap(), 2).unwrap();
    let counts = chebotarev_counts(&k, 11, None).unwrap();
    let elapsed = start.elapsed();
    let n = counts.len() as f64;
    let mut freq: BTreeMap<SplittingType, f64> = BTreeMap::new();
    let mut by_parity = [0f64; 2];
    for (d, st) in &counts {
        *freq.entry(st.clone()).or_default() += 1.0 / n;
        by_parity[d % 2] += 1.0 / n;
    }
    let h = build_8t15();
    let predicted = h.group.predicted_densities(&h.section).unwrap();
    let ratio = |r: &num_rational::Ratio<u64>| *r.numer() as f64 / *r.denom() as f64;
    // Frobenius of a degree-d prime lies in the coset m ≡ d mod 2
    let mut mixture: BTreeMap<SplittingType, f64> = BTreeMap::new();
    for parity in 0..2u8 {
        let dens = h.group.predicted_densities_on(&h.section, &h.parity_coset(parity)).unwrap();
        for (st, r) in dens {
            *mixture.entry(st).or_default() += by_parity[parity as usize] * ratio(&r);
        }
    }
    let mut worst = 0f64;
    let mut lines = Vec::new();
    for (st, r) in &predicted {
        let got = freq.get(st).copied().unwrap_or(0.0);
        let dev = (got - ratio(r)).abs();
        worst = worst.max(dev);
        lines.push(format!(
            "{st}: empirical {got:.4} uniform {:.4} parity-weighted {:.4}",
            ratio(r),
            mixture.get(st).copied().unwrap_or(0.0)
        ));
    }
    let unexpected = freq.keys().any(|st| !predicted.contains_key(st));
    let ok = worst <= 0.06 && !unexpected && elapsed < Duration::from_secs(120);
    report(
        11,
        ok,
        &format!("{} primes, max deviation {worst:.4} (tolerance 0.06), {elapsed:.2?}; {}", counts.len(), lines.join("; ")),
    );
}

#[test]
fn criterion_12_analytic_scope() {
    // The analytic statements are outside what finite computation can show;
    // the finite-precision contracts that stand in for them are exercised by
    // the property suites. This records the scope and runs one such contract.
    let f2 = base_field(2).unwrap();
    let s = SPoint::integer(&f2, 1, 8, 32);
    let k = FieldDesc::tower(preset("paper:K").unwrap(), 2).unwrap();
    let e = euler_product_check(&k, &s, 4).unwrap();
    report(
        12,
        e.agrees(),
        "analytic claims are not reproduced; finite-precision Euler product agrees below the window",
    );
}
