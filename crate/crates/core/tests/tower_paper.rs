use siblings::tower::{
    certify_irreducible, conjugate_product, min_poly, min_poly_base, auto_omega, auto_phi1,
    auto_psi, auto_sigma, auto_tau, preset, resolve_delta, BaseXPoly, Certificate, XPoly,
};

const EQ3: &str = "X^8+T*X^6+T*X^5+(T^5+T^4+T^3+T^2+T+1)*X^4+T*X^3+(T^7+T^5+T^3+T^2)*X^2+(T^7+T^4)*X+(T^10+T^8+T^6)";
const EQ4: &str = "X^8+T*X^6+T*X^5+(T^5+T^3+T^2+T+1)*X^4+T*X^3+(T^5+T^4+T^3+T^2)*X^2+T^4*X+(T^12+T^11+T^9+T^7+T^6)";
const EQ7: &str = "X^8+(T^4+T^3+1)*X^4+T^5*X^2+(T^5+T^4+T^3)*X+(T^10+T^8+T^5)";

fn base(s: &str) -> BaseXPoly {
    BaseXPoly::parse(s).unwrap()
}

#[test]
fn eq3_from_conjugates() {
    let n = preset("paper:L").unwrap();
    let qs: Vec<XPoly> = [
        "X^2+X+(T^2+z*T)*a",
        "X^2+X+(T^2+z*T)*(a+1)",
        "X^2+X+(T^2+(z+1)*T)*(a+aT)",
        "X^2+X+(T^2+(z+1)*T)*(a+aT+1)",
    ]
    .iter()
    .map(|s| XPoly::parse(&n, s).unwrap())
    .collect();
    assert_eq!(conjugate_product(&qs).unwrap(), base(EQ3));
}

#[test]
fn eq4_from_conjugates() {
    let n = preset("paper:L").unwrap();
    let qs: Vec<XPoly> = [
        "X^2+X+(T^2+z*T)*a+T^3",
        "X^2+X+(T^2+z*T)*(a+1)+T^3",
        "X^2+X+(T^2+(z+1)*T)*(a+aT)+T^3",
        "X^2+X+(T^2+(z+1)*T)*(a+aT+1)+T^3",
    ]
    .iter()
    .map(|s| XPoly::parse(&n, s).unwrap())
    .collect();
    assert_eq!(conjugate_product(&qs).unwrap(), base(EQ4));
}

#[test]
fn eq7_from_conjugates_and_min_poly() {
    let m = preset("paper:M").unwrap();
    let c = "a*T+(T^2+(z+1)*T)*aT";
    let qs: Vec<XPoly> = ["", "+T", "+(T^2+(z+1)*T)", "+(T^2+z*T)"]
        .iter()
        .map(|t| XPoly::parse(&m, &format!("X^2+X+{c}{t}")).unwrap())
        .collect();
    assert_eq!(conjugate_product(&qs).unwrap(), base(EQ7));
    let kg = preset("paper:Kgamma").unwrap();
    assert_eq!(min_poly_base(&kg.top_element()).unwrap(), base(EQ7));
}

#[test]
fn min_polys_in_n() {
    let n = preset("paper:N").unwrap();
    assert_eq!(min_poly_base(&n.require("b").unwrap()).unwrap(), base(EQ3));
    assert_eq!(min_poly_base(&n.require("bp").unwrap()).unwrap(), base(EQ4));
    assert_eq!(min_poly_base(&n.require("g").unwrap()).unwrap(), base(EQ7));
    let a = min_poly_base(&n.require("a").unwrap()).unwrap();
    assert_eq!(a, base("X^4+(T+1)*X^2+T*X+T^2"));
    // each generator is quadratic over the subtower before it
    let names = n.generator_names();
    for (i, g) in names.iter().enumerate() {
        let below: Vec<&str> = names[..i].iter().map(String::as_str).collect();
        let mp = min_poly(&n.require(g).unwrap(), &below).unwrap();
        assert_eq!(mp.degree(), Some(2), "{g}");
    }
}

#[test]
fn automorphism_orbits() {
    let n = preset("paper:N").unwrap();
    let phi = auto_phi1(&n).unwrap();
    let b = n.require("b").unwrap();
    let one = n.eval("1").unwrap();
    assert_eq!(phi.pow(4).apply(&b), &b + &one);
    assert_eq!(phi.pow(8).apply(&b), b);
    assert_eq!(phi.order(16), Some(8));
    assert_eq!(phi.orbit_length(&n.require("g").unwrap(), 16), Some(4));
    assert_eq!(phi.orbit_length(&n.require("a").unwrap(), 16), Some(4));
    for g in ["z", "aT", "aT3"] {
        assert!(phi.orbit_length(&n.require(g).unwrap(), 16).unwrap() <= 2);
    }
    let psi3 = auto_psi(&n, 3).unwrap();
    assert_eq!(psi3.apply(&b), b);
    for l in [1u32, 3, 5, 7] {
        let psi = auto_psi(&n, l).unwrap();
        let lhs = psi.compose(&phi).compose(&psi);
        assert_eq!(lhs, phi.pow(l as usize), "ψ_{l}");
    }
}

#[test]
fn delta_is_consistent() {
    let n = preset("paper:N").unwrap();
    let delta = resolve_delta(&n).unwrap();
    let g = n.require("g").unwrap();
    let d = n.eval(&delta.to_string()).unwrap();
    let shift = &(&n.require("a").unwrap() + &n.eval("T").unwrap()) + &d;
    let psi7 = auto_psi(&n, 7).unwrap();
    assert_eq!(psi7.apply(&g), &g + &shift);
    let psi3 = auto_psi(&n, 3).unwrap();
    assert_eq!(psi3.apply(&g), &(&g + &shift) + &n.eval("1").unwrap());
    let psi5 = auto_psi(&n, 5).unwrap();
    assert_eq!(psi5.apply(&g), &g + &n.eval("1").unwrap());
    assert!(resolve_delta(&preset("paper:K").unwrap()).is_err());
}

#[test]
fn galois_group_of_l_and_m() {
    let m = preset("paper:M").unwrap();
    let tau = auto_tau(&m).unwrap();
    let sigma = auto_sigma(&m).unwrap();
    let omega = auto_omega(&m).unwrap();
    assert_eq!(tau.order(8), Some(2));
    assert_eq!(sigma.order(8), Some(4));
    assert_eq!(omega.order(8), Some(2));
    assert_eq!(tau.compose(&sigma).compose(&tau), sigma.pow(3));
    assert_eq!(sigma.compose(&omega), omega.compose(&sigma));
}

#[test]
fn irreducibility_certificates() {
    match certify_irreducible(&base(EQ3), 6).unwrap() {
        Certificate::Irreducible(w) => assert!(!w.is_empty()),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        certify_irreducible(&base(EQ4), 6).unwrap(),
        Certificate::Irreducible(_)
    ));
    let reducible = base("(X^4+T*X+1)*(X^4+X+T)");
    assert!(matches!(
        certify_irreducible(&reducible, 6).unwrap(),
        Certificate::Inconclusive(_)
    ));
    println!("Eq7: {:?}", certify_irreducible(&base(EQ7), 6).unwrap());
}
