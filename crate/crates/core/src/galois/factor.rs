//! Factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting, then equal-degree splitting (trace maps in characteristic 2,
//! the `(q^d-1)/2` power otherwise).

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::prime_divisors;
use super::{FqElement, GaloisError, Poly};

pub const DEFAULT_SEED: u64 = 0x5eed_2f4d;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElement,
    /// Monic irreducible factors with multiplicities, in enumeration order.
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(p, m)| std::iter::repeat(p.degree().unwrap()).take(*m))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    /// Multiplies the factorization back out.
    pub fn product(&self, field: &super::FieldRef) -> Poly {
        let mut acc = Poly::constant(field.clone(), self.unit.clone());
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * p;
            }
        }
        acc
    }
}

/// Total order used for enumeration: degree first, then coefficient indices
/// from the top non-leading coefficient down.
pub fn enumeration_cmp(a: &Poly, b: &Poly) -> Ordering {
    let f = a.field();
    a.degree().cmp(&b.degree()).then_with(|| {
        let n = a.coeffs().len();
        for i in (0..n).rev() {
            let o = f.index_of(&a.coeffs()[i]).cmp(&f.index_of(&b.coeffs()[i]));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

impl Poly {
    /// Rabin's test: `x^{q^n} = x mod f` and `gcd(x^{q^{n/r}} - x, f) = 1`
    /// for every prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool, GaloisError> {
        let n = match self.degree() {
            None | Some(0) => return Err(GaloisError::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Poly::x(f.field().clone());
        let rs = prime_divisors(n);
        let mut powers = Vec::with_capacity(n + 1);
        let mut h = x.clone();
        powers.push(h.clone());
        for _ in 0..n {
            h = h.frobenius_mod(&f);
            powers.push(h.clone());
        }
        if powers[n] != x.rem(&f) {
            return Ok(false);
        }
        for r in rs {
            let g = (&powers[n / r] - &x).gcd(&f);
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn factor(&self) -> Result<Factorization, GaloisError> {
        self.factor_with_seed(DEFAULT_SEED)
    }

    pub fn factor_with_seed(&self, seed: u64) -> Result<Factorization, GaloisError> {
        let Some(lead) = self.leading() else {
            return Err(GaloisError::ZeroPolynomial);
        };
        let unit = lead.clone();
        let f = self.monic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, usize)> = Vec::new();
        if f.degree() == Some(0) {
            return Ok(Factorization { unit, factors });
        }
        for (sqf, mult) in squarefree_decomposition(&f) {
            for (g, d) in distinct_degree(&sqf) {
                for h in equal_degree(&g, d, &mut rng) {
                    factors.push((h, mult));
                }
            }
        }
        factors.sort_by(|a, b| enumeration_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
        // Merge equal factors that arrived through different p-th-root levels.
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (p, m) in factors {
            match merged.last_mut() {
                Some((q, n)) if *q == p => *n += m,
                _ => merged.push((p, m)),
            }
        }
        Ok(Factorization {
            unit,
            factors: merged,
        })
    }
}

/// `f` monic and nonconstant. Returns coprime squarefree parts with
/// multiplicities.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let p = f.field().characteristic() as usize;
        let root = pth_root(&c);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// `c` must be a polynomial in `x^p`.
fn pth_root(c: &Poly) -> Poly {
    let field = c.field();
    let p = field.characteristic() as usize;
    // a^{1/p} = a^{p^{k-1}} in F_{p^k}
    let e = BigUint::from(p as u32).pow(field.degree() as u32 - 1);
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| field.pow(a, &e))
        .collect();
    Poly::from_coeffs(field.clone(), coeffs)
}

/// `f` squarefree monic. Returns `(product of all degree-d factors, d)`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let x = Poly::x(f.field().clone());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.frobenius_mod(&rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

/// Splits a squarefree monic `g` whose irreducible factors all have degree `d`.
pub fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let field = g.field().clone();
    let p = field.characteristic();
    loop {
        let a = random_poly(&field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let t = if p == 2 {
            // Tr_{F_{2^{kd}}/F_2}(a) = a + a^2 + ... + a^{2^{kd-1}}
            let mut acc = a.rem(g);
            let mut cur = acc.clone();
            for _ in 1..field.degree() * d {
                cur = cur.mul_mod(&cur, g);
                acc = &acc + &cur;
            }
            acc
        } else {
            let qd = field.order().pow(d as u32);
            let e = (qd - BigUint::one()) / BigUint::from(2u32);
            &a.pow_mod(&e, g) - &Poly::one(field.clone())
        };
        let b = t.gcd(g);
        let db = b.degree().unwrap_or(0);
        if db > 0 && db < n {
            let mut out = equal_degree(&b, d, rng);
            out.extend(equal_degree(&g.div_exact(&b), d, rng));
            return out;
        }
    }
}

fn random_poly(field: &super::FieldRef, n: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.order_u128().unwrap_or(u128::MAX);
    let coeffs = (0..n)
        .map(|_| {
            if q == u128::MAX {
                let v: Vec<u32> = (0..field.degree())
                    .map(|_| rng.gen_range(0..field.characteristic()))
                    .collect();
                FqElement(v)
            } else {
                field.element_at(rng.gen_range(0..q))
            }
        })
        .collect();
    Poly::from_coeffs(field.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FqField;

    fn f2(s: &str) -> Poly {
        Poly::parse(FqField::prime(2).unwrap(), s).unwrap()
    }

    fn f4(s: &str) -> Poly {
        Poly::parse(FqField::conventional(2, 2).unwrap(), s).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(f2("T^8+T^6+T^5+T^3+1").is_irreducible().unwrap());
        assert!(f2("X^2+X+1").is_irreducible().unwrap());
        assert!(!f2("T^2+1").is_irreducible().unwrap());
        assert_eq!(f2("1").is_irreducible(), Err(GaloisError::ConstantPolynomial));
    }

    #[test]
    fn factors_over_f4() {
        let fac = f4("T^8+T^6+T^5+T^3+1").factor().unwrap();
        let names: Vec<String> = fac.factors.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(
            names,
            vec!["T^4+z*T^2+(z+1)*T+(z+1)", "T^4+(z+1)*T^2+z*T+z"]
        );
        assert!(fac.is_squarefree());
    }

    #[test]
    fn factors_with_multiplicity() {
        let f = f2("(T^2+T+1)^3*T^2*(T+1)");
        let fac = f.factor().unwrap();
        assert_eq!(
            fac.factors,
            vec![(f2("T"), 2), (f2("T+1"), 1), (f2("T^2+T+1"), 3)]
        );
        assert_eq!(fac.product(f.field()), f);
        assert_eq!(f2("X^2+X").factor().unwrap().degrees(), vec![1, 1]);
    }

    #[test]
    fn odd_characteristic() {
        let f5 = FqField::prime(5).unwrap();
        let f = Poly::parse(f5.clone(), "(T^2+2)*(T^2+3)*(T+1)^2").unwrap();
        let fac = f.factor().unwrap();
        assert_eq!(fac.product(&f5), f);
        assert_eq!(fac.degrees(), vec![1, 1, 2, 2]);
        let f9 = FqField::conventional(3, 2).unwrap();
        let g = Poly::parse(f9.clone(), "T^9-T").unwrap();
        assert_eq!(g.factor().unwrap().factors.len(), 9);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(f2("0").factor().unwrap_err(), GaloisError::ZeroPolynomial);
    }
}
