use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::fp::{self, mulm};
use super::{GaloisError, Poly};

/// A finite field `F_p[u]/(m(u))` with `m` monic irreducible of degree `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqField {
    p: u32,
    modulus: Vec<u32>,
}

pub type FieldRef = Arc<FqField>;

/// Residue representative of a field element: `k` coefficients over `F_p`,
/// constant term first. The parent field is passed to every operation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FqElement(pub(crate) Vec<u32>);

impl FqElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.degree(), self.modulus)
    }
}

impl FqField {
    /// The prime field `F_p`, represented with modulus `u`.
    pub fn prime(p: u32) -> Result<FieldRef, GaloisError> {
        if !fp::is_prime(p as u64) || p > 65_521 {
            return Err(GaloisError::NotPrime(p as u64));
        }
        Ok(Arc::new(FqField {
            p,
            modulus: vec![0, 1],
        }))
    }

    /// Builds `F_p[u]/(modulus)` after certifying that `modulus` is monic and
    /// irreducible.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<FieldRef, GaloisError> {
        let base = Self::prime(p)?;
        let mut m: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        fp::trim(&mut m);
        if m.len() < 2 || m.last() != Some(&1) {
            return Err(GaloisError::NotMonic);
        }
        if m.len() == 2 {
            return Ok(base);
        }
        let poly = Poly::from_coeffs(
            base.clone(),
            m.iter().map(|&c| base.from_int(c as u64)).collect(),
        );
        if !poly.is_irreducible()? {
            return Err(GaloisError::Reducible(poly.to_string()));
        }
        Ok(Arc::new(FqField { p, modulus: m }))
    }

    /// Field whose modulus is already known to be irreducible.
    pub(crate) fn new_unchecked(p: u32, modulus: Vec<u32>) -> FieldRef {
        debug_assert_eq!(modulus.last(), Some(&1));
        if modulus.len() == 2 {
            return Arc::new(FqField {
                p,
                modulus: vec![0, 1],
            });
        }
        Arc::new(FqField { p, modulus })
    }

    /// `F_{p^k}` with the first irreducible monic modulus in enumeration
    /// order (e.g. `u^2+u+1` for `F_4`, `u^4+u+1` for `F_16`).
    pub fn conventional(p: u32, k: usize) -> Result<FieldRef, GaloisError> {
        let base = Self::prime(p)?;
        if k == 0 {
            return Err(GaloisError::Invalid("field degree must be positive".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        for poly in super::enumerate_monic_iter(base.clone(), k) {
            if poly.is_irreducible()? {
                let m = poly.coeffs().iter().map(|c| c.0[0]).collect();
                return Ok(Arc::new(FqField { p, modulus: m }));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32)
    }

    /// `q = p^k` as a machine integer, when it fits.
    pub fn order_u128(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FqElement {
        FqElement(vec![0; self.degree()])
    }

    pub fn one(&self) -> FqElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: u64) -> FqElement {
        let mut v = vec![0; self.degree()];
        v[0] = (n % self.p as u64) as u32;
        FqElement(v)
    }

    /// The class of `u`.
    pub fn generator(&self) -> FqElement {
        let mut v = vec![0; self.degree()];
        if self.degree() == 1 {
            v[0] = 0;
            // F_p = F_p[u]/(u): u is zero; callers use `from_int` there.
            return FqElement(v);
        }
        v[1] = 1;
        FqElement(v)
    }

    pub fn element(&self, coeffs: &[u32]) -> FqElement {
        let reduced = fp::poly_rem(
            &coeffs.iter().map(|c| c % self.p).collect::<Vec<_>>(),
            &self.modulus,
            self.p,
        );
        self.pad(reduced)
    }

    fn pad(&self, mut v: Vec<u32>) -> FqElement {
        v.resize(self.degree(), 0);
        FqElement(v)
    }

    pub fn is_zero(&self, a: &FqElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FqElement) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let p = self.p;
        FqElement(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let p = self.p;
        FqElement(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + p - y) % p).collect())
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        let p = self.p;
        FqElement(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn scale(&self, a: &FqElement, c: u32) -> FqElement {
        let p = self.p;
        FqElement(a.0.iter().map(|&x| mulm(x, c % p, p)).collect())
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let k = self.degree();
        if k == 1 {
            return FqElement(vec![mulm(a.0[0], b.0[0], self.p)]);
        }
        let prod = fp::poly_mul(&a.0, &b.0, self.p);
        if prod.len() <= k {
            return self.pad(prod);
        }
        self.pad(fp::poly_rem(&prod, &self.modulus, self.p))
    }

    pub fn square(&self, a: &FqElement) -> FqElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &FqElement) -> Result<FqElement, GaloisError> {
        if self.is_zero(a) {
            return Err(GaloisError::DivisionByZero);
        }
        if self.degree() == 1 {
            return Ok(FqElement(vec![fp::inv_mod(a.0[0], self.p)]));
        }
        let mut v = a.0.clone();
        fp::trim(&mut v);
        let inv = fp::poly_inv_mod(&v, &self.modulus, self.p).ok_or(GaloisError::DivisionByZero)?;
        Ok(self.pad(inv))
    }

    pub fn div(&self, a: &FqElement, b: &FqElement) -> Result<FqElement, GaloisError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FqElement, e: &BigUint) -> FqElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &FqElement, e: u64) -> FqElement {
        self.pow(a, &BigUint::from(e))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &FqElement) -> FqElement {
        if self.p == 2 {
            self.square(a)
        } else {
            self.pow_u64(a, self.p as u64)
        }
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: &FqElement) -> u32 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.degree() {
            cur = self.frobenius(&cur);
            acc = self.add(&acc, &cur);
        }
        acc.0[0]
    }

    /// Integer index of an element: its coefficient vector read as base-`p`
    /// digits, constant term least significant.
    pub fn index_of(&self, a: &FqElement) -> u128 {
        a.0.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn element_at(&self, mut n: u128) -> FqElement {
        let mut v = vec![0; self.degree()];
        for c in v.iter_mut() {
            *c = (n % self.p as u128) as u32;
            n /= self.p as u128;
        }
        FqElement(v)
    }

    /// All elements in enumeration order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        let q = self.order_u128().expect("field too large to enumerate");
        (0..q).map(move |n| self.element_at(n))
    }

    /// Roots of `X^2 + X + c` (characteristic 2). Solves the `F_2`-linear
    /// system for `x -> x^2 + x`; returns both roots or nothing.
    pub fn artin_schreier_roots(&self, c: &FqElement) -> Result<Vec<FqElement>, GaloisError> {
        if self.p != 2 {
            return Err(GaloisError::NotCharacteristicTwo);
        }
        let k = self.degree();
        let columns: Vec<Vec<u32>> = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                let b = FqElement(e);
                self.add(&self.square(&b), &b).0
            })
            .collect();
        match fp::solve_columns(&columns, &c.0, 2) {
            None => Ok(Vec::new()),
            Some(x) => {
                let r = FqElement(x);
                let r1 = self.add(&r, &self.one());
                let mut roots = vec![r, r1];
                roots.sort_by_key(|e| self.index_of(e));
                Ok(roots)
            }
        }
    }

    /// Formats an element as a polynomial in `z`.
    pub fn format_element(&self, a: &FqElement) -> String {
        let mut terms = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = crate::text::monomial("z", i);
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventional_moduli() {
        assert_eq!(FqField::conventional(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FqField::conventional(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(FqField::conventional(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(FqField::new(2, vec![1, 0, 1]), Err(GaloisError::Reducible(_))));
        assert!(matches!(FqField::new(3, vec![1, 1, 2]), Err(GaloisError::NotMonic)));
        assert!(matches!(FqField::prime(4), Err(GaloisError::NotPrime(4))));
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = FqField::conventional(2, 2).unwrap();
        let z = f4.generator();
        // z^2 = z + 1
        assert_eq!(f4.square(&z), f4.add(&z, &f4.one()));
        assert_eq!(f4.mul(&z, &f4.inv(&z).unwrap()), f4.one());
        assert_eq!(f4.pow_u64(&z, 3), f4.one());
        assert_eq!(f4.trace(&z), 1);
        assert_eq!(f4.trace(&f4.one()), 0);
    }

    #[test]
    fn inverses_in_f27() {
        let f = FqField::conventional(3, 3).unwrap();
        for a in f.elements().skip(1) {
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn artin_schreier_over_small_fields() {
        let f2 = FqField::prime(2).unwrap();
        let roots = f2.artin_schreier_roots(&f2.zero()).unwrap();
        assert_eq!(roots, vec![f2.zero(), f2.one()]);
        assert!(f2.artin_schreier_roots(&f2.one()).unwrap().is_empty());
        let f16 = FqField::conventional(2, 4).unwrap();
        for c in f16.elements() {
            let roots = f16.artin_schreier_roots(&c).unwrap();
            assert_eq!(roots.is_empty(), f16.trace(&c) == 1);
            for r in &roots {
                assert_eq!(f16.add(&f16.square(r), r), c);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let f = FqField::conventional(3, 2).unwrap();
        for n in 0..9u128 {
            assert_eq!(f.index_of(&f.element_at(n)), n);
        }
    }
}
