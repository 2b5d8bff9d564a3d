//! Bit-packed polynomials in `F_2[T]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use super::{FieldRef, FqElement, GaloisError, Poly};
use crate::text::{self, ExprRing};

/// Bit `i` of word `i / 64` is the coefficient of `T^i`. No trailing zero words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly(Vec<u64>);

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = a;
    let b = b as u128;
    while a != 0 {
        let i = a.trailing_zeros();
        acc ^= b << i;
        a &= a - 1;
    }
    acc
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly(Vec::new())
    }

    pub fn one() -> Self {
        F2Poly(vec![1])
    }

    pub fn t() -> Self {
        F2Poly(vec![2])
    }

    pub fn monomial(e: usize) -> Self {
        let mut v = vec![0u64; e / 64 + 1];
        v[e / 64] = 1 << (e % 64);
        F2Poly(v)
    }

    pub fn from_bits(bits: u64) -> Self {
        let mut p = F2Poly(vec![bits]);
        p.trim();
        p
    }

    pub fn from_exponents(exps: &[usize]) -> Self {
        exps.iter()
            .fold(F2Poly::zero(), |acc, &e| &acc + &F2Poly::monomial(e))
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.0.last()?;
        Some((self.0.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.0
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Exponents with coefficient 1, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Low word, for polynomials of degree < 64.
    pub fn bits(&self) -> u64 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn add_assign(&mut self, other: &F2Poly) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
        self.trim();
    }

    pub fn shl(&self, k: usize) -> F2Poly {
        if self.is_zero() {
            return F2Poly::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut v = vec![0u64; self.0.len() + words + 1];
        for (i, &w) in self.0.iter().enumerate() {
            v[i + words] ^= w << bits;
            if bits > 0 {
                v[i + words + 1] ^= w >> (64 - bits);
            }
        }
        let mut p = F2Poly(v);
        p.trim();
        p
    }

    pub fn mul(&self, other: &F2Poly) -> F2Poly {
        if self.is_zero() || other.is_zero() {
            return F2Poly::zero();
        }
        let mut v = vec![0u64; self.0.len() + other.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                let prod = clmul(a, b);
                v[i + j] ^= prod as u64;
                v[i + j + 1] ^= (prod >> 64) as u64;
            }
        }
        let mut p = F2Poly(v);
        p.trim();
        p
    }

    pub fn square(&self) -> F2Poly {
        let mut v = vec![0u64; 2 * self.0.len()];
        for (i, &w) in self.0.iter().enumerate() {
            let mut lo = 0u64;
            let mut hi = 0u64;
            for b in 0..32 {
                lo |= ((w >> b) & 1) << (2 * b);
                hi |= ((w >> (b + 32)) & 1) << (2 * b);
            }
            v[2 * i] = lo;
            v[2 * i + 1] = hi;
        }
        let mut p = F2Poly(v);
        p.trim();
        p
    }

    pub fn pow(&self, e: u32) -> F2Poly {
        let mut acc = F2Poly::one();
        for i in (0..32 - e.leading_zeros()).rev() {
            acc = acc.square();
            if (e >> i) & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn divmod(&self, divisor: &F2Poly) -> Result<(F2Poly, F2Poly), GaloisError> {
        let Some(dd) = divisor.degree() else {
            return Err(GaloisError::DivisionByZero);
        };
        let mut r = self.clone();
        let mut q = F2Poly::zero();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let s = dr - dd;
            q.add_assign(&F2Poly::monomial(s));
            r.add_assign(&divisor.shl(s));
        }
        Ok((q, r))
    }

    pub fn rem(&self, divisor: &F2Poly) -> F2Poly {
        self.divmod(divisor).expect("nonzero divisor").1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &F2Poly) -> F2Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn gcd(&self, other: &F2Poly) -> F2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a
    }

    /// Evaluates at `t` in a field of characteristic 2.
    pub fn eval(&self, field: &FieldRef, t: &FqElement) -> FqElement {
        let Some(d) = self.degree() else {
            return field.zero();
        };
        let one = field.one();
        let mut acc = field.zero();
        for i in (0..=d).rev() {
            acc = field.mul(&acc, t);
            if self.coeff(i) {
                acc = field.add(&acc, &one);
            }
        }
        acc
    }

    /// Image in `F_q[T]` for a field of characteristic 2.
    pub fn to_poly(&self, field: &FieldRef) -> Poly {
        let n = self.degree().map_or(0, |d| d + 1);
        let c = (0..n)
            .map(|i| if self.coeff(i) { field.one() } else { field.zero() })
            .collect();
        Poly::from_coeffs(field.clone(), c)
    }

    /// Inverse of [`F2Poly::to_poly`]; fails if a coefficient lies outside `F_2`.
    pub fn from_poly(p: &Poly) -> Result<F2Poly, GaloisError> {
        let f = p.field();
        if f.characteristic() != 2 {
            return Err(GaloisError::NotCharacteristicTwo);
        }
        let mut out = F2Poly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if f.is_one(c) {
                out.add_assign(&F2Poly::monomial(i));
            } else if !f.is_zero(c) {
                return Err(GaloisError::Invalid(format!(
                    "coefficient {} is not in F_2",
                    f.format_element(c)
                )));
            }
        }
        Ok(out)
    }

    pub fn parse(s: &str) -> Result<F2Poly, GaloisError> {
        let e = text::parse(s)?;
        Ok(e.eval(&F2Poly::zero(), &|v: &str| match v {
            "T" | "t" | "X" | "x" => Some(F2Poly::t()),
            _ => None,
        })?)
    }

    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| text::term("1", &text::monomial(var, e)))
            .collect();
        parts.join("+")
    }
}

impl Ord for F2Poly {
    /// The integer value of the coefficient vector.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for F2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("T"))
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

impl Add for &F2Poly {
    type Output = F2Poly;
    fn add(self, rhs: &F2Poly) -> F2Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Mul for &F2Poly {
    type Output = F2Poly;
    fn mul(self, rhs: &F2Poly) -> F2Poly {
        F2Poly::mul(self, rhs)
    }
}

impl ExprRing for F2Poly {
    fn zero(&self) -> Self {
        F2Poly::zero()
    }
    fn from_int(&self, n: u64) -> Self {
        F2Poly::from_bits(n & 1)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        F2Poly::mul(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FqField;

    fn p(s: &str) -> F2Poly {
        F2Poly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(p("T^8+T^6+T^5+T^3+1").to_string(), "T^8+T^6+T^5+T^3+1");
        assert_eq!(p("(T+1)^2").to_string(), "T^2+1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("T^130").degree(), Some(130));
    }

    #[test]
    fn agrees_with_generic_polynomials() {
        let f2 = FqField::prime(2).unwrap();
        let a = p("T^70+T^64+T^3+1");
        let b = p("T^65+T^2+T");
        let prod = &a * &b;
        assert_eq!(prod.to_poly(&f2), &a.to_poly(&f2) * &b.to_poly(&f2));
        assert_eq!(a.square(), &a * &a);
        let (q, r) = prod.divmod(&p("T^5+T^2+1")).unwrap();
        assert_eq!(&(&q * &p("T^5+T^2+1")) + &r, prod);
        assert!(r.degree().unwrap_or(0) < 5);
        assert_eq!(F2Poly::from_poly(&prod.to_poly(&f2)).unwrap(), prod);
    }

    #[test]
    fn gcd_and_order() {
        assert_eq!(p("T^2+T").gcd(&p("T^2+1")), p("T+1"));
        assert!(p("T") < p("T+1") && p("T+1") < p("T^2"));
    }

    #[test]
    fn evaluation_in_residue_field() {
        let f2 = FqField::prime(2).unwrap();
        let m: Vec<u32> = vec![1, 0, 0, 1, 0, 1, 1, 0, 1];
        let k = FqField::new(2, m).unwrap();
        let t = k.generator();
        let g = p("T^6+T^5+T^4+T^3+T^2+T").eval(&k, &t);
        // g is a primitive cube root of unity modulo f
        let one = k.one();
        assert!(k.is_zero(&k.add(&k.add(&k.square(&g), &g), &one)));
        assert_eq!(p("T+1").eval(&f2, &f2.one()), f2.zero());
    }
}
