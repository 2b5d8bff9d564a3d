use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigUint;

use super::{FieldRef, FqElement, GaloisError};
use crate::text::{self, ExprRing};

/// Dense univariate polynomial over a finite field, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldRef,
    coeffs: Vec<FqElement>,
}

/// The operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArith {
    Single(Poly),
    Pair(Poly, Poly),
}

pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyArith, GaloisError> {
    a.check_field(b)?;
    Ok(match op {
        PolyOp::Add => PolyArith::Single(a + b),
        PolyOp::Mul => PolyArith::Single(a * b),
        PolyOp::DivMod => {
            let (q, r) = a.try_divmod(b)?;
            PolyArith::Pair(q, r)
        }
        PolyOp::Gcd => PolyArith::Single(a.try_gcd(b)?),
    })
}

impl Poly {
    pub fn zero(field: FieldRef) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldRef) -> Self {
        let one = field.one();
        Poly::from_coeffs(field, vec![one])
    }

    /// The variable `T` (or `X`).
    pub fn x(field: FieldRef) -> Self {
        Poly::monomial(field, 1)
    }

    pub fn monomial(field: FieldRef, deg: usize) -> Self {
        let mut c = vec![field.zero(); deg + 1];
        c[deg] = field.one();
        Poly { field, coeffs: c }
    }

    pub fn constant(field: FieldRef, c: FqElement) -> Self {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn from_coeffs(field: FieldRef, coeffs: Vec<FqElement>) -> Self {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    /// Polynomial over a prime field from integer coefficients, constant first.
    pub fn from_ints(field: FieldRef, coeffs: &[u64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_int(n)).collect();
        Poly::from_coeffs(field, c)
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if self.field.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FqElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub(crate) fn check_field(&self, other: &Poly) -> Result<(), GaloisError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GaloisError::FieldMismatch)
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) if self.field.is_one(l) => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FqElement) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    fn add_impl(&self, other: &Poly, subtract: bool) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                if subtract {
                    f.sub(a, b)
                } else {
                    f.add(a, b)
                }
            })
            .collect();
        Poly::from_coeffs(f.clone(), c)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(f.clone(), c)
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, GaloisError> {
        self.check_field(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, GaloisError> {
        self.check_field(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn try_divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), GaloisError> {
        self.check_field(divisor)?;
        let f = &self.field;
        let Some(dd) = divisor.degree() else {
            return Err(GaloisError::DivisionByZero);
        };
        let lead_inv = f.inv(divisor.leading().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = f.mul(&r[top], &lead_inv);
            let shift = top - dd;
            if !f.is_zero(&c) {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, d));
                }
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|x| f.is_zero(x)) {
                r.pop();
            }
        }
        Ok((Poly::from_coeffs(f.clone(), q), Poly::from_coeffs(f.clone(), r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.try_divmod(divisor).expect("nonzero divisor").1
    }

    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.try_divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn try_gcd(&self, other: &Poly) -> Result<Poly, GaloisError> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.try_divmod(&b)?.1;
            a = std::mem::replace(&mut b, r);
        }
        Ok(a.monic())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        self.try_gcd(other).expect("same base field")
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.scale(a, (i as u64 % f.characteristic() as u64) as u32))
            .collect();
        Poly::from_coeffs(f.clone(), c)
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus)
    }

    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(self.field.clone()).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// `self^q mod modulus` with `q` the order of the coefficient field,
    /// computed as `k` successive `p`-th powers.
    pub fn frobenius_mod(&self, modulus: &Poly) -> Poly {
        let p = BigUint::from(self.field.characteristic());
        let mut acc = self.rem(modulus);
        for _ in 0..self.field.degree() {
            acc = acc.pow_mod(&p, modulus);
        }
        acc
    }

    /// Evaluates at a point of the coefficient field.
    pub fn eval(&self, x: &FqElement) -> FqElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Image of the polynomial under a coefficient map into another field,
    /// evaluated at `x` in that field.
    pub fn eval_mapped<F>(&self, target: &FieldRef, map: F, x: &FqElement) -> FqElement
    where
        F: Fn(&FqElement) -> FqElement,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(target.zero(), |acc, c| target.add(&target.mul(&acc, x), &map(c)))
    }

    pub fn parse(field: FieldRef, s: &str) -> Result<Poly, GaloisError> {
        let expr = text::parse(s)?;
        let unit = Poly::zero(field.clone());
        let z = (field.degree() > 1).then(|| Poly::constant(field.clone(), field.generator()));
        Ok(expr.eval(&unit, &|v: &str| match v {
            "T" | "X" | "x" | "t" => Some(Poly::x(field.clone())),
            "z" => z.clone(),
            _ => None,
        })?)
    }

    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let coeff = self.field.format_element(c);
            parts.push(text::term(&coeff, &text::monomial(var, i)));
        }
        parts.join("+")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("T"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("base field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_field(rhs).expect("base field mismatch");
        self.add_impl(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("base field mismatch")
    }
}

impl ExprRing for Poly {
    fn zero(&self) -> Self {
        Poly::zero(self.field.clone())
    }
    fn from_int(&self, n: u64) -> Self {
        Poly::constant(self.field.clone(), self.field.from_int(n))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
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
    fn char_two_cancellation() {
        assert_eq!(&f2("T^2+T") + &f2("T^2+1"), f2("T+1"));
    }

    #[test]
    fn gcd_is_monic() {
        assert_eq!(f2("T^2+T").gcd(&f2("T^2+1")), f2("T+1"));
        let r = poly_arith(&f2("T^2+T"), &f2("T^2+1"), PolyOp::Gcd).unwrap();
        assert_eq!(r, PolyArith::Single(f2("T+1")));
    }

    #[test]
    fn exact_division_over_f4() {
        let (_, r) = f4("T^8+T^6+T^5+T^3+1")
            .try_divmod(&f4("T^4+z*T^2+(z+1)*T+(z+1)"))
            .unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(
            f2("T").try_divmod(&f2("0")).unwrap_err(),
            GaloisError::DivisionByZero
        );
        assert_eq!(f2("T").try_add(&f4("T")).unwrap_err(), GaloisError::FieldMismatch);
        assert!(Poly::parse(FqField::prime(2).unwrap(), "z*T").is_err());
    }

    #[test]
    fn formatting_round_trips() {
        let s = "T^4+z*T^2+(z+1)*T+(z+1)";
        assert_eq!(f4(s).to_string(), s);
        assert_eq!(f2("T^8+T^6+T^5+T^3+1").to_string(), "T^8+T^6+T^5+T^3+1");
        let f3 = FqField::prime(3).unwrap();
        assert_eq!(Poly::parse(f3, "2*T^2-1").unwrap().to_string(), "2*T^2+2");
    }

    #[test]
    fn derivative_in_char_two() {
        assert_eq!(f2("T^3+T^2+T").derivative(), f2("T^2+1"));
    }
}
