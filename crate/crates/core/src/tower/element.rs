use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use super::{TowerError, TowerSpec};
use crate::galois::F2Poly;
use crate::text::{self, ExprRing};

/// `num / den` with `num` a dense array of `F_2[T]` coefficients indexed by
/// square-free generator monomials (bit `i` of the index is generator `i`).
#[derive(Clone)]
pub struct TowerElement {
    spec: Arc<TowerSpec>,
    num: Vec<F2Poly>,
    den: F2Poly,
}

pub(crate) fn is_zero_slice(a: &[F2Poly]) -> bool {
    a.iter().all(F2Poly::is_zero)
}

fn is_scalar_slice(a: &[F2Poly]) -> bool {
    is_zero_slice(&a[1..])
}

pub(crate) fn add_slices(a: &[F2Poly], b: &[F2Poly]) -> Vec<F2Poly> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale_slice(a: &[F2Poly], s: &F2Poly) -> Vec<F2Poly> {
    a.iter().map(|x| x * s).collect()
}

/// Product of two integral arrays of length `2^level`, reduced with the
/// relations of the first `level` generators.
pub(crate) fn imul(spec: &TowerSpec, a: &[F2Poly], b: &[F2Poly]) -> Vec<F2Poly> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n == 1 {
        return vec![&a[0] * &b[0]];
    }
    if is_scalar_slice(a) {
        return scale_slice(b, &a[0]);
    }
    if is_scalar_slice(b) {
        return scale_slice(a, &b[0]);
    }
    let half = n / 2;
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let a1z = is_zero_slice(a1);
    let b1z = is_zero_slice(b1);
    let mut out = Vec::with_capacity(n);
    if a1z && b1z {
        out.extend(imul(spec, a0, b0));
        out.extend(std::iter::repeat(F2Poly::zero()).take(half));
    } else if a1z {
        out.extend(imul(spec, a0, b0));
        out.extend(imul(spec, a0, b1));
    } else if b1z {
        out.extend(imul(spec, a0, b0));
        out.extend(imul(spec, a1, b0));
    } else {
        // (a0 + a1 g)(b0 + b1 g) with g^2 = g + c
        let c = spec.constant_dense(half.trailing_zeros() as usize);
        let m0 = imul(spec, a0, b0);
        let m2 = imul(spec, a1, b1);
        let m1 = imul(spec, &add_slices(a0, a1), &add_slices(b0, b1));
        out.extend(add_slices(&m0, &imul(spec, &m2, c)));
        out.extend(add_slices(&m1, &m0));
    }
    out
}

/// Inverse of a nonzero integral array: returns `(num, den)` with
/// `a * num = den`.
fn iinv(spec: &TowerSpec, a: &[F2Poly]) -> Result<(Vec<F2Poly>, F2Poly), TowerError> {
    let n = a.len();
    if n == 1 {
        if a[0].is_zero() {
            return Err(TowerError::DivisionByZero);
        }
        return Ok((vec![F2Poly::one()], a[0].clone()));
    }
    if is_scalar_slice(a) {
        if a[0].is_zero() {
            return Err(TowerError::DivisionByZero);
        }
        let mut v = vec![F2Poly::zero(); n];
        v[0] = F2Poly::one();
        return Ok((v, a[0].clone()));
    }
    let half = n / 2;
    let (a0, a1) = a.split_at(half);
    if is_zero_slice(a1) {
        let (inv0, d) = iinv(spec, a0)?;
        let mut v = inv0;
        v.extend(std::iter::repeat(F2Poly::zero()).take(half));
        return Ok((v, d));
    }
    // conjugate (a0 + a1) + a1 g, norm a0(a0 + a1) + a1^2 c
    let c = spec.constant_dense(half.trailing_zeros() as usize);
    let s = add_slices(a0, a1);
    let norm = add_slices(&imul(spec, a0, &s), &imul(spec, &imul(spec, a1, a1), c));
    if is_zero_slice(&norm) {
        return Err(TowerError::DivisionByZero);
    }
    let (ninv, d) = iinv(spec, &norm)?;
    let mut v = imul(spec, &s, &ninv);
    v.extend(imul(spec, a1, &ninv));
    Ok((v, d))
}

impl TowerElement {
    pub(crate) fn from_parts(spec: Arc<TowerSpec>, num: Vec<F2Poly>, den: F2Poly) -> Self {
        debug_assert_eq!(num.len(), spec.dimension());
        let mut e = TowerElement { spec, num, den };
        e.normalize();
        e
    }

    pub fn zero(spec: &Arc<TowerSpec>) -> Self {
        TowerElement {
            num: vec![F2Poly::zero(); spec.dimension()],
            den: F2Poly::one(),
            spec: spec.clone(),
        }
    }

    pub fn one(spec: &Arc<TowerSpec>) -> Self {
        Self::scalar(spec, F2Poly::one())
    }

    pub fn scalar(spec: &Arc<TowerSpec>, c: F2Poly) -> Self {
        let mut e = Self::zero(spec);
        e.num[0] = c;
        e
    }

    pub fn rational(spec: &Arc<TowerSpec>, num: F2Poly, den: F2Poly) -> Result<Self, TowerError> {
        if den.is_zero() {
            return Err(TowerError::DivisionByZero);
        }
        let mut e = Self::zero(spec);
        e.num[0] = num;
        e.den = den;
        e.normalize();
        Ok(e)
    }

    pub fn t(spec: &Arc<TowerSpec>) -> Self {
        Self::scalar(spec, F2Poly::t())
    }

    /// Generator number `i`.
    pub fn generator(spec: &Arc<TowerSpec>, i: usize) -> Self {
        let mut e = Self::zero(spec);
        e.num[1 << i] = F2Poly::one();
        e
    }

    /// The monomial with index `mask`.
    pub fn monomial(spec: &Arc<TowerSpec>, mask: usize) -> Self {
        let mut e = Self::zero(spec);
        e.num[mask] = F2Poly::one();
        e
    }

    fn normalize(&mut self) {
        if is_zero_slice(&self.num) {
            self.den = F2Poly::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = c.div_exact(&g);
            }
            self.den = self.den.div_exact(&g);
        }
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub fn numerators(&self) -> &[F2Poly] {
        &self.num
    }

    pub fn denominator(&self) -> &F2Poly {
        &self.den
    }

    pub fn coeff(&self, mask: usize) -> (F2Poly, F2Poly) {
        (self.num[mask].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        is_zero_slice(&self.num)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && is_scalar_slice(&self.num)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((num, den))` when the element lies in `F_2(T)`.
    pub fn as_scalar(&self) -> Option<(F2Poly, F2Poly)> {
        is_scalar_slice(&self.num).then(|| (self.num[0].clone(), self.den.clone()))
    }

    /// Bitmask of the generators that occur in some nonzero monomial.
    pub fn support_mask(&self) -> usize {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0, |acc, (m, _)| acc | m)
    }

    fn check(&self, other: &TowerElement) -> Result<(), TowerError> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(TowerError::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &TowerElement) -> Result<TowerElement, TowerError> {
        self.check(other)?;
        if self.den == other.den {
            return Ok(Self::from_parts(
                self.spec.clone(),
                add_slices(&self.num, &other.num),
                self.den.clone(),
            ));
        }
        let g = self.den.gcd(&other.den);
        let fa = other.den.div_exact(&g);
        let fb = self.den.div_exact(&g);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| &(x * &fa) + &(y * &fb))
            .collect();
        Ok(Self::from_parts(self.spec.clone(), num, &self.den * &fa))
    }

    pub fn try_mul(&self, other: &TowerElement) -> Result<TowerElement, TowerError> {
        self.check(other)?;
        let num = imul(&self.spec, &self.num, &other.num);
        Ok(Self::from_parts(self.spec.clone(), num, &self.den * &other.den))
    }

    pub fn scale(&self, c: &F2Poly) -> TowerElement {
        Self::from_parts(self.spec.clone(), scale_slice(&self.num, c), self.den.clone())
    }

    pub fn square(&self) -> TowerElement {
        self * self
    }

    pub fn inv(&self) -> Result<TowerElement, TowerError> {
        if self.is_zero() {
            return Err(TowerError::DivisionByZero);
        }
        let (n, d) = iinv(&self.spec, &self.num)?;
        let num = scale_slice(&n, &self.den);
        Ok(Self::from_parts(self.spec.clone(), num, d))
    }

    pub fn try_div(&self, other: &TowerElement) -> Result<TowerElement, TowerError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u64) -> TowerElement {
        let mut acc = Self::one(&self.spec);
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = acc.square();
            if (e >> i) & 1 == 1 {
                acc = &acc * self;
            }
        }
        acc
    }

    /// Rewrites the element in another spec with the same generator
    /// relations (for example a spec extended by derived elements).
    pub fn rebase(&self, spec: &Arc<TowerSpec>) -> Result<TowerElement, TowerError> {
        if spec.dimension() != self.spec.dimension() {
            return Err(TowerError::SpecMismatch);
        }
        Ok(TowerElement {
            spec: spec.clone(),
            num: self.num.clone(),
            den: self.den.clone(),
        })
    }

    pub fn format(&self) -> String {
        let names = self.spec.generator_names();
        let mut parts = Vec::new();
        for m in (0..self.num.len()).rev() {
            let c = &self.num[m];
            if c.is_zero() {
                continue;
            }
            let mono: Vec<&str> = (0..names.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| names[i].as_str())
                .collect();
            parts.push(text::term(&c.to_string(), &mono.join("*")));
        }
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        };
        if self.den.is_one() {
            body
        } else if parts.len() > 1 || body.contains('+') {
            format!("({body})/({})", self.den)
        } else {
            format!("{body}/({})", self.den)
        }
    }
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for TowerElement {}

impl std::hash::Hash for TowerElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerElement({})", self.format())
    }
}

impl Add for &TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &TowerElement) -> TowerElement {
        self.try_add(rhs).expect("tower spec mismatch")
    }
}

impl Mul for &TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &TowerElement) -> TowerElement {
        self.try_mul(rhs).expect("tower spec mismatch")
    }
}

impl ExprRing for TowerElement {
    fn zero(&self) -> Self {
        TowerElement::zero(&self.spec)
    }
    fn from_int(&self, n: u64) -> Self {
        TowerElement::scalar(&self.spec, F2Poly::from_bits(n & 1))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn pow(&self, e: u32) -> Self {
        TowerElement::pow(self, e as u64)
    }
}
