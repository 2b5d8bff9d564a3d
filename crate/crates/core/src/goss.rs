//! Laurent series in `π = 1/T`, the exponential `f^s` on `S_∞`, and lifted
//! zeta coefficient tables.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::galois::{monic_up_to, primes_up_to, FieldRef, FqElement, Poly};
use crate::splitting::{
    ideal_count_table, FieldDesc, PrimeOfBase, SplittingError,
};
use crate::witt::{from_biguint, WittError, WittVector};

pub const DEFAULT_PRECISION: usize = 32;
pub const DEFAULT_DIGITS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GossError {
    #[error("zero has no canonical decomposition")]
    Zero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("not a 1-unit: {0}")]
    NotOneUnit(String),
    #[error("series is not invertible at this precision")]
    NotInvertible,
    #[error("series over different fields")]
    FieldMismatch,
    #[error("p-adic digit {0} out of range")]
    BadDigit(u32),
    #[error("need |x| > 1 for convergence, got valuation {0}")]
    OutsideConvergence(i64),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error(transparent)]
    Witt(#[from] WittError),
}

/// `π^v (c_0 + c_1 π + …)` known up to (not including) `π^{v + len}`.
/// Nonzero series have `c_0 ≠ 0`; zero is an empty coefficient vector whose
/// `v` records the precision.
#[derive(Clone)]
pub struct LaurentSeries {
    field: FieldRef,
    v: i64,
    coeffs: Vec<FqElement>,
}

impl LaurentSeries {
    pub fn new(field: &FieldRef, v: i64, coeffs: Vec<FqElement>) -> Self {
        let skip = coeffs.iter().take_while(|c| field.is_zero(c)).count();
        LaurentSeries {
            field: field.clone(),
            v: v + skip as i64,
            coeffs: coeffs[skip..].to_vec(),
        }
    }

    /// The zero series known below `π^cutoff`.
    pub fn zero(field: &FieldRef, cutoff: i64) -> Self {
        LaurentSeries {
            field: field.clone(),
            v: cutoff,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldRef, prec: usize) -> Self {
        Self::monomial(field, 0, prec)
    }

    /// `π^e` with relative precision `prec`.
    pub fn monomial(field: &FieldRef, e: i64, prec: usize) -> Self {
        let mut coeffs = vec![field.zero(); prec];
        if prec > 0 {
            coeffs[0] = field.one();
        }
        Self::new(field, e, coeffs)
    }

    /// Exact expansion of a polynomial in `T = π^{-1}`, padded to `prec`.
    pub fn from_poly(f: &Poly, prec: usize) -> Self {
        let field = f.field();
        let Some(d) = f.degree() else {
            return Self::zero(field, prec as i64);
        };
        let coeffs = (0..prec.max(d + 1))
            .map(|i| if i <= d { f.coeff(d - i) } else { field.zero() })
            .collect();
        let mut s = Self::new(field, -(d as i64), coeffs);
        s.coeffs.truncate(prec.max(1));
        s
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.v)
    }

    /// Relative precision.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// First exponent whose coefficient is unknown.
    pub fn cutoff(&self) -> i64 {
        self.v + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    /// Coefficient of `π^e`, `None` beyond the precision.
    pub fn coeff_at(&self, e: i64) -> Option<FqElement> {
        if e >= self.cutoff() {
            None
        } else if e < self.v {
            Some(self.field.zero())
        } else {
            Some(self.coeffs[(e - self.v) as usize].clone())
        }
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(prec);
        s
    }

    /// Keeps coefficients strictly below `π^cutoff`.
    pub fn truncate_abs(&self, cutoff: i64) -> Self {
        if cutoff <= self.v {
            return Self::zero(&self.field, cutoff.min(self.cutoff()));
        }
        self.truncate((cutoff - self.v) as usize)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let cutoff = self.cutoff().min(other.cutoff());
        let v = self.v.min(other.v);
        if cutoff <= v {
            return Self::zero(f, cutoff);
        }
        let coeffs = (v..cutoff)
            .map(|e| f.add(&self.coeff_at(e).unwrap(), &other.coeff_at(e).unwrap()))
            .collect();
        let s = Self::new(f, v, coeffs);
        if s.is_zero() {
            Self::zero(f, cutoff)
        } else {
            s
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            v: self.v,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FqElement) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.cutoff());
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            v: self.v,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f, self.v + other.v);
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, self.v + other.v, out)
    }

    pub fn inv(&self) -> Result<Self, GossError> {
        if self.is_zero() {
            return Err(GossError::NotInvertible);
        }
        let f = &self.field;
        let n = self.coeffs.len();
        let c0inv = f.inv(&self.coeffs[0]).map_err(|_| GossError::NotInvertible)?;
        let mut out: Vec<FqElement> = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for k in 1..n {
            let mut acc = f.zero();
            for i in 1..=k {
                acc = f.add(&acc, &f.mul(&self.coeffs[i], &out[k - i]));
            }
            out.push(f.neg(&f.mul(&acc, &c0inv)));
        }
        Ok(Self::new(f, -self.v, out))
    }

    pub fn pow(&self, e: i64) -> Result<Self, GossError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(&self.field, base.precision().max(1));
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            n >>= 1;
        }
        Ok(acc)
    }

    /// `u^p` in characteristic `p`: coefficients raised to `p`, exponents
    /// scaled by `p`, then truncated back to the relative precision of `u`.
    pub fn frobenius(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as usize;
        if self.is_zero() {
            return Self::zero(f, self.v * p as i64);
        }
        let n = self.coeffs.len();
        let mut out = vec![f.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * p < n {
                out[i * p] = f.pow_u64(c, p as u64);
            }
        }
        Self::new(f, self.v * p as i64, out)
    }

    pub fn is_one_unit(&self) -> bool {
        self.v == 0 && !self.is_zero() && self.field.is_one(&self.coeffs[0])
    }

    /// Equality on the common precision window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let cutoff = self.cutoff().min(other.cutoff());
        let lo = self.v.min(other.v);
        (lo..cutoff).all(|e| self.coeff_at(e) == other.coeff_at(e))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let e = self.v + i as i64;
            let mono = match e {
                0 => String::new(),
                1 => "π".to_string(),
                _ => format!("π^{e}"),
            };
            let coeff = if self.field.is_one(c) && !mono.is_empty() {
                String::new()
            } else {
                let s = self.field.format_element(c);
                if s.contains('+') && !mono.is_empty() {
                    format!("({s})*")
                } else if mono.is_empty() {
                    s
                } else {
                    format!("{s}*")
                }
            };
            terms.push(format!("{coeff}{mono}"));
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(π^{})", terms.join("+"), self.cutoff())
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point `(x, y)` of `S_∞` with `x` a Laurent series and `y` a `p`-adic
/// integer truncated to its first `N` digits.
#[derive(Clone, Debug)]
pub struct SPoint {
    pub x: LaurentSeries,
    pub digits: Vec<u32>,
}

impl SPoint {
    pub fn new(x: LaurentSeries, digits: Vec<u32>) -> Result<Self, GossError> {
        if x.is_zero() {
            return Err(GossError::NotInvertible);
        }
        let p = x.field().characteristic();
        if let Some(&d) = digits.iter().find(|&&d| d >= p) {
            return Err(GossError::BadDigit(d));
        }
        Ok(SPoint { x, digits })
    }

    /// `s_j = (π^{-j}, j)`, with `j < 0` written as the digits of `p^N + j`.
    pub fn integer(field: &FieldRef, j: i64, digits: usize, prec: usize) -> Self {
        let p = field.characteristic() as i128;
        let m = p.pow(digits as u32);
        let mut y = (j as i128).rem_euclid(m);
        let mut ds = Vec::with_capacity(digits);
        for _ in 0..digits {
            ds.push((y % p) as u32);
            y /= p;
        }
        SPoint {
            x: LaurentSeries::monomial(field, -j, prec),
            digits: ds,
        }
    }

    /// Componentwise sum: product of the `x`, sum of the `y` modulo `p^N`.
    pub fn add(&self, other: &SPoint) -> SPoint {
        let p = self.x.field().characteristic();
        let n = self.digits.len().min(other.digits.len());
        let mut carry = 0;
        let digits = (0..n)
            .map(|i| {
                let t = self.digits[i] + other.digits[i] + carry;
                carry = t / p;
                t % p
            })
            .collect();
        SPoint {
            x: self.x.mul(&other.x),
            digits,
        }
    }
}

/// `f = π^{-deg f} ⟨f⟩` for monic `f`; the root-of-unity part is 1.
pub fn canonical_decomposition(f: &Poly, prec: usize) -> Result<(i64, LaurentSeries), GossError> {
    let d = f.degree().ok_or(GossError::Zero)?;
    if !f.is_monic() {
        return Err(GossError::NotMonic);
    }
    let s = LaurentSeries::from_poly(f, prec);
    let unit = LaurentSeries::new(f.field(), 0, s.coeffs().to_vec());
    Ok((-(d as i64), unit))
}

/// `u^y = Π (1 + m^{p^i})^{a_i}` over the available digits `a_i` of `y`.
/// The omitted factors are `1 + O(π^{p^N})`.
pub fn one_unit_power(u: &LaurentSeries, digits: &[u32]) -> Result<LaurentSeries, GossError> {
    if !u.is_one_unit() {
        return Err(GossError::NotOneUnit(u.to_string()));
    }
    let mut acc = LaurentSeries::one(u.field(), u.precision());
    let mut frob = u.clone();
    for &a in digits {
        for _ in 0..a {
            acc = acc.mul(&frob);
        }
        frob = frob.frobenius();
    }
    Ok(acc)
}

/// `f^s = x^{deg f} ⟨f⟩^y`.
pub fn goss_exponent(f: &Poly, s: &SPoint) -> Result<LaurentSeries, GossError> {
    let prec = s.x.precision();
    let (v, unit) = canonical_decomposition(f, prec)?;
    let xpow = s.x.pow(-v)?;
    Ok(xpow.mul(&one_unit_power(&unit, &s.digits)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaRow {
    pub f: String,
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: String,
    pub witt: WittVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaTable {
    pub field: String,
    pub max_deg: usize,
    pub p: u32,
    pub witt_len: usize,
    pub rows: Vec<ZetaRow>,
}

impl ZetaTable {
    /// Rows agree in `f`, `A`, `B` and Witt digits.
    pub fn same_coefficients(&self, other: &ZetaTable) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| {
                a.f == b.f && a.a == b.a && a.b == b.b && a.witt == b.witt
            })
    }

    /// One JSON object per row.
    pub fn to_json_lines(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
            .collect()
    }
}

pub fn zeta_table(k: &FieldDesc, max_deg: usize, p: u32, witt_len: usize) -> Result<ZetaTable, GossError> {
    let table = ideal_count_table(k, max_deg, p as u64)?;
    let rows = table
        .rows
        .iter()
        .map(|r| {
            Ok(ZetaRow {
                f: r.f.clone(),
                a: r.a,
                b: r.b.to_str_radix(10),
                witt: from_biguint(&r.b, p, witt_len)?,
            })
        })
        .collect::<Result<Vec<_>, GossError>>()?;
    Ok(ZetaTable {
        field: table.field,
        max_deg,
        p,
        witt_len,
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct EulerCheck {
    pub sum: LaurentSeries,
    pub product: LaurentSeries,
    /// Both sides are compared strictly below `π^window`.
    pub window: i64,
}

impl EulerCheck {
    pub fn agrees(&self) -> bool {
        self.sum.truncate_abs(self.window).agrees_with(&self.product.truncate_abs(self.window))
            && self.sum.cutoff() >= self.window
            && self.product.cutoff() >= self.window
    }
}

/// `Σ_{deg f ≤ D} A(f) f^{-s}` against `Π_{𝔓} (1 - N𝔓^{-s})^{-1}` over primes
/// of `K` with norm of degree `≤ D`. Terms left out of either side have
/// valuation at least `(D+1)·(-v(x))`, which bounds the comparison window.
pub fn euler_product_check(k: &FieldDesc, s: &SPoint, max_deg: usize) -> Result<EulerCheck, GossError> {
    let vx = s.x.valuation().ok_or(GossError::NotInvertible)?;
    if vx >= 0 {
        return Err(GossError::OutsideConvergence(vx));
    }
    let field = s.x.field().clone();
    let prec = s.x.precision();
    let window = (max_deg as i64 + 1) * -vx;
    let p = field.characteristic();
    let table = ideal_count_table(k, max_deg, p as u64)?;
    let monics = monic_up_to(field.clone(), max_deg);
    let terms = monics
        .par_iter()
        .zip(&table.rows)
        .filter(|(_, r)| r.a != 0)
        .map(|(f, r)| {
            let t = goss_exponent(f, s)?.inv()?;
            Ok(t.scale(&field.from_int(r.a)))
        })
        .collect::<Result<Vec<_>, GossError>>()?;
    let mut sum = LaurentSeries::zero(&field, window);
    for t in terms {
        sum = sum.add(&t.truncate_abs(window));
    }
    let one = LaurentSeries::one(&field, prec);
    let mut product = one.clone();
    for q in primes_up_to(field.clone(), max_deg) {
        let d = q.degree().unwrap();
        let st = k.splitting_type(&PrimeOfBase::trusted(q.clone()))?;
        let qs = goss_exponent(&q, s)?;
        for &fi in st.degrees() {
            if fi * d > max_deg {
                continue;
            }
            let norm = qs.pow(fi as i64)?.inv()?;
            product = product.mul(&one.sub(&norm).inv()?);
        }
    }
    Ok(EulerCheck { sum, product, window })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FqField;

    fn f2() -> FieldRef {
        FqField::prime(2).unwrap()
    }

    fn poly(s: &str) -> Poly {
        Poly::parse(f2(), s).unwrap()
    }

    fn series(f: &FieldRef, v: i64, bits: &[u32], prec: usize) -> LaurentSeries {
        let mut c: Vec<FqElement> = bits.iter().map(|&b| f.from_int(b as u64)).collect();
        c.resize(prec, f.zero());
        LaurentSeries::new(f, v, c)
    }

    #[test]
    fn decompositions() {
        let f = f2();
        let (v, u) = canonical_decomposition(&poly("T^2+T"), 8).unwrap();
        assert_eq!(v, -2);
        assert!(u.agrees_with(&series(&f, 0, &[1, 1], 8)));
        let (v, u) = canonical_decomposition(&poly("T"), 8).unwrap();
        assert_eq!(v, -1);
        assert!(u.agrees_with(&LaurentSeries::one(&f, 8)));
        let (_, u) = canonical_decomposition(&poly("T^2+T+1"), 8).unwrap();
        assert!(u.agrees_with(&series(&f, 0, &[1, 1, 1], 8)));
        assert_eq!(canonical_decomposition(&Poly::zero(f), 8).unwrap_err(), GossError::Zero);
    }

    #[test]
    fn one_unit_powers() {
        let f = f2();
        let u = series(&f, 0, &[1, 1], 8);
        let got = one_unit_power(&u, &[1, 1]).unwrap();
        assert!(got.agrees_with(&series(&f, 0, &[1, 1, 1, 1], 8)));
        assert!(one_unit_power(&u, &[0, 0, 0]).unwrap().agrees_with(&LaurentSeries::one(&f, 8)));
        let one = LaurentSeries::one(&f, 8);
        assert!(one_unit_power(&one, &[1, 0, 1]).unwrap().agrees_with(&one));
        assert!(matches!(
            one_unit_power(&series(&f, 1, &[1], 8), &[1]),
            Err(GossError::NotOneUnit(_))
        ));
    }

    #[test]
    fn integer_points() {
        let f = f2();
        let s2 = SPoint::integer(&f, 2, DEFAULT_DIGITS, DEFAULT_PRECISION);
        let got = goss_exponent(&poly("T"), &s2).unwrap();
        assert!(got.agrees_with(&LaurentSeries::from_poly(&poly("T^2"), DEFAULT_PRECISION)));
        let sm1 = SPoint::integer(&f, -1, DEFAULT_DIGITS, DEFAULT_PRECISION);
        let got = goss_exponent(&poly("T+1"), &sm1).unwrap();
        // 1/(T+1) = π + π^2 + π^3 + …
        let expect = series(&f, 1, &[1; 32], DEFAULT_PRECISION);
        assert!(got.agrees_with(&expect));
        assert_eq!(got.cutoff(), 33);
        let s0 = SPoint::integer(&f, 0, DEFAULT_DIGITS, DEFAULT_PRECISION);
        let got = goss_exponent(&poly("T^3+T+1"), &s0).unwrap();
        assert!(got.agrees_with(&LaurentSeries::one(&f, DEFAULT_PRECISION)));
    }

    #[test]
    fn inverse_and_frobenius() {
        let f = FqField::conventional(2, 2).unwrap();
        let z = f.generator();
        let a = LaurentSeries::new(&f, -1, vec![f.one(), z.clone(), f.one(), f.zero(), z]);
        let prod = a.mul(&a.inv().unwrap());
        assert!(prod.agrees_with(&LaurentSeries::one(&f, 5)));
        assert!(a.frobenius().agrees_with(&a.mul(&a)));
    }

    #[test]
    fn trivial_extension_euler_product() {
        let spec = crate::tower::preset("F2(T)").unwrap();
        let k = FieldDesc::tower(spec, 2).unwrap();
        let x = LaurentSeries::monomial(&f2(), -1, DEFAULT_PRECISION);
        let s = SPoint::new(x, vec![0; DEFAULT_DIGITS]).unwrap();
        let check = euler_product_check(&k, &s, 5).unwrap();
        assert!(check.agrees(), "{:?}", check);
        let check = euler_product_check(&k, &s, 0).unwrap();
        assert!(check.agrees());
        let bad = SPoint::new(LaurentSeries::one(&f2(), 8), vec![0]).unwrap();
        assert!(matches!(
            euler_product_check(&k, &bad, 3),
            Err(GossError::OutsideConvergence(0))
        ));
    }
}
