//! Polynomials in `X` over the tower algebra and over `F_2(T)`, minimal
//! polynomials and conjugate products.

use std::fmt;
use std::sync::Arc;

use super::{TowerElement, TowerError, TowerSpec};
use crate::galois::{enumerate_irreducible, F2Poly, FieldRef, FqField, Poly};
use crate::text::{self, ExprRing};

/// Polynomial in `X` with tower coefficients, constant term first.
#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    spec: Arc<TowerSpec>,
    coeffs: Vec<TowerElement>,
}

impl XPoly {
    pub fn new(spec: &Arc<TowerSpec>, mut coeffs: Vec<TowerElement>) -> Self {
        while coeffs.last().is_some_and(TowerElement::is_zero) {
            coeffs.pop();
        }
        XPoly {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// `X^2 + X + c`.
    pub fn artin_schreier(c: &TowerElement) -> Self {
        let spec = c.spec();
        let one = TowerElement::one(spec);
        XPoly::new(spec, vec![c.clone(), one.clone(), one])
    }

    /// Parses a polynomial in `X` whose coefficients use the tower names.
    pub fn parse(spec: &Arc<TowerSpec>, s: &str) -> Result<Self, TowerError> {
        let e = text::parse(s)?;
        let unit = XPoly::new(spec, Vec::new());
        Ok(e.eval(&unit, &|v: &str| {
            if v == "X" {
                Some(XPoly::new(
                    spec,
                    vec![TowerElement::zero(spec), TowerElement::one(spec)],
                ))
            } else {
                spec.element(v).map(|c| XPoly::new(spec, vec![c]))
            }
        })?)
    }

    pub fn coeffs(&self) -> &[TowerElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(TowerElement::is_one)
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = TowerElement::zero(&self.spec);
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        XPoly::new(&self.spec, c)
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return XPoly::new(&self.spec, Vec::new());
        }
        let mut c = vec![TowerElement::zero(&self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        XPoly::new(&self.spec, c)
    }

    pub fn eval(&self, x: &TowerElement) -> TowerElement {
        self.coeffs
            .iter()
            .rev()
            .fold(TowerElement::zero(&self.spec), |acc, c| &(&acc * x) + c)
    }

    /// The same polynomial over `F_2(T)`; fails if a coefficient involves a
    /// generator.
    pub fn to_base(&self) -> Result<BaseXPoly, TowerError> {
        let mut rats = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            match c.as_scalar() {
                Some(r) => rats.push(r),
                None => {
                    return Err(TowerError::NonRational(format!(
                        "coefficient of X^{i} is {c}"
                    )))
                }
            }
        }
        Ok(BaseXPoly::from_rationals(&rats))
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.coeffs.len())
            .rev()
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| text::term(&self.coeffs[i].to_string(), &text::monomial("X", i)))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly({self})")
    }
}

impl ExprRing for XPoly {
    fn zero(&self) -> Self {
        XPoly::new(&self.spec, Vec::new())
    }
    fn from_int(&self, n: u64) -> Self {
        XPoly::new(
            &self.spec,
            vec![TowerElement::scalar(&self.spec, F2Poly::from_bits(n & 1))],
        )
    }
    fn add(&self, other: &Self) -> Self {
        XPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        XPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        XPoly::mul(self, other)
    }
}

/// Polynomial in `X` over `F_2(T)`: `sum coeffs[i]/den X^i`, constant first,
/// with `gcd(den, coeffs) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseXPoly {
    coeffs: Vec<F2Poly>,
    den: F2Poly,
}

impl BaseXPoly {
    pub fn from_integral(mut coeffs: Vec<F2Poly>) -> Self {
        while coeffs.last().is_some_and(F2Poly::is_zero) {
            coeffs.pop();
        }
        BaseXPoly {
            coeffs,
            den: F2Poly::one(),
        }
    }

    pub fn from_rationals(rats: &[(F2Poly, F2Poly)]) -> Self {
        let mut den = F2Poly::one();
        for (_, d) in rats {
            let g = den.gcd(d);
            den = &den * &d.div_exact(&g);
        }
        let coeffs: Vec<F2Poly> = rats
            .iter()
            .map(|(n, d)| n * &den.div_exact(d))
            .collect();
        let mut p = BaseXPoly::from_integral(coeffs);
        p.den = den;
        p.reduce();
        p
    }

    fn reduce(&mut self) {
        let mut g = self.den.clone();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() && !g.is_zero() {
            self.coeffs.iter_mut().for_each(|c| *c = c.div_exact(&g));
            self.den = self.den.div_exact(&g);
        }
    }

    /// Parses a polynomial in `X` with `F_2[T]` coefficients.
    pub fn parse(s: &str) -> Result<Self, TowerError> {
        let e = text::parse(s)?;
        Ok(e.eval(&BaseXPoly::from_integral(Vec::new()), &|v: &str| match v {
            "X" => Some(BaseXPoly::from_integral(vec![F2Poly::zero(), F2Poly::one()])),
            "T" => Some(BaseXPoly::from_integral(vec![F2Poly::t()])),
            _ => None,
        })?)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.den)
    }

    pub fn denominator(&self) -> &F2Poly {
        &self.den
    }

    /// Numerators, constant term first.
    pub fn numerators(&self) -> &[F2Poly] {
        &self.coeffs
    }

    /// `(num, den)` of the coefficient of `X^i`, reduced.
    pub fn coeff(&self, i: usize) -> (F2Poly, F2Poly) {
        let n = self.coeffs.get(i).cloned().unwrap_or_default();
        if n.is_zero() {
            return (n, F2Poly::one());
        }
        let g = n.gcd(&self.den);
        (n.div_exact(&g), self.den.div_exact(&g))
    }

    pub fn mul(&self, other: &BaseXPoly) -> BaseXPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return BaseXPoly::from_integral(Vec::new());
        }
        let mut c = vec![F2Poly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j].add_assign(&(a * b));
            }
        }
        let mut p = BaseXPoly::from_integral(c);
        p.den = &self.den * &other.den;
        p.reduce();
        p
    }

    pub fn add(&self, other: &BaseXPoly) -> BaseXPoly {
        let g = self.den.gcd(&other.den);
        let fa = other.den.div_exact(&g);
        let fb = self.den.div_exact(&g);
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = other.coeffs.get(i).cloned().unwrap_or_default();
                &(&a * &fa) + &(&b * &fb)
            })
            .collect();
        let mut p = BaseXPoly::from_integral(c);
        p.den = &self.den * &fa;
        p.reduce();
        p
    }

    /// Image over the residue field `F_2[T]/(P)`, with `T` sent to `t`.
    /// `None` when the denominator vanishes there.
    pub fn reduce_at(&self, field: &FieldRef, t: &crate::galois::FqElement) -> Option<Poly> {
        let d = self.den.eval(field, t);
        let dinv = field.inv(&d).ok()?;
        let c = self
            .coeffs
            .iter()
            .map(|c| field.mul(&c.eval(field, t), &dinv))
            .collect();
        Some(Poly::from_coeffs(field.clone(), c))
    }

    /// `X^2 + X + c` has derivative 1 in characteristic 2; layers of this
    /// shape have trivial different.
    pub fn is_artin_schreier(&self) -> bool {
        self.degree() == Some(2) && self.coeffs[2] == self.den && self.coeffs[1] == self.den
    }
}

impl fmt::Display for BaseXPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.coeffs.len())
            .rev()
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| {
                let (n, d) = self.coeff(i);
                let c = if d.is_one() {
                    n.to_string()
                } else {
                    format!("({n})/({d})")
                };
                text::term(&c, &text::monomial("X", i))
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

impl fmt::Debug for BaseXPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseXPoly({self})")
    }
}

impl ExprRing for BaseXPoly {
    fn zero(&self) -> Self {
        BaseXPoly::from_integral(Vec::new())
    }
    fn from_int(&self, n: u64) -> Self {
        BaseXPoly::from_integral(vec![F2Poly::from_bits(n & 1)])
    }
    fn add(&self, other: &Self) -> Self {
        BaseXPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        BaseXPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        BaseXPoly::mul(self, other)
    }
}

/// Expands a product of polynomials and checks that every coefficient lies
/// in `F_2(T)`.
pub fn conjugate_product(factors: &[XPoly]) -> Result<BaseXPoly, TowerError> {
    let Some(first) = factors.first() else {
        return Ok(BaseXPoly::from_integral(vec![F2Poly::one()]));
    };
    let mut acc = first.clone();
    for f in &factors[1..] {
        acc = acc.mul(f);
    }
    acc.to_base()
}

/// Checks that a quadratic layer is of the form `X^2 + X + c`, whose
/// derivative is 1.
pub fn different_is_trivial(layer: &XPoly) -> Result<bool, TowerError> {
    let c = layer.coeffs();
    if layer.degree() != Some(2) || !c[2].is_one() || !c[1].is_one() {
        return Err(TowerError::NotArtinSchreier(layer.to_string()));
    }
    Ok(true)
}

fn subset_mask(spec: &TowerSpec, subfield: &[&str]) -> Result<usize, TowerError> {
    let mut mask = 0;
    for name in subfield {
        let i = spec
            .generator_index(name)
            .ok_or_else(|| TowerError::UnknownElement(name.to_string()))?;
        mask |= 1 << i;
    }
    Ok(mask)
}

/// Coordinates of `x` in the basis of monomials outside `mask`, as elements
/// of the subalgebra spanned by monomials inside `mask`.
fn coordinates(x: &TowerElement, mask: usize) -> Vec<TowerElement> {
    let spec = x.spec();
    let n = spec.dimension();
    (0..n)
        .filter(|c| c & mask == 0)
        .map(|c| {
            let mut num = vec![F2Poly::zero(); n];
            for s in (0..n).filter(|s| s & !mask == 0) {
                num[s] = x.numerators()[s | c].clone();
            }
            TowerElement::from_parts(spec.clone(), num, x.denominator().clone())
        })
        .collect()
}

fn strip_content(row: &mut [TowerElement]) {
    let mut g = F2Poly::zero();
    for e in row.iter() {
        for c in e.numerators() {
            if !c.is_zero() {
                g = if g.is_zero() { c.clone() } else { g.gcd(c) };
                if g.is_one() {
                    return;
                }
            }
        }
    }
    if g.is_zero() {
        return;
    }
    for e in row.iter_mut() {
        let num = e.numerators().iter().map(|c| c.div_exact(&g)).collect();
        *e = TowerElement::from_parts(e.spec().clone(), num, F2Poly::one());
    }
}

/// Minimal polynomial of `e` over the subfield generated by the named
/// generators (empty: over `F_2(T)`). The subfield must be closed under its
/// own relations. Linear dependence among `1, e, e^2, ...` is found by
/// fraction-free elimination; the first dependence wins.
pub fn min_poly(e: &TowerElement, subfield: &[&str]) -> Result<XPoly, TowerError> {
    let spec = e.spec();
    let mask = subset_mask(spec, subfield)?;
    for i in 0..spec.generator_count() {
        if mask >> i & 1 == 1 && spec.constant(i).support_mask() & !mask != 0 {
            return Err(TowerError::Spec(format!(
                "generators {subfield:?} do not span a subalgebra"
            )));
        }
    }
    let rows = spec.dimension() >> mask.count_ones();
    let one = TowerElement::one(spec);
    let mut powers = vec![one.clone()];
    for n in 1..=rows {
        powers.push(&powers[n - 1] * e);
        // integral columns w_j = den_j * v_j
        let cols: Vec<Vec<TowerElement>> = powers
            .iter()
            .map(|p| {
                let d = TowerElement::scalar(spec, p.denominator().clone());
                coordinates(&(p * &d), mask)
            })
            .collect();
        let mut m: Vec<Vec<TowerElement>> = (0..rows)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..=n {
            let Some(found) = (pr..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pr, found);
            let pivot_row = m[pr].clone();
            let pv = pivot_row[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == pr || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &(&*x * &pv) + &(&f * y);
                }
                strip_content(row);
            }
            pivots.push(col);
            pr += 1;
        }
        if pivots.contains(&n) || pivots.len() < n {
            continue;
        }
        // column n = sum_j y_j column j; v_n = sum_j (y_j den_j / den_n) v_j
        let dn = TowerElement::scalar(spec, powers[n].denominator().clone());
        let mut coeffs = Vec::with_capacity(n + 1);
        for (j, pj) in powers.iter().take(n).enumerate() {
            let y = m[j][n].try_div(&m[j][j])?;
            let dj = TowerElement::scalar(spec, pj.denominator().clone());
            coeffs.push((&y * &dj).try_div(&dn)?);
        }
        coeffs.push(one);
        return Ok(XPoly::new(spec, coeffs));
    }
    Err(TowerError::DimensionExceeded)
}

/// Minimal polynomial over `F_2(T)`.
pub fn min_poly_base(e: &TowerElement) -> Result<BaseXPoly, TowerError> {
    min_poly(e, &[])?.to_base()
}

/// Outcome of the reduction test for irreducibility over `F_2(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Reductions (prime, factor degrees) that leave no room for a proper factor.
    Irreducible(Vec<(String, Vec<usize>)>),
    /// Degrees of a proper factor not excluded by any reduction up to the bound.
    Inconclusive(Vec<usize>),
}

/// Any factor of `h` over `F_2(T)` reduces to a product of some of the
/// irreducible factors modulo each good prime, so its degree is a subset sum
/// of every squarefree reduction's factor degrees. Primes of degree up to
/// `max_prime_deg` are tried until no proper degree survives.
pub fn certify_irreducible(h: &BaseXPoly, max_prime_deg: usize) -> Result<Certificate, TowerError> {
    let n = h.degree().ok_or(TowerError::DimensionExceeded)?;
    if !h.is_integral() || !h.is_monic() {
        return Err(TowerError::Spec("certificate needs a monic integral polynomial".into()));
    }
    let mut possible: Vec<bool> = (0..=n).map(|d| d > 0 && d < n).collect();
    let mut witnesses = Vec::new();
    let f2 = FqField::prime(2)?;
    for d in 1..=max_prime_deg {
        for prime in enumerate_irreducible(f2.clone(), d) {
            if !possible.iter().any(|&b| b) {
                return Ok(Certificate::Irreducible(witnesses));
            }
            let modulus: Vec<u32> = prime.coeffs().iter().map(|c| c.coeffs()[0]).collect();
            let k = FqField::new(2, modulus)?;
            let t = if k.degree() == 1 {
                // F_2[T]/(T + c) sends T to c
                k.from_int(prime.coeff(0).coeffs()[0] as u64)
            } else {
                k.generator()
            };
            let Some(red) = h.reduce_at(&k, &t) else {
                continue;
            };
            let fac = red.factor()?;
            if !fac.is_squarefree() {
                continue;
            }
            let degs = fac.degrees();
            let mut sums = vec![false; n + 1];
            sums[0] = true;
            for &dg in &degs {
                for s in (dg..=n).rev() {
                    if sums[s - dg] {
                        sums[s] = true;
                    }
                }
            }
            let before = possible.clone();
            for (p, s) in possible.iter_mut().zip(&sums) {
                *p &= *s;
            }
            if possible != before {
                witnesses.push((prime.to_string(), degs));
            }
        }
    }
    if !possible.iter().any(|&b| b) {
        return Ok(Certificate::Irreducible(witnesses));
    }
    Ok(Certificate::Inconclusive(
        (0..=n).filter(|&d| possible[d]).collect(),
    ))
}
