//! Finite field extensions given by an irreducible polynomial over an
//! existing field, flattened to a single modulus over `F_p`.

use super::fp;
use super::{FieldRef, FqElement, FqField, GaloisError, Poly};

/// Ring embedding `source -> target`, determined by the image of the source
/// generator `u`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldRef,
    target: FieldRef,
    gen_image: FqElement,
}

impl Embedding {
    pub fn identity(field: FieldRef) -> Self {
        Embedding {
            gen_image: field.generator(),
            source: field.clone(),
            target: field,
        }
    }

    pub fn source(&self) -> &FieldRef {
        &self.source
    }

    pub fn target(&self) -> &FieldRef {
        &self.target
    }

    pub fn apply(&self, a: &FqElement) -> FqElement {
        let t = &self.target;
        if self.source.degree() == 1 {
            return t.from_int(a.0[0] as u64);
        }
        a.0.iter().rev().fold(t.zero(), |acc, &c| {
            t.add(&t.mul(&acc, &self.gen_image), &t.from_int(c as u64))
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        Embedding {
            source: self.source.clone(),
            target: next.target.clone(),
            gen_image: next.apply(&self.gen_image),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub field: FieldRef,
    pub embedding: Embedding,
    /// Image of `X`, a root of the defining polynomial.
    pub root: FqElement,
}

/// Builds `F[X]/(P)` for monic irreducible `P`. The primitive element
/// `X + λu` is tried for `λ` in enumeration order.
pub fn extend_by_irreducible(base: &FieldRef, poly: &Poly) -> Result<Extension, GaloisError> {
    if poly.field() != base {
        return Err(GaloisError::FieldMismatch);
    }
    let d = match poly.degree() {
        None | Some(0) => return Err(GaloisError::ConstantPolynomial),
        Some(d) => d,
    };
    let poly = poly.monic();
    let k = base.degree();
    let p = base.characteristic();
    let n = k * d;
    let x = Poly::x(base.clone()).rem(&poly);
    let u = Poly::constant(base.clone(), base.generator());
    let flatten = |a: &Poly| -> Vec<u32> {
        (0..d).flat_map(|i| a.coeff(i).0).collect()
    };
    let candidates: Box<dyn Iterator<Item = FqElement>> = if k == 1 {
        Box::new(std::iter::once(base.zero()))
    } else {
        Box::new(base.elements())
    };
    for lambda in candidates {
        let theta = &x + &u.scale(&lambda);
        let mut powers = Vec::with_capacity(n + 1);
        let mut cur = Poly::one(base.clone());
        for _ in 0..=n {
            powers.push(flatten(&cur));
            cur = cur.mul_mod(&theta, &poly);
        }
        let basis = &powers[..n];
        if fp::rank(basis, p) < n {
            continue;
        }
        let rel = fp::solve_columns(basis, &powers[n], p).expect("full-rank basis");
        let mut modulus: Vec<u32> = rel.iter().map(|&c| (p - c) % p).collect();
        modulus.push(1);
        let field = FqField::new_unchecked(p, modulus);
        let coords = |a: &Poly| -> FqElement {
            FqElement(fp::solve_columns(basis, &flatten(a), p).expect("full-rank basis"))
        };
        let gen_image = if k == 1 { field.zero() } else { coords(&u) };
        let root = coords(&x);
        return Ok(Extension {
            embedding: Embedding {
                source: base.clone(),
                target: field.clone(),
                gen_image,
            },
            field,
            root,
        });
    }
    if poly.is_irreducible()? {
        Err(GaloisError::SearchExhausted)
    } else {
        Err(GaloisError::Reducible(poly.to_string()))
    }
}

/// Adjoins a root of `X^2 + X + c` when `c` has absolute trace 1.
pub fn extend_by_artin_schreier(base: &FieldRef, c: &FqElement) -> Result<Extension, GaloisError> {
    if base.characteristic() != 2 {
        return Err(GaloisError::NotCharacteristicTwo);
    }
    if base.trace(c) == 0 {
        return Err(GaloisError::TraceZero);
    }
    let poly = Poly::from_coeffs(base.clone(), vec![c.clone(), base.one(), base.one()]);
    extend_by_irreducible(base, &poly)
}
