use std::sync::Arc;

use super::{TowerElement, TowerError, TowerSpec};

/// A ring endomorphism of the tower algebra fixing `F_2(T)`, given by the
/// images of the generators.
#[derive(Clone, Debug)]
pub struct Automorphism {
    spec: Arc<TowerSpec>,
    images: Vec<TowerElement>,
    monomials: Vec<TowerElement>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Automorphism {
    /// Validates `img(g)^2 + img(g) = img(c_g)` for every generator.
    pub fn new(spec: &Arc<TowerSpec>, images: Vec<TowerElement>) -> Result<Self, TowerError> {
        if images.len() != spec.generator_count() {
            return Err(TowerError::Spec("one image per generator required".into()));
        }
        let n = spec.dimension();
        let mut monomials = Vec::with_capacity(n);
        monomials.push(TowerElement::one(spec));
        for m in 1..n {
            let top = usize::BITS - 1 - m.leading_zeros();
            let rest = m & !(1 << top);
            monomials.push(&monomials[rest] * &images[top as usize]);
        }
        let auto = Automorphism {
            spec: spec.clone(),
            images,
            monomials,
        };
        let names = spec.generator_names();
        for (i, img) in auto.images.iter().enumerate() {
            let lhs = &img.square() + img;
            let rhs = auto.apply(&spec.constant(i));
            if lhs != rhs {
                return Err(TowerError::RelationViolated(format!(
                    "{} -> {img}: image squared plus image is {lhs}, expected {rhs}",
                    names[i]
                )));
            }
        }
        Ok(auto)
    }

    /// Images given as `(generator, expression)` pairs; unlisted generators
    /// are fixed.
    pub fn from_map(spec: &Arc<TowerSpec>, map: &[(&str, &str)]) -> Result<Self, TowerError> {
        let mut images: Vec<TowerElement> = (0..spec.generator_count())
            .map(|i| TowerElement::generator(spec, i))
            .collect();
        for (name, expr) in map {
            let i = spec
                .generator_index(name)
                .ok_or_else(|| TowerError::UnknownElement(name.to_string()))?;
            images[i] = spec.eval(expr)?;
        }
        Self::new(spec, images)
    }

    pub fn identity(spec: &Arc<TowerSpec>) -> Self {
        Self::from_map(spec, &[]).expect("identity respects relations")
    }

    pub fn images(&self) -> &[TowerElement] {
        &self.images
    }

    pub fn apply(&self, e: &TowerElement) -> TowerElement {
        let mut acc = TowerElement::zero(&self.spec);
        for (m, c) in e.numerators().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.monomials[m].scale(c);
            }
        }
        if e.is_integral() {
            acc
        } else {
            let inv = TowerElement::rational(&self.spec, crate::galois::F2Poly::one(), e.denominator().clone())
                .expect("nonzero denominator");
            &acc * &inv
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let images = other.images.iter().map(|e| self.apply(e)).collect();
        Automorphism::new(&self.spec, images).expect("composition of automorphisms")
    }

    pub fn pow(&self, n: usize) -> Automorphism {
        let mut acc = Automorphism::identity(&self.spec);
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, e)| *e == TowerElement::generator(&self.spec, i))
    }

    /// Smallest `n >= 1` with `self^n = id`, searched up to `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Some(n);
            }
            acc = self.compose(&acc);
        }
        None
    }

    /// Size of the orbit of `e` under `self`, searched up to `bound`.
    pub fn orbit_length(&self, e: &TowerElement, bound: usize) -> Option<usize> {
        let mut cur = self.apply(e);
        for n in 1..=bound {
            if cur == *e {
                return Some(n);
            }
            cur = self.apply(&cur);
        }
        None
    }
}

/// `φ_1` on a tower containing `z, aT, aT3, a, b` and the root `g`.
pub fn auto_phi1(spec: &Arc<TowerSpec>) -> Result<Automorphism, TowerError> {
    spec.require("g")?;
    Automorphism::from_map(
        spec,
        &[("z", "z+1"), ("aT", "aT+1"), ("a", "a+aT+1"), ("b", "b+g+a+T")],
    )
}

/// `ψ_l` for `l ∈ {1,3,5,7}`: fixes `z, a, b` and moves `aT`, `aT3`.
pub fn auto_psi(spec: &Arc<TowerSpec>, l: u32) -> Result<Automorphism, TowerError> {
    let map: &[(&str, &str)] = match l {
        1 => &[],
        3 => &[("aT", "aT+1"), ("aT3", "aT3+1")],
        5 => &[("aT3", "aT3+1")],
        7 => &[("aT", "aT+1")],
        _ => return Err(TowerError::Spec(format!("no ψ_{l}"))),
    };
    Automorphism::from_map(spec, map)
}

/// `τ`, `σ`, `ω` on a tower containing `z, aT, a` (and `aT3` for `ω`).
pub fn auto_tau(spec: &Arc<TowerSpec>) -> Result<Automorphism, TowerError> {
    Automorphism::from_map(spec, &[("aT", "aT+1")])
}

pub fn auto_sigma(spec: &Arc<TowerSpec>) -> Result<Automorphism, TowerError> {
    Automorphism::from_map(spec, &[("a", "a+aT"), ("z", "z+1"), ("aT", "aT+1")])
}

pub fn auto_omega(spec: &Arc<TowerSpec>) -> Result<Automorphism, TowerError> {
    Automorphism::from_map(spec, &[("aT3", "aT3+1")])
}

/// The bit `δ` with `φ_1(γ) = γ + α + T + δ`, for the root `g` fixed by the
/// spec.
pub fn resolve_delta(spec: &Arc<TowerSpec>) -> Result<u8, TowerError> {
    let g = spec
        .element("g")
        .ok_or_else(|| TowerError::UnknownElement("g".into()))?;
    let phi = auto_phi1(spec)?;
    let image = phi.apply(&g);
    let base = &(&g + &spec.require("a")?) + &TowerElement::t(spec);
    let one = TowerElement::one(spec);
    let hits: Vec<u8> = [0u8, 1]
        .into_iter()
        .filter(|&d| {
            let cand = if d == 0 { base.clone() } else { &base + &one };
            cand == image
        })
        .collect();
    match hits.as_slice() {
        [d] => Ok(*d),
        _ => Err(TowerError::Inconsistent(format!("φ_1(g) = {image}"))),
    }
}
