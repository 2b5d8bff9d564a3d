//! Artin–Schreier tower algebras over `F_2(T)`: square-free generator
//! monomials with `F_2[T]` numerators and one common denominator.

mod auto;
mod element;
mod spec;
mod xpoly;

pub use auto::{
    auto_omega, auto_phi1, auto_psi, auto_sigma, auto_tau, resolve_delta, Automorphism,
};
pub use element::TowerElement;
pub use spec::{integral_as_root, load, preset, TowerSpec, MAX_GENERATORS, PRESET_NAMES};
pub use xpoly::{
    certify_irreducible, conjugate_product, different_is_trivial, min_poly, min_poly_base,
    BaseXPoly, Certificate, XPoly,
};

use thiserror::Error;

use crate::galois::GaloisError;
use crate::text::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("elements belong to different towers")]
    SpecMismatch,
    #[error("invalid tower spec: {0}")]
    Spec(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("automorphism violates a relation: {0}")]
    RelationViolated(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not an Artin–Schreier quadratic: {0}")]
    NotArtinSchreier(String),
    #[error("coefficient outside F_2(T): {0}")]
    NonRational(String),
    #[error("no linear dependence within the dimension bound")]
    DimensionExceeded,
    #[error("no integral root of X^2+X+({0})")]
    NoIntegralRoot(String),
    #[error("inconsistent tower data: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
