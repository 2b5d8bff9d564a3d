//! Finite fields `F_{p^k}`, polynomials over them, factorization and
//! enumeration of monic polynomials.

mod enumerate;
mod extension;
mod f2x;
mod factor;
mod field;
pub(crate) mod fp;
mod poly;

pub use enumerate::{
    enumerate_irreducible, enumerate_monic, enumerate_monic_iter, monic_up_to, primes_up_to,
};
pub use extension::{extend_by_artin_schreier, extend_by_irreducible, Embedding, Extension};
pub use f2x::F2Poly;
pub use factor::{enumeration_cmp, squarefree_decomposition, Factorization, DEFAULT_SEED};
pub use field::{FieldRef, FqElement, FqField};
pub use poly::{poly_arith, Poly, PolyArith, PolyOp};

use thiserror::Error;

use crate::text::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree at least 1")]
    NotMonic,
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("operands live over different base fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("operation requires characteristic 2")]
    NotCharacteristicTwo,
    #[error("X^2+X+c has roots in the base field (trace of c is 0)")]
    TraceZero,
    #[error("primitive element search exhausted")]
    SearchExhausted,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
