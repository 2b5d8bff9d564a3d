//! Splitting types of finite primes of `F_q[T]` (`q = 2, 4`) in tower fields
//! and polynomial fields, ideal counting, and equivalence sweeps.

mod cache;
mod ideals;
mod sweep;
mod walk;

pub use cache::SplitCache;
pub use ideals::{
    b_prime_power, brute_force_ideal_count, ideal_count_table, prime_power_counts, IdealCountRow,
    IdealCountTable,
};
pub use sweep::{chebotarev_counts, chebotarev_frequencies, equivalence_sweep, PrimeRecord, SweepReport};
pub use walk::{splitting_type_dedekind, splitting_type_tower, ResidueData};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{FieldRef, FqField, GaloisError, Poly};
use crate::tower::{BaseXPoly, TowerError, TowerSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingError {
    #[error("base of the prime (F_{prime}) does not match the field (F_{field})")]
    BaseMismatch { prime: u32, field: u32 },
    #[error("unsupported base field F_{0}; use 2 or 4")]
    UnsupportedBase(u32),
    #[error("{0} is not a monic irreducible polynomial")]
    NotPrime(String),
    #[error("defining polynomial must be monic with coefficients in F_2[T]")]
    NonMonic,
    #[error("reduction modulo {0} is not squarefree; splitting type inconclusive")]
    Inconclusive(String),
    #[error("tower over F_4(T) must start with the layer z^2 = z + 1")]
    NoConstantLayer,
    #[error("fields have different bases")]
    DifferentBases,
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

/// Sorted inertia degrees of the primes above a base prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingType(Vec<usize>);

impl SplittingType {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        SplittingType(degrees)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The base field `F_q` for `q ∈ {2, 4}` with its conventional modulus.
pub fn base_field(q: u32) -> Result<FieldRef, SplittingError> {
    match q {
        2 => Ok(FqField::prime(2)?),
        4 => Ok(FqField::conventional(2, 2)?),
        _ => Err(SplittingError::UnsupportedBase(q)),
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// A monic irreducible polynomial of `F_q[T]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeOfBase {
    poly: Poly,
}

impl PrimeOfBase {
    pub fn new(poly: Poly) -> Result<Self, SplittingError> {
        if !poly.is_monic() || !poly.is_irreducible().unwrap_or(false) {
            return Err(SplittingError::NotPrime(poly.to_string()));
        }
        let q = poly.field().order_u128();
        if q != Some(2) && q != Some(4) {
            return Err(SplittingError::UnsupportedBase(q.unwrap_or(0) as u32));
        }
        Ok(PrimeOfBase { poly })
    }

    /// Skips the irreducibility check for polynomials from a prime enumeration.
    pub(crate) fn trusted(poly: Poly) -> Self {
        PrimeOfBase { poly }
    }

    pub fn parse(q: u32, s: &str) -> Result<Self, SplittingError> {
        let f = base_field(q)?;
        Self::new(Poly::parse(f, s)?)
    }

    pub fn q(&self) -> u32 {
        self.poly.field().order_u128().unwrap() as u32
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }
}

impl fmt::Display for PrimeOfBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// A field over `F_q(T)`: the full algebra of a tower, or the field defined by
/// a monic separable polynomial over `F_2[T]`.
#[derive(Clone, Debug)]
pub enum FieldKind {
    Tower(Arc<TowerSpec>),
    Polynomial(BaseXPoly),
}

#[derive(Clone, Debug)]
pub struct FieldDesc {
    kind: FieldKind,
    base_q: u32,
    id: String,
}

impl FieldDesc {
    /// Over `F_4(T)` the first generator must be `z` with `z^2 = z + 1`; it
    /// becomes the constant field.
    pub fn tower(spec: Arc<TowerSpec>, base_q: u32) -> Result<Self, SplittingError> {
        base_field(base_q)?;
        if base_q == 4 {
            let c = spec.constant(0);
            if !c.is_one() {
                return Err(SplittingError::NoConstantLayer);
            }
        }
        let id = format!("{}#{:016x}", spec.name(), fnv1a(spec.to_text().as_bytes()));
        Ok(FieldDesc {
            kind: FieldKind::Tower(spec),
            base_q,
            id,
        })
    }

    pub fn polynomial(h: BaseXPoly, base_q: u32) -> Result<Self, SplittingError> {
        base_field(base_q)?;
        if !h.is_integral() || !h.is_monic() {
            return Err(SplittingError::NonMonic);
        }
        let id = format!("poly:{h}");
        Ok(FieldDesc {
            kind: FieldKind::Polynomial(h),
            base_q,
            id,
        })
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn base_q(&self) -> u32 {
        self.base_q
    }

    /// Identifier used in cache records.
    pub fn id(&self) -> &str {
        &self.id
    }

    /// Degree over `F_q(T)`.
    pub fn degree(&self) -> usize {
        match &self.kind {
            FieldKind::Tower(spec) => {
                let k = spec.generator_count() - usize::from(self.base_q == 4);
                1 << k
            }
            FieldKind::Polynomial(h) => h.degree().unwrap_or(0),
        }
    }

    pub fn splitting_type(&self, prime: &PrimeOfBase) -> Result<SplittingType, SplittingError> {
        if prime.q() != self.base_q {
            return Err(SplittingError::BaseMismatch {
                prime: prime.q(),
                field: self.base_q,
            });
        }
        match &self.kind {
            FieldKind::Tower(spec) => splitting_type_tower(spec, prime),
            FieldKind::Polynomial(h) => splitting_type_dedekind(h, prime)?
                .ok_or_else(|| SplittingError::Inconclusive(prime.to_string())),
        }
    }
}
