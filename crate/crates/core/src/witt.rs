//! Truncated Witt vectors `W_N(F_p)`, computed through `W_N(F_p) ≅ Z/p^N`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::galois::fp::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("operands have different (p, N)")]
    ContextMismatch,
    #[error("p^N does not fit in 64 bits (p = {p}, N = {n})")]
    Overflow { p: u32, n: usize },
    #[error("closed-form oracle only covers p = 2 and k <= 2")]
    Unsupported,
    #[error("coordinate {0} is not reduced mod p")]
    BadDigit(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVector {
    p: u32,
    coords: Vec<u32>,
}

impl Serialize for WittVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn modulus(p: u32, n: usize) -> Result<u128, WittError> {
    if !is_prime(p as u64) {
        return Err(WittError::NotPrime(p));
    }
    let m = (p as u128)
        .checked_pow(n as u32)
        .filter(|&m| m <= u64::MAX as u128)
        .ok_or(WittError::Overflow { p, n })?;
    Ok(m)
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Teichmüller representative of `a mod p` in `Z/m`, `m` a power of `p`:
/// iterate `r <- r^p` until it stops moving.
fn teichmuller_residue(a: u128, p: u32, m: u128) -> u128 {
    let mut r = a % m;
    loop {
        let next = pow_mod(r, p as u128, m);
        if next == r {
            return r;
        }
        r = next;
    }
}

impl WittVector {
    pub fn new(p: u32, coords: Vec<u32>) -> Result<Self, WittError> {
        modulus(p, coords.len())?;
        if let Some(&c) = coords.iter().find(|&&c| c >= p) {
            return Err(WittError::BadDigit(c));
        }
        Ok(WittVector { p, coords })
    }

    pub fn zero(p: u32, n: usize) -> Result<Self, WittError> {
        Self::new(p, vec![0; n])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Image in `Z/p^N`: `Σ χ(x_i) p^i`.
    pub fn to_integer(&self) -> u64 {
        let n = self.coords.len();
        let m = modulus(self.p, n).expect("checked at construction");
        let mut acc = 0u128;
        let mut pi = 1u128;
        for &c in &self.coords {
            acc = (acc + teichmuller_residue(c as u128, self.p, m) * pi) % m;
            pi *= self.p as u128;
        }
        acc as u64
    }

    fn check(&self, other: &WittVector) -> Result<(), WittError> {
        if self.p != other.p || self.coords.len() != other.coords.len() {
            return Err(WittError::ContextMismatch);
        }
        Ok(())
    }
}

/// `χ(a) = (a, 0, …, 0)`.
pub fn teichmuller(a: u32, p: u32, n: usize) -> Result<WittVector, WittError> {
    let mut coords = vec![0; n];
    if n > 0 {
        coords[0] = a % p;
    }
    WittVector::new(p, coords)
}

/// Witt coordinates of `n mod p^N`: peel off the Teichmüller digit of the
/// residue, subtract it, divide by `p`, and repeat at one less precision.
pub fn from_integer(n: u64, p: u32, len: usize) -> Result<WittVector, WittError> {
    let m = modulus(p, len)?;
    let mut r = n as u128 % m;
    let mut cur = m;
    let mut coords = Vec::with_capacity(len);
    for _ in 0..len {
        let digit = (r % p as u128) as u32;
        let t = teichmuller_residue(digit as u128, p, cur);
        r = (r + cur - t) % cur / p as u128;
        cur /= p as u128;
        coords.push(digit);
    }
    Ok(WittVector { p, coords })
}

/// `from_integer` for an arbitrary-size non-negative integer.
pub fn from_biguint(n: &BigUint, p: u32, len: usize) -> Result<WittVector, WittError> {
    let m = modulus(p, len)?;
    let r = (n % BigUint::from(m)).to_u64().expect("below p^N");
    from_integer(r, p, len)
}

fn binary(
    x: &WittVector,
    y: &WittVector,
    op: impl Fn(u128, u128, u128) -> u128,
) -> Result<WittVector, WittError> {
    x.check(y)?;
    let m = modulus(x.p, x.len())?;
    let v = op(x.to_integer() as u128, y.to_integer() as u128, m);
    from_integer(v as u64, x.p, x.len())
}

pub fn witt_add(x: &WittVector, y: &WittVector) -> Result<WittVector, WittError> {
    binary(x, y, |a, b, m| (a + b) % m)
}

pub fn witt_mul(x: &WittVector, y: &WittVector) -> Result<WittVector, WittError> {
    binary(x, y, |a, b, m| a * b % m)
}

/// First `k ≤ 2` coordinates of `x + y` over `F_2` from the Witt addition
/// polynomials `S_0 = x_0 + y_0`, `S_1 = x_1 + y_1 + x_0 y_0`.
pub fn witt_formula_oracle(x: &WittVector, y: &WittVector, k: usize) -> Result<Vec<u32>, WittError> {
    x.check(y)?;
    if x.p != 2 || k > 2 || k > x.len() {
        return Err(WittError::Unsupported);
    }
    let (a, b) = (&x.coords, &y.coords);
    let s = [(a[0] + b[0]) % 2, (a.get(1).unwrap_or(&0) + b.get(1).unwrap_or(&0) + a[0] * b[0]) % 2];
    Ok(s[..k].to_vec())
}
