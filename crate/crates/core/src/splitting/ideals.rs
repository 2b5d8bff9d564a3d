use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::galois::{monic_up_to, primes_up_to, Poly};

use super::{base_field, FieldDesc, PrimeOfBase, SplittingError, SplittingType};

/// `C(m)` for `m = 0..=max_m`: the number of primes above the base prime with
/// inertia degree `m`. Index 0 is always 0.
pub fn prime_power_counts(st: &SplittingType, max_m: usize) -> Vec<u64> {
    let mut c = vec![0u64; max_m + 1];
    for &f in st.degrees() {
        if f <= max_m {
            c[f] += 1;
        }
    }
    c
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of ideals of norm `P^m` above one base prime: a sum over ways of
/// writing `m = Σ a_i m_i` with distinct part sizes `m_i` and multiplicities
/// `a_i ≥ 1`, each contributing `Π binom(C(m_i) + a_i - 1, a_i)`.
pub fn b_prime_power(c: &[u64], m: usize) -> BigUint {
    fn rec(c: &[u64], remaining: usize, max_size: usize) -> BigUint {
        if remaining == 0 {
            return BigUint::one();
        }
        let mut total = BigUint::zero();
        for s in (1..=max_size.min(remaining)).rev() {
            let cs = c.get(s).copied().unwrap_or(0);
            if cs == 0 {
                continue;
            }
            let mut a = 1;
            while s * a <= remaining {
                let ways = binomial(cs + a as u64 - 1, a as u64);
                total += ways * rec(c, remaining - s * a, s - 1);
                a += 1;
            }
        }
        total
    }
    rec(c, m, m)
}

fn decimal<S: Serializer>(b: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealCountRow {
    pub f: String,
    pub degree: usize,
    /// `B(f) mod p`.
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B", serialize_with = "decimal")]
    pub b: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealCountTable {
    pub field: String,
    pub base_q: u32,
    pub max_deg: usize,
    pub p: u64,
    pub rows: Vec<IdealCountRow>,
}

impl IdealCountTable {
    pub fn row(&self, f: &str) -> Option<&IdealCountRow> {
        self.rows.iter().find(|r| r.f == f)
    }
}

/// `B(f)` for every monic `f` of degree `≤ max_deg`, multiplicative over the
/// factorization of `f`, with `A(f) = B(f) mod p`.
pub fn ideal_count_table(
    k: &FieldDesc,
    max_deg: usize,
    p: u64,
) -> Result<IdealCountTable, SplittingError> {
    let base = base_field(k.base_q())?;
    let primes = primes_up_to(base.clone(), max_deg);
    let types: Vec<SplittingType> = primes
        .par_iter()
        .map(|q| k.splitting_type(&PrimeOfBase::trusted(q.clone())))
        .collect::<Result<_, _>>()?;
    let lookup: HashMap<Poly, Vec<u64>> = primes
        .into_iter()
        .zip(types)
        .map(|(q, st)| (q, prime_power_counts(&st, max_deg)))
        .collect();
    let rows = monic_up_to(base, max_deg)
        .par_iter()
        .map(|f| {
            let fac = f.factor()?;
            let mut b = BigUint::one();
            for (q, e) in &fac.factors {
                b *= b_prime_power(&lookup[q], *e);
            }
            let a = (&b % p).to_u64().unwrap();
            Ok(IdealCountRow {
                f: f.to_string(),
                degree: f.degree().unwrap(),
                a,
                b,
            })
        })
        .collect::<Result<Vec<_>, SplittingError>>()?;
    Ok(IdealCountTable {
        field: k.id().to_string(),
        base_q: k.base_q(),
        max_deg,
        p,
        rows,
    })
}

/// Counts ideals of norm exactly `f` by enumerating multisets of primes of
/// `K` above the prime factors of `f`.
pub fn brute_force_ideal_count(k: &FieldDesc, f: &Poly) -> Result<BigUint, SplittingError> {
    let fac = f.factor()?;
    // one entry per prime of K: (index of base prime, inertia degree)
    let mut uppers: Vec<(usize, usize)> = Vec::new();
    let mut target: Vec<usize> = Vec::new();
    for (i, (q, e)) in fac.factors.iter().enumerate() {
        let st = k.splitting_type(&PrimeOfBase::trusted(q.clone()))?;
        uppers.extend(st.degrees().iter().map(|&d| (i, d)));
        target.push(*e);
    }
    fn rec(uppers: &[(usize, usize)], remaining: &mut [usize]) -> BigUint {
        let Some((&(i, d), rest)) = uppers.split_first() else {
            return if remaining.iter().all(|&r| r == 0) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        };
        let mut total = BigUint::zero();
        let saved = remaining[i];
        let mut n = 0;
        while n * d <= saved {
            remaining[i] = saved - n * d;
            total += rec(rest, remaining);
            n += 1;
        }
        remaining[i] = saved;
        total
    }
    Ok(rec(&uppers, &mut target))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coefficient of `x^m` in `Π_j (1 - x^j)^{-C(j)}` by power series.
    fn series_oracle(c: &[u64], m: usize) -> BigUint {
        let mut s = vec![BigUint::zero(); m + 1];
        s[0] = BigUint::one();
        for (j, &cj) in c.iter().enumerate().skip(1) {
            for _ in 0..cj {
                // multiply by 1/(1 - x^j)
                for n in j..=m {
                    let prev = s[n - j].clone();
                    s[n] += prev;
                }
            }
        }
        s[m].clone()
    }

    #[test]
    fn b_matches_series() {
        let shapes = [
            vec![1, 1, 1, 1, 1, 1, 1, 1],
            vec![8],
            vec![4, 4],
            vec![2, 2, 2, 2],
            vec![1, 1, 2, 2, 2],
            vec![1, 1, 1, 1, 2, 2],
            vec![1, 3],
        ];
        for shape in shapes {
            let st = SplittingType::new(shape);
            let c = prime_power_counts(&st, 12);
            for m in 0..=12 {
                assert_eq!(b_prime_power(&c, m), series_oracle(&c, m), "{st} m={m}");
            }
        }
    }

    #[test]
    fn totally_split_counts_are_binomial() {
        let c = prime_power_counts(&SplittingType::new(vec![1; 8]), 5);
        for m in 0..=5u64 {
            assert_eq!(b_prime_power(&c, m as usize), binomial(m + 7, 7));
        }
    }
}
