use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::galois::primes_up_to;

use super::{base_field, FieldDesc, PrimeOfBase, SplitCache, SplittingError, SplittingType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRecord {
    pub prime: String,
    pub degree: usize,
    pub k: SplittingType,
    pub l: SplittingType,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub k: String,
    pub l: String,
    pub base_q: u32,
    pub max_deg: usize,
    pub records: Vec<PrimeRecord>,
}

impl SweepReport {
    pub fn mismatches(&self) -> Vec<&PrimeRecord> {
        self.records.iter().filter(|r| r.k != r.l).collect()
    }

    pub fn all_equal(&self) -> bool {
        self.records.iter().all(|r| r.k == r.l)
    }
}

fn primes(q: u32, max_deg: usize) -> Result<Vec<PrimeOfBase>, SplittingError> {
    Ok(primes_up_to(base_field(q)?, max_deg)
        .into_iter()
        .map(PrimeOfBase::trusted)
        .collect())
}

fn cached_type(
    k: &FieldDesc,
    p: &PrimeOfBase,
    cache: Option<&SplitCache>,
) -> Result<SplittingType, SplittingError> {
    let name = p.to_string();
    if let Some(st) = cache.and_then(|c| c.get(k.id(), k.base_q(), &name)) {
        return Ok(st);
    }
    let st = k.splitting_type(p)?;
    if let Some(c) = cache {
        c.insert(k.id(), k.base_q(), &name, &st)?;
    }
    Ok(st)
}

/// Splitting types of every prime of degree `≤ max_deg` in `k` and `l`, in
/// prime enumeration order.
pub fn equivalence_sweep(
    k: &FieldDesc,
    l: &FieldDesc,
    max_deg: usize,
    cache: Option<&SplitCache>,
) -> Result<SweepReport, SplittingError> {
    if k.base_q() != l.base_q() {
        return Err(SplittingError::DifferentBases);
    }
    let records = primes(k.base_q(), max_deg)?
        .par_iter()
        .map(|p| {
            Ok(PrimeRecord {
                prime: p.to_string(),
                degree: p.degree(),
                k: cached_type(k, p, cache)?,
                l: cached_type(l, p, cache)?,
            })
        })
        .collect::<Result<Vec<_>, SplittingError>>()?;
    Ok(SweepReport {
        k: k.id().to_string(),
        l: l.id().to_string(),
        base_q: k.base_q(),
        max_deg,
        records,
    })
}

/// `(prime degree, splitting type)` for every prime of degree `≤ max_deg`.
pub fn chebotarev_counts(
    k: &FieldDesc,
    max_deg: usize,
    cache: Option<&SplitCache>,
) -> Result<Vec<(usize, SplittingType)>, SplittingError> {
    primes(k.base_q(), max_deg)?
        .par_iter()
        .map(|p| Ok((p.degree(), cached_type(k, p, cache)?)))
        .collect()
}

/// Relative frequency of each splitting type among primes of degree
/// `≤ max_deg`.
pub fn chebotarev_frequencies(
    k: &FieldDesc,
    max_deg: usize,
    cache: Option<&SplitCache>,
) -> Result<BTreeMap<SplittingType, f64>, SplittingError> {
    let counts = chebotarev_counts(k, max_deg, cache)?;
    let n = counts.len() as f64;
    let mut freq = BTreeMap::new();
    for (_, st) in counts {
        *freq.entry(st).or_insert(0.0) += 1.0 / n;
    }
    Ok(freq)
}
