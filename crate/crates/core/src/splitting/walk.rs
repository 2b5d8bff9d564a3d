use std::sync::Arc;

use crate::galois::{
    extend_by_artin_schreier, extend_by_irreducible, F2Poly, FieldRef, FqElement,
};
use crate::tower::{BaseXPoly, TowerSpec};

use super::{base_field, PrimeOfBase, SplittingError, SplittingType};

/// The residue field `F_q[T]/(P)` as a flat field over `F_2`, with the images
/// of `T` and (for `q = 4`) of the generator `ζ` of `F_4`.
#[derive(Clone, Debug)]
pub struct ResidueData {
    pub field: FieldRef,
    pub t: FqElement,
    pub zeta: Option<FqElement>,
}

impl ResidueData {
    pub fn of(prime: &PrimeOfBase) -> Result<Self, SplittingError> {
        let q = prime.q();
        let base = base_field(q)?;
        let zeta = (q == 4).then(|| base.generator());
        if prime.degree() == 1 {
            // T + c: T maps to c in characteristic 2
            let t = prime.poly().coeff(0);
            return Ok(ResidueData { field: base, t, zeta });
        }
        let ext = extend_by_irreducible(&base, prime.poly())?;
        let zeta = zeta.map(|z| ext.embedding.apply(&z));
        Ok(ResidueData {
            field: ext.field,
            t: ext.root,
            zeta,
        })
    }
}

struct Branch {
    field: FieldRef,
    t: FqElement,
    gens: Vec<FqElement>,
}

fn eval_dense(field: &FieldRef, dense: &[F2Poly], t: &FqElement, gens: &[FqElement]) -> FqElement {
    let mut monos = Vec::with_capacity(dense.len());
    monos.push(field.one());
    for m in 1..dense.len() {
        let top = (usize::BITS - 1 - m.leading_zeros()) as usize;
        let rest = m & !(1 << top);
        monos.push(field.mul(&monos[rest], &gens[top]));
    }
    dense
        .iter()
        .zip(&monos)
        .filter(|(c, _)| !c.is_zero())
        .fold(field.zero(), |acc, (c, m)| {
            field.add(&acc, &field.mul(&c.eval(field, t), m))
        })
}

/// Splitting type of `prime` in the full algebra of `spec`, found by walking
/// the Artin–Schreier layers over the residue field. Each layer either splits
/// every branch in two or extends its residue field by degree 2.
///
/// Over `F_4(T)` the first generator is taken as the constant `ζ`.
pub fn splitting_type_tower(
    spec: &Arc<TowerSpec>,
    prime: &PrimeOfBase,
) -> Result<SplittingType, SplittingError> {
    let res = ResidueData::of(prime)?;
    if prime.q() == 4 && !spec.constant(0).is_one() {
        return Err(SplittingError::NoConstantLayer);
    }
    let mut branches = vec![Branch {
        field: res.field.clone(),
        t: res.t.clone(),
        gens: res.zeta.iter().cloned().collect(),
    }];
    let start = branches[0].gens.len();
    for i in start..spec.generator_count() {
        let dense = spec.constant_dense(i);
        let mut next = Vec::with_capacity(branches.len() * 2);
        for br in branches {
            let c = eval_dense(&br.field, dense, &br.t, &br.gens);
            let roots = br.field.artin_schreier_roots(&c)?;
            if roots.is_empty() {
                let ext = extend_by_artin_schreier(&br.field, &c)?;
                let e = &ext.embedding;
                let mut gens: Vec<FqElement> = br.gens.iter().map(|g| e.apply(g)).collect();
                gens.push(ext.root);
                next.push(Branch {
                    t: e.apply(&br.t),
                    field: ext.field,
                    gens,
                });
            } else {
                for r in roots {
                    let mut gens = br.gens.clone();
                    gens.push(r);
                    next.push(Branch {
                        field: br.field.clone(),
                        t: br.t.clone(),
                        gens,
                    });
                }
            }
        }
        branches = next;
    }
    let base_deg = res.field.degree();
    Ok(SplittingType::new(
        branches.iter().map(|b| b.field.degree() / base_deg).collect(),
    ))
}

/// Dedekind–Kummer: the factor degrees of `h mod P` when that reduction is
/// squarefree, `None` otherwise.
pub fn splitting_type_dedekind(
    h: &BaseXPoly,
    prime: &PrimeOfBase,
) -> Result<Option<SplittingType>, SplittingError> {
    if !h.is_integral() || !h.is_monic() {
        return Err(SplittingError::NonMonic);
    }
    let res = ResidueData::of(prime)?;
    let red = h
        .reduce_at(&res.field, &res.t)
        .ok_or(SplittingError::NonMonic)?;
    let fac = red.factor()?;
    if !fac.is_squarefree() {
        return Ok(None);
    }
    Ok(Some(SplittingType::new(fac.degrees())))
}
