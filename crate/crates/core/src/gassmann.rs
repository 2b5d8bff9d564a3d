//! Small finite groups as multiplication tables: conjugacy, double cosets,
//! Gassmann equivalence, and the cocycle twist that produces a Gassmann
//! equivalent but non-conjugate subgroup of `C_8 ⋊ (Z/8)^*`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::splitting::SplittingType;

pub const DEFAULT_SEARCH_BOUND: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("subgroups belong to different groups")]
    ParentMismatch,
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("search space of {0} maps exceeds the bound {1}")]
    SearchTooLarge(u64, u64),
    #[error("map is not a 1-cocycle")]
    NotACocycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    id: u64,
}

impl FiniteGroup {
    /// Closes nothing: `elements` must already be closed under `mul`.
    pub fn from_elements<T, F>(elements: &[T], mul: F, name: impl Fn(&T) -> String) -> Result<Self, GroupError>
    where
        T: PartialEq,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        let index = |x: &T| elements.iter().position(|e| e == x);
        let mut table = vec![vec![0; n]; n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i][j] = index(&mul(a, b))
                    .ok_or_else(|| GroupError::NotAGroup("not closed".into()))?;
            }
        }
        let names = elements.iter().map(name).collect();
        Self::from_table(names, table)
    }

    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("{} has no inverse", names[x])))?;
            inverses.push(inv);
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(GroupError::NotAGroup("not associative".into()));
                        }
                    }
                }
            }
        }
        let id = table
            .iter()
            .flatten()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, &x| (h ^ x as u64).wrapping_mul(0x0100_0000_01b3));
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverses,
            id,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        (0..n).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `g a g^{-1}`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            group: self.id,
            elements: (0..self.order()).collect(),
        }
    }

    pub fn subgroup(&self, elements: impl IntoIterator<Item = usize>) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if !set.contains(&self.identity) {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup {
            group: self.id,
            elements: set.into_iter().collect(),
        })
    }

    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            group: self.id,
            elements: set.into_iter().collect(),
        }
    }

    /// All subgroups generated by at most two elements, sorted by order then
    /// elements.
    pub fn two_generated_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = BTreeSet::new();
        for a in 0..self.order() {
            for b in a..self.order() {
                seen.insert(self.generated(&[a, b]).elements);
            }
        }
        let mut out: Vec<Subgroup> = seen
            .into_iter()
            .map(|elements| Subgroup {
                group: self.id,
                elements,
            })
            .collect();
        out.sort_by(|x, y| x.order().cmp(&y.order()).then(x.elements.cmp(&y.elements)));
        out
    }

    /// Conjugacy classes ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for a in 0..self.order() {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.order()).map(|g| self.conjugate(g, a)).collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    fn check(&self, h: &Subgroup) -> Result<(), GroupError> {
        if h.group != self.id {
            return Err(GroupError::ParentMismatch);
        }
        Ok(())
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let set: BTreeSet<usize> = h.elements.iter().map(|&x| self.conjugate(g, x)).collect();
        Subgroup {
            group: self.id,
            elements: set.into_iter().collect(),
        }
    }

    /// `|C ∩ H|` for each conjugacy class `C`, in class order.
    pub fn class_intersections(&self, h: &Subgroup) -> Result<Vec<usize>, GroupError> {
        self.check(h)?;
        Ok(self
            .conjugacy_classes()
            .iter()
            .map(|c| c.iter().filter(|x| h.contains(**x)).count())
            .collect())
    }

    pub fn is_gassmann_equivalent(&self, h1: &Subgroup, h2: &Subgroup) -> Result<bool, GroupError> {
        Ok(self.class_intersections(h1)? == self.class_intersections(h2)?)
    }

    pub fn are_conjugate_subgroups(&self, h1: &Subgroup, h2: &Subgroup) -> Result<bool, GroupError> {
        self.check(h1)?;
        self.check(h2)?;
        if h1.order() != h2.order() {
            return Ok(false);
        }
        Ok((0..self.order()).any(|g| self.conjugate_subgroup(g, h1) == *h2))
    }

    /// Sorted `|H τ C| / |H|` over the double cosets `H\G/C`.
    pub fn coset_type(&self, h: &Subgroup, c: &Subgroup) -> Result<SplittingType, GroupError> {
        self.check(h)?;
        self.check(c)?;
        if !c.elements.iter().any(|&g| self.generated(&[g]) == *c) {
            return Err(GroupError::NotCyclic);
        }
        let mut covered = vec![false; self.order()];
        let mut sizes = Vec::new();
        for tau in 0..self.order() {
            if covered[tau] {
                continue;
            }
            let mut count = 0;
            for &x in &h.elements {
                for &y in &c.elements {
                    let e = self.mul(self.mul(x, tau), y);
                    if !covered[e] {
                        covered[e] = true;
                        count += 1;
                    }
                }
            }
            sizes.push(count / h.order());
        }
        Ok(SplittingType::new(sizes))
    }

    /// Density of each coset type `coset_type(H, ⟨g⟩)` over `g ∈ G`.
    pub fn predicted_densities(&self, h: &Subgroup) -> Result<BTreeMap<SplittingType, Ratio<u64>>, GroupError> {
        self.predicted_densities_on(h, &(0..self.order()).collect::<Vec<_>>())
    }

    /// Same, with `g` uniform on the given subset of `G` (a coset of a normal
    /// subgroup in practice).
    pub fn predicted_densities_on(
        &self,
        h: &Subgroup,
        elements: &[usize],
    ) -> Result<BTreeMap<SplittingType, Ratio<u64>>, GroupError> {
        let mut out = BTreeMap::new();
        let total = elements.len() as u64;
        for &g in elements {
            let st = self.coset_type(h, &self.generated(&[g]))?;
            *out.entry(st).or_insert(Ratio::from_integer(0)) += Ratio::new(1, total);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    group: u64,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// A map `H → A` (as indices into the two groups) satisfying
/// `χ(st) = χ(s)^t · χ(t)` for a right action of `H` on `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub values: Vec<usize>,
}

/// A right action of `H` on the abelian group `A`, as `act[h][a] = a^h`.
#[derive(Clone, Debug)]
pub struct Action<'a> {
    pub h: &'a FiniteGroup,
    pub a: &'a FiniteGroup,
    pub act: Vec<Vec<usize>>,
}

impl Action<'_> {
    pub fn is_cocycle(&self, values: &[usize]) -> bool {
        let (h, a) = (self.h, self.a);
        (0..h.order()).all(|s| {
            (0..h.order()).all(|t| {
                values[h.mul(s, t)] == a.mul(self.act[t][values[s]], values[t])
            })
        })
    }

    pub fn cocycle(&self, values: Vec<usize>) -> Result<Cocycle, GroupError> {
        if values.len() != self.h.order() || !self.is_cocycle(&values) {
            return Err(GroupError::NotACocycle);
        }
        Ok(Cocycle { values })
    }

    /// Some `m` with `χ(s) = m^s · m^{-1}` for all `s` in `on`, if any.
    pub fn coboundary_witness(&self, chi: &Cocycle, on: &[usize]) -> Option<usize> {
        (0..self.a.order()).find(|&m| {
            on.iter().all(|&s| chi.values[s] == self.a.mul(self.act[s][m], self.a.inv(m)))
        })
    }

    pub fn certificate(&self, chi: &Cocycle) -> CocycleCertificate {
        let all: Vec<usize> = (0..self.h.order()).collect();
        let cyclic = (0..self.h.order())
            .map(|g| {
                let sub = self.h.generated(&[g]);
                (g, self.coboundary_witness(chi, sub.elements()))
            })
            .collect();
        CocycleCertificate {
            is_cocycle: self.is_cocycle(&chi.values),
            global_witness: self.coboundary_witness(chi, &all),
            cyclic_witnesses: cyclic,
        }
    }

    /// All cocycles that are not coboundaries but restrict to coboundaries
    /// on every cyclic subgroup, found by enumerating every map `H → A`.
    pub fn search(&self, bound: u64) -> Result<CohomologySearch, GroupError> {
        let (nh, na) = (self.h.order() as u32, self.a.order() as u64);
        let space = na
            .checked_pow(nh)
            .filter(|&s| s <= bound)
            .ok_or(GroupError::SearchTooLarge(na.saturating_pow(nh), bound))?;
        let mut cocycles = 0;
        let mut coboundaries = 0;
        let mut hits = Vec::new();
        let all: Vec<usize> = (0..self.h.order()).collect();
        let cyclics: Vec<Vec<usize>> = (0..self.h.order())
            .map(|g| self.h.generated(&[g]).elements().to_vec())
            .collect();
        let mut values = vec![0usize; nh as usize];
        for mut code in 0..space {
            for v in values.iter_mut() {
                *v = (code % na) as usize;
                code /= na;
            }
            if !self.is_cocycle(&values) {
                continue;
            }
            cocycles += 1;
            let chi = Cocycle { values: values.clone() };
            if self.coboundary_witness(&chi, &all).is_some() {
                coboundaries += 1;
                continue;
            }
            if cyclics.iter().all(|c| self.coboundary_witness(&chi, c).is_some()) {
                hits.push(chi);
            }
        }
        Ok(CohomologySearch {
            maps: space,
            cocycles,
            coboundaries,
            hits,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleCertificate {
    pub is_cocycle: bool,
    pub global_witness: Option<usize>,
    /// `(h, m)` with `χ` a coboundary of `m` on `⟨h⟩`.
    pub cyclic_witnesses: Vec<(usize, Option<usize>)>,
}

impl CocycleCertificate {
    /// Non-trivial in `H^1(H, A)` and trivial in every `H^1(⟨h⟩, A)`.
    pub fn is_locally_trivial_only(&self) -> bool {
        self.is_cocycle
            && self.global_witness.is_none()
            && self.cyclic_witnesses.iter().all(|(_, w)| w.is_some())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologySearch {
    pub maps: u64,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub hits: Vec<Cocycle>,
}

/// `Z/8 ⋊ (Z/8)^*` with `(m,u)(m',u') = (m + u m', u u')`, the normal
/// subgroup `A = {(m,1)}`, the complement `{(0,u)}`, and the cocycle
/// `u ↦ 4` for `u ∈ {3,5}`, `0` otherwise.
#[derive(Clone, Debug)]
pub struct Holomorph8 {
    pub group: FiniteGroup,
    pub pairs: Vec<(u8, u8)>,
    pub a: Subgroup,
    pub section: Subgroup,
    pub units: FiniteGroup,
    pub cyclic8: FiniteGroup,
    pub cocycle: Cocycle,
}

pub const UNITS_MOD_8: [u8; 4] = [1, 3, 5, 7];

fn pair_name(&(m, u): &(u8, u8)) -> String {
    format!("({m},{u})")
}

pub fn build_8t15() -> Holomorph8 {
    let pairs: Vec<(u8, u8)> = (0..8)
        .flat_map(|m| UNITS_MOD_8.iter().map(move |&u| (m, u)))
        .collect();
    let mul = |&(m, u): &(u8, u8), &(m2, u2): &(u8, u8)| ((m + u * m2) % 8, (u * u2) % 8);
    let group = FiniteGroup::from_elements(&pairs, mul, pair_name).expect("holomorph is a group");
    let idx = |p: (u8, u8)| pairs.iter().position(|&q| q == p).unwrap();
    let a = group.subgroup((0..8).map(|m| idx((m, 1)))).unwrap();
    let section = group.subgroup(UNITS_MOD_8.iter().map(|&u| idx((0, u)))).unwrap();
    let units = FiniteGroup::from_elements(&UNITS_MOD_8, |x, y| x * y % 8, |u| format!("ψ{u}")).unwrap();
    let zs: Vec<u8> = (0..8).collect();
    let cyclic8 = FiniteGroup::from_elements(&zs, |x, y| (x + y) % 8, |m| format!("φ{m}")).unwrap();
    let cocycle = Cocycle {
        values: UNITS_MOD_8.iter().map(|&u| if u == 3 || u == 5 { 4 } else { 0 }).collect(),
    };
    Holomorph8 {
        group,
        pairs,
        a,
        section,
        units,
        cyclic8,
        cocycle,
    }
}

impl Holomorph8 {
    pub fn index(&self, m: u8, u: u8) -> usize {
        self.pairs.iter().position(|&q| q == (m % 8, u)).expect("pair in group")
    }

    /// `φ_m^{ψ_u} = φ_{um}`.
    pub fn action(&self) -> Action<'_> {
        let act = UNITS_MOD_8
            .iter()
            .map(|&u| (0..8).map(|m| (u as usize * m) % 8).collect())
            .collect();
        Action {
            h: &self.units,
            a: &self.cyclic8,
            act,
        }
    }

    /// `{(χ(u), u)}`.
    pub fn twisted(&self, chi: &Cocycle) -> Result<Subgroup, GroupError> {
        self.group.subgroup(
            UNITS_MOD_8
                .iter()
                .enumerate()
                .map(|(i, &u)| self.index(chi.values[i] as u8, u)),
        )
    }

    /// Elements `(m, u)` with `m` of the given parity: the coset of the index-2
    /// subgroup `{(m,u) : m even}` that a prime of that degree parity lands in.
    pub fn parity_coset(&self, parity: u8) -> Vec<usize> {
        (0..self.group.order()).filter(|&i| self.pairs[i].0 % 2 == parity).collect()
    }
}

/// A group of permutations of `{0..n}` with its elements listed.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub group: FiniteGroup,
    pub perms: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn point_stabilizer(&self, point: usize) -> Subgroup {
        self.group
            .subgroup((0..self.perms.len()).filter(|&i| self.perms[i][point] == point))
            .expect("stabilizer is a subgroup")
    }
}

/// `S_n` on `{0..n}`; `(ab)(i) = a(b(i))`.
pub fn symmetric_group(n: usize) -> PermutationGroup {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }
    let perms = perms(n);
    let group = FiniteGroup::from_elements(
        &perms,
        |a, b| b.iter().map(|&i| a[i]).collect::<Vec<_>>(),
        |p| format!("{p:?}"),
    )
    .expect("symmetric group");
    PermutationGroup { group, perms }
}
