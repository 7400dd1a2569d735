use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::eval::{eval_so, full_guard, Assignment, Evaluator, SoRange};
use super::orbits::{orbit_unions, unions};
use super::relation::{decode, tuple_count, Relation};
use super::structure::FiniteStructure;
use super::StructureError;
use crate::formulas::{Formula, Signature};
use crate::theta::{enumerate_up_to, FamilyKind, ThetaFamily, ThetaMember};

/// Most parameter tuples `materialize_k` will try.
pub const PARAMETER_LIMIT: usize = 10_000_000;

/// Where a relation in a family came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Defined by the member at global position `index` under the parameter
    /// tuple `params`.
    Theta { index: usize, params: Vec<u32> },
    /// A union of automorphism orbits.
    Orbit,
    /// A union of rank-`rank` type classes.
    RankType { rank: u32 },
    /// Every relation of the arity is in the family.
    Exhaustive,
}

/// A family of relations on a fixed domain, grouped by arity and kept in
/// canonical (sorted, duplicate-free) order. Arities never inserted into are
/// empty: quantifiers over them are vacuous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinableFamily {
    domain: u32,
    by_arity: BTreeMap<u32, BTreeMap<Relation, Provenance>>,
}

impl DefinableFamily {
    pub fn new(domain: u32) -> Self {
        DefinableFamily {
            domain,
            by_arity: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> u32 {
        self.domain
    }

    /// Adds `r`, keeping the first provenance seen. Returns whether `r` is new.
    pub fn insert(&mut self, r: Relation, prov: Provenance) -> bool {
        assert_eq!(r.domain(), self.domain, "relation over the wrong domain");
        let slot = self.by_arity.entry(r.arity()).or_default();
        if slot.contains_key(&r) {
            return false;
        }
        slot.insert(r, prov);
        true
    }

    pub fn contains(&self, r: &Relation) -> bool {
        r.domain() == self.domain
            && self
                .by_arity
                .get(&r.arity())
                .is_some_and(|m| m.contains_key(r))
    }

    pub fn relations(&self, arity: u32) -> impl Iterator<Item = &Relation> {
        self.by_arity.get(&arity).into_iter().flat_map(|m| m.keys())
    }

    pub fn entries(&self, arity: u32) -> impl Iterator<Item = (&Relation, &Provenance)> {
        self.by_arity.get(&arity).into_iter().flat_map(|m| m.iter())
    }

    pub fn provenance(&self, r: &Relation) -> Option<&Provenance> {
        self.by_arity.get(&r.arity())?.get(r)
    }

    pub fn len(&self, arity: u32) -> usize {
        self.by_arity.get(&arity).map_or(0, |m| m.len())
    }

    pub fn total_len(&self) -> usize {
        self.by_arity.values().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_len() == 0
    }

    /// Arities with at least one relation.
    pub fn arities(&self) -> impl Iterator<Item = u32> + '_ {
        self.by_arity
            .iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(a, _)| *a)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.by_arity
            .values()
            .flat_map(|m| m.keys())
            .all(|r| other.contains(r))
    }

    /// Same relations, ignoring provenance.
    pub fn same_relations(&self, other: &Self) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    /// Restriction to one arity.
    pub fn at_arity(&self, arity: u32) -> Self {
        let mut k = DefinableFamily::new(self.domain);
        for (r, p) in self.entries(arity) {
            k.insert(r.clone(), p.clone());
        }
        k
    }
}

pub(crate) fn check_signature(fam: &Signature, s: &Signature) -> Result<(), StructureError> {
    if fam.predicates != s.predicates || fam.functions != s.functions || fam.constants > s.constants {
        return Err(StructureError::SignatureMismatch(alloc::format!(
            "family over {fam} does not fit a structure over {s}"
        )));
    }
    Ok(())
}

fn materialize_members(
    s: &FiniteStructure,
    members: &[(usize, ThetaMember)],
    k: &mut DefinableFamily,
) -> Result<(), StructureError> {
    let n = s.size();
    let mut total = 0usize;
    for (_, m) in members {
        let c = tuple_count(n, m.params.len() as u32).unwrap_or(usize::MAX);
        total = total.saturating_add(c);
    }
    if total > PARAMETER_LIMIT {
        return Err(StructureError::Feasibility(alloc::format!(
            "{total} parameter tuples exceed {PARAMETER_LIMIT}"
        )));
    }
    let ev = Evaluator {
        s,
        range: SoRange::FirstOrder,
    };
    for (gi, m) in members {
        let p = m.params.len() as u32;
        for pi in 0..tuple_count(n, p).unwrap_or(0) {
            let params = decode(n, p, pi);
            let a = Assignment::new().with_tuple(&m.params, &params);
            let r = ev.define(&m.formula, &m.slots, &a)?;
            k.insert(r, Provenance::Theta { index: *gi, params });
        }
    }
    Ok(())
}

/// `K` from the members `θ_0, ..., θ_N` (global order) and every parameter
/// tuple over the domain.
pub fn materialize_k(
    s: &FiniteStructure,
    fam: &dyn ThetaFamily,
    bound: usize,
) -> Result<DefinableFamily, StructureError> {
    check_signature(fam.signature(), s.signature())?;
    let members: Vec<(usize, ThetaMember)> =
        enumerate_up_to(fam, bound).into_iter().enumerate().collect();
    let mut k = DefinableFamily::new(s.size());
    materialize_members(s, &members, &mut k)?;
    Ok(k)
}

/// Re-evaluates a `Theta` witness.
pub fn reevaluate(
    s: &FiniteStructure,
    fam: &dyn ThetaFamily,
    index: usize,
    params: &[u32],
) -> Result<Option<Relation>, StructureError> {
    let Some(m) = fam.theta_at(index) else {
        return Ok(None);
    };
    let a = Assignment::new().with_tuple(&m.params, params);
    super::eval::define_relation(s, SoRange::FirstOrder, &m.formula, &m.slots, &a).map(Some)
}

/// The exact `K_Θ^A` at the given arities, for families whose definable
/// relations over a finite structure are known in closed form.
pub fn exact_k(
    s: &FiniteStructure,
    fam: &dyn ThetaFamily,
    arities: &[u32],
) -> Result<DefinableFamily, StructureError> {
    check_signature(fam.signature(), s.signature())?;
    let mut k = DefinableFamily::new(s.size());
    if let Some(members) = fam.finite_members() {
        let wanted: Vec<(usize, ThetaMember)> = members
            .into_iter()
            .enumerate()
            .filter(|(_, m)| arities.contains(&m.arity()))
            .collect();
        materialize_members(s, &wanted, &mut k)?;
        return Ok(k);
    }
    for &arity in arities {
        if !fam.supports_arity(arity) {
            continue;
        }
        match fam.kind() {
            FamilyKind::WeakSo { .. } => weak_so_exact(s, arity, &mut k)?,
            FamilyKind::Dsl | FamilyKind::AllFo { params: false } => {
                require_identity(s)?;
                for r in orbit_unions(s, arity)? {
                    k.insert(r, Provenance::Orbit);
                }
            }
            FamilyKind::AllFo { params: true }
            | FamilyKind::ExistsN(_)
            | FamilyKind::ForallN(_) => {
                require_identity(s)?;
                let cap = full_guard(s.size(), arity)?;
                for mask in 0..1u64 << cap {
                    k.insert(Relation::from_mask(arity, s.size(), mask), Provenance::Exhaustive);
                }
            }
            FamilyKind::Custom => {
                return Err(StructureError::Invalid(
                    "custom family without a finite member list".into(),
                ))
            }
        }
    }
    Ok(k)
}

fn require_identity(s: &FiniteStructure) -> Result<(), StructureError> {
    if s.signature().identity {
        Ok(())
    } else {
        Err(StructureError::IdentityRequired)
    }
}

/// Every nonempty relation `B` is `θ_{|B|-1}` with the tuples of `B` as
/// parameters.
fn weak_so_exact(s: &FiniteStructure, arity: u32, k: &mut DefinableFamily) -> Result<(), StructureError> {
    let cap = full_guard(s.size(), arity)?;
    for mask in 1..1u64 << cap {
        let r = Relation::from_mask(arity, s.size(), mask);
        let params: Vec<u32> = r.tuples().flatten().collect();
        let index = r.len() - 1;
        k.insert(r, Provenance::Theta { index, params });
    }
    Ok(())
}

/// Canonical description of the substructure generated by `tuple`, with
/// elements numbered in order of discovery.
fn atomic_key(s: &FiniteStructure, tuple: &[u32]) -> Vec<u32> {
    let n = s.size() as usize;
    let sig = s.signature();
    let mut label: Vec<Option<u32>> = alloc::vec![None; n];
    let mut elems: Vec<u32> = Vec::new();
    let mut key = Vec::new();
    let see = |d: u32, label: &mut Vec<Option<u32>>, elems: &mut Vec<u32>| -> u32 {
        *label[d as usize].get_or_insert_with(|| {
            elems.push(d);
            elems.len() as u32 - 1
        })
    };
    for &d in tuple {
        key.push(see(d, &mut label, &mut elems));
    }
    for &c in s.constants() {
        key.push(see(c, &mut label, &mut elems));
    }
    loop {
        let before = elems.len();
        for (f, &ar) in sig.functions.iter().enumerate() {
            let m = elems.len() as u32;
            for i in 0..tuple_count(m, ar as u32).unwrap_or(0) {
                let args: Vec<u32> = decode(m, ar as u32, i)
                    .iter()
                    .map(|&l| elems[l as usize])
                    .collect();
                let v = s.apply(f, &args);
                see(v, &mut label, &mut elems);
            }
        }
        if elems.len() == before {
            break;
        }
    }
    let m = elems.len() as u32;
    key.push(m);
    for (f, &ar) in sig.functions.iter().enumerate() {
        for i in 0..tuple_count(m, ar as u32).unwrap_or(0) {
            let args: Vec<u32> = decode(m, ar as u32, i)
                .iter()
                .map(|&l| elems[l as usize])
                .collect();
            key.push(label[s.apply(f, &args) as usize].expect("closed"));
        }
    }
    for (p, &ar) in sig.predicates.iter().enumerate() {
        let rel = s.predicate(p);
        for i in 0..tuple_count(m, ar as u32).unwrap_or(0) {
            let args: Vec<u32> = decode(m, ar as u32, i)
                .iter()
                .map(|&l| elems[l as usize])
                .collect();
            key.push(rel.contains(&args) as u32);
        }
    }
    key
}

fn intern<K: Ord>(table: &mut BTreeMap<K, u32>, key: K) -> u32 {
    let next = table.len() as u32;
    *table.entry(key).or_insert(next)
}

/// Class ids of the rank-`rank` types of all `arity`-tuples, indexed like
/// relation tuples. The rank `j+1` type of a tuple is the set of rank `j`
/// types of its one-point extensions.
pub(crate) fn rank_types(s: &FiniteStructure, arity: u32, rank: u32) -> Result<Vec<u32>, StructureError> {
    let n = s.size();
    let top = arity + rank;
    let count = tuple_count(n, top)
        .filter(|c| *c <= PARAMETER_LIMIT)
        .ok_or_else(|| {
            StructureError::Feasibility(alloc::format!(
                "{n}^{top} tuples exceed {PARAMETER_LIMIT}"
            ))
        })?;
    let mut table = BTreeMap::new();
    let mut ids: Vec<u32> = (0..count)
        .map(|i| intern(&mut table, atomic_key(s, &decode(n, top, i))))
        .collect();
    for len in (arity..top).rev() {
        let stride = tuple_count(n, len).unwrap_or(0);
        let mut table = BTreeMap::new();
        ids = (0..stride)
            .map(|i| {
                let mut ext: Vec<u32> = (0..n as usize).map(|c| ids[i + c * stride]).collect();
                ext.sort_unstable();
                ext.dedup();
                intern(&mut table, ext)
            })
            .collect();
    }
    Ok(ids)
}

/// All relations definable by first-order formulas of quantifier rank at
/// most `rank` without parameters: unions of rank-`rank` type classes.
pub fn materialize_by_rank(
    s: &FiniteStructure,
    arity: u32,
    rank: u32,
) -> Result<DefinableFamily, StructureError> {
    require_identity(s)?;
    let ids = rank_types(s, arity, rank)?;
    let classes = ids.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut blocks = alloc::vec![Relation::empty(arity, s.size()); classes];
    for (i, &c) in ids.iter().enumerate() {
        blocks[c as usize].set_index(i, true);
    }
    let mut k = DefinableFamily::new(s.size());
    for r in unions(&blocks)? {
        k.insert(r, Provenance::RankType { rank });
    }
    Ok(k)
}

/// A structure paired with its relation family.
#[derive(Clone, Debug)]
pub struct StandardModel {
    pub structure: FiniteStructure,
    pub k: DefinableFamily,
}

impl StandardModel {
    /// `K` from the first `bound + 1` members.
    pub fn bounded(s: FiniteStructure, fam: &dyn ThetaFamily, bound: usize) -> Result<Self, StructureError> {
        let k = materialize_k(&s, fam, bound)?;
        Ok(StandardModel { structure: s, k })
    }

    /// Exact `K` at the listed arities.
    pub fn exact(s: FiniteStructure, fam: &dyn ThetaFamily, arities: &[u32]) -> Result<Self, StructureError> {
        let k = exact_k(&s, fam, arities)?;
        Ok(StandardModel { structure: s, k })
    }

    pub fn eval(&self, f: &Formula, a: &Assignment) -> Result<bool, StructureError> {
        eval_so(&self.structure, &self.k, f, a)
    }
}

