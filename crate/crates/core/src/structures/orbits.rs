use alloc::vec::Vec;

use super::eval::full_guard;
use super::kfamily::{DefinableFamily, Provenance};
use super::relation::{decode, encode, tuple_count, Relation};
use super::structure::FiniteStructure;
use super::StructureError;

/// Most blocks whose unions will be enumerated (`2^20` unions).
pub const UNION_LIMIT: usize = 20;

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All automorphisms, identity first, by brute force over `|A|!`
/// permutations.
pub fn automorphisms(s: &FiniteStructure) -> Vec<Vec<u32>> {
    let mut p: Vec<u32> = (0..s.size()).collect();
    let mut out = Vec::new();
    loop {
        if s.is_automorphism(&p) {
            out.push(p.clone());
        }
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// The orbits of the automorphism group on `A^arity`, sorted.
pub fn orbits(s: &FiniteStructure, arity: u32) -> Result<Vec<Relation>, StructureError> {
    let n = s.size();
    let count = tuple_count(n, arity)
        .filter(|c| *c <= super::kfamily::PARAMETER_LIMIT)
        .ok_or_else(|| StructureError::Feasibility(alloc::format!("{n}^{arity} tuples")))?;
    let auts = automorphisms(s);
    let mut seen = alloc::vec![false; count];
    let mut out = Vec::new();
    for i in 0..count {
        if seen[i] {
            continue;
        }
        let t = decode(n, arity, i);
        let mut orbit = Relation::empty(arity, n);
        for p in &auts {
            let image: Vec<u32> = t.iter().map(|&d| p[d as usize]).collect();
            let j = encode(n, &image);
            seen[j] = true;
            orbit.set_index(j, true);
        }
        out.push(orbit);
    }
    out.sort();
    Ok(out)
}

/// Every union of the given disjoint blocks, the empty union included.
pub(crate) fn unions(blocks: &[Relation]) -> Result<Vec<Relation>, StructureError> {
    if blocks.len() > UNION_LIMIT {
        return Err(StructureError::Feasibility(alloc::format!(
            "{} blocks give more than 2^{UNION_LIMIT} unions",
            blocks.len()
        )));
    }
    let Some(first) = blocks.first() else {
        return Ok(Vec::new());
    };
    let empty = Relation::empty(first.arity(), first.domain());
    Ok((0..1u64 << blocks.len())
        .map(|mask| {
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(empty.clone(), |acc, (_, b)| acc.union(b))
        })
        .collect())
}

pub(crate) fn orbit_unions(s: &FiniteStructure, arity: u32) -> Result<Vec<Relation>, StructureError> {
    unions(&orbits(s, arity)?)
}

/// Exact first-order definability over a finite structure. Without
/// parameters: the automorphism-invariant relations. With parameters: every
/// relation (the stabilizer of an enumeration of the domain is trivial).
pub fn k_exact_orbits(
    s: &FiniteStructure,
    with_parameters: bool,
    arity: u32,
) -> Result<DefinableFamily, StructureError> {
    let mut k = DefinableFamily::new(s.size());
    if with_parameters {
        let cap = full_guard(s.size(), arity)?;
        for mask in 0..1u64 << cap {
            k.insert(Relation::from_mask(arity, s.size(), mask), Provenance::Exhaustive);
        }
    } else {
        for r in orbit_unions(s, arity)? {
            k.insert(r, Provenance::Orbit);
        }
    }
    Ok(k)
}
