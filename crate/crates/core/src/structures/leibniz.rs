use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::relation::{decode, tuple_count, Relation};
use super::structure::FiniteStructure;
use super::StructureError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub quotient: FiniteStructure,
    /// Block number of each element. Blocks are numbered by their least
    /// element.
    pub partition: Vec<u32>,
    /// Refinement rounds performed after the predicate round.
    pub rounds: u32,
    /// Whether one more round would not split any block.
    pub stable: bool,
}

impl Reduction {
    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = Vec::new();
        for (e, &b) in self.partition.iter().enumerate() {
            if b as usize == out.len() {
                out.push(Vec::new());
            }
            out[b as usize].push(e as u32);
        }
        out
    }
}

/// Numbers keys in order of first appearance.
fn number<K: Ord>(keys: impl IntoIterator<Item = K>) -> (Vec<u32>, usize) {
    let mut table = BTreeMap::new();
    let ids = keys
        .into_iter()
        .map(|k| {
            let next = table.len() as u32;
            *table.entry(k).or_insert(next)
        })
        .collect();
    (ids, table.len())
}

/// Every way of filling the other `arity - 1` argument places around
/// position `i`, with `a` at `i`.
fn contexts(n: u32, arity: usize) -> impl Iterator<Item = (usize, Vec<u32>)> {
    let rest = arity.saturating_sub(1) as u32;
    (0..arity).flat_map(move |i| {
        (0..tuple_count(n, rest).unwrap_or(0)).map(move |j| (i, decode(n, rest, j)))
    })
}

fn with_at(ctx: &[u32], i: usize, a: u32) -> Vec<u32> {
    let mut t = ctx.to_vec();
    t.insert(i, a);
    t
}

fn check_size(n: u32, arities: impl Iterator<Item = usize>) -> Result<(), StructureError> {
    for ar in arities {
        let c = tuple_count(n, ar as u32).unwrap_or(usize::MAX);
        if c > super::kfamily::PARAMETER_LIMIT {
            return Err(StructureError::Feasibility(alloc::format!("{n}^{ar} argument tuples")));
        }
    }
    Ok(())
}

/// Identifies elements that no identity-free formula with parameters tells
/// apart. The first pass compares atomic contexts; each of at most `depth`
/// further passes splits elements whose function images fall in different
/// blocks.
pub fn leibniz_reduce(s: &FiniteStructure, depth: u32) -> Result<Reduction, StructureError> {
    let n = s.size();
    let sig = s.signature();
    check_size(n, sig.predicates.iter().chain(&sig.functions).copied())?;
    let (mut block, mut count) = number((0..n).map(|a| {
        let mut key = Vec::new();
        for (p, &ar) in sig.predicates.iter().enumerate() {
            for (i, ctx) in contexts(n, ar) {
                key.push(s.predicate(p).contains(&with_at(&ctx, i, a)));
            }
        }
        key
    }));
    let mut rounds = 0;
    let stable = loop {
        let (next, next_count) = number((0..n).map(|a| {
            let mut key = alloc::vec![block[a as usize]];
            for (f, &ar) in sig.functions.iter().enumerate() {
                for (i, ctx) in contexts(n, ar) {
                    key.push(block[s.apply(f, &with_at(&ctx, i, a)) as usize]);
                }
            }
            key
        }));
        if next_count == count {
            break true;
        }
        if rounds == depth {
            break false;
        }
        block = next;
        count = next_count;
        rounds += 1;
    };
    let mut reps = alloc::vec![u32::MAX; count];
    for (e, &b) in block.iter().enumerate() {
        reps[b as usize] = reps[b as usize].min(e as u32);
    }
    let m = count as u32;
    let project = |t: Vec<u32>| -> Vec<u32> { t.iter().map(|&b| reps[b as usize]).collect() };
    let predicates = sig
        .predicates
        .iter()
        .enumerate()
        .map(|(p, &ar)| {
            let mut r = Relation::empty(ar as u32, m);
            for i in 0..r.capacity() {
                if s.predicate(p).contains(&project(decode(m, ar as u32, i))) {
                    r.set_index(i, true);
                }
            }
            r
        })
        .collect();
    let functions = sig
        .functions
        .iter()
        .enumerate()
        .map(|(f, &ar)| {
            (0..tuple_count(m, ar as u32).unwrap_or(0))
                .map(|i| block[s.apply(f, &project(decode(m, ar as u32, i))) as usize])
                .collect()
        })
        .collect();
    let constants = s.constants().iter().map(|&c| block[c as usize]).collect();
    let quotient = FiniteStructure::new(m, sig.clone(), predicates, functions, constants)?;
    Ok(Reduction {
        quotient,
        partition: block,
        rounds,
        stable,
    })
}
