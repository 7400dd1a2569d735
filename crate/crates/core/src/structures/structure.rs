use alloc::string::String;
use alloc::vec::Vec;

use super::relation::{decode, encode, tuple_count, Relation};
use super::StructureError;
use crate::formulas::Signature;

/// A finite structure with domain `{0, ..., size-1}`. Function tables are
/// indexed like relation tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    size: u32,
    sig: Signature,
    predicates: Vec<Relation>,
    functions: Vec<Vec<u32>>,
    constants: Vec<u32>,
}

impl FiniteStructure {
    pub fn new(
        size: u32,
        sig: Signature,
        predicates: Vec<Relation>,
        functions: Vec<Vec<u32>>,
        constants: Vec<u32>,
    ) -> Result<Self, StructureError> {
        let bad = |m: String| Err(StructureError::Invalid(m));
        if size == 0 {
            return bad("domain must be nonempty".into());
        }
        if predicates.len() != sig.predicates.len() {
            return bad(alloc::format!(
                "expected {} predicate interpretations, got {}",
                sig.predicates.len(),
                predicates.len()
            ));
        }
        for (i, (r, &a)) in predicates.iter().zip(&sig.predicates).enumerate() {
            if r.arity() as usize != a || r.domain() != size {
                return bad(alloc::format!("P{i} must be a {a}-ary relation on {size} elements"));
            }
        }
        if functions.len() != sig.functions.len() {
            return bad(alloc::format!(
                "expected {} function tables, got {}",
                sig.functions.len(),
                functions.len()
            ));
        }
        for (i, (t, &a)) in functions.iter().zip(&sig.functions).enumerate() {
            let want = tuple_count(size, a as u32).unwrap_or(usize::MAX);
            if t.len() != want {
                return bad(alloc::format!("f{i} table must have {want} entries, got {}", t.len()));
            }
            if t.iter().any(|&v| v >= size) {
                return bad(alloc::format!("f{i} table has a value outside the domain"));
            }
        }
        if constants.len() != sig.constants {
            return bad(alloc::format!(
                "expected {} constants, got {}",
                sig.constants,
                constants.len()
            ));
        }
        if let Some(i) = constants.iter().position(|&c| c >= size) {
            return bad(alloc::format!("c{i} is outside the domain"));
        }
        Ok(FiniteStructure {
            size,
            sig,
            predicates,
            functions,
            constants,
        })
    }

    /// The structure over the pure identity signature.
    pub fn pure(size: u32) -> Self {
        Self::new(size, Signature::empty(), Vec::new(), Vec::new(), Vec::new()).expect("valid")
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn predicate(&self, i: usize) -> &Relation {
        &self.predicates[i]
    }

    pub fn predicates(&self) -> &[Relation] {
        &self.predicates
    }

    pub fn function_table(&self, i: usize) -> &[u32] {
        &self.functions[i]
    }

    pub fn apply(&self, f: usize, args: &[u32]) -> u32 {
        self.functions[f][encode(self.size, args)]
    }

    pub fn constant(&self, i: usize) -> u32 {
        self.constants[i]
    }

    pub fn constants(&self) -> &[u32] {
        &self.constants
    }

    /// Expansion by one new constant per element: constant `c_{m+e}` names
    /// element `e`, where `m` is the original number of constants.
    pub fn with_element_constants(&self) -> FiniteStructure {
        let mut s = self.clone();
        s.sig = self.sig.with_extra_constants(self.size as usize);
        s.constants.extend(0..self.size);
        s
    }

    /// Whether `perm` (a bijection of the domain) preserves every symbol.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        if self.constants.iter().any(|&c| perm[c as usize] != c) {
            return false;
        }
        if self.predicates.iter().any(|r| r.permuted(perm) != *r) {
            return false;
        }
        for (table, &arity) in self.functions.iter().zip(&self.sig.functions) {
            for (i, &value) in table.iter().enumerate() {
                let args = decode(self.size, arity as u32, i);
                let image: Vec<u32> = args.iter().map(|&d| perm[d as usize]).collect();
                if table[encode(self.size, &image)] != perm[value as usize] {
                    return false;
                }
            }
        }
        true
    }
}
