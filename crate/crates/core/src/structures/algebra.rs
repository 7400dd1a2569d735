use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::eval::{Assignment, Evaluator, SoRange};
use super::kfamily::DefinableFamily;
use super::relation::Relation;
use super::structure::FiniteStructure;
use super::StructureError;
use crate::boolean::BooleanAlgebra;
use crate::formulas::{substitute_fo, substitute_so, FoVar, Formula, SoVar, Term, Variable};
use crate::theta::{enumerate_up_to, ThetaFamily};

/// Sets of assignments to `x0, ..., x_{v-1}` over a structure, ordered by
/// inclusion. `class(φ)` is the set of assignments satisfying `φ`.
#[derive(Clone, Copy, Debug)]
pub struct TruthAlgebra<'a> {
    s: &'a FiniteStructure,
    vars: u32,
    k: Option<&'a DefinableFamily>,
}

impl<'a> TruthAlgebra<'a> {
    /// Relation quantifiers are rejected unless a family is attached.
    pub fn new(s: &'a FiniteStructure, vars: u32) -> Self {
        TruthAlgebra { s, vars, k: None }
    }

    pub fn with_family(mut self, k: &'a DefinableFamily) -> Self {
        self.k = Some(k);
        self
    }

    pub fn structure(&self) -> &'a FiniteStructure {
        self.s
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn class(&self, f: &Formula) -> Result<Relation, StructureError> {
        self.class_with(f, &Assignment::new())
    }

    /// `class(φ)` with relation variables taken from `base`.
    pub fn class_with(&self, f: &Formula, base: &Assignment) -> Result<Relation, StructureError> {
        if let Some(x) = f.free_fo().into_iter().find(|x| x.0 >= self.vars) {
            return Err(StructureError::UnsupportedVariable(Variable::Fo(x)));
        }
        let mut sig = self.s.signature().clone();
        sig.identity = true;
        sig.check(f, false)?;
        let range = match self.k {
            Some(k) => SoRange::Family(k),
            None => SoRange::FirstOrder,
        };
        let slots: Vec<FoVar> = (0..self.vars).map(FoVar).collect();
        Evaluator { s: self.s, range }.define(f, &slots, base)
    }
}

impl BooleanAlgebra for TruthAlgebra<'_> {
    type Elem = Relation;

    fn zero(&self) -> Relation {
        Relation::empty(self.vars, self.s.size())
    }
    fn one(&self) -> Relation {
        Relation::full(self.vars, self.s.size())
    }
    fn meet(&self, a: &Relation, b: &Relation) -> Relation {
        a.intersection(b)
    }
    fn join(&self, a: &Relation, b: &Relation) -> Relation {
        a.union(b)
    }
    fn complement(&self, a: &Relation) -> Relation {
        a.complement()
    }
    fn equal(&self, a: &Relation, b: &Relation) -> bool {
        a == b
    }
    fn le(&self, a: &Relation, b: &Relation) -> bool {
        a.is_subset(b)
    }
    fn element(&self, i: usize) -> Option<Relation> {
        let cap = self.one().capacity();
        if cap >= 64 || i as u64 >= 1u64 << cap {
            return None;
        }
        Some(Relation::from_mask(self.vars, self.s.size(), i as u64))
    }
    fn cardinality(&self) -> Option<u128> {
        let cap = self.one().capacity();
        (cap < 128).then(|| 1u128 << cap)
    }
    fn name(&self) -> String {
        alloc::format!("truth sets over {} elements, {} variables", self.s.size(), self.vars)
    }
    fn show(&self, a: &Relation) -> String {
        alloc::format!("{a}")
    }
}

/// The six quantifier identities: `∀x` and `∃x` as meets and joins over
/// element instances, `∀V` and `∃V` over the relations of `K`, and `∀V` and
/// `∃V` over instantiations by family members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaItem {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl LemmaItem {
    pub const ALL: [LemmaItem; 6] = [
        LemmaItem::I,
        LemmaItem::II,
        LemmaItem::III,
        LemmaItem::IV,
        LemmaItem::V,
        LemmaItem::VI,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "i" => LemmaItem::I,
            "ii" => LemmaItem::II,
            "iii" => LemmaItem::III,
            "iv" => LemmaItem::IV,
            "v" => LemmaItem::V,
            "vi" => LemmaItem::VI,
            _ => return None,
        })
    }

    /// Whether the item quantifies a first-order variable.
    pub fn is_first_order(self) -> bool {
        matches!(self, LemmaItem::I | LemmaItem::II)
    }

    /// Whether the identity is a meet (as opposed to a join).
    pub fn universal(self) -> bool {
        matches!(self, LemmaItem::I | LemmaItem::III | LemmaItem::V)
    }
}

impl fmt::Display for LemmaItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaItem::I => "i",
            LemmaItem::II => "ii",
            LemmaItem::III => "iii",
            LemmaItem::IV => "iv",
            LemmaItem::V => "v",
            LemmaItem::VI => "vi",
        })
    }
}

/// Inputs shared by the checks.
pub struct RegCheck<'a> {
    pub structure: &'a FiniteStructure,
    pub vars: u32,
    pub k: &'a DefinableFamily,
    pub family: &'a dyn ThetaFamily,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegOutcome {
    /// Class of the quantified formula.
    pub lhs: Relation,
    /// Meet or join of the instance classes.
    pub rhs: Relation,
    /// Number of instances combined.
    pub instances: usize,
}

impl RegOutcome {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn combine(alg: &TruthAlgebra<'_>, universal: bool, parts: Vec<Relation>) -> (Relation, usize) {
    let n = parts.len();
    let start = if universal { alg.one() } else { alg.zero() };
    let r = parts.iter().fold(start, |acc, p| {
        if universal {
            alg.meet(&acc, p)
        } else {
            alg.join(&acc, p)
        }
    });
    (r, n)
}

/// The class of the quantified formula together with the classes whose
/// meet (or join) should equal it.
pub fn instance_classes(
    cx: &RegCheck<'_>,
    f: &Formula,
    item: LemmaItem,
    var: Variable,
) -> Result<(Relation, Vec<Relation>), StructureError> {
    let s = cx.structure;
    let alg = TruthAlgebra::new(s, cx.vars).with_family(cx.k);
    let universal = item.universal();
    match (item.is_first_order(), var) {
        (true, Variable::Fo(x)) => {
            let q = if universal {
                Formula::forall(x, f.clone())
            } else {
                Formula::exists(x, f.clone())
            };
            let expanded = s.with_element_constants();
            let ealg = TruthAlgebra::new(&expanded, cx.vars).with_family(cx.k);
            let base = s.signature().constants as u32;
            let parts = (0..s.size())
                .map(|e| ealg.class(&substitute_fo(f, x, &Term::Const(base + e))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((alg.class(&q)?, parts))
        }
        (false, Variable::So(v)) => {
            let q = if universal {
                Formula::forall_so(v, f.clone())
            } else {
                Formula::exists_so(v, f.clone())
            };
            let parts = if matches!(item, LemmaItem::III | LemmaItem::IV) {
                relation_instances(&alg, cx.k, f, v)?
            } else {
                member_instances(&alg, cx, f, v, universal)?
            };
            Ok((alg.class(&q)?, parts))
        }
        _ => Err(StructureError::Invalid(alloc::format!(
            "item ({item}) does not quantify {var}"
        ))),
    }
}

/// Checks one quantifier identity for `f` and the quantified variable `var`
/// in the truth algebra of `cx.structure`.
pub fn lemma_reg_check(
    cx: &RegCheck<'_>,
    f: &Formula,
    item: LemmaItem,
    var: Variable,
) -> Result<RegOutcome, StructureError> {
    let alg = TruthAlgebra::new(cx.structure, cx.vars);
    let (lhs, parts) = instance_classes(cx, f, item, var)?;
    let (rhs, instances) = combine(&alg, item.universal(), parts);
    Ok(RegOutcome { lhs, rhs, instances })
}

/// `class(φ[V := W])` with `W` fresh and assigned each relation of `K`.
fn relation_instances(
    alg: &TruthAlgebra<'_>,
    k: &DefinableFamily,
    f: &Formula,
    v: SoVar,
) -> Result<Vec<Relation>, StructureError> {
    let w = SoVar::new(f.max_so_index().map_or(0, |m| m + 1).max(v.index + 1), v.arity);
    let g = substitute_so(f, v, w)?.formula;
    k.relations(v.arity)
        .map(|r| alg.class_with(&g, &Assignment::new().with_so(w, r.clone())))
        .collect()
}

/// Classes of the instantiations by the first `bound + 1` members of the
/// variable's arity. The existential form uses the dual `¬(¬φ)^V_n`.
fn member_instances(
    alg: &TruthAlgebra<'_>,
    cx: &RegCheck<'_>,
    f: &Formula,
    v: SoVar,
    universal: bool,
) -> Result<Vec<Relation>, StructureError> {
    let neg = Formula::not(f.clone());
    enumerate_up_to(cx.family, cx.bound)
        .into_iter()
        .filter(|m| m.arity() == v.arity)
        .map(|m| {
            if universal {
                alg.class(&m.instantiate(f, v)?)
            } else {
                Ok(alg.class(&m.instantiate(&neg, v)?)?.complement())
            }
        })
        .collect()
}
