use super::*;
use crate::boolean::BooleanAlgebra;
use crate::formulas::{parse, FoVar, Formula, Signature, SoVar, Variable};
use crate::theta::{Enumerated, ThetaFamily, WeakSo};

fn unary(size: u32, members: &[u32]) -> FiniteStructure {
    let p = Relation::from_tuples(1, size, members.iter().map(core::slice::from_ref));
    FiniteStructure::new(size, "P0/1".parse().unwrap(), vec![p], vec![], vec![]).unwrap()
}

fn cycle3() -> FiniteStructure {
    let e = Relation::from_tuples(2, 3, [&[0u32, 1][..], &[1, 2], &[2, 0]]);
    FiniteStructure::new(3, "P0/2".parse().unwrap(), vec![e], vec![], vec![]).unwrap()
}

fn sentence(s: &FiniteStructure, text: &str) -> Formula {
    parse(text, s.signature()).unwrap()
}

/// All relations of the arity, by counting bit patterns.
fn powerset(arity: u32, n: u32) -> Vec<Relation> {
    let cap = tuple_count(n, arity).unwrap();
    (0..1u64 << cap).map(|m| Relation::from_mask(arity, n, m)).collect()
}

#[test]
fn first_order_basics() {
    let s = unary(2, &[0]);
    let a = Assignment::new().with_fo(FoVar(0), 0);
    assert!(eval_fo(&s, &sentence(&s, "P0(x0)"), &a).unwrap());
    assert!(!eval_fo(&s, &sentence(&s, "∀x0 P0(x0)"), &a).unwrap());
    let card = parse("∃x0 ∀x1 x0 = x1", &Signature::empty()).unwrap();
    assert!(eval_fo(&FiniteStructure::pure(1), &card, &Assignment::new()).unwrap());
    assert!(!eval_fo(&FiniteStructure::pure(2), &card, &Assignment::new()).unwrap());
    assert_eq!(
        eval_fo(&s, &sentence(&s, "P0(x3)"), &Assignment::new()),
        Err(StructureError::Unassigned(Variable::Fo(FoVar(3))))
    );
}

#[test]
fn weak_so_three_elements() {
    let s = FiniteStructure::pure(3);
    let k = materialize_k(&s, &WeakSo::new(&Signature::empty(), 1), 2).unwrap();
    let expected: Vec<Relation> = powerset(1, 3).into_iter().filter(|r| !r.is_empty()).collect();
    assert_eq!(k.relations(1).cloned().collect::<Vec<_>>(), expected);
}

#[test]
fn weak_so_coverage_up_to_five() {
    for n in 1..=5 {
        let s = FiniteStructure::pure(n);
        let fam = WeakSo::new(&Signature::empty(), 1);
        let k = materialize_k(&s, &fam, n as usize - 1).unwrap();
        assert_eq!(k.len(1), (1 << n) - 1);
        assert!(k.same_relations(&exact_k(&s, &fam, &[1]).unwrap()));
    }
}

#[test]
fn witnesses_reproduce_their_relations() {
    let s = unary(3, &[1]);
    for fam in [
        Box::new(WeakSo::new(s.signature(), 1)) as Box<dyn ThetaFamily>,
        Box::new(Enumerated::dsl(s.signature())),
    ] {
        let k = materialize_k(&s, fam.as_ref(), 6).unwrap();
        for (r, p) in k.entries(1) {
            let Provenance::Theta { index, params } = p else {
                panic!("bounded families carry witnesses")
            };
            assert_eq!(reevaluate(&s, fam.as_ref(), *index, params).unwrap().as_ref(), Some(r));
        }
    }
    let exact = exact_k(&s, &WeakSo::new(s.signature(), 1), &[1]).unwrap();
    let fam = WeakSo::new(s.signature(), 1);
    for (r, p) in exact.entries(1) {
        let Provenance::Theta { index, params } = p else {
            panic!("weak second-order relations carry witnesses")
        };
        assert_eq!(reevaluate(&s, &fam, *index, params).unwrap().as_ref(), Some(r));
    }
}

#[test]
fn dsl_on_two_points() {
    let s = FiniteStructure::pure(2);
    let fam = Enumerated::dsl(s.signature());
    let k = materialize_k(&s, &fam, 30).unwrap();
    assert_eq!(
        k.relations(1).cloned().collect::<Vec<_>>(),
        vec![Relation::empty(1, 2), Relation::full(1, 2)]
    );
    assert!(k.same_relations(&k_exact_orbits(&s, false, 1).unwrap()));
}

#[test]
fn materialization_is_monotone() {
    let s = cycle3();
    let fam = Enumerated::all_fo(s.signature(), true);
    let mut prev = DefinableFamily::new(3);
    for n in [0, 3, 8, 15] {
        let k = materialize_k(&s, &fam, n).unwrap();
        assert!(prev.is_subset(&k));
        prev = k;
    }
}

#[test]
fn automorphism_groups() {
    assert_eq!(automorphisms(&FiniteStructure::pure(2)).len(), 2);
    assert_eq!(automorphisms(&unary(2, &[0])), vec![vec![0, 1]]);
    // Brute-force oracle: the rotations are exactly the edge-preserving maps.
    let rotations: Vec<Vec<u32>> = (0..3).map(|r| (0..3).map(|i| (i + r) % 3).collect()).collect();
    let mut auts = automorphisms(&cycle3());
    auts.sort();
    let mut want = rotations;
    want.sort();
    assert_eq!(auts, want);
}

#[test]
fn exact_orbit_families() {
    let pure = FiniteStructure::pure(2);
    assert_eq!(k_exact_orbits(&pure, false, 1).unwrap().len(1), 2);
    assert_eq!(k_exact_orbits(&pure, true, 1).unwrap().len(1), 4);
    assert_eq!(k_exact_orbits(&unary(2, &[0]), false, 1).unwrap().len(1), 4);
    // Orbits of the rotation group on pairs: the diagonal, the edges and the
    // reversed edges.
    assert_eq!(orbits(&cycle3(), 2).unwrap().len(), 3);
}

#[test]
fn singleton_sentence_separates_families() {
    let s = FiniteStructure::pure(2);
    let f = sentence(&s, "∀x ∃X ∀y (X(y) ↔ x = y)");
    let dsl = exact_k(&s, &Enumerated::dsl(s.signature()), &[1]).unwrap();
    assert!(!eval_so(&s, &dsl, &f, &Assignment::new()).unwrap());
    let weak = materialize_k(&s, &WeakSo::new(s.signature(), 1), 2).unwrap();
    assert!(eval_so(&s, &weak, &f, &Assignment::new()).unwrap());
    assert!(eval_full_so(&s, &f, &Assignment::new()).unwrap());
    let refl = sentence(&s, "∀X0 ∃X1 X0 = X1");
    assert!(eval_so(&s, &dsl, &refl, &Assignment::new()).unwrap());
    assert!(eval_so(&s, &weak, &refl, &Assignment::new()).unwrap());
}

#[test]
fn assignments_outside_k_are_rejected() {
    let s = FiniteStructure::pure(2);
    let k = exact_k(&s, &Enumerated::dsl(s.signature()), &[1]).unwrap();
    let v = SoVar::new(0, 1);
    let single = Relation::from_tuples(1, 2, [&[0u32][..]]);
    let f = sentence(&s, "X0(x0)");
    let a = Assignment::new().with_fo(FoVar(0), 0).with_so(v, single);
    assert_eq!(eval_so(&s, &k, &f, &a), Err(StructureError::OutsideK(v)));
}

#[test]
fn full_second_order() {
    for s in [FiniteStructure::pure(1), unary(3, &[2]), cycle3()] {
        let empty = sentence(&s, "∃X ∀y ¬X(y)");
        assert!(eval_full_so(&s, &empty, &Assignment::new()).unwrap());
    }
    let s = FiniteStructure::pure(5);
    let big = sentence(&s, "∃X^2 ∀y X(y, y)");
    assert!(matches!(
        eval_full_so(&s, &big, &Assignment::new()),
        Err(StructureError::Feasibility(_))
    ));
}

#[test]
fn comprehension_holds_under_full_semantics() {
    let s = cycle3();
    let fam = Enumerated::all_fo(s.signature(), true);
    for i in 0..20 {
        let m = fam.theta_at(i).unwrap();
        let c = m.comprehension(0);
        assert!(eval_full_so(&s, &c, &Assignment::new()).unwrap(), "{m}");
    }
}

#[test]
fn truth_algebra_basics() {
    let s = unary(2, &[0]);
    let alg = TruthAlgebra::new(&s, 1);
    assert_eq!(alg.cardinality(), Some(4));
    let p = sentence(&s, "P0(x0)");
    let q = sentence(&s, "x0 = x0");
    let both = Formula::and(p.clone(), Formula::not(q.clone()));
    assert_eq!(
        alg.class(&both).unwrap(),
        alg.meet(&alg.class(&p).unwrap(), &alg.complement(&alg.class(&q).unwrap()))
    );
    assert!(alg.le(&alg.class(&p).unwrap(), &alg.class(&q).unwrap()));
    assert!(matches!(
        alg.class(&sentence(&s, "P0(x1)")),
        Err(StructureError::UnsupportedVariable(_))
    ));
}

#[test]
fn quantifier_identities() {
    let s = unary(2, &[0]);
    let fam = WeakSo::new(s.signature(), 1);
    let k = materialize_k(&s, &fam, 2).unwrap();
    let cx = RegCheck {
        structure: &s,
        vars: 1,
        k: &k,
        family: &fam,
        bound: 2,
    };
    let p = sentence(&s, "P0(x0)");
    let out = lemma_reg_check(&cx, &p, LemmaItem::I, Variable::Fo(FoVar(0))).unwrap();
    assert!(out.holds());
    assert!(out.lhs.is_empty());
    let v = SoVar::new(0, 1);
    let f = sentence(&s, "X0(x0)");
    let iii = lemma_reg_check(&cx, &f, LemmaItem::III, Variable::So(v)).unwrap();
    let fifth = lemma_reg_check(&cx, &f, LemmaItem::V, Variable::So(v)).unwrap();
    // No element lies in every nonempty set.
    assert!(iii.holds() && fifth.holds());
    assert!(iii.lhs.is_empty());
    let iv = lemma_reg_check(&cx, &f, LemmaItem::IV, Variable::So(v)).unwrap();
    let vi = lemma_reg_check(&cx, &f, LemmaItem::VI, Variable::So(v)).unwrap();
    assert!(iv.holds() && vi.holds());
    assert_eq!(iv.lhs, Relation::full(1, 2));
}

#[test]
fn rank_types_match_orbits() {
    let catalog = [FiniteStructure::pure(3), unary(3, &[1]), cycle3(), unary(4, &[0, 3])];
    for s in &catalog {
        let by_rank = materialize_by_rank(s, 1, s.size() + 1).unwrap();
        assert!(by_rank.same_relations(&k_exact_orbits(s, false, 1).unwrap()));
    }
    // Rank zero only sees atomic facts.
    assert_eq!(materialize_by_rank(&unary(3, &[1]), 1, 0).unwrap().len(1), 4);
}

#[test]
fn leibniz_reduction() {
    let sep = unary(2, &[0]);
    let r = leibniz_reduce(&sep, 3).unwrap();
    assert_eq!(r.partition, vec![0, 1]);
    assert!(r.stable);
    for d in 0..3 {
        let r = leibniz_reduce(&FiniteStructure::pure(2), d).unwrap();
        assert_eq!(r.blocks(), vec![vec![0, 1]]);
        assert_eq!(r.quotient.size(), 1);
    }
    let s = unary(4, &[1, 3]);
    let once = leibniz_reduce(&s, 2).unwrap();
    assert_eq!(once.blocks(), vec![vec![0, 2], vec![1, 3]]);
    let twice = leibniz_reduce(&once.quotient, 2).unwrap();
    assert_eq!(twice.quotient, once.quotient);
}

#[test]
fn leibniz_uses_functions() {
    // f swaps the pairs {0,1} and {2,3}; P holds of 2 only. Atoms split
    // {2} off, the function then separates 0 from 1 and from 3.
    let sig: Signature = "P0/1,f0/1".parse().unwrap();
    let p = Relation::from_tuples(1, 4, [&[2u32][..]]);
    let s = FiniteStructure::new(4, sig, vec![p], vec![vec![2, 3, 0, 1]], vec![]).unwrap();
    let r0 = leibniz_reduce(&s, 0).unwrap();
    assert_eq!(r0.blocks(), vec![vec![0, 1, 3], vec![2]]);
    assert!(!r0.stable);
    let r = leibniz_reduce(&s, 5).unwrap();
    assert_eq!(r.blocks(), vec![vec![0], vec![1, 3], vec![2]]);
    assert!(r.stable);
}
