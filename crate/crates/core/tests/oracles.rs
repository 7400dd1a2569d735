//! Values worked out by hand on small structures.

use rsol_core::boolean::{
    check_f_compatible, complete_regular_family, is_ultrafilter, rs_construct, BooleanAlgebra, CofiniteFilter,
    FinCof, FinCofSet, Free, PowerSet, Step, Verdict, DEFAULT_BUDGET,
};
use rsol_core::formulas::{parse, Signature};
use rsol_core::structures::{
    automorphisms, eval_so, k_exact_orbits, leibniz_reduce, materialize_by_rank, materialize_k, orbits, Assignment,
    FiniteStructure, Relation,
};
use rsol_core::theta::WeakSo;

const SINGLETONS: &str = "∀x0 ∃X0 ∀x1 (X0(x1) ↔ x0 = x1)";

fn directed_cycle() -> FiniteStructure {
    let e = Relation::from_tuples(2, 3, [&[0u32, 1][..], &[1, 2], &[2, 0]]);
    FiniteStructure::new(3, "P0/2".parse().unwrap(), vec![e], vec![], vec![]).unwrap()
}

fn path() -> FiniteStructure {
    let e = Relation::from_tuples(2, 3, [&[0u32, 1][..], &[1, 0], &[1, 2], &[2, 1]]);
    FiniteStructure::new(3, "P0/2".parse().unwrap(), vec![e], vec![], vec![]).unwrap()
}

#[test]
fn weak_so_defines_every_nonempty_subset() {
    for n in 1..=5u32 {
        let s = FiniteStructure::pure(n);
        let k = materialize_k(&s, &WeakSo::new(&Signature::empty(), 1), n as usize - 1).unwrap();
        assert_eq!(k.len(1), (1 << n) - 1, "size {n}");
        assert!(!k.contains(&Relation::empty(1, n)));
    }
}

#[test]
fn singletons_separate_weak_so_from_orbits() {
    let s = FiniteStructure::pure(2);
    let f = parse(SINGLETONS, s.signature()).unwrap();
    let weak = materialize_k(&s, &WeakSo::new(&Signature::empty(), 1), 1).unwrap();
    let orbit = k_exact_orbits(&s, false, 1).unwrap();
    assert!(eval_so(&s, &weak, &f, &Assignment::new()).unwrap());
    assert!(!eval_so(&s, &orbit, &f, &Assignment::new()).unwrap());
    // only ∅ and the whole domain are invariant
    assert_eq!(orbit.len(1), 2);
}

#[test]
fn directed_cycle_orbits() {
    let s = directed_cycle();
    assert_eq!(automorphisms(&s).len(), 3);
    assert_eq!(orbits(&s, 1).unwrap().len(), 1);
    // diagonal, forward edges, backward edges
    assert_eq!(orbits(&s, 2).unwrap().len(), 3);
    assert_eq!(k_exact_orbits(&s, false, 2).unwrap().len(2), 8);
    assert_eq!(k_exact_orbits(&s, true, 1).unwrap().len(1), 8);
}

#[test]
fn path_orbits_agree_with_rank_types() {
    let s = path();
    assert_eq!(automorphisms(&s).len(), 2);
    let middle = Relation::from_tuples(1, 3, [&[1u32][..]]);
    let ends = Relation::from_tuples(1, 3, [&[0u32][..], &[2]]);
    let k = k_exact_orbits(&s, false, 1).unwrap();
    assert_eq!(k.len(1), 4);
    assert!(k.contains(&middle) && k.contains(&ends));
    assert!(materialize_by_rank(&s, 1, 4).unwrap().same_relations(&k));
}

#[test]
fn leibniz_merges_twins() {
    let p = Relation::from_tuples(1, 3, [&[0u32][..], &[1]]);
    let sig: Signature = "P0/1".parse().unwrap();
    let s = FiniteStructure::new(3, sig.without_identity(), vec![p], vec![], vec![]).unwrap();
    let r = leibniz_reduce(&s, 2).unwrap();
    assert_eq!(r.blocks(), vec![vec![0, 1], vec![2]]);
    assert_eq!(r.quotient.size(), 2);
    assert!(r.stable);
}

#[test]
fn powerset_ultrafilters_are_principal() {
    let p = PowerSet::new(2).unwrap();
    let family = complete_regular_family(&p).unwrap();
    // avoiding {0} forces the ultrafilter at 1
    let u = rs_construct(&p, &family, &0b01, 0, DEFAULT_BUDGET).unwrap();
    let m = u.membership(&p);
    assert!(is_ultrafilter(&p, &m).unwrap());
    assert!(u.contains(&p, &0b10));
    assert!(!u.contains(&p, &0b01));
}

#[test]
fn free_algebra_size() {
    assert_eq!(Free::new(2).unwrap().cardinality(), Some(16));
    assert_eq!(PowerSet::new(3).unwrap().cardinality(), Some(8));
}

#[test]
fn atoms_entry_needs_a_principal_ultrafilter() {
    let atoms = FinCof::atoms_entry();
    let u = rs_construct(&FinCof, std::slice::from_ref(&atoms), &FinCof.zero(), 0, DEFAULT_BUDGET).unwrap();
    assert!(matches!(u.steps[0], Step::Witness { index: 0, .. }));
    assert_eq!(u.last(), &FinCofSet::finite([0]));
    assert_eq!(check_f_compatible(&u.membership(&FinCof), &atoms, 50), Verdict::Compatible);
    assert!(matches!(check_f_compatible(&CofiniteFilter, &atoms, 50), Verdict::Incompatible { .. }));
}
