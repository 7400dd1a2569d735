use super::*;
use crate::formulas::{parse, FoVar, SoVar};
use crate::structures::{materialize_k, FiniteStructure, TruthAlgebra};
use crate::theta::WeakSo;
use proptest::prelude::*;

fn principal(atom: u32) -> impl Fn(&u32) -> bool {
    move |e: &u32| e >> atom & 1 == 1
}

#[test]
fn ultrafilter_clauses() {
    let p = PowerSet::new(3).unwrap();
    assert_eq!(p.cardinality(), Some(8));
    assert!(is_ultrafilter(&p, &principal(0)).unwrap());
    assert!(!is_ultrafilter(&p, &|_: &u32| true).unwrap());
    // Upward closed and proper, but neither {0} nor {1,2} is in it.
    assert!(!is_ultrafilter(&p, &|e: &u32| *e == 0b111 || e.count_ones() == 2).unwrap());
    let sample: Vec<FinCofSet> = (0..40).filter_map(|i| FinCof.element(i)).collect();
    assert!(is_ultrafilter_on(&FinCof, &CofiniteFilter, &sample));
    assert_eq!(is_ultrafilter(&FinCof, &CofiniteFilter), Err(BooleanError::NotFinite));
}

#[test]
fn compatibility_verdicts() {
    let p = PowerSet::new(3).unwrap();
    let singletons = RegularEntry::finite(EntryKind::Join, vec![1, 2, 4], 7, "singletons");
    assert_eq!(check_f_compatible(&principal(0), &singletons, 0), Verdict::Compatible);
    let meet = RegularEntry::finite(EntryKind::Meet, vec![3, 5], 1, "meet");
    assert_eq!(check_f_compatible(&principal(0), &meet, 0), Verdict::Compatible);
    // {1,2} is in the filter at 1 but its designated join claim 0 is not.
    let bad = RegularEntry::finite(EntryKind::Join, vec![6], 0, "bad");
    assert_eq!(
        check_f_compatible(&principal(1), &bad, 0),
        Verdict::Incompatible { witness: Some(0) }
    );
    assert!(verify_entry(&p, &singletons, 0).is_ok());

    let atoms = FinCof::atoms_entry();
    assert_eq!(
        check_f_compatible(&CofiniteFilter, &atoms, 100),
        Verdict::Incompatible { witness: None }
    );
    let at3 = |e: &FinCofSet| e.contains(3);
    assert_eq!(check_f_compatible(&at3, &atoms, 100), Verdict::Compatible);
    let at500 = |e: &FinCofSet| e.contains(500);
    assert_eq!(
        check_f_compatible(&at500, &atoms, 100),
        Verdict::Inconclusive { inspected: 100 }
    );
}

#[test]
fn entry_verification() {
    let p = PowerSet::new(2).unwrap();
    let ok = RegularEntry::finite(EntryKind::Join, vec![1, 2], 3, "s");
    assert_eq!(verify_entry(&p, &ok, 0), Ok(EntryCheck::Exact));
    let wrong = RegularEntry::finite(EntryKind::Join, vec![1, 2], 1, "s");
    assert_eq!(
        verify_entry(&p, &wrong, 0),
        Err(BooleanError::BoundViolated {
            entry: "s".into(),
            index: 1
        })
    );
    let loose = RegularEntry::finite(EntryKind::Meet, vec![1, 3], 0, "m");
    assert_eq!(verify_entry(&p, &loose, 0), Err(BooleanError::NotExtremal("m".into())));
    for len in [0, 5, 50] {
        assert_eq!(
            verify_entry(&FinCof, &FinCof::atoms_entry(), len),
            Ok(EntryCheck::PrefixVerified(len))
        );
    }
}

#[test]
fn rasiowa_sikorski_on_powerset_three() {
    let p = PowerSet::new(3).unwrap();
    let family = complete_regular_family(&p).unwrap();
    assert_eq!(family.len(), 512);
    for avoid in (0..8u32).filter(|a| *a != 7) {
        let u = rs_construct(&p, &family, &avoid, usize::MAX, DEFAULT_BUDGET).unwrap();
        for w in u.chain.windows(2) {
            assert!(p.le(&w[1], &w[0]) && w[1] != 0);
        }
        let m = u.membership(&p);
        assert!(is_ultrafilter(&p, &m).unwrap());
        assert!(!m.contains(&avoid));
        assert_eq!(u.last().count_ones(), 1, "ultrafilters on a finite powerset are principal");
        for e in &family {
            assert_eq!(check_f_compatible(&m, e, 0), Verdict::Compatible, "{}", e.label);
        }
    }
}

#[test]
fn finite_powersets_give_principal_ultrafilters() {
    for n in 1..=5 {
        let p = PowerSet::new(n).unwrap();
        for avoid in 0..(1u32 << n) - 1 {
            let u = rs_construct(&p, &[], &avoid, usize::MAX, DEFAULT_BUDGET).unwrap();
            assert_eq!(u.last().count_ones(), 1);
            assert_eq!(u.last() & avoid, 0);
        }
    }
}

#[test]
fn rasiowa_sikorski_on_fincof() {
    let atoms = FinCof::atoms_entry();
    let u = rs_construct(&FinCof, std::slice::from_ref(&atoms), &FinCof.zero(), 0, DEFAULT_BUDGET).unwrap();
    assert_eq!(u.chain[0], FinCof.one());
    let Step::Witness { member, .. } = &u.steps[0] else {
        panic!("the atoms entry needs a witness")
    };
    assert_eq!(u.last(), member);
    let m = u.membership(&FinCof);
    assert_eq!(check_f_compatible(&m, &atoms, 10), Verdict::Compatible);
    assert_eq!(
        check_f_compatible(&CofiniteFilter, &atoms, 10),
        Verdict::Incompatible { witness: None }
    );
    assert_eq!(
        rs_construct(&FinCof, &[], &FinCof.one(), 0, 10).unwrap_err(),
        BooleanError::AvoidUnit
    );
}

#[test]
fn refuted_and_exhausted_claims() {
    let p = PowerSet::new(2).unwrap();
    // Claims join {0} for members {0},{1}: the bound branch is blocked once
    // b ≤ {0}, and member {1} is not below the claim.
    let lie = RegularEntry::finite(EntryKind::Join, vec![2, 1], 1, "lie");
    assert_eq!(
        rs_construct(&p, &[lie], &2, 0, 10).unwrap_err(),
        BooleanError::ClaimRefuted("lie".into())
    );
    let far = RegularEntry::infinite(EntryKind::Join, "far", |n| FinCofSet::finite([n as u64 + 1000]), FinCof.one());
    assert_eq!(
        rs_construct(&FinCof, &[far], &FinCofSet::cofinite([5]), 0, 10).unwrap_err(),
        BooleanError::BudgetExhausted("far".into())
    );
}

#[test]
fn free_algebra_classes() {
    let f = Free::new(2).unwrap();
    assert_eq!(f.cardinality(), Some(16));
    let elems = all_elements(&f).unwrap();
    assert_eq!(elems.len(), 16);
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            assert!(!f.equal(a, b));
        }
    }
    let x = f.parse("p0 & ~p1 | ~(p0 | p1)").unwrap();
    assert_eq!(elems.iter().filter(|e| f.equal(e, &x)).count(), 1);
    assert!(f.equal(&f.parse("~(p0 & p1)").unwrap(), &f.parse("~p0 | ~p1").unwrap()));
    assert!(f.parse("p2").is_none());
    assert!(Free::new(17).is_err());
}

#[test]
fn fincof_closure() {
    let a = FinCofSet::finite([1, 2]);
    assert_eq!(FinCof.complement(&a), FinCofSet::cofinite([1, 2]));
    let m = FinCof.meet(&FinCofSet::cofinite([1]), &FinCofSet::cofinite([4]));
    assert_eq!(m, FinCofSet::cofinite([1, 4]));
    assert_eq!(FinCofSet::parse("~{1,4}"), Some(m));
}

#[test]
fn truth_algebra_family() {
    let s = FiniteStructure::new(
        3,
        "P0/1".parse().unwrap(),
        vec![Relation::from_tuples(1, 3, [&[1u32][..]])],
        vec![],
        vec![],
    )
    .unwrap();
    let fam = WeakSo::new(s.signature(), 1);
    let k = materialize_k(&s, &fam, 2).unwrap();
    let cx = RegCheck {
        structure: &s,
        vars: 1,
        k: &k,
        family: &fam,
        bound: 2,
    };
    let v = SoVar::new(0, 1);
    let items = vec![
        (parse("P0(x0) ∨ x0 = x1", s.signature()).unwrap(), LemmaItem::I, Variable::Fo(FoVar(1))),
        (parse("X0(x0)", s.signature()).unwrap(), LemmaItem::IV, Variable::So(v)),
        (parse("X0(x0) → P0(x0)", s.signature()).unwrap(), LemmaItem::V, Variable::So(v)),
    ];
    let entries = lemma_family(&cx, &items).unwrap();
    let alg = TruthAlgebra::new(&s, 1);
    for e in &entries {
        assert_eq!(verify_entry(&alg, e, 0), Ok(EntryCheck::Exact));
    }
    let u = rs_construct(&alg, &entries, &alg.zero(), usize::MAX, 100).unwrap();
    let m = u.membership(&alg);
    assert!(is_ultrafilter(&alg, &m).unwrap());
    for e in &entries {
        assert!(check_f_compatible(&m, e, 0).is_compatible());
    }
}

fn laws<A: BooleanAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem, c: &A::Elem) {
    assert!(alg.equal(&alg.meet(a, &alg.join(a, b)), a));
    assert!(alg.equal(&alg.join(a, &alg.meet(a, b)), a));
    assert!(alg.equal(
        &alg.meet(a, &alg.join(b, c)),
        &alg.join(&alg.meet(a, b), &alg.meet(a, c))
    ));
    assert!(alg.is_zero(&alg.meet(a, &alg.complement(a))));
    assert!(alg.is_one(&alg.join(a, &alg.complement(a))));
}

proptest! {
    #[test]
    fn powerset_laws(a in 0u32..32, b in 0u32..32, c in 0u32..32) {
        laws(&PowerSet::new(5).unwrap(), &a, &b, &c);
    }

    #[test]
    fn free_laws(a in 0usize..256, b in 0usize..256, c in 0usize..256) {
        let f = Free::new(3).unwrap();
        laws(&f, &f.element(a).unwrap(), &f.element(b).unwrap(), &f.element(c).unwrap());
    }

    #[test]
    fn fincof_laws(a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let e = |i| FinCof.element(i).unwrap();
        laws(&FinCof, &e(a), &e(b), &e(c));
    }
}
