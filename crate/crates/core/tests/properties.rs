use proptest::prelude::*;

use rsol_core::formulas::{alpha_eq, parse, print, substitute_fo, FoVar, Formula, Signature, SoVar, Term};
use rsol_core::structures::{
    eval_fo, eval_full_so, eval_so, exact_k, Assignment, FiniteStructure, Relation,
};
use rsol_core::theta::Enumerated;

fn sig() -> Signature {
    "P0/1,P1/2,c0".parse().unwrap()
}

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![(0..3u32).prop_map(Term::var), Just(Term::Const(0))]
}

fn atom(so: bool) -> BoxedStrategy<Formula> {
    let base = prop_oneof![
        term().prop_map(|t| Formula::Pred(0, vec![t])),
        (term(), term()).prop_map(|(a, b)| Formula::Pred(1, vec![a, b])),
        (term(), term()).prop_map(|(a, b)| Formula::eq(a, b)),
    ];
    if so {
        prop_oneof![3 => base, 1 => term().prop_map(|t| Formula::Apply(SoVar::new(0, 1), vec![t]))].boxed()
    } else {
        base.boxed()
    }
}

fn formula(so: bool) -> impl Strategy<Value = Formula> {
    atom(so).prop_recursive(4, 24, 2, move |inner| {
        let fo = prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (0..3u32, inner.clone()).prop_map(|(v, f)| Formula::forall(FoVar(v), f)),
            (0..3u32, inner.clone()).prop_map(|(v, f)| Formula::exists(FoVar(v), f)),
        ];
        if so {
            prop_oneof![
                4 => fo,
                1 => inner.clone().prop_map(|f| Formula::forall_so(SoVar::new(0, 1), f)),
                1 => inner.prop_map(|f| Formula::exists_so(SoVar::new(0, 1), f)),
            ]
            .boxed()
        } else {
            fo.boxed()
        }
    })
}

fn structure() -> impl Strategy<Value = FiniteStructure> {
    (1..=3u32)
        .prop_flat_map(|n| (Just(n), any::<u64>(), any::<u64>(), 0..n))
        .prop_map(|(n, p, q, c)| {
            let p0 = Relation::from_mask(1, n, p & ((1 << n) - 1));
            let p1 = Relation::from_mask(2, n, q & ((1 << (n * n)) - 1));
            FiniteStructure::new(n, sig(), vec![p0, p1], vec![], vec![c]).unwrap()
        })
}

fn closed(f: Formula) -> Formula {
    let mut g = f;
    for v in g.free_fo() {
        g = Formula::forall(v, g);
    }
    for v in g.free_so() {
        g = Formula::exists_so(v, g);
    }
    g
}

proptest! {
    #[test]
    fn print_parse_round_trip(f in formula(true)) {
        let back = parse(&print(&f), &sig()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn normalize_preserves_truth(f in formula(false), s in structure()) {
        let a = Assignment::new().with_fo(FoVar(0), 0).with_fo(FoVar(1), s.size() - 1).with_fo(FoVar(2), 0);
        prop_assert_eq!(eval_fo(&s, &f, &a).unwrap(), eval_fo(&s, &f.normalize(), &a).unwrap());
    }

    #[test]
    fn renaming_a_bound_variable_is_alpha_equivalent(f in formula(false)) {
        let fresh = FoVar(7);
        let body = substitute_fo(&f, FoVar(0), &Term::Var(fresh));
        let a = Formula::forall(FoVar(0), f);
        let b = Formula::forall(fresh, body);
        prop_assert!(alpha_eq(&a, &b));
    }

    #[test]
    fn first_order_sentences_ignore_the_family(f in formula(false), s in structure()) {
        let f = closed(f);
        let k = exact_k(&s, &Enumerated::dsl(&sig()), &[1]).unwrap();
        let a = Assignment::new();
        prop_assert_eq!(eval_so(&s, &k, &f, &a).unwrap(), eval_fo(&s, &f, &a).unwrap());
    }

    #[test]
    fn parameters_define_every_unary_relation(f in formula(true), s in structure()) {
        let f = closed(f);
        let k = exact_k(&s, &Enumerated::all_fo(&sig(), true), &[1]).unwrap();
        let a = Assignment::new();
        prop_assert_eq!(eval_so(&s, &k, &f, &a).unwrap(), eval_full_so(&s, &f, &a).unwrap());
    }
}
