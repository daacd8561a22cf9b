use proptest::prelude::*;

use goi_core::syntax::{
    parse_rules, parse_type, render_involution, render_type, RuleStyle, SourceText,
};
use goi_core::terms::{canonicalize, equivalent, Involution, Move, Rule, Subst};
use goi_core::types::SimpleType;
use goi_core::unify::{match_onto, unify};

fn move_strategy(vars: &'static [&'static str]) -> impl Strategy<Value = Move> + Clone {
    let leaf = prop_oneof![
        Just(Move::Eps),
        proptest::sample::select(vars).prop_map(Move::var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Move::l),
            inner.clone().prop_map(Move::r),
            (inner.clone(), inner).prop_map(|(a, b)| Move::pair(a, b)),
        ]
    })
}

fn involution_strategy() -> impl Strategy<Value = Involution> {
    let var_move = move_strategy(&["X", "Y", "Z"]);
    proptest::collection::vec((var_move.clone(), var_move), 0..5).prop_map(|pairs| {
        // keep the right-hand side's variables among the left's
        let rules = pairs
            .into_iter()
            .map(|(lhs, rhs)| {
                let keep: Vec<String> = goi_core::terms::free_move_vars(&lhs);
                let rhs = ground_unlisted(&rhs, &keep);
                Rule::new(lhs, rhs)
            })
            .collect();
        Involution::new(rules)
    })
}

fn ground_unlisted(t: &Move, keep: &[String]) -> Move {
    match t {
        Move::Var(x) if !keep.contains(x) => Move::Eps,
        Move::L(a) => Move::l(ground_unlisted(a, keep)),
        Move::R(a) => Move::r(ground_unlisted(a, keep)),
        Move::Pair(a, b) => Move::pair(ground_unlisted(a, keep), ground_unlisted(b, keep)),
        _ => t.clone(),
    }
}

fn rename(f: &Involution) -> Involution {
    let s = Subst::from_pairs([
        ("X".to_string(), Move::var("P")),
        ("Y".to_string(), Move::var("Q")),
        ("Z".to_string(), Move::var("X")),
    ]);
    Involution::new(f.rules().iter().map(|r| r.apply(&s)).collect())
}

fn type_strategy() -> impl Strategy<Value = SimpleType> {
    let leaf = proptest::sample::select(&["a", "b", "c"][..]).prop_map(SimpleType::var);
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| SimpleType::arrow(a, b))
    })
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(f in involution_strategy()) {
        let once = canonicalize(&f);
        prop_assert_eq!(canonicalize(&once), once);
    }

    #[test]
    fn canonical_form_ignores_names_and_order(f in involution_strategy()) {
        let mut rules = f.rules().to_vec();
        rules.reverse();
        let shuffled = Involution::new(rules);
        prop_assert!(equivalent(&f, &rename(&shuffled)));
    }

    #[test]
    fn rules_survive_rendering(f in involution_strategy()) {
        for style in [RuleStyle::Directed, RuleStyle::Merged] {
            let text = render_involution(&f, style);
            let back = parse_rules(&SourceText::inline(text.clone())).unwrap();
            prop_assert!(equivalent(&f, &back), "{}", text);
        }
    }

    #[test]
    fn types_survive_rendering(t in type_strategy()) {
        let back = parse_type(&SourceText::inline(render_type(&t))).unwrap();
        prop_assert!(back.alpha_eq(&t));
    }

    #[test]
    fn unifiers_unify(a in move_strategy(&["X", "Y"]), b in move_strategy(&["Y", "Z"])) {
        if let Ok(s) = unify(&a, &b) {
            prop_assert_eq!(s.apply(&a), s.apply(&b));
            prop_assert_eq!(s.apply(&s.apply(&a)), s.apply(&a));
        }
    }

    /// Any common instance of `a` and `b` factors through their unifier.
    #[test]
    fn unifiers_are_most_general(
        a in move_strategy(&["X", "Y"]),
        b in move_strategy(&["Z", "V"]),
        x in move_strategy(&["P"]),
        y in move_strategy(&["P"]),
    ) {
        let s = unify(&a, &b);
        let inst = Subst::from_pairs([("X".to_string(), x), ("Y".to_string(), y)]);
        let target = inst.apply(&a);
        let mut back = Subst::new();
        if match_onto(&b, &target, &mut back) {
            let s = s.expect("a common instance exists");
            let mut rho = Subst::new();
            prop_assert!(match_onto(&s.apply(&a), &target, &mut rho));
        }
    }
}
