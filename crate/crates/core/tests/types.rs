mod common;

use common::{beta_step, random_lambda, rng};
use goi_core::duality::{involution_to_type, type_to_involution};
use goi_core::inhabit::is_minimal_tautology;
use goi_core::machine::check_coherence;
use goi_core::syntax::{parse_lambda, parse_type, render_judgement, render_type};
use goi_core::terms::LambdaTerm;
use goi_core::types::{principal_type, Mode, SimpleType};

/// Checks a β-normal term against a type, reading hypotheses from `ctx`.
fn has_type(ctx: &mut Vec<(String, SimpleType)>, m: &LambdaTerm, t: &SimpleType) -> bool {
    match (m, t) {
        (LambdaTerm::LinAbs(x, body), SimpleType::Arrow(a, b)) => {
            ctx.push((x.clone(), a.as_ref().clone()));
            let ok = has_type(ctx, body, b);
            ctx.pop();
            ok
        }
        (LambdaTerm::LinAbs(..), _) => false,
        _ => {
            let mut args = Vec::new();
            let mut head = m;
            while let LambdaTerm::App(f, a) = head {
                args.push(a.as_ref());
                head = f;
            }
            args.reverse();
            let LambdaTerm::Var(x) = head else {
                return false;
            };
            let Some((_, mut ty)) = ctx.iter().rev().find(|(y, _)| y == x).cloned() else {
                return false;
            };
            for a in args {
                let SimpleType::Arrow(dom, cod) = ty else {
                    return false;
                };
                if !has_type(ctx, a, &dom) {
                    return false;
                }
                ty = *cod;
            }
            &ty == t
        }
    }
}

#[test]
fn occurrence_bound_on_generated_judgements() {
    let mut r = rng(21);
    let mut judged = 0;
    for i in 0..600 {
        let m = random_lambda(&mut r, 5, i % 2 == 1);
        let mode = if i % 2 == 1 {
            Mode::Affine
        } else {
            Mode::Linear
        };
        let j = principal_type(&m, mode).unwrap();
        assert!(
            j.occurrences().iter().all(|(_, n)| *n <= 2),
            "{}",
            render_judgement(&j)
        );
        judged += 1;
    }
    assert_eq!(judged, 600);
}

#[test]
fn linear_subject_conversion() {
    let mut r = rng(22);
    let mut steps = 0;
    while steps < 250 {
        let mut m = random_lambda(&mut r, 6, false);
        let mut before = principal_type(&m, Mode::Linear).unwrap();
        while let Some(next) = beta_step(&m) {
            let after = principal_type(&next, Mode::Linear).unwrap();
            assert!(before.alpha_eq(&after), "{m}  ->  {next}");
            steps += 1;
            m = next;
            before = after;
        }
    }
}

#[test]
fn affine_reduction_can_change_the_principal_type() {
    let redex = parse_lambda(&"l* X.l* Y.l* Z.(l* V.X)@(Y@Z)".into()).unwrap();
    let reduct = parse_lambda(&"l* X.l* Y.l* Z.X".into()).unwrap();
    let a = principal_type(&redex, Mode::Affine).unwrap();
    let b = principal_type(&reduct, Mode::Affine).unwrap();
    assert_eq!(render_type(&a.ty), "a1 -> (a2 -> a3) -> a2 -> a1");
    assert_eq!(render_type(&b.ty), "a1 -> a2 -> a3 -> a1");
    assert_eq!(beta_step(&redex), Some(reduct));
}

#[test]
fn principal_types_ignore_binder_names() {
    let mut r = rng(23);
    for _ in 0..100 {
        let m = random_lambda(&mut r, 5, true);
        let renamed = rename_binders(&m);
        let a = principal_type(&m, Mode::Affine).unwrap();
        let b = principal_type(&renamed, Mode::Affine).unwrap();
        assert_eq!(a.ty, b.ty);
    }
}

fn rename_binders(m: &LambdaTerm) -> LambdaTerm {
    match m {
        LambdaTerm::LinAbs(x, body) => {
            let y = format!("{x}Q");
            let body = common::substitute(body, x, &LambdaTerm::var(y.clone()));
            LambdaTerm::lam(y, rename_binders(&body))
        }
        LambdaTerm::App(a, b) => LambdaTerm::app(rename_binders(a), rename_binders(b)),
        _ => m.clone(),
    }
}

#[test]
fn type_involution_round_trip() {
    let mut r = rng(24);
    for _ in 0..200 {
        let m = random_lambda(&mut r, 5, false);
        let t = principal_type(&m, Mode::Linear).unwrap().ty;
        assert!(t.occurrences().iter().all(|(_, n)| *n == 2));
        let f = type_to_involution(&t).unwrap();
        assert!(f.is_symmetric());
        assert!(check_coherence(&f).is_coherent(), "{t}");
        let back = involution_to_type(&f).unwrap();
        assert!(back.ty.alpha_eq(&t), "{t} vs {}", back.ty);
        assert!(back.warnings.is_empty());
    }
}

#[test]
fn affine_types_give_coherent_involutions() {
    let mut r = rng(25);
    for _ in 0..200 {
        let t = principal_type(&random_lambda(&mut r, 5, true), Mode::Affine)
            .unwrap()
            .ty;
        let f = type_to_involution(&t).unwrap();
        assert!(f.is_symmetric() && check_coherence(&f).is_coherent());
    }
}

#[test]
fn principal_types_are_inhabited_with_checked_witnesses() {
    let mut r = rng(26);
    for _ in 0..200 {
        let t = principal_type(&random_lambda(&mut r, 5, true), Mode::Affine)
            .unwrap()
            .ty;
        let found = is_minimal_tautology(&t);
        assert!(found.provable, "{t}");
        assert!(has_type(&mut Vec::new(), &found.witness.unwrap(), &t));
    }
}

#[test]
fn witnesses_for_named_formulas() {
    for src in [
        "a -> a",
        "((a -> b) -> c) -> (a -> b) -> c",
        "(a -> b) -> (b -> c) -> a -> c",
        "(a -> a -> b) -> a -> b",
        "((((a -> b) -> a) -> a) -> b) -> b",
    ] {
        let t = parse_type(&src.into()).unwrap();
        let w = is_minimal_tautology(&t).witness.expect(src);
        assert!(has_type(&mut Vec::new(), &w, &t), "{src}");
    }
    for src in [
        "((a -> b) -> a) -> a",
        "a",
        "(a -> b) -> b",
        "((a -> b) -> b) -> a",
    ] {
        assert!(
            !is_minimal_tautology(&parse_type(&src.into()).unwrap()).provable,
            "{src}"
        );
    }
}
