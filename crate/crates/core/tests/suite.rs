use goi_core::compile::{abstract_term, comb_to_lambda, Fragment};
use goi_core::duality::type_to_involution;
use goi_core::machine::FeedbackBudget;
use goi_core::suite::{run_suite, suite_cases, Expectation, Outcome};
use goi_core::syntax::parse_lambda;
use goi_core::terms::{equivalent, Involution};
use goi_core::types::{principal_type, Mode};

fn via_types(src: &str) -> Involution {
    let m = abstract_term(&parse_lambda(&src.into()).unwrap()).unwrap();
    let j = principal_type(&comb_to_lambda(&m), Mode::Affine).unwrap();
    type_to_involution(&j.ty).unwrap()
}

#[test]
fn every_builtin_case_passes() {
    let report = run_suite(
        &suite_cases(Fragment::FullAffine),
        FeedbackBudget::default(),
    );
    for case in &report.cases {
        assert_eq!(
            case.outcome,
            Outcome::Pass,
            "{}: lhs\n{}\nrhs\n{}\n{:?}",
            case.id,
            case.lhs.as_deref().unwrap_or("-"),
            case.rhs.as_deref().unwrap_or("-"),
            case.error
        );
    }
    assert!(report.all_passed());
}

#[test]
fn affine_expectations_agree_with_principal_types() {
    for case in suite_cases(Fragment::StrictlyAffine) {
        let same = equivalent(&via_types(&case.lhs), &via_types(&case.rhs));
        let expected = case.expected == Expectation::Equal;
        assert_eq!(same, expected, "{}", case.id);
    }
}

#[test]
fn reports_are_deterministic() {
    let cases = suite_cases(Fragment::StrictlyAffine);
    let strip = |r: goi_core::suite::SuiteReport| {
        r.cases
            .into_iter()
            .map(|c| (c.id, c.outcome, c.lhs, c.rhs))
            .collect::<Vec<_>>()
    };
    let a = strip(run_suite(&cases, FeedbackBudget::default()));
    let b = strip(run_suite(&cases, FeedbackBudget::default()));
    assert_eq!(a, b);
}

#[test]
fn reports_serialize() {
    let report = run_suite(
        &suite_cases(Fragment::StrictlyAffine),
        FeedbackBudget::default(),
    );
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["total"], report.total);
    assert_eq!(v["failed"], 0);
    let first = &v["cases"][0];
    assert_eq!(first["outcome"], "pass");
    assert!(first["expected"] == "equal" || first["expected"] == "unequal");
    assert!(first["lhs"].is_string());
}
