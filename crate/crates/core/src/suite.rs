//! Equation suites: closed λ!-term equalities checked in the model.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::compile::{abstract_term, Fragment};
use crate::machine::{decode, FeedbackBudget};
use crate::syntax::{parse_lambda, render_involution, ParseError, RuleStyle, SourceText};
use crate::terms::{equivalent, Involution};

const BUILTIN: &str = include_str!("../data/equations.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Equal,
    Unequal,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::Equal => "equal",
            Expectation::Unequal => "unequal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationCase {
    pub id: String,
    pub fragment: Fragment,
    pub expected: Expectation,
    pub lhs: String,
    pub rhs: String,
}

/// Reads `id | fragment | expected | lhs | rhs` records, one per line.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_suite(src: &SourceText) -> Result<Vec<EquationCase>, ParseError> {
    let mut cases = Vec::new();
    for (n, line) in src.text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String, expected: &str| ParseError {
            origin: src.origin.clone(),
            line: n + 1,
            column: 1,
            message,
            expected: Some(expected.to_string()),
        };
        let fields: Vec<&str> = trimmed.split('|').map(str::trim).collect();
        let [id, fragment, expected, lhs, rhs] = fields[..] else {
            return Err(err(
                format!("record has {} fields", fields.len()),
                "`id | fragment | expected | lhs | rhs`",
            ));
        };
        if id.is_empty() {
            return Err(err("empty case id".into(), "a case id"));
        }
        let fragment = fragment
            .parse::<Fragment>()
            .map_err(|e| err(e.to_string(), "linear, affine or full"))?;
        let expected = match expected {
            "equal" => Expectation::Equal,
            "unequal" => Expectation::Unequal,
            other => {
                return Err(err(
                    format!("unknown expectation `{other}`"),
                    "equal or unequal",
                ))
            }
        };
        cases.push(EquationCase {
            id: id.to_string(),
            fragment,
            expected,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(cases)
}

pub fn builtin_cases() -> Vec<EquationCase> {
    parse_suite(&SourceText::new(BUILTIN, "equations.txt")).expect("built-in suite is well formed")
}

/// Built-in cases belonging to `fragment` or a smaller one.
pub fn suite_cases(fragment: Fragment) -> Vec<EquationCase> {
    builtin_cases()
        .into_iter()
        .filter(|c| c.fragment.within(fragment))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub expected: Expectation,
    pub outcome: Outcome,
    /// Canonical listing of each side's interpretation, when computed.
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub error: Option<String>,
    pub elapsed_us: u64,
}

/// Parse, abstract and interpret one side.
pub fn interpret_lambda(src: &str, budget: FeedbackBudget) -> Result<Involution, String> {
    let m = parse_lambda(&SourceText::inline(src)).map_err(|e| e.to_string())?;
    let c = abstract_term(&m).map_err(|e| e.to_string())?;
    decode(&c, budget).map_err(|e| e.to_string())
}

pub fn run_case(case: &EquationCase, budget: FeedbackBudget) -> CaseReport {
    let start = Instant::now();
    let sides = interpret_lambda(&case.lhs, budget)
        .and_then(|l| interpret_lambda(&case.rhs, budget).map(|r| (l, r)));
    let elapsed_us = start.elapsed().as_micros() as u64;
    match sides {
        Ok((l, r)) => {
            let equal = equivalent(&l, &r);
            let outcome = match (equal, case.expected) {
                (true, Expectation::Equal) | (false, Expectation::Unequal) => Outcome::Pass,
                _ => Outcome::Fail,
            };
            CaseReport {
                id: case.id.clone(),
                expected: case.expected,
                outcome,
                lhs: Some(render_involution(&l, RuleStyle::Merged)),
                rhs: Some(render_involution(&r, RuleStyle::Merged)),
                error: None,
                elapsed_us,
            }
        }
        Err(e) => CaseReport {
            id: case.id.clone(),
            expected: case.expected,
            outcome: Outcome::Error,
            lhs: None,
            rhs: None,
            error: Some(e),
            elapsed_us,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Runs every case in parallel; reports keep the input order.
pub fn run_suite(cases: &[EquationCase], budget: FeedbackBudget) -> SuiteReport {
    let reports: Vec<CaseReport> = cases.par_iter().map(|c| run_case(c, budget)).collect();
    let count = |o: Outcome| reports.iter().filter(|r| r.outcome == o).count();
    SuiteReport {
        total: reports.len(),
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        errors: count(Outcome::Error),
        cases: reports,
    }
}
