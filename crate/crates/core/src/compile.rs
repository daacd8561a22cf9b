//! λ*-abstraction: compiling λ!-terms to combinator expressions, and the
//! λ-images of the strictly affine constants.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::terms::{CombTerm, Combinator, LambdaTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fragment {
    StrictlyLinear,
    StrictlyAffine,
    FullAffine,
}

impl Fragment {
    pub const ALL: [Fragment; 3] = [
        Fragment::StrictlyLinear,
        Fragment::StrictlyAffine,
        Fragment::FullAffine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fragment::StrictlyLinear => "linear",
            Fragment::StrictlyAffine => "affine",
            Fragment::FullAffine => "full",
        }
    }

    /// Whether every term of `self` also belongs to `other`.
    pub fn within(self, other: Fragment) -> bool {
        self <= other
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown fragment `{0}` (expected linear, affine or full)")]
pub struct UnknownFragment(pub String);

impl FromStr for Fragment {
    type Err = UnknownFragment;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" | "strictly-linear" => Ok(Fragment::StrictlyLinear),
            "affine" | "strictly-affine" => Ok(Fragment::StrictlyAffine),
            "full" | "full-affine" => Ok(Fragment::FullAffine),
            other => Err(UnknownFragment(other.to_string())),
        }
    }
}

/// Smallest fragment containing `m`.
pub fn classify(m: &LambdaTerm) -> Fragment {
    if m.contains_bang() {
        return Fragment::FullAffine;
    }
    let mut fragment = Fragment::StrictlyLinear;
    let mut stack = vec![m];
    while let Some(t) = stack.pop() {
        match t {
            LambdaTerm::LinAbs(x, body) => {
                match body.occurrences(x) {
                    1 => {}
                    0 => fragment = fragment.max(Fragment::StrictlyAffine),
                    _ => return Fragment::FullAffine,
                }
                stack.push(body);
            }
            LambdaTerm::App(a, b) => {
                stack.push(a);
                stack.push(b);
            }
            LambdaTerm::BangAbs(_, body) | LambdaTerm::Bang(body) => stack.push(body),
            LambdaTerm::Var(_) | LambdaTerm::Comb(_) => {}
        }
    }
    fragment
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    /// `λ*x.!M` with `x` free in `M`: a linear variable cannot be replicated.
    #[error("linear binder `{0}` occurs under `!`; use `l*!` to abstract it")]
    LinearUnderBang(String),
}

/// Eliminates every abstraction, innermost first.
pub fn abstract_term(m: &LambdaTerm) -> Result<CombTerm, CompileError> {
    Ok(match m {
        LambdaTerm::Var(x) => CombTerm::var(x.clone()),
        LambdaTerm::Comb(c) => CombTerm::Const(*c),
        LambdaTerm::App(a, b) => CombTerm::app(abstract_term(a)?, abstract_term(b)?),
        LambdaTerm::Bang(a) => CombTerm::bang(abstract_term(a)?),
        LambdaTerm::LinAbs(x, body) => linear(x, &abstract_term(body)?)?,
        LambdaTerm::BangAbs(x, body) => banged(x, &abstract_term(body)?),
    })
}

fn k(m: CombTerm) -> CombTerm {
    CombTerm::app(Combinator::K.into(), m)
}

fn b(m: CombTerm, n: CombTerm) -> CombTerm {
    CombTerm::apps(Combinator::B.into(), [m, n])
}

fn c(m: CombTerm, n: CombTerm) -> CombTerm {
    CombTerm::apps(Combinator::C.into(), [m, n])
}

/// `λ*x.body` for an abstraction-free body.
fn linear(x: &str, body: &CombTerm) -> Result<CombTerm, CompileError> {
    match body {
        CombTerm::FreeVar(y) if y == x => Ok(Combinator::I.into()),
        _ if !body.has_free(x) => Ok(k(body.clone())),
        CombTerm::App(m, n) if m.has_free(x) => Ok(c(linear(x, m)?, n.as_ref().clone())),
        CombTerm::App(m, n) => Ok(b(m.as_ref().clone(), linear(x, n)?)),
        _ => Err(CompileError::LinearUnderBang(x.to_string())),
    }
}

/// `λ*!x.body` for an abstraction-free body.
fn banged(x: &str, body: &CombTerm) -> CombTerm {
    match body {
        CombTerm::Const(_) => k(body.clone()),
        CombTerm::FreeVar(y) if y == x => Combinator::D.into(),
        CombTerm::FreeVar(_) => k(body.clone()),
        CombTerm::Bang(m) if matches!(m.as_ref(), CombTerm::FreeVar(y) if y == x) => {
            CombTerm::app(Combinator::F.into(), CombTerm::bang(Combinator::I.into()))
        }
        CombTerm::Bang(m) => b(
            CombTerm::app(Combinator::F.into(), CombTerm::bang(banged(x, m))),
            Combinator::Delta.into(),
        ),
        CombTerm::App(m, n) => match (m.has_free(x), n.has_free(x)) {
            (true, false) => c(banged(x, m), n.as_ref().clone()),
            (false, true) => b(m.as_ref().clone(), banged(x, n)),
            (true, true) => CombTerm::app(
                Combinator::W.into(),
                c(
                    CombTerm::app(
                        CombTerm::app(Combinator::B.into(), Combinator::B.into()),
                        banged(x, m),
                    ),
                    banged(x, n),
                ),
            ),
            (false, false) => k(body.clone()),
        },
    }
}

/// λ-image of a combinator expression: B, C, I, K are expanded, the other
/// constants are kept as is.
pub fn comb_to_lambda(m: &CombTerm) -> LambdaTerm {
    match m {
        CombTerm::Const(c) => constant_lambda(*c),
        CombTerm::App(a, b) => LambdaTerm::app(comb_to_lambda(a), comb_to_lambda(b)),
        CombTerm::Bang(a) => LambdaTerm::bang(comb_to_lambda(a)),
        CombTerm::FreeVar(x) => LambdaTerm::var(x.clone()),
    }
}

fn constant_lambda(c: Combinator) -> LambdaTerm {
    let v = LambdaTerm::var;
    match c {
        Combinator::I => LambdaTerm::lam("X", v("X")),
        Combinator::K => LambdaTerm::lams(["X", "Y"], v("X")),
        Combinator::B => LambdaTerm::lams(
            ["X", "Y", "Z"],
            LambdaTerm::app(v("X"), LambdaTerm::app(v("Y"), v("Z"))),
        ),
        Combinator::C => {
            LambdaTerm::lams(["X", "Y", "Z"], LambdaTerm::apps(v("X"), [v("Z"), v("Y")]))
        }
        other => LambdaTerm::Comb(other),
    }
}
