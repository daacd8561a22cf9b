//! Combinator expressions and λ!-terms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Combinator {
    I,
    B,
    C,
    K,
    W,
    D,
    F,
    /// δ, spelled `d`.
    Delta,
    B1,
}

impl Combinator {
    pub const ALL: [Combinator; 9] = [
        Combinator::I,
        Combinator::B,
        Combinator::C,
        Combinator::K,
        Combinator::W,
        Combinator::D,
        Combinator::F,
        Combinator::Delta,
        Combinator::B1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Combinator::I => "I",
            Combinator::B => "B",
            Combinator::C => "C",
            Combinator::K => "K",
            Combinator::W => "W",
            Combinator::D => "D",
            Combinator::F => "F",
            Combinator::Delta => "d",
            Combinator::B1 => "B1",
        }
    }

    /// B, C, I, K: the constants with a λ-image in the strictly affine calculus.
    pub fn is_strictly_affine(self) -> bool {
        matches!(
            self,
            Combinator::I | Combinator::B | Combinator::C | Combinator::K
        )
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown combinator `{0}`")]
pub struct UnknownCombinator(pub String);

impl FromStr for Combinator {
    type Err = UnknownCombinator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Combinator::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownCombinator(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CombTerm {
    Const(Combinator),
    App(Box<CombTerm>, Box<CombTerm>),
    Bang(Box<CombTerm>),
    FreeVar(String),
}

impl CombTerm {
    pub fn app(op: CombTerm, arg: CombTerm) -> CombTerm {
        CombTerm::App(Box::new(op), Box::new(arg))
    }

    /// Left-nested application of `head` to `args`.
    pub fn apps(head: CombTerm, args: impl IntoIterator<Item = CombTerm>) -> CombTerm {
        args.into_iter().fold(head, CombTerm::app)
    }

    pub fn bang(body: CombTerm) -> CombTerm {
        CombTerm::Bang(Box::new(body))
    }

    pub fn var(name: impl Into<String>) -> CombTerm {
        CombTerm::FreeVar(name.into())
    }

    pub fn is_closed(&self) -> bool {
        match self {
            CombTerm::Const(_) => true,
            CombTerm::App(m, n) => m.is_closed() && n.is_closed(),
            CombTerm::Bang(m) => m.is_closed(),
            CombTerm::FreeVar(_) => false,
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            CombTerm::Const(_) => false,
            CombTerm::App(m, n) => m.has_free(x) || n.has_free(x),
            CombTerm::Bang(m) => m.has_free(x),
            CombTerm::FreeVar(y) => x == y,
        }
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut Vec<String>) {
        match self {
            CombTerm::Const(_) => {}
            CombTerm::App(m, n) => {
                m.collect_free(out);
                n.collect_free(out);
            }
            CombTerm::Bang(m) => m.collect_free(out),
            CombTerm::FreeVar(y) => {
                if !out.contains(y) {
                    out.push(y.clone());
                }
            }
        }
    }

    /// `self[n/x]`; combinator terms have no binders.
    pub fn substitute(&self, x: &str, n: &CombTerm) -> CombTerm {
        match self {
            CombTerm::Const(_) => self.clone(),
            CombTerm::App(a, b) => CombTerm::app(a.substitute(x, n), b.substitute(x, n)),
            CombTerm::Bang(m) => CombTerm::bang(m.substitute(x, n)),
            CombTerm::FreeVar(y) if y == x => n.clone(),
            CombTerm::FreeVar(_) => self.clone(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            CombTerm::Const(_) | CombTerm::FreeVar(_) => 1,
            CombTerm::App(m, n) => 1 + m.size() + n.size(),
            CombTerm::Bang(m) => 1 + m.size(),
        }
    }

    pub fn constants(&self) -> Vec<Combinator> {
        let mut out = Vec::new();
        self.collect_consts(&mut out);
        out
    }

    fn collect_consts(&self, out: &mut Vec<Combinator>) {
        match self {
            CombTerm::Const(c) => {
                if !out.contains(c) {
                    out.push(*c);
                }
            }
            CombTerm::App(m, n) => {
                m.collect_consts(out);
                n.collect_consts(out);
            }
            CombTerm::Bang(m) => m.collect_consts(out),
            CombTerm::FreeVar(_) => {}
        }
    }
}

impl From<Combinator> for CombTerm {
    fn from(c: Combinator) -> Self {
        CombTerm::Const(c)
    }
}

/// λ!-terms: variables, application, linear and !-abstraction, promotion and
/// embedded combinator constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LambdaTerm {
    Var(String),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
    LinAbs(String, Box<LambdaTerm>),
    BangAbs(String, Box<LambdaTerm>),
    Bang(Box<LambdaTerm>),
    Comb(Combinator),
}

impl LambdaTerm {
    pub fn var(name: impl Into<String>) -> LambdaTerm {
        LambdaTerm::Var(name.into())
    }

    pub fn app(fun: LambdaTerm, arg: LambdaTerm) -> LambdaTerm {
        LambdaTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn apps(head: LambdaTerm, args: impl IntoIterator<Item = LambdaTerm>) -> LambdaTerm {
        args.into_iter().fold(head, LambdaTerm::app)
    }

    pub fn lam(binder: impl Into<String>, body: LambdaTerm) -> LambdaTerm {
        LambdaTerm::LinAbs(binder.into(), Box::new(body))
    }

    /// Nested linear abstractions over `binders`, outermost first.
    pub fn lams<S: Into<String>>(
        binders: impl IntoIterator<Item = S>,
        body: LambdaTerm,
    ) -> LambdaTerm {
        let binders: Vec<String> = binders.into_iter().map(Into::into).collect();
        binders
            .into_iter()
            .rev()
            .fold(body, |acc, x| LambdaTerm::lam(x, acc))
    }

    pub fn bang_lam(binder: impl Into<String>, body: LambdaTerm) -> LambdaTerm {
        LambdaTerm::BangAbs(binder.into(), Box::new(body))
    }

    pub fn bang(body: LambdaTerm) -> LambdaTerm {
        LambdaTerm::Bang(Box::new(body))
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            LambdaTerm::Var(x) => {
                if !bound.contains(x) && !out.contains(x) {
                    out.push(x.clone());
                }
            }
            LambdaTerm::App(m, n) => {
                m.collect_free(bound, out);
                n.collect_free(bound, out);
            }
            LambdaTerm::LinAbs(x, m) | LambdaTerm::BangAbs(x, m) => {
                bound.push(x.clone());
                m.collect_free(bound, out);
                bound.pop();
            }
            LambdaTerm::Bang(m) => m.collect_free(bound, out),
            LambdaTerm::Comb(_) => {}
        }
    }

    /// Number of free occurrences of `x`.
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            LambdaTerm::Var(y) => usize::from(x == y),
            LambdaTerm::App(m, n) => m.occurrences(x) + n.occurrences(x),
            LambdaTerm::LinAbs(y, m) | LambdaTerm::BangAbs(y, m) => {
                if x == y {
                    0
                } else {
                    m.occurrences(x)
                }
            }
            LambdaTerm::Bang(m) => m.occurrences(x),
            LambdaTerm::Comb(_) => 0,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn contains_bang(&self) -> bool {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Comb(_) => false,
            LambdaTerm::App(m, n) => m.contains_bang() || n.contains_bang(),
            LambdaTerm::LinAbs(_, m) => m.contains_bang(),
            LambdaTerm::BangAbs(..) | LambdaTerm::Bang(_) => true,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Var(_) | LambdaTerm::Comb(_) => 1,
            LambdaTerm::App(m, n) => 1 + m.size() + n.size(),
            LambdaTerm::LinAbs(_, m) | LambdaTerm::BangAbs(_, m) | LambdaTerm::Bang(m) => {
                1 + m.size()
            }
        }
    }
}

impl From<&CombTerm> for LambdaTerm {
    fn from(m: &CombTerm) -> Self {
        match m {
            CombTerm::Const(c) => LambdaTerm::Comb(*c),
            CombTerm::App(a, b) => LambdaTerm::app(a.as_ref().into(), b.as_ref().into()),
            CombTerm::Bang(a) => LambdaTerm::bang(a.as_ref().into()),
            CombTerm::FreeVar(x) => LambdaTerm::Var(x.clone()),
        }
    }
}

impl TryFrom<&LambdaTerm> for CombTerm {
    type Error = ();

    /// Succeeds when the term has no abstractions.
    fn try_from(m: &LambdaTerm) -> Result<Self, ()> {
        Ok(match m {
            LambdaTerm::Var(x) => CombTerm::FreeVar(x.clone()),
            LambdaTerm::Comb(c) => CombTerm::Const(*c),
            LambdaTerm::App(a, b) => CombTerm::app(
                CombTerm::try_from(a.as_ref())?,
                CombTerm::try_from(b.as_ref())?,
            ),
            LambdaTerm::Bang(a) => CombTerm::bang(CombTerm::try_from(a.as_ref())?),
            LambdaTerm::LinAbs(..) | LambdaTerm::BangAbs(..) => return Err(()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinator_names_round_trip() {
        for c in Combinator::ALL {
            assert_eq!(c.name().parse::<Combinator>().unwrap(), c);
        }
        assert!("Z".parse::<Combinator>().is_err());
    }

    #[test]
    fn free_variables_respect_binders() {
        let t = LambdaTerm::lam(
            "X",
            LambdaTerm::app(LambdaTerm::var("X"), LambdaTerm::var("Y")),
        );
        assert_eq!(t.free_vars(), vec!["Y"]);
        assert_eq!(t.occurrences("X"), 0);
        assert_eq!(t.occurrences("Y"), 1);
    }

    #[test]
    fn comb_substitution() {
        let m = CombTerm::apps(
            Combinator::K.into(),
            [CombTerm::var("X"), CombTerm::var("Y")],
        );
        let n = m.substitute("X", &Combinator::I.into());
        assert_eq!(n.free_vars(), vec!["Y"]);
        assert!(!n.has_free("X"));
    }
}
