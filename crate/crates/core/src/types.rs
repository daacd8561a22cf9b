//! Simple types and principal type schemes for the strictly linear and
//! strictly affine λ-calculi.

use std::collections::HashMap;

use crate::terms::{Combinator, LambdaTerm, Subst, Term};
use crate::unify::{match_onto, mgu_types, UnifyError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleType {
    Var(String),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

pub type TypeSubst = Subst<SimpleType>;

impl SimpleType {
    pub fn var(name: impl Into<String>) -> SimpleType {
        SimpleType::Var(name.into())
    }

    pub fn arrow(domain: SimpleType, codomain: SimpleType) -> SimpleType {
        SimpleType::Arrow(Box::new(domain), Box::new(codomain))
    }

    /// Right-nested arrows `args[0] -> args[1] -> ... -> result`.
    pub fn arrows(args: impl IntoIterator<Item = SimpleType>, result: SimpleType) -> SimpleType {
        let args: Vec<SimpleType> = args.into_iter().collect();
        args.into_iter()
            .rev()
            .fold(result, |acc, a| SimpleType::arrow(a, acc))
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    /// Occurrence count of every variable, in first-occurrence order.
    pub fn occurrences(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        count_occurrences(self, &mut out);
        out
    }

    pub fn max_occurrences(&self) -> usize {
        self.occurrences()
            .into_iter()
            .map(|(_, n)| n)
            .max()
            .unwrap_or(0)
    }

    /// Renames variables to `a1, a2, ...` in first-occurrence order.
    pub fn canonical(&self) -> SimpleType {
        let mut names = HashMap::new();
        rename_canonical(self, &mut names)
    }

    pub fn alpha_eq(&self, other: &SimpleType) -> bool {
        self.canonical() == other.canonical()
    }

    /// Arguments and final target of a right-nested arrow.
    pub fn uncurry(&self) -> (Vec<&SimpleType>, &SimpleType) {
        let mut args = Vec::new();
        let mut cur = self;
        while let SimpleType::Arrow(a, b) = cur {
            args.push(a.as_ref());
            cur = b;
        }
        (args, cur)
    }

    pub fn size(&self) -> usize {
        match self {
            SimpleType::Var(_) => 1,
            SimpleType::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }
}

fn count_occurrences(t: &SimpleType, out: &mut Vec<(String, usize)>) {
    match t {
        SimpleType::Var(v) => match out.iter_mut().find(|(w, _)| w == v) {
            Some((_, n)) => *n += 1,
            None => out.push((v.clone(), 1)),
        },
        SimpleType::Arrow(a, b) => {
            count_occurrences(a, out);
            count_occurrences(b, out);
        }
    }
}

fn rename_canonical(t: &SimpleType, names: &mut HashMap<String, String>) -> SimpleType {
    match t {
        SimpleType::Var(v) => {
            let next = names.len() + 1;
            SimpleType::Var(
                names
                    .entry(v.clone())
                    .or_insert_with(|| format!("a{next}"))
                    .clone(),
            )
        }
        SimpleType::Arrow(a, b) => {
            let a = rename_canonical(a, names);
            let b = rename_canonical(b, names);
            SimpleType::arrow(a, b)
        }
    }
}

impl Term for SimpleType {
    fn as_var(&self) -> Option<&str> {
        match self {
            SimpleType::Var(v) => Some(v),
            SimpleType::Arrow(..) => None,
        }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            SimpleType::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            SimpleType::Arrow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn occurs(&self, name: &str) -> bool {
        match self {
            SimpleType::Var(v) => v == name,
            SimpleType::Arrow(a, b) => a.occurs(name) || b.occurs(name),
        }
    }

    fn substitute(&self, lookup: &impl Fn(&str) -> Option<SimpleType>) -> SimpleType {
        match self {
            SimpleType::Var(v) => lookup(v).unwrap_or_else(|| self.clone()),
            SimpleType::Arrow(a, b) => {
                SimpleType::arrow(a.substitute(lookup), b.substitute(lookup))
            }
        }
    }

    fn decompose<'a>(
        &'a self,
        other: &'a SimpleType,
    ) -> Option<Vec<(&'a SimpleType, &'a SimpleType)>> {
        match (self, other) {
            (SimpleType::Arrow(a1, b1), SimpleType::Arrow(a2, b2)) => {
                Some(vec![(a1, a2), (b1, b2)])
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Linear,
    Affine,
}

/// Ordered assignment of types to term variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    pub entries: Vec<(String, SimpleType)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn get(&self, x: &str) -> Option<&SimpleType> {
        self.entries.iter().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.get(x).is_some()
    }

    pub fn remove(&mut self, x: &str) -> Option<SimpleType> {
        let idx = self.entries.iter().position(|(y, _)| y == x)?;
        Some(self.entries.remove(idx).1)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn apply(&self, s: &TypeSubst) -> Context {
        Context {
            entries: self
                .entries
                .iter()
                .map(|(x, t)| (x.clone(), s.apply(t)))
                .collect(),
        }
    }
}

impl FromIterator<(String, SimpleType)> for Context {
    fn from_iter<I: IntoIterator<Item = (String, SimpleType)>>(iter: I) -> Self {
        Context {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalJudgement {
    pub context: Context,
    pub subject: LambdaTerm,
    pub ty: SimpleType,
}

impl PrincipalJudgement {
    /// Renames type variables to `a1, a2, ...` by first occurrence across the
    /// context entries and then the type.
    pub fn canonical(&self) -> PrincipalJudgement {
        let mut names = HashMap::new();
        let entries = self
            .context
            .entries
            .iter()
            .map(|(x, t)| (x.clone(), rename_canonical(t, &mut names)))
            .collect();
        let ty = rename_canonical(&self.ty, &mut names);
        PrincipalJudgement {
            context: Context { entries },
            subject: self.subject.clone(),
            ty,
        }
    }

    /// Occurrence counts over the whole judgement.
    pub fn occurrences(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for (_, t) in &self.context.entries {
            count_occurrences(t, &mut out);
        }
        count_occurrences(&self.ty, &mut out);
        out
    }

    /// Equal up to a renaming of type variables and reordering of the context.
    pub fn alpha_eq(&self, other: &PrincipalJudgement) -> bool {
        let mut a = self.context.entries.clone();
        let mut b = other.context.entries.clone();
        a.sort_by(|x, y| x.0.cmp(&y.0));
        b.sort_by(|x, y| x.0.cmp(&y.0));
        let left = PrincipalJudgement {
            context: Context { entries: a },
            subject: self.subject.clone(),
            ty: self.ty.clone(),
        };
        let right = PrincipalJudgement {
            context: Context { entries: b },
            subject: other.subject.clone(),
            ty: other.ty.clone(),
        };
        let (l, r) = (left.canonical(), right.canonical());
        l.context == r.context && l.ty == r.ty
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("not typable: {0}")]
    NotTypable(#[from] UnifyError),
    #[error("fragment violation: {0}")]
    FragmentViolation(String),
}

/// Principal judgement of `m`, with type variables displayed as `a1, a2, ...`.
pub fn principal_type(m: &LambdaTerm, mode: Mode) -> Result<PrincipalJudgement, TypeError> {
    let mut infer = Inference { mode, next: 0 };
    let (context, ty) = infer.run(m)?;
    Ok(PrincipalJudgement {
        context,
        subject: m.clone(),
        ty,
    }
    .canonical())
}

struct Inference {
    mode: Mode,
    next: usize,
}

impl Inference {
    fn fresh(&mut self) -> SimpleType {
        self.next += 1;
        SimpleType::Var(format!("t{}", self.next))
    }

    fn run(&mut self, m: &LambdaTerm) -> Result<(Context, SimpleType), TypeError> {
        match m {
            LambdaTerm::Var(x) => {
                let a = self.fresh();
                Ok((Context::from_iter([(x.clone(), a.clone())]), a))
            }
            LambdaTerm::Comb(c) => Ok((Context::new(), self.constant(*c)?)),
            LambdaTerm::LinAbs(x, body) => {
                let uses = body.occurrences(x);
                let ok = match self.mode {
                    Mode::Linear => uses == 1,
                    Mode::Affine => uses <= 1,
                };
                if !ok {
                    return Err(TypeError::FragmentViolation(format!(
                        "binder {x} occurs {uses} times"
                    )));
                }
                let (mut ctx, nu) = self.run(body)?;
                let mu = match ctx.remove(x) {
                    Some(mu) => mu,
                    None => self.fresh(),
                };
                Ok((ctx, SimpleType::arrow(mu, nu)))
            }
            LambdaTerm::App(fun, arg) => {
                let (gamma, mu) = self.run(fun)?;
                let (delta, tau) = self.run(arg)?;
                if let Some((x, _)) = delta.entries.iter().find(|(x, _)| gamma.contains(x)) {
                    return Err(TypeError::FragmentViolation(format!(
                        "variable {x} occurs in both operator and operand"
                    )));
                }
                let alpha = self.fresh();
                let beta = self.fresh();
                let first = mgu_types(&mu, &SimpleType::arrow(alpha.clone(), beta.clone()))?;
                let second = mgu_types(&first.apply(&alpha), &tau)?;
                let total = first.then(&second);
                let mut ctx = gamma;
                ctx.entries.extend(delta.entries);
                Ok((ctx.apply(&total), total.apply(&beta)))
            }
            LambdaTerm::Bang(_) | LambdaTerm::BangAbs(..) => Err(TypeError::FragmentViolation(
                "replication is not typed by simple types".into(),
            )),
        }
    }

    fn constant(&mut self, c: Combinator) -> Result<SimpleType, TypeError> {
        let a = self.fresh();
        let b = self.fresh();
        let g = self.fresh();
        let arr = SimpleType::arrow;
        Ok(match c {
            Combinator::I => arr(a.clone(), a),
            Combinator::B => arr(arr(a.clone(), g.clone()), arr(arr(b.clone(), a), arr(b, g))),
            Combinator::C => arr(arr(a.clone(), arr(b.clone(), g.clone())), arr(b, arr(a, g))),
            Combinator::K if self.mode == Mode::Affine => arr(a.clone(), arr(b, a)),
            other => {
                return Err(TypeError::FragmentViolation(format!(
                    "combinator {other} is outside the {:?} fragment",
                    self.mode
                )))
            }
        })
    }
}

/// Whether `ctx ⊢ m : t` is obtained from the principal judgement of `m` by
/// a substitution that keeps the images of distinct principal type variables
/// variable-disjoint.
pub fn check_type(
    ctx: &Context,
    m: &LambdaTerm,
    t: &SimpleType,
    mode: Mode,
) -> Result<bool, TypeError> {
    let principal = principal_type(m, mode)?;
    if principal.context.entries.len() != ctx.entries.len() {
        return Ok(false);
    }
    let mut s = TypeSubst::new();
    if !match_onto(&principal.ty, t, &mut s) {
        return Ok(false);
    }
    for (x, pt) in &principal.context.entries {
        match ctx.get(x) {
            Some(ct) if match_onto(pt, ct, &mut s) => {}
            _ => return Ok(false),
        }
    }
    let images: Vec<Vec<String>> = s.iter().map(|(_, img)| img.vars()).collect();
    for (i, a) in images.iter().enumerate() {
        for b in &images[i + 1..] {
            if a.iter().any(|v| b.contains(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> SimpleType {
        SimpleType::var(n)
    }

    fn arr(a: SimpleType, b: SimpleType) -> SimpleType {
        SimpleType::arrow(a, b)
    }

    fn var(x: &str) -> LambdaTerm {
        LambdaTerm::var(x)
    }

    fn b_term() -> LambdaTerm {
        LambdaTerm::lams(
            ["x", "y", "z"],
            LambdaTerm::app(var("x"), LambdaTerm::app(var("y"), var("z"))),
        )
    }

    #[test]
    fn identity_and_b() {
        let j = principal_type(&LambdaTerm::lam("x", var("x")), Mode::Linear).unwrap();
        assert_eq!(j.ty, arr(v("a1"), v("a1")));
        assert!(j.context.is_empty());

        let j = principal_type(&b_term(), Mode::Linear).unwrap();
        let expected = arr(
            arr(v("a"), v("c")),
            arr(arr(v("b"), v("a")), arr(v("b"), v("c"))),
        );
        assert!(j.ty.alpha_eq(&expected));
    }

    #[test]
    fn c_combinator_row() {
        let c = LambdaTerm::lams(
            ["x", "y", "z"],
            LambdaTerm::apps(var("x"), [var("z"), var("y")]),
        );
        let j = principal_type(&c, Mode::Linear).unwrap();
        let expected = arr(
            arr(v("a"), arr(v("b"), v("c"))),
            arr(v("b"), arr(v("a"), v("c"))),
        );
        assert!(j.ty.alpha_eq(&expected));
    }

    #[test]
    fn affine_pair_differs() {
        let garbage = LambdaTerm::lams(
            ["x", "y", "z"],
            LambdaTerm::app(
                LambdaTerm::lam("w", var("x")),
                LambdaTerm::app(var("y"), var("z")),
            ),
        );
        let j = principal_type(&garbage, Mode::Affine).unwrap();
        let expected = arr(v("1"), arr(arr(v("2"), v("3")), arr(v("2"), v("1"))));
        assert!(j.ty.alpha_eq(&expected));

        let k3 = LambdaTerm::lams(["x", "y", "z"], var("x"));
        let j = principal_type(&k3, Mode::Affine).unwrap();
        assert!(j
            .ty
            .alpha_eq(&arr(v("1"), arr(v("2"), arr(v("3"), v("1"))))));

        assert!(matches!(
            principal_type(&k3, Mode::Linear),
            Err(TypeError::FragmentViolation(_))
        ));
    }

    #[test]
    fn open_terms_keep_context() {
        let m = LambdaTerm::app(var("f"), var("x"));
        let j = principal_type(&m, Mode::Linear).unwrap();
        assert_eq!(
            j.context.entries,
            vec![("f".into(), arr(v("a1"), v("a2"))), ("x".into(), v("a1"))]
        );
        assert_eq!(j.ty, v("a2"));
    }

    #[test]
    fn failures() {
        let dup = LambdaTerm::lam("x", LambdaTerm::app(var("x"), var("x")));
        assert!(matches!(
            principal_type(&dup, Mode::Affine),
            Err(TypeError::FragmentViolation(_))
        ));
        let open_dup = LambdaTerm::app(var("x"), var("x"));
        assert!(principal_type(&open_dup, Mode::Affine).is_err());
        let bang = LambdaTerm::bang(var("x"));
        assert!(principal_type(&bang, Mode::Affine).is_err());
    }

    #[test]
    fn constants_have_principal_types() {
        let j = principal_type(&LambdaTerm::Comb(Combinator::K), Mode::Affine).unwrap();
        assert_eq!(j.ty, arr(v("a1"), arr(v("a2"), v("a1"))));
        assert!(principal_type(&LambdaTerm::Comb(Combinator::K), Mode::Linear).is_err());
        assert!(principal_type(&LambdaTerm::Comb(Combinator::W), Mode::Affine).is_err());
    }

    #[test]
    fn checking_instances() {
        let id = LambdaTerm::lam("x", var("x"));
        let bb = arr(v("b"), v("b"));
        assert!(check_type(&Context::new(), &id, &arr(bb.clone(), bb), Mode::Linear).unwrap());
        assert!(!check_type(&Context::new(), &id, &arr(v("a"), v("b")), Mode::Linear).unwrap());
        let aa = arr(v("a"), v("a"));
        let t = arr(aa.clone(), arr(aa, arr(v("a"), v("a"))));
        assert!(!check_type(&Context::new(), &b_term(), &t, Mode::Linear).unwrap());
        let fresh_b = arr(
            arr(v("p"), v("q")),
            arr(arr(v("r"), v("p")), arr(v("r"), v("q"))),
        );
        assert!(check_type(&Context::new(), &b_term(), &fresh_b, Mode::Linear).unwrap());
    }
}
