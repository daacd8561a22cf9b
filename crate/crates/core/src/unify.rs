//! Robinson unification, generic over [`Term`], used for moves and for
//! simple types.

use crate::terms::{Move, Subst, Term};
use crate::types::{SimpleType, TypeSubst};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UnifyError {
    #[error("constructor clash")]
    Clash,
    #[error("occurs check failed")]
    OccursCheck,
}

pub type UnifyOutcome<T> = Result<Subst<T>, UnifyError>;

/// Most general unifier of `a` and `b`. When both sides are variables the
/// left one is bound to the right one.
pub fn unify<T: Term>(a: &T, b: &T) -> UnifyOutcome<T> {
    let mut s = Subst::new();
    let mut pending = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = pending.pop() {
        let x = s.apply(&x);
        let y = s.apply(&y);
        if x == y {
            continue;
        }
        if let Some(v) = x.as_var() {
            if y.occurs(v) {
                return Err(UnifyError::OccursCheck);
            }
            let v = v.to_string();
            s.bind(&v, y);
        } else if let Some(v) = y.as_var() {
            if x.occurs(v) {
                return Err(UnifyError::OccursCheck);
            }
            let v = v.to_string();
            s.bind(&v, x);
        } else {
            let children = x.decompose(&y).ok_or(UnifyError::Clash)?;
            // leftmost child is solved first
            pending.extend(
                children
                    .into_iter()
                    .rev()
                    .map(|(p, q)| (p.clone(), q.clone())),
            );
        }
    }
    Ok(s)
}

pub fn unify_moves(t1: &Move, t2: &Move) -> UnifyOutcome<Move> {
    unify(t1, t2)
}

pub fn mgu_types(s: &SimpleType, t: &SimpleType) -> Result<TypeSubst, UnifyError> {
    unify(s, t)
}

/// Extends `s` so that `pattern` instantiated by it equals `subject`.
/// Variables of `subject` are treated as constants.
pub fn match_onto<T: Term>(pattern: &T, subject: &T, s: &mut Subst<T>) -> bool {
    if let Some(v) = pattern.as_var() {
        return match s.get(v) {
            Some(bound) => bound == subject,
            None => {
                s.insert_raw(v.to_string(), subject.clone());
                true
            }
        };
    }
    if subject.as_var().is_some() {
        return false;
    }
    match pattern.decompose(subject) {
        Some(children) => children.into_iter().all(|(p, q)| match_onto(p, q, s)),
        None => false,
    }
}
