//! Proof search in implicational minimal logic, with λ-term witnesses.
//!
//! Goal-directed search: an arrow goal is introduced, an atomic goal is
//! closed by a hypothesis whose final target matches it. Contexts are sets
//! of formulas, so each branch visits finitely many sequents and a repeated
//! sequent on the current branch is cut off.

use std::collections::HashSet;

use crate::syntax::display_var;
use crate::terms::LambdaTerm;
use crate::types::SimpleType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inhabitation {
    pub provable: bool,
    /// A closed inhabitant when `provable`.
    pub witness: Option<LambdaTerm>,
}

/// Decides whether `t` is inhabited, returning a witness term if so.
pub fn is_minimal_tautology(t: &SimpleType) -> Inhabitation {
    let mut search = Search::default();
    let witness = search.prove(t);
    Inhabitation {
        provable: witness.is_some(),
        witness,
    }
}

#[derive(Default)]
struct Search {
    /// Hypotheses in scope, each with the variable naming it.
    hyps: Vec<(SimpleType, String)>,
    /// Sequents on the current branch, as (sorted hypothesis indices, goal).
    branch: HashSet<(Vec<usize>, SimpleType)>,
    names: usize,
}

impl Search {
    fn prove(&mut self, goal: &SimpleType) -> Option<LambdaTerm> {
        match goal {
            SimpleType::Arrow(a, b) => {
                if self.hyps.iter().any(|(h, _)| h == a.as_ref()) {
                    // Already assumed: bind a fresh, unused name.
                    let x = self.fresh_name();
                    let body = self.prove(b)?;
                    return Some(LambdaTerm::lam(x, body));
                }
                let x = self.fresh_name();
                self.hyps.push((a.as_ref().clone(), x.clone()));
                let body = self.prove(b);
                self.hyps.pop();
                Some(LambdaTerm::lam(x, body?))
            }
            SimpleType::Var(_) => self.prove_atom(goal),
        }
    }

    fn prove_atom(&mut self, goal: &SimpleType) -> Option<LambdaTerm> {
        let key = (self.context_key(), goal.clone());
        if !self.branch.insert(key.clone()) {
            return None;
        }
        let result = self.try_hypotheses(goal);
        self.branch.remove(&key);
        result
    }

    fn try_hypotheses(&mut self, goal: &SimpleType) -> Option<LambdaTerm> {
        let candidates: Vec<(SimpleType, String)> = self
            .hyps
            .iter()
            .filter(|(h, _)| h.uncurry().1 == goal)
            .cloned()
            .collect();
        'hyp: for (h, x) in candidates {
            let (premises, _) = h.uncurry();
            let mut args = Vec::with_capacity(premises.len());
            for p in premises {
                match self.prove(p) {
                    Some(w) => args.push(w),
                    None => continue 'hyp,
                }
            }
            return Some(LambdaTerm::apps(LambdaTerm::var(x), args));
        }
        None
    }

    /// Context as a set: indices of distinct formulas by first position.
    fn context_key(&self) -> Vec<usize> {
        let mut seen: Vec<&SimpleType> = Vec::new();
        let mut key = Vec::new();
        for (i, (h, _)) in self.hyps.iter().enumerate() {
            if !seen.contains(&h) {
                seen.push(h);
                key.push(i);
            }
        }
        key
    }

    fn fresh_name(&mut self) -> String {
        let name = display_var(self.names);
        self.names += 1;
        name
    }
}
