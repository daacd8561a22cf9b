//! Term languages shared by every other module: moves and rule sets,
//! substitutions, combinator expressions and λ!-terms.

mod lambda;
mod moves;
mod subst;

pub use lambda::{CombTerm, Combinator, LambdaTerm, UnknownCombinator};
pub use moves::{
    alpha_separate, apply_move_subst, canonicalize, equivalent, free_move_vars, fresh_var,
    is_reserved_name, rule_list_vars, Involution, Move, Rule, Side, RESERVED_PREFIX,
};
pub use subst::{Subst, Term};

pub type MoveSubst = Subst<Move>;
