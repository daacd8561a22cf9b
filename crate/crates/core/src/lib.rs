//! Partial involutions as a linear combinatory algebra: rule sets over moves,
//! unification, linear application and replication, compilation of λ!-terms
//! to combinators, principal types and the type/involution correspondence.

pub mod compile;
pub mod duality;
pub mod inhabit;
pub mod machine;
pub mod suite;
pub mod syntax;
pub mod terms;
pub mod types;
pub mod unify;
