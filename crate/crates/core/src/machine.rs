//! The model of partial involutions: the combinator table, the `f_ij`
//! projections, rule composition, iterated feedback, linear application and
//! replication.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::syntax::{parse_rules, SourceText};
use crate::terms::{
    alpha_separate, canonicalize, fresh_var, CombTerm, Combinator, Involution, Move, Rule, Side,
};
use crate::unify::unify_moves;

/// Clause strings for every constant, in table order.
pub const COMBINATOR_CLAUSES: [(Combinator, &str); 9] = [
    (Combinator::I, "lX<->rX"),
    (Combinator::B, "rrrX<->lrX, llX<->rlrX, rllX<->rrlX"),
    (Combinator::K, "lX<->rrX"),
    (Combinator::C, "llX<->rrlX, lrlX<->rlX, lrrX<->rrrX"),
    (Combinator::D, "l<e,X><->rX"),
    (Combinator::F, "l<X,rY><->rr<X,Y>, l<X,lY><->rl<X,Y>"),
    (
        Combinator::W,
        "rrX<->lrrX, ll<X,Y><->rl<lX,Y>, lrl<X,Y><->rl<rX,Y>",
    ),
    (Combinator::Delta, "l<<X,Y>,Z><->r<X,<Y,Z>>"),
    (
        Combinator::B1,
        "rrrX<->lrX, llX<->rlrX, rll<X,Y><->rrl<X,Y>",
    ),
];

#[derive(Clone, Debug)]
pub struct CombinatorTable {
    entries: Vec<(Combinator, Involution)>,
}

impl CombinatorTable {
    pub fn get(&self, c: Combinator) -> &Involution {
        &self
            .entries
            .iter()
            .find(|(k, _)| *k == c)
            .expect("table covers every combinator")
            .1
    }

    pub fn lookup(&self, name: &str) -> Option<&Involution> {
        let c = name.parse::<Combinator>().ok()?;
        Some(self.get(c))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Combinator, Involution)> {
        self.entries.iter()
    }
}

pub fn combinator_table() -> &'static CombinatorTable {
    static TABLE: OnceLock<CombinatorTable> = OnceLock::new();
    TABLE.get_or_init(|| CombinatorTable {
        entries: COMBINATOR_CLAUSES
            .iter()
            .map(|(c, src)| {
                let f = parse_rules(&SourceText::new(*src, c.name()))
                    .expect("combinator clauses are well formed");
                (*c, f)
            })
            .collect(),
    })
}

/// Iteration guard for the feedback loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeedbackBudget {
    pub max_iterations: usize,
    /// Stop as soon as a feedback stage repeats (up to renaming) and return
    /// the union accumulated so far.
    pub detect_cycles: bool,
}

impl FeedbackBudget {
    pub const DEFAULT_ITERATIONS: usize = 1000;

    pub fn new(max_iterations: usize) -> FeedbackBudget {
        FeedbackBudget {
            max_iterations: max_iterations.max(1),
            detect_cycles: false,
        }
    }

    pub fn with_cycle_detection(self) -> FeedbackBudget {
        FeedbackBudget {
            detect_cycles: true,
            ..self
        }
    }
}

impl Default for FeedbackBudget {
    fn default() -> Self {
        FeedbackBudget::new(Self::DEFAULT_ITERATIONS)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GoiError {
    #[error("feedback did not settle within {max_iterations} iterations")]
    BudgetExhausted { max_iterations: usize },
    #[error("term is not closed: free variable `{0}`")]
    NotClosed(String),
}

/// `f_ij`: rules `i(u) -> j(v)` stripped to `u -> v`.
pub fn extract(f: &[Rule], i: Side, j: Side) -> Vec<Rule> {
    let strip = |t: &Move, side: Side| match (t, side) {
        (Move::L(u), Side::L) | (Move::R(u), Side::R) => Some(u.as_ref().clone()),
        _ => None,
    };
    f.iter()
        .filter_map(|rule| Some(Rule::new(strip(&rule.lhs, i)?, strip(&rule.rhs, j)?)))
        .collect()
}

/// `f;g`: every `s(a) -> s(d)` with `a -> b` in `f`, `c -> d` in `g` and
/// `s` the most general unifier of `b` and `c`.
pub fn compose(f: &[Rule], g: &[Rule]) -> Vec<Rule> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let f = alpha_separate(f, g);
    let mut out = Vec::new();
    for first in &f {
        for second in g {
            if let Ok(s) = unify_moves(&first.rhs, &second.lhs) {
                out.push(Rule::new(s.apply(&first.lhs), s.apply(&second.rhs)));
            }
        }
    }
    out
}

/// Duplicate-free copy of a stage, keeping first occurrences.
fn dedup_stage(rules: Vec<Rule>) -> Vec<Rule> {
    let mut seen = HashSet::new();
    rules
        .into_iter()
        .filter(|r| seen.insert(r.canonical()))
        .collect()
}

/// `h;(f;g)*`: accumulates `h`, `h;f;g`, `h;f;g;f;g`, ... until a stage
/// composes to nothing.
pub fn star(
    h: &[Rule],
    f: &[Rule],
    g: &[Rule],
    budget: FeedbackBudget,
) -> Result<Vec<Rule>, GoiError> {
    let mut acc = Vec::new();
    let mut stage = h.to_vec();
    let mut seen: HashSet<Vec<Rule>> = HashSet::new();
    for _ in 0..budget.max_iterations {
        let through_f = compose(&stage, f);
        if through_f.is_empty() {
            acc.extend(stage);
            return Ok(acc);
        }
        let next = dedup_stage(compose(&through_f, g));
        if next.is_empty() {
            acc.extend(stage);
            return Ok(acc);
        }
        if budget.detect_cycles {
            seen.insert(canonicalize(&Involution::new(stage.clone())).rules);
            if seen.contains(&canonicalize(&Involution::new(next.clone())).rules) {
                acc.extend(stage);
                return Ok(acc);
            }
        }
        acc.extend(stage);
        stage = next;
    }
    Err(GoiError::BudgetExhausted {
        max_iterations: budget.max_iterations,
    })
}

/// Linear application `f·g = f_rr ∪ f_rl;g;(f_ll;g)*;f_lr`.
pub fn lapp(
    f: &Involution,
    g: &Involution,
    budget: FeedbackBudget,
) -> Result<Involution, GoiError> {
    let rr = extract(&f.rules, Side::R, Side::R);
    let rl = extract(&f.rules, Side::R, Side::L);
    let ll = extract(&f.rules, Side::L, Side::L);
    let lr = extract(&f.rules, Side::L, Side::R);
    let entered = compose(&rl, &g.rules);
    let looped = star(&entered, &ll, &g.rules, budget)?;
    let mut rules = rr;
    rules.extend(compose(&looped, &lr));
    Ok(canonicalize(&Involution::new(rules)))
}

/// Left-nested `lapp` over a non-empty list: `((f1·f2)·f3)·...`.
pub fn chain_app(fs: &[Involution], budget: FeedbackBudget) -> Result<Involution, GoiError> {
    let Some((first, rest)) = fs.split_first() else {
        return Ok(Involution::empty());
    };
    rest.iter()
        .try_fold(canonicalize(first), |acc, g| lapp(&acc, g, budget))
}

/// `!f`: every rule `u -> v` becomes `<T, u> -> <T, v>` for one fresh `T`.
pub fn bang(f: &Involution) -> Involution {
    let t = Move::Var(fresh_var(&f.vars()));
    let rules = f
        .rules
        .iter()
        .map(|r| {
            Rule::new(
                Move::pair(t.clone(), r.lhs.clone()),
                Move::pair(t.clone(), r.rhs.clone()),
            )
        })
        .collect();
    canonicalize(&Involution::new(rules))
}

/// The interpretation of a closed combinator term.
pub fn decode(m: &CombTerm, budget: FeedbackBudget) -> Result<Involution, GoiError> {
    match m {
        CombTerm::Const(c) => Ok(canonicalize(combinator_table().get(*c))),
        CombTerm::App(a, b) => lapp(&decode(a, budget)?, &decode(b, budget)?, budget),
        CombTerm::Bang(a) => Ok(bang(&decode(a, budget)?)),
        CombTerm::FreeVar(x) => Err(GoiError::NotClosed(x.clone())),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coherence {
    /// Canonical rules whose converse is missing.
    pub symmetry_violations: Vec<Rule>,
    /// Pairs of rules whose left-hand sides overlap with different images.
    pub ambiguities: Vec<(Rule, Rule)>,
}

impl Coherence {
    pub fn is_coherent(&self) -> bool {
        self.symmetry_violations.is_empty() && self.ambiguities.is_empty()
    }
}

pub fn check_coherence(f: &Involution) -> Coherence {
    let canon = canonicalize(f);
    let symmetry_violations = canon.asymmetric_rules();
    let mut ambiguities = Vec::new();
    for (i, a) in canon.rules.iter().enumerate() {
        for b in &canon.rules[i + 1..] {
            let b_sep = alpha_separate(std::slice::from_ref(b), std::slice::from_ref(a))
                .pop()
                .expect("one rule in, one rule out");
            if let Ok(s) = unify_moves(&a.lhs, &b_sep.lhs) {
                if s.apply(&a.rhs) != s.apply(&b_sep.rhs) {
                    ambiguities.push((a.clone(), b.clone()));
                }
            }
        }
    }
    Coherence {
        symmetry_violations,
        ambiguities,
    }
}
