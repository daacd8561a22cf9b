//! The language of moves, directed rules, and rule sets.

use std::collections::HashSet;

use super::subst::{Subst, Term};

/// Prefix reserved for machine-generated variable names (`_X1`, `_X2`, ...).
pub const RESERVED_PREFIX: &str = "_X";

/// A move: `e`, `l(t)`, `r(t)`, `<t, u>` or a pattern variable.
///
/// The derived ordering ranks constructors `Eps < L < R < Pair < Var` and
/// recurses lexicographically into children.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Eps,
    L(Box<Move>),
    R(Box<Move>),
    Pair(Box<Move>, Box<Move>),
    Var(String),
}

impl Move {
    pub fn l(inner: Move) -> Move {
        Move::L(Box::new(inner))
    }

    pub fn r(inner: Move) -> Move {
        Move::R(Box::new(inner))
    }

    pub fn pair(first: Move, second: Move) -> Move {
        Move::Pair(Box::new(first), Box::new(second))
    }

    pub fn var(name: impl Into<String>) -> Move {
        Move::Var(name.into())
    }

    /// Wraps `inner` in the `l`/`r` prefix spelled by `path`, outermost first.
    pub fn with_prefix(path: &[Side], inner: Move) -> Move {
        path.iter().rev().fold(inner, |acc, side| match side {
            Side::L => Move::l(acc),
            Side::R => Move::r(acc),
        })
    }

    pub fn contains_pair(&self) -> bool {
        match self {
            Move::Eps | Move::Var(_) => false,
            Move::L(t) | Move::R(t) => t.contains_pair(),
            Move::Pair(..) => true,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Move::Eps | Move::Var(_) => 0,
            Move::L(t) | Move::R(t) => 1 + t.depth(),
            Move::Pair(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Splits a term of the shape `i1(i2(...(t)))` into its `l`/`r` prefix
    /// and the remaining innermost term.
    pub fn split_prefix(&self) -> (Vec<Side>, &Move) {
        let mut path = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Move::L(t) => {
                    path.push(Side::L);
                    cur = t;
                }
                Move::R(t) => {
                    path.push(Side::R);
                    cur = t;
                }
                _ => return (path, cur),
            }
        }
    }

    fn rename(&self, map: &impl Fn(&str) -> String) -> Move {
        match self {
            Move::Eps => Move::Eps,
            Move::L(t) => Move::l(t.rename(map)),
            Move::R(t) => Move::r(t.rename(map)),
            Move::Pair(a, b) => Move::pair(a.rename(map), b.rename(map)),
            Move::Var(v) => Move::Var(map(v)),
        }
    }
}

impl Term for Move {
    fn as_var(&self) -> Option<&str> {
        match self {
            Move::Var(v) => Some(v),
            _ => None,
        }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Move::Eps => {}
            Move::L(t) | Move::R(t) => t.collect_vars(out),
            Move::Pair(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Move::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
    }

    fn occurs(&self, name: &str) -> bool {
        match self {
            Move::Eps => false,
            Move::L(t) | Move::R(t) => t.occurs(name),
            Move::Pair(a, b) => a.occurs(name) || b.occurs(name),
            Move::Var(v) => v == name,
        }
    }

    fn substitute(&self, lookup: &impl Fn(&str) -> Option<Move>) -> Move {
        match self {
            Move::Eps => Move::Eps,
            Move::L(t) => Move::l(t.substitute(lookup)),
            Move::R(t) => Move::r(t.substitute(lookup)),
            Move::Pair(a, b) => Move::pair(a.substitute(lookup), b.substitute(lookup)),
            Move::Var(v) => lookup(v).unwrap_or_else(|| self.clone()),
        }
    }

    fn decompose<'a>(&'a self, other: &'a Move) -> Option<Vec<(&'a Move, &'a Move)>> {
        match (self, other) {
            (Move::Eps, Move::Eps) => Some(Vec::new()),
            (Move::L(a), Move::L(b)) | (Move::R(a), Move::R(b)) => Some(vec![(a, b)]),
            (Move::Pair(a1, a2), Move::Pair(b1, b2)) => Some(vec![(a1, b1), (a2, b2)]),
            _ => None,
        }
    }
}

/// One step in a path: `l` or `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::L => 'l',
            Side::R => 'r',
        }
    }
}

/// Variables of `t` in left-to-right first-occurrence order.
pub fn free_move_vars(t: &Move) -> Vec<String> {
    let mut out = Vec::new();
    t.collect_vars(&mut out);
    out
}

pub fn apply_move_subst(s: &Subst<Move>, t: &Move) -> Move {
    s.apply(t)
}

/// True for names of the form `_X<digits>`.
pub fn is_reserved_name(name: &str) -> bool {
    reserved_index(name).is_some()
}

fn reserved_index(name: &str) -> Option<u64> {
    let digits = name.strip_prefix(RESERVED_PREFIX)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// A machine name `_Xn` with `n` one past the largest reserved index in `avoid`.
pub fn fresh_var<S: AsRef<str>>(avoid: &[S]) -> String {
    let max = avoid
        .iter()
        .filter_map(|v| reserved_index(v.as_ref()))
        .max()
        .unwrap_or(0);
    format!("{RESERVED_PREFIX}{}", max + 1)
}

/// A directed rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Move,
    pub rhs: Move,
}

impl Rule {
    pub fn new(lhs: Move, rhs: Move) -> Rule {
        Rule { lhs, rhs }
    }

    pub fn converse(&self) -> Rule {
        Rule::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        out
    }

    pub fn apply(&self, s: &Subst<Move>) -> Rule {
        Rule::new(s.apply(&self.lhs), s.apply(&self.rhs))
    }

    /// Renames the rule's variables to `_X1, _X2, ...` in traversal order.
    pub fn canonical(&self) -> Rule {
        let vars = self.vars();
        let rename = |v: &str| {
            let idx = vars
                .iter()
                .position(|w| w == v)
                .expect("variable collected");
            format!("{RESERVED_PREFIX}{}", idx + 1)
        };
        Rule::new(self.lhs.rename(&rename), self.rhs.rename(&rename))
    }
}

/// Variables of a rule list, first-occurrence order.
pub fn rule_list_vars(rules: &[Rule]) -> Vec<String> {
    let mut out = Vec::new();
    for rule in rules {
        rule.lhs.collect_vars(&mut out);
        rule.rhs.collect_vars(&mut out);
    }
    out
}

/// A finite set of directed rules read as a partial involution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Involution {
    pub rules: Vec<Rule>,
}

impl Involution {
    pub fn new(rules: Vec<Rule>) -> Involution {
        Involution { rules }
    }

    pub fn empty() -> Involution {
        Involution::default()
    }

    /// Builds the directed rules `u -> v` and `v -> u` for every clause.
    pub fn from_clauses(clauses: impl IntoIterator<Item = (Move, Move)>) -> Involution {
        let mut rules = Vec::new();
        for (u, v) in clauses {
            rules.push(Rule::new(u.clone(), v.clone()));
            rules.push(Rule::new(v, u));
        }
        Involution { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn vars(&self) -> Vec<String> {
        rule_list_vars(&self.rules)
    }

    pub fn canonicalize(&self) -> Involution {
        canonicalize(self)
    }

    pub fn contains_pair(&self) -> bool {
        self.rules
            .iter()
            .any(|r| r.lhs.contains_pair() || r.rhs.contains_pair())
    }

    /// Every rule's converse is present up to renaming.
    pub fn is_symmetric(&self) -> bool {
        self.asymmetric_rules().is_empty()
    }

    /// Canonical rules whose converse is missing.
    pub fn asymmetric_rules(&self) -> Vec<Rule> {
        let canon = canonicalize(self);
        let present: HashSet<&Rule> = canon.rules.iter().collect();
        canon
            .rules
            .iter()
            .filter(|r| !present.contains(&r.converse().canonical()))
            .cloned()
            .collect()
    }
}

impl FromIterator<Rule> for Involution {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Involution::new(iter.into_iter().collect())
    }
}

/// Per-rule renaming, global sort, duplicate removal.
pub fn canonicalize(f: &Involution) -> Involution {
    let mut rules: Vec<Rule> = f.rules.iter().map(Rule::canonical).collect();
    rules.sort();
    rules.dedup();
    Involution { rules }
}

/// Renames every variable of `f` that also occurs in `g` to a fresh name.
pub fn alpha_separate(f: &[Rule], g: &[Rule]) -> Vec<Rule> {
    let vars_f = rule_list_vars(f);
    let vars_g = rule_list_vars(g);
    let mut avoid: Vec<String> = vars_g;
    let mut seen: HashSet<String> = avoid.iter().cloned().collect();
    let mut renaming = Subst::new();
    for v in &vars_f {
        if seen.contains(v) {
            let mut pool = vars_f.clone();
            pool.extend(avoid.iter().cloned());
            let fresh = fresh_var(&pool);
            renaming.insert_raw(v.clone(), Move::Var(fresh.clone()));
            avoid.push(fresh.clone());
            seen.insert(fresh);
        } else {
            avoid.push(v.clone());
            seen.insert(v.clone());
        }
    }
    if renaming.is_empty() {
        return f.to_vec();
    }
    f.iter().map(|r| r.apply(&renaming)).collect()
}

pub fn equivalent(f: &Involution, g: &Involution) -> bool {
    canonicalize(f) == canonicalize(g)
}
