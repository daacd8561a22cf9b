use std::collections::HashSet;
use std::fmt::{self, Write};

use crate::terms::{canonicalize, CombTerm, Involution, LambdaTerm, Move, Rule, Term};
use crate::types::{PrincipalJudgement, SimpleType};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RuleStyle {
    /// One `u <-> v` line per symmetric pair, `u -> v` for unpaired rules.
    #[default]
    Merged,
    /// One `u -> v` line per directed rule.
    Directed,
}

/// Display name for the `index`-th (0-based) variable of a rule.
pub fn display_var(index: usize) -> String {
    const NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];
    match NAMES.get(index) {
        Some(n) => n.to_string(),
        None => format!("X{}", index + 1),
    }
}

pub fn render_move(t: &Move) -> String {
    let mut out = String::new();
    write_move(&mut out, t, &|v| v.to_string());
    out
}

fn write_move(out: &mut String, t: &Move, name: &impl Fn(&str) -> String) {
    match t {
        Move::Eps => out.push('e'),
        Move::L(u) => {
            out.push_str("l(");
            write_move(out, u, name);
            out.push(')');
        }
        Move::R(u) => {
            out.push_str("r(");
            write_move(out, u, name);
            out.push(')');
        }
        Move::Pair(a, b) => {
            out.push('<');
            write_move(out, a, name);
            out.push_str(", ");
            write_move(out, b, name);
            out.push('>');
        }
        Move::Var(v) => out.push_str(&name(v)),
    }
}

fn write_rule(out: &mut String, rule: &Rule, arrow: &str) {
    let vars = rule.vars();
    let name = |v: &str| display_var(vars.iter().position(|w| w == v).unwrap_or(0));
    write_move(out, &rule.lhs, &name);
    out.push(' ');
    out.push_str(arrow);
    out.push(' ');
    write_move(out, &rule.rhs, &name);
}

/// Canonical listing of `f`, one clause per line, with per-rule variables
/// shown as `X, Y, Z, ...` so that the output parses back.
pub fn render_involution(f: &Involution, style: RuleStyle) -> String {
    let canon = canonicalize(f);
    let mut lines = Vec::new();
    match style {
        RuleStyle::Directed => {
            for rule in &canon.rules {
                let mut line = String::new();
                write_rule(&mut line, rule, "->");
                lines.push(line);
            }
        }
        RuleStyle::Merged => {
            let present: HashSet<&Rule> = canon.rules.iter().collect();
            let mut done: HashSet<Rule> = HashSet::new();
            for rule in &canon.rules {
                if done.contains(rule) {
                    continue;
                }
                let conv = rule.converse().canonical();
                let mut line = String::new();
                if present.contains(&conv) {
                    write_rule(&mut line, rule, "<->");
                    done.insert(conv);
                } else {
                    write_rule(&mut line, rule, "->");
                }
                done.insert(rule.clone());
                lines.push(line);
            }
        }
    }
    lines.join("\n")
}

/// `@`-syntax accepted by the λ-term parser.
pub fn render_lambda(t: &LambdaTerm) -> String {
    let mut out = String::new();
    lambda_term(&mut out, t);
    out
}

fn lambda_term(out: &mut String, t: &LambdaTerm) {
    match t {
        LambdaTerm::LinAbs(x, body) => {
            let _ = write!(out, "l* {x}.");
            lambda_term(out, body);
        }
        LambdaTerm::BangAbs(x, body) => {
            let _ = write!(out, "l*! {x}.");
            lambda_term(out, body);
        }
        _ => lambda_appl(out, t),
    }
}

fn lambda_appl(out: &mut String, t: &LambdaTerm) {
    match t {
        LambdaTerm::App(f, a) => {
            lambda_appl(out, f);
            out.push('@');
            lambda_atom(out, a);
        }
        _ => lambda_atom(out, t),
    }
}

fn lambda_atom(out: &mut String, t: &LambdaTerm) {
    match t {
        LambdaTerm::Var(x) => out.push_str(x),
        LambdaTerm::Comb(c) => out.push_str(c.name()),
        LambdaTerm::Bang(m) => {
            out.push_str("!(");
            lambda_term(out, m);
            out.push(')');
        }
        _ => {
            out.push('(');
            lambda_term(out, t);
            out.push(')');
        }
    }
}

/// Fully parenthesized juxtaposition, e.g. `((C((BB)I))I)`.
pub fn render_comb(t: &CombTerm) -> String {
    let mut out = String::new();
    comb(&mut out, t);
    out
}

fn comb(out: &mut String, t: &CombTerm) {
    match t {
        CombTerm::Const(c) => out.push_str(c.name()),
        CombTerm::FreeVar(x) => out.push_str(x),
        CombTerm::Bang(m) => {
            out.push_str("!(");
            comb(out, m);
            out.push(')');
        }
        CombTerm::App(m, n) => {
            out.push('(');
            comb(out, m);
            let atom = |t: &CombTerm| matches!(t, CombTerm::Const(_) | CombTerm::FreeVar(_));
            let var = |t: &CombTerm| matches!(t, CombTerm::FreeVar(_));
            if atom(m) && atom(n) && (var(m) || var(n)) {
                out.push(' ');
            }
            comb(out, n);
            out.push(')');
        }
    }
}

/// Type with variables renamed to `a1, a2, ...`.
pub fn render_type(t: &SimpleType) -> String {
    t.canonical().to_string()
}

pub fn render_judgement(j: &PrincipalJudgement) -> String {
    let j = j.canonical();
    let ctx: Vec<String> = j
        .context
        .entries
        .iter()
        .map(|(x, t)| format!("{x}: {t}"))
        .collect();
    if ctx.is_empty() {
        format!("|- {}", j.ty)
    } else {
        format!("{} |- {}", ctx.join(", "), j.ty)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_move(self))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_involution(self, RuleStyle::Merged))
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_lambda(self))
    }
}

impl fmt::Display for CombTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_comb(self))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Var(v) => f.write_str(v),
            SimpleType::Arrow(a, b) => {
                if a.as_var().is_some() {
                    write!(f, "{a} -> {b}")
                } else {
                    write!(f, "({a}) -> {b}")
                }
            }
        }
    }
}
