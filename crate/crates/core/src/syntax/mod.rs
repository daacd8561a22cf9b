//! Concrete syntax: rule sets, λ!-terms, combinator expressions and types.
//!
//! Rule sets use the prefix shorthand `rrlX` for `r(r(l(X)))` and accept
//! `<->` clauses (both directions) and `->` clauses (one direction),
//! separated by commas or newlines. λ!-terms use `l*` / `l*!` for the two
//! abstractions, `@` for application and `!(..)` for promotion.

mod cursor;
mod parse;
mod render;

use std::fmt;

pub use parse::{parse_comb, parse_lambda, parse_rules, parse_type};
pub use render::{
    display_var, render_comb, render_involution, render_judgement, render_lambda, render_move,
    render_type, RuleStyle,
};

/// Input text together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceText {
    pub text: String,
    pub origin: String,
}

impl SourceText {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> SourceText {
        SourceText {
            text: text.into(),
            origin: origin.into(),
        }
    }

    pub fn inline(text: impl Into<String>) -> SourceText {
        SourceText::new(text, "<inline>")
    }
}

impl From<&str> for SourceText {
    fn from(text: &str) -> Self {
        SourceText::inline(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub origin: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
    pub expected: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: {}",
            self.origin, self.line, self.column, self.message
        )?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {expected})")?;
        }
        Ok(())
    }
}
