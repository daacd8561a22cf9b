use super::cursor::Cursor;
use super::{ParseError, SourceText};
use crate::terms::{is_reserved_name, CombTerm, Combinator, Involution, LambdaTerm, Move, Rule};
use crate::types::SimpleType;

/// Parses a rule set such as `rrrX<->lrX, llX<->rlrX`.
pub fn parse_rules(src: &SourceText) -> Result<Involution, ParseError> {
    let mut cur = Cursor::new(src);
    let mut rules = Vec::new();
    cur.skip_ws();
    while !cur.at_end() {
        let lhs = move_term(&mut cur)?;
        cur.skip_ws();
        let both = if cur.eat("<->") {
            true
        } else if cur.eat("->") {
            false
        } else {
            return Err(cur.unexpected("`<->` or `->`"));
        };
        let rhs = move_term(&mut cur)?;
        if both {
            rules.push(Rule::new(lhs.clone(), rhs.clone()));
            rules.push(Rule::new(rhs, lhs));
        } else {
            rules.push(Rule::new(lhs, rhs));
        }
        let newline = cur.skip_ws();
        let mut separated = newline;
        while cur.eat(",") {
            separated = true;
            cur.skip_ws();
        }
        if !separated && !cur.at_end() {
            return Err(cur.unexpected("`,` or a newline between clauses"));
        }
    }
    Ok(Involution::new(rules))
}

fn move_term(cur: &mut Cursor) -> Result<Move, ParseError> {
    cur.skip_ws();
    let Some(c) = cur.peek() else {
        return Err(cur.unexpected("a move term"));
    };
    match c {
        'e' => {
            cur.bump();
            Ok(Move::Eps)
        }
        'l' | 'r' => {
            cur.bump();
            cur.skip_ws();
            let inner = if cur.eat("(") {
                let t = move_term(cur)?;
                cur.expect(")")?;
                t
            } else {
                move_term(cur)?
            };
            Ok(if c == 'l' {
                Move::l(inner)
            } else {
                Move::r(inner)
            })
        }
        'p' => {
            cur.bump();
            cur.expect("(")?;
            let a = move_term(cur)?;
            cur.expect(",")?;
            let b = move_term(cur)?;
            cur.expect(")")?;
            Ok(Move::pair(a, b))
        }
        '<' => {
            cur.bump();
            let a = move_term(cur)?;
            cur.expect(",")?;
            let b = move_term(cur)?;
            cur.expect(">")?;
            Ok(Move::pair(a, b))
        }
        c if c.is_ascii_uppercase() || c == '_' => {
            let start = cur.pos();
            let name = cur.ident();
            check_user_var(cur, start, &name)?;
            Ok(Move::Var(name))
        }
        _ => Err(cur.unexpected("`e`, `l`, `r`, `p`, `<` or a variable")),
    }
}

fn check_user_var(cur: &Cursor, start: usize, name: &str) -> Result<(), ParseError> {
    if is_reserved_name(name) {
        return Err(cur.error_at(
            start,
            format!("`{name}` is reserved for generated variables"),
            None,
        ));
    }
    if !name.starts_with(|c: char| c.is_ascii_uppercase()) {
        return Err(cur.error_at(
            start,
            format!("`{name}` is not a variable"),
            Some("an identifier starting with an uppercase letter"),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lam,
    BangLam,
    Dot,
    At,
    Bang,
    Open,
    Close,
    Ident(String),
}

fn lambda_tokens(cur: &mut Cursor) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    loop {
        cur.skip_ws();
        let start = cur.pos();
        let Some(c) = cur.peek() else { break };
        let tok = match c {
            '.' => Tok::Dot,
            '@' => Tok::At,
            '!' => Tok::Bang,
            '(' => Tok::Open,
            ')' => Tok::Close,
            'l' if cur.peek_at(1) == Some('*') => {
                cur.bump();
                cur.bump();
                if cur.eat("!") {
                    toks.push((start, Tok::BangLam));
                } else {
                    toks.push((start, Tok::Lam));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                toks.push((start, Tok::Ident(cur.ident())));
                continue;
            }
            _ => return Err(cur.unexpected("a λ-term token")),
        };
        cur.bump();
        toks.push((start, tok));
    }
    Ok(toks)
}

struct LambdaParser<'c, 'a> {
    cur: &'c Cursor<'a>,
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl LambdaParser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.cur.pos())
    }

    fn fail(&self, expected: &str) -> ParseError {
        match self.toks.get(self.at) {
            Some((p, t)) => {
                self.cur
                    .error_at(*p, format!("unexpected {}", describe(t)), Some(expected))
            }
            None => self.cur.error("unexpected end of input", Some(expected)),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<LambdaTerm, ParseError> {
        match self.peek() {
            Some(Tok::Lam) | Some(Tok::BangLam) => {
                let bang = self.peek() == Some(&Tok::BangLam);
                self.at += 1;
                let binder = self.binder()?;
                if !self.eat(&Tok::Dot) {
                    return Err(self.fail("`.`"));
                }
                let body = self.term()?;
                Ok(if bang {
                    LambdaTerm::bang_lam(binder, body)
                } else {
                    LambdaTerm::lam(binder, body)
                })
            }
            _ => self.appl(),
        }
    }

    fn binder(&mut self) -> Result<String, ParseError> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name.parse::<Combinator>().is_ok() {
                    return Err(self.cur.error_at(
                        start,
                        format!("combinator `{name}` cannot be bound"),
                        Some("a variable"),
                    ));
                }
                check_user_var(self.cur, start, &name)?;
                Ok(name)
            }
            _ => Err(self.fail("a variable")),
        }
    }

    fn appl(&mut self) -> Result<LambdaTerm, ParseError> {
        let mut t = self.atom()?;
        while self.eat(&Tok::At) {
            let arg = self.atom()?;
            t = LambdaTerm::app(t, arg);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<LambdaTerm, ParseError> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Ok(c) = name.parse::<Combinator>() {
                    return Ok(LambdaTerm::Comb(c));
                }
                check_user_var(self.cur, start, &name)?;
                Ok(LambdaTerm::Var(name))
            }
            Some(Tok::Bang) => {
                self.at += 1;
                if !self.eat(&Tok::Open) {
                    return Err(self.fail("`(` after `!`"));
                }
                let body = self.term()?;
                if !self.eat(&Tok::Close) {
                    return Err(self.fail("`)`"));
                }
                Ok(LambdaTerm::bang(body))
            }
            Some(Tok::Open) => {
                self.at += 1;
                let t = self.term()?;
                if !self.eat(&Tok::Close) {
                    return Err(self.fail("`)`"));
                }
                Ok(t)
            }
            _ => Err(self.fail("a variable, combinator, `!(` or `(`")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Lam => "`l*`".into(),
        Tok::BangLam => "`l*!`".into(),
        Tok::Dot => "`.`".into(),
        Tok::At => "`@`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Open => "`(`".into(),
        Tok::Close => "`)`".into(),
        Tok::Ident(s) => format!("`{s}`"),
    }
}

/// Parses a λ!-term such as `l* X.l* Y.C@X@Y`.
pub fn parse_lambda(src: &SourceText) -> Result<LambdaTerm, ParseError> {
    let mut cur = Cursor::new(src);
    let toks = lambda_tokens(&mut cur)?;
    let mut p = LambdaParser {
        cur: &cur,
        toks,
        at: 0,
    };
    let t = p.term()?;
    if p.at < p.toks.len() {
        return Err(p.fail("end of input"));
    }
    Ok(t)
}

/// Parses a combinator expression in juxtaposition style, e.g.
/// `((C((BB)I))I)`. An identifier made only of combinator names is split
/// into those constants (`BB` is `B B`); any other identifier is a variable.
pub fn parse_comb(src: &SourceText) -> Result<CombTerm, ParseError> {
    let mut cur = Cursor::new(src);
    let t = comb_seq(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.unexpected("end of input"));
    }
    Ok(t)
}

fn comb_seq(cur: &mut Cursor) -> Result<CombTerm, ParseError> {
    let mut atoms = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('(') | Some('!') => atoms.push(comb_group(cur)?),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = cur.pos();
                let name = cur.ident();
                match split_combinators(&name) {
                    Some(cs) => atoms.extend(cs.into_iter().map(CombTerm::Const)),
                    None => {
                        check_user_var(cur, start, &name)?;
                        atoms.push(CombTerm::FreeVar(name));
                    }
                }
            }
            _ => break,
        }
    }
    let mut it = atoms.into_iter();
    let head = it
        .next()
        .ok_or_else(|| cur.unexpected("a combinator, variable, `(` or `!(`"))?;
    Ok(it.fold(head, CombTerm::app))
}

fn comb_group(cur: &mut Cursor) -> Result<CombTerm, ParseError> {
    let bang = cur.eat("!");
    cur.expect("(")?;
    let t = comb_seq(cur)?;
    cur.expect(")")?;
    Ok(if bang { CombTerm::bang(t) } else { t })
}

fn split_combinators(name: &str) -> Option<Vec<Combinator>> {
    let mut out = Vec::new();
    let mut rest = name;
    while !rest.is_empty() {
        let (c, len) = if rest.starts_with("B1") {
            (Combinator::B1, 2)
        } else {
            (rest[..1].parse::<Combinator>().ok()?, 1)
        };
        out.push(c);
        rest = &rest[len..];
    }
    Some(out)
}

/// Parses an implicational type such as `(a -> b) -> a -> b`.
pub fn parse_type(src: &SourceText) -> Result<SimpleType, ParseError> {
    let mut cur = Cursor::new(src);
    let t = type_expr(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.unexpected("end of input"));
    }
    Ok(t)
}

fn type_expr(cur: &mut Cursor) -> Result<SimpleType, ParseError> {
    let dom = type_atom(cur)?;
    cur.skip_ws();
    if cur.eat("->") || cur.eat("→") {
        let cod = type_expr(cur)?;
        Ok(SimpleType::arrow(dom, cod))
    } else {
        Ok(dom)
    }
}

fn type_atom(cur: &mut Cursor) -> Result<SimpleType, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some('(') => {
            cur.bump();
            let t = type_expr(cur)?;
            cur.expect(")")?;
            Ok(t)
        }
        Some(c) if c.is_alphanumeric() || c == '_' => {
            let name: String = if c.is_ascii() {
                cur.ident()
            } else {
                cur.bump();
                c.to_string()
            };
            Ok(SimpleType::Var(name))
        }
        _ => Err(cur.unexpected("a type variable or `(`")),
    }
}
