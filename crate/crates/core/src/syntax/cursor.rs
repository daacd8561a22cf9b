use super::{ParseError, SourceText};

/// Character cursor with line/column tracking for error reporting.
pub(crate) struct Cursor<'a> {
    src: &'a SourceText,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a SourceText) -> Cursor<'a> {
        Cursor {
            src,
            chars: src.text.chars().collect(),
            pos: 0,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i) == Some(c))
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            self.pos += s.chars().count();
            true
        } else {
            false
        }
    }

    /// Skips whitespace; reports whether a newline was crossed.
    pub fn skip_ws(&mut self) -> bool {
        let mut newline = false;
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            newline |= c == '\n';
            self.pos += 1;
        }
        newline
    }

    pub fn ident(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.chars[start..self.pos].iter().collect()
    }

    pub fn error_at(
        &self,
        pos: usize,
        message: impl Into<String>,
        expected: Option<&str>,
    ) -> ParseError {
        let pos = pos.min(self.chars.len());
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            origin: self.src.origin.clone(),
            line,
            column,
            message: message.into(),
            expected: expected.map(str::to_string),
        }
    }

    pub fn error(&self, message: impl Into<String>, expected: Option<&str>) -> ParseError {
        self.error_at(self.pos, message, expected)
    }

    pub fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(c) => self.error(format!("unexpected `{c}`"), Some(expected)),
            None => self.error("unexpected end of input", Some(expected)),
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }
}
