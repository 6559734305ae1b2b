//! Character cursor with line/column tracking and the lexical rules Turtle
//! and N-Triples have in common.

use super::ParseError;
use super::chars::{is_pn_chars, is_pn_chars_u};
use crate::rdf::term::{is_forbidden_iri_char, is_language_tag};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Mark {
    pos: usize,
    line: usize,
    column: usize,
}

pub(crate) struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Self {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn peek_at(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn mark(&self) -> Mark {
        Mark {
            pos: self.pos,
            line: self.line,
            column: self.column,
        }
    }

    pub fn reset(&mut self, mark: Mark) {
        self.pos = mark.pos;
        self.line = mark.line;
        self.column = mark.column;
    }

    /// Case-insensitive keyword check at the current position, not consuming.
    pub fn looking_at_keyword(&self, word: &str) -> bool {
        let n = word.chars().count();
        let matches = word
            .chars()
            .enumerate()
            .all(|(i, w)| self.peek_at(i).is_some_and(|c| c.eq_ignore_ascii_case(&w)));
        matches && self.peek_at(n).is_none_or(|c| !(is_pn_chars(c) || c == ':' || c == '.'))
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.mark(), message)
    }

    pub fn error_at(&self, mark: Mark, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: mark.line,
            column: mark.column,
            offset: mark.pos,
            message: message.into(),
        }
    }

    pub fn unknown_prefix(&self, mark: Mark, prefix: &str) -> ParseError {
        ParseError::UnknownPrefix {
            prefix: prefix.to_owned(),
            line: mark.line,
            column: mark.column,
            offset: mark.pos,
        }
    }

    pub fn malformed_iri(&self, mark: Mark, iri: &str, reason: impl Into<String>) -> ParseError {
        ParseError::MalformedIri {
            iri: iri.to_owned(),
            reason: reason.into(),
            line: mark.line,
            column: mark.column,
            offset: mark.pos,
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(c) => self.error(format!("expected {wanted}, found {c:?}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    /// Reads `\uXXXX` or `\UXXXXXXXX` after the backslash has been consumed
    /// and the `u`/`U` is the current character.
    pub fn unicode_escape(&mut self) -> Result<char, ParseError> {
        let mark = self.mark();
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error_at(mark, "invalid escape sequence")),
        };
        let mut value = 0u32;
        for _ in 0..width {
            let digit = self
                .peek()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error("expected hexadecimal digit in unicode escape"))?;
            self.bump();
            value = value * 16 + digit;
        }
        char::from_u32(value).ok_or_else(|| self.error_at(mark, format!("invalid code point U+{value:X}")))
    }

    /// Reads an `IRIREF` (the cursor sits on `<`) and returns its unescaped text.
    pub fn iri_ref(&mut self) -> Result<String, ParseError> {
        self.expect('<')?;
        let mut out = String::new();
        loop {
            let mark = self.mark();
            match self.bump() {
                None => return Err(self.error("unterminated IRI")),
                Some('>') => return Ok(out),
                Some('\\') => {
                    let c = self.unicode_escape()?;
                    if is_forbidden_iri_char(c) {
                        return Err(self.malformed_iri(mark, &out, format!("escaped illegal character {c:?}")));
                    }
                    out.push(c);
                }
                Some(c) if is_forbidden_iri_char(c) => {
                    return Err(self.malformed_iri(mark, &out, format!("illegal character {c:?} in IRI")));
                }
                Some(c) => out.push(c),
            }
        }
    }

    /// Reads a blank node label; the cursor sits on `_`.
    pub fn blank_label(&mut self) -> Result<String, ParseError> {
        self.expect('_')?;
        self.expect(':')?;
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return Err(self.unexpected("blank node label")),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        while label.ends_with('.') {
            label.pop();
            self.retreat_one();
        }
        Ok(label)
    }

    /// Steps back over one character known not to be a line break.
    pub fn retreat_one(&mut self) {
        debug_assert!(self.pos > 0 && self.chars[self.pos - 1] != '\n');
        self.pos -= 1;
        self.column -= 1;
    }

    /// Reads a quoted string; the cursor sits on the opening quote.
    /// `allow_long` enables `"""`/`'''` forms and single quotes (Turtle only).
    pub fn string(&mut self, allow_long: bool) -> Result<String, ParseError> {
        let start = self.mark();
        let quote = match self.peek() {
            Some('"') => '"',
            Some('\'') if allow_long => '\'',
            _ => return Err(self.unexpected("string literal")),
        };
        let long = allow_long && self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        if long {
            self.bump();
            self.bump();
            self.bump();
        } else {
            self.bump();
        }
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error_at(start, "unterminated string literal")),
                Some(c) if c == quote => {
                    if !long {
                        self.bump();
                        return Ok(out);
                    }
                    if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                        self.bump();
                        self.bump();
                        self.bump();
                        return Ok(out);
                    }
                    out.push(c);
                    self.bump();
                }
                Some('\n' | '\r') if !long => {
                    return Err(self.error("line break in short string literal"));
                }
                Some('\\') => {
                    self.bump();
                    let mark = self.mark();
                    let escaped = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u' | 'U') => {
                            out.push(self.unicode_escape()?);
                            continue;
                        }
                        _ => return Err(self.error_at(mark, "invalid escape sequence")),
                    };
                    self.bump();
                    out.push(escaped);
                }
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    /// Reads a language tag; the cursor sits on `@`.
    pub fn language_tag(&mut self) -> Result<String, ParseError> {
        let mark = self.mark();
        self.expect('@')?;
        let mut tag = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                tag.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if is_language_tag(&tag) && tag.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            Ok(tag)
        } else {
            Err(self.error_at(mark, format!("malformed language tag {tag:?}")))
        }
    }
}
