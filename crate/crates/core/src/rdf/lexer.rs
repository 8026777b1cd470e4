//! Tokenizer shared by the Turtle reader and the SELECT query reader.

use alloc::string::String;
use alloc::vec::Vec;

use super::turtle::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    /// `<...>`, escapes decoded, not yet resolved.
    IriRef(String),
    /// `prefix:local`, local escapes decoded.
    PName(String, String),
    Blank(String),
    Var(String),
    Str(String),
    /// `@word`: language tag, `@prefix` or `@base`.
    At(String),
    DoubleCaret,
    Integer(String),
    Decimal(String),
    Double(String),
    /// Bare word: `a`, `true`, `PREFIX`, `SELECT`, ...
    Word(String),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub(crate) struct Lexer<'a> {
    chars: Vec<char>,
    at: usize,
    line: usize,
    column: usize,
    allow_vars: bool,
    _src: core::marker::PhantomData<&'a str>,
}

impl<'a> Lexer<'a> {
    pub fn new(text: &'a str, allow_vars: bool) -> Self {
        Lexer {
            chars: text.chars().collect(),
            at: 0,
            line: 1,
            column: 1,
            allow_vars,
            _src: core::marker::PhantomData,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.chars.get(self.at + n).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.at).copied()?;
        self.at += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn err(&self, pos: Pos, reason: impl Into<String>) -> ParseError {
        ParseError {
            line: pos.line,
            column: pos.column,
            kind: ParseErrorKind::Syntax(reason.into()),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    pub fn next_token(&mut self) -> Result<Token, ParseError> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok(Token { tok: Tok::Eof, pos });
        };
        let tok = match c {
            '<' => self.iri_ref(pos)?,
            '"' | '\'' => self.string(pos, c)?,
            '@' => {
                self.bump();
                let mut word = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || (c == '-' && !word.is_empty()) {
                        word.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if word.is_empty() {
                    return Err(self.err(pos, "expected a language tag or directive after '@'"));
                }
                Tok::At(word)
            }
            '^' => {
                self.bump();
                if self.peek() != Some('^') {
                    return Err(self.err(pos, "expected '^^'"));
                }
                self.bump();
                Tok::DoubleCaret
            }
            '_' if self.peek_at(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name_run(true);
                if label.is_empty() {
                    return Err(self.err(pos, "empty blank node label"));
                }
                Tok::Blank(label)
            }
            '?' | '$' if self.allow_vars => {
                self.bump();
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(self.err(pos, "empty variable name"));
                }
                Tok::Var(name)
            }
            c if c.is_ascii_digit()
                || ((c == '+' || c == '-')
                    && self
                        .peek_at(1)
                        .is_some_and(|d| d.is_ascii_digit() || d == '.'))
                || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                self.number(pos)?
            }
            c if c.is_alphabetic() || c == ':' || c == '_' => self.name_or_pname()?,
            '.' | ';' | ',' | '{' | '}' | '(' | ')' | '[' | ']' | '*' => {
                self.bump();
                Tok::Punct(c)
            }
            other => return Err(self.err(pos, alloc::format!("unexpected character {other:?}"))),
        };
        Ok(Token { tok, pos })
    }

    fn iri_ref(&mut self, pos: Pos) -> Result<Tok, ParseError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err(pos, "unterminated IRI")),
                Some('>') => return Ok(Tok::IriRef(out)),
                Some('\\') => {
                    let here = self.pos();
                    match self.bump() {
                        Some('u') => out.push(self.hex_escape(4, here)?),
                        Some('U') => out.push(self.hex_escape(8, here)?),
                        _ => return Err(self.err(here, "invalid escape in IRI")),
                    }
                }
                Some(c) if super::term::forbidden_in_iri(c) => {
                    return Err(self.err(pos, alloc::format!("character {c:?} not allowed in IRI")))
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn hex_escape(&mut self, digits: usize, pos: Pos) -> Result<char, ParseError> {
        let mut value = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.err(pos, "invalid unicode escape"))?;
            value = value * 16 + d;
        }
        char::from_u32(value).ok_or_else(|| self.err(pos, "escape is not a unicode scalar value"))
    }

    fn string(&mut self, pos: Pos, quote: char) -> Result<Tok, ParseError> {
        let long = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let open = if long { 3 } else { 1 };
        for _ in 0..open {
            self.bump();
        }
        let mut out = String::new();
        loop {
            let here = self.pos();
            match self.bump() {
                None => return Err(self.err(pos, "unterminated string literal")),
                Some(c) if c == quote => {
                    if !long {
                        return Ok(Tok::Str(out));
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        // A long string may end with up to two extra quotes.
                        while self.peek() == Some(quote) && self.peek_at(2) == Some(quote) {
                            out.push(quote);
                            self.bump();
                        }
                        self.bump();
                        self.bump();
                        return Ok(Tok::Str(out));
                    }
                    out.push(c);
                }
                Some('\n' | '\r') if !long => {
                    return Err(self.err(here, "line break in short string literal"))
                }
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4, here)?,
                        Some('U') => self.hex_escape(8, here)?,
                        _ => return Err(self.err(here, "invalid escape sequence")),
                    };
                    out.push(c);
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn number(&mut self, pos: Pos) -> Result<Tok, ParseError> {
        let mut s = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            s.push(c);
            self.bump();
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
            int_digits += 1;
        }
        let mut frac_digits = 0;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
            s.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                s.push(c);
                self.bump();
                frac_digits += 1;
            }
        }
        if int_digits + frac_digits == 0 {
            return Err(self.err(pos, "malformed number"));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            s.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                s.push(c);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                s.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return Err(self.err(pos, "malformed exponent"));
            }
            return Ok(Tok::Double(s));
        }
        Ok(if frac_digits > 0 {
            Tok::Decimal(s)
        } else {
            Tok::Integer(s)
        })
    }

    /// Run of name characters. A '.' is taken only when a name character
    /// follows it, so the run never ends with a dot.
    fn name_run(&mut self, allow_dot: bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            let ok = c.is_alphanumeric()
                || c == '_'
                || c == '-'
                || (allow_dot
                    && c == '.'
                    && self
                        .peek_at(1)
                        .is_some_and(|n| n.is_alphanumeric() || matches!(n, '_' | '-')));
            if !ok {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn name_or_pname(&mut self) -> Result<Tok, ParseError> {
        let prefix = if self.peek() == Some(':') {
            String::new()
        } else {
            self.name_run(true)
        };
        if self.peek() != Some(':') {
            return Ok(Tok::Word(prefix));
        }
        self.bump();
        let mut local = String::new();
        loop {
            match self.peek() {
                Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | ':') => {
                    local.push(c);
                    self.bump();
                }
                Some('.')
                    if !local.is_empty()
                        && self.peek_at(1).is_some_and(|n| {
                            n.is_alphanumeric() || matches!(n, '_' | '-' | ':' | '%' | '\\' | '.')
                        }) =>
                {
                    local.push('.');
                    self.bump();
                }
                Some('%') => {
                    let here = self.pos();
                    self.bump();
                    let (Some(a), Some(b)) = (self.bump(), self.bump()) else {
                        return Err(self.err(here, "truncated percent escape"));
                    };
                    if !a.is_ascii_hexdigit() || !b.is_ascii_hexdigit() {
                        return Err(self.err(here, "invalid percent escape"));
                    }
                    local.push('%');
                    local.push(a);
                    local.push(b);
                }
                Some('\\') => {
                    let here = self.pos();
                    self.bump();
                    match self.bump() {
                        Some(
                            c @ ('_' | '~' | '.' | '-' | '!' | '$' | '&' | '\'' | '(' | ')' | '*'
                            | '+' | ',' | ';' | '=' | '/' | '?' | '#' | '@' | '%'),
                        ) => local.push(c),
                        _ => return Err(self.err(here, "invalid local name escape")),
                    }
                }
                _ => break,
            }
        }
        // A trailing '.' is a statement terminator, never part of a name.
        while local.ends_with('.') {
            local.pop();
            self.at -= 1;
            self.column -= 1;
        }
        Ok(Tok::PName(prefix, local))
    }
}
