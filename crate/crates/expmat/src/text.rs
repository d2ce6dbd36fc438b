//! Text formats: the matrix interchange format, the expression grammar and
//! permutation strings. Indices are one-based in all text forms.
//!
//! Matrix files hold one row per line of whitespace-separated decimal
//! entries; lines starting with `#` and blank lines are ignored. The
//! expression grammar is
//!
//! ```text
//! expr   := '0' | term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'T' '{' int (',' int)* '}' ('^' posint)?
//! ```
//!
//! with insignificant whitespace; `0` denotes the empty sum.

use crate::block::Block;
use crate::expr::{Factor, Term, TropicalExpression};
use crate::group::Permutation;
use crate::matrix::{Entry, NatMatrix};

/// Parse failure with one-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Renders a matrix in the interchange format, one row per line with a
/// trailing newline.
pub fn format_matrix(m: &NatMatrix) -> String {
    let mut out = m.to_string();
    out.push('\n');
    out
}

/// Parses the matrix interchange format into a zero-diagonal matrix. The
/// dimension is inferred from the row count; rows must be square with it.
pub fn parse_matrix(text: &str) -> Result<NatMatrix, ParseError> {
    let mut rows: Vec<(usize, Vec<(usize, Entry)>)> = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = Vec::new();
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = start;
            while let Some(&(idx, c)) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                end = idx + c.len_utf8();
                chars.next();
            }
            let token = &line[start..end];
            let value: Entry = token.parse().map_err(|_| {
                ParseError::new(
                    line_idx + 1,
                    start + 1,
                    format!("invalid entry {token:?}: expected a non-negative integer"),
                )
            })?;
            tokens.push((start + 1, value));
        }
        rows.push((line_idx + 1, tokens));
    }

    if rows.is_empty() {
        return Err(ParseError::new(1, 1, "empty matrix"));
    }
    let n = rows.len();
    for (row_idx, (line, tokens)) in rows.iter().enumerate() {
        if tokens.len() != n {
            return Err(ParseError::new(
                *line,
                1,
                format!(
                    "row {} has {} entries, expected {n} (the number of rows)",
                    row_idx + 1,
                    tokens.len()
                ),
            ));
        }
    }
    for (i, (line, tokens)) in rows.iter().enumerate() {
        let (col, value) = tokens[i];
        if value != 0 {
            return Err(ParseError::new(*line, col, "diagonal entry must be 0"));
        }
    }

    let entries = rows
        .iter()
        .flat_map(|(_, tokens)| tokens.iter().map(|&(_, v)| v))
        .collect();
    NatMatrix::new(n, entries).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

/// Parses the expression grammar at a fixed dimension.
pub fn parse_expression(text: &str, n: usize) -> Result<TropicalExpression, ParseError> {
    Parser::new(text, n).parse()
}

/// Parses a permutation given as `n` one-based images, e.g. `"2 1 3"`.
pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation, ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != n {
        return Err(ParseError::new(
            1,
            1,
            format!("expected {n} images, got {}", tokens.len()),
        ));
    }
    let mut images = Vec::with_capacity(n);
    for token in &tokens {
        let value: usize = token.parse().map_err(|_| {
            ParseError::new(1, 1, format!("invalid image {token:?}: expected an integer"))
        })?;
        if !(1..=n).contains(&value) {
            return Err(ParseError::new(
                1,
                1,
                format!("image {value} out of range 1..={n}"),
            ));
        }
        images.push(value - 1);
    }
    Permutation::new(images).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n: usize) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            n,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        ParseError::new(line, column, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error_at(
                self.pos,
                format!("expected {:?}, found {:?}", c as char, got as char),
            )),
            None => Err(self.error_at(self.pos, format!("expected {:?}, found end of input", c as char))),
        }
    }

    fn parse_number(&mut self) -> Result<(Entry, usize), ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error_at(start, "expected a number"));
        }
        let value = self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "number too large"))?;
        Ok((value, start))
    }

    fn parse(&mut self) -> Result<TropicalExpression, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'0') {
            self.pos += 1;
            self.skip_ws();
            if let Some(c) = self.peek() {
                return Err(self.error_at(self.pos, format!("unexpected {:?} after '0'", c as char)));
            }
            return Ok(TropicalExpression::empty(self.n));
        }
        let mut terms = vec![self.parse_term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.parse_term()?);
                }
                Some(c) => {
                    return Err(self.error_at(self.pos, format!("unexpected {:?}", c as char)))
                }
                None => break,
            }
        }
        TropicalExpression::new(self.n, terms).map_err(|e| self.error_at(self.pos, e.to_string()))
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        let mut factors = vec![self.parse_factor()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                factors.push(self.parse_factor()?);
            } else {
                break;
            }
        }
        Term::new(factors).map_err(|e| self.error_at(self.pos, e.to_string()))
    }

    fn parse_factor(&mut self) -> Result<Factor, ParseError> {
        self.skip_ws();
        let block_start = self.pos;
        self.expect(b'T')?;
        self.skip_ws();
        self.expect(b'{')?;
        let mut indices = Vec::new();
        loop {
            self.skip_ws();
            let (value, pos) = self.parse_number()?;
            if value == 0 || value > self.n as Entry {
                return Err(self.error_at(pos, format!("index {value} out of range 1..={}", self.n)));
            }
            indices.push(value as usize - 1);
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                }
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                Some(c) => {
                    return Err(self.error_at(self.pos, format!("expected ',' or '}}', found {:?}", c as char)))
                }
                None => return Err(self.error_at(self.pos, "expected ',' or '}', found end of input")),
            }
        }
        let block = Block::new(self.n, indices)
            .map_err(|e| self.error_at(block_start, e.to_string()))?;
        let power = if self.peek_after_ws() == Some(b'^') {
            self.skip_ws();
            self.pos += 1;
            self.skip_ws();
            let (value, pos) = self.parse_number()?;
            if value == 0 {
                return Err(self.error_at(pos, "power must be positive"));
            }
            value
        } else {
            1
        };
        Factor::new(block, power).map_err(|e| self.error_at(block_start, e.to_string()))
    }

    fn peek_after_ws(&self) -> Option<u8> {
        let mut pos = self.pos;
        while pos < self.bytes.len() && self.bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        self.bytes.get(pos).copied()
    }
}
