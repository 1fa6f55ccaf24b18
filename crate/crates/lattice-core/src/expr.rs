//! Lattice expressions such as `U(11) + <-2>` or `U + E8(2)`.
//!
//! ```text
//! expr   := term ("+" term)*
//! term   := named | named "(" int ")" | "<" int ">" | "[[" int,... "]" ,... "]"
//! named  := "U" | "E8" | "A2"
//! ```

use std::fmt;

use thiserror::Error;

use crate::error::LatticeError;
use crate::lattice::GramLattice;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Named {
    U,
    E8,
    A2,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Named(Named),
    Scaled(Named, i128),
    Diag(i128),
    Gram(IntMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeExpression {
    pub terms: Vec<Term>,
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Named::U => "U",
            Named::E8 => "E8",
            Named::A2 => "A2",
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Named(n) => write!(f, "{n}"),
            Term::Scaled(n, t) => write!(f, "{n}({t})"),
            Term::Diag(d) => write!(f, "<{d}>"),
            Term::Gram(g) => {
                let rows: Vec<String> = g
                    .iter()
                    .map(|r| {
                        let e: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", e.join(","))
                    })
                    .collect();
                write!(f, "[{}]", rows.join(","))
            }
        }
    }
}

impl fmt::Display for LatticeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl std::str::FromStr for LatticeExpression {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_lattice(s)
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<i128> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        if matches!(self.chars.get(end), Some('-') | Some('+')) {
            end += 1;
        }
        let digits = end;
        while end < self.chars.len() && self.chars[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits {
            return None;
        }
        let s: String = self.chars[start..end].iter().collect();
        let v = s.parse().ok()?;
        self.pos = end;
        Some(v)
    }

    fn named(&mut self) -> Option<Named> {
        self.skip_ws();
        let rest: String = self.chars[self.pos..].iter().take(2).collect();
        let (n, len) = if rest.starts_with("E8") {
            (Named::E8, 2)
        } else if rest.starts_with("A2") {
            (Named::A2, 2)
        } else if rest.starts_with('U') {
            (Named::U, 1)
        } else {
            return None;
        };
        self.pos += len;
        Some(n)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('<') => {
                self.pos += 1;
                let v = self.integer();
                match (v, self.eat('>')) {
                    (Some(v), true) => Ok(Term::Diag(v)),
                    _ => Err(self.error(start, "malformed diagonal term, expected <integer>")),
                }
            }
            Some('[') => self.gram(start),
            Some(_) => {
                let Some(n) = self.named() else {
                    return Err(self.error(start, "expected U, E8, A2, <n> or a Gram literal"));
                };
                if self.eat('(') {
                    let v = self.integer();
                    match (v, self.eat(')')) {
                        (Some(v), true) => Ok(Term::Scaled(n, v)),
                        _ => Err(self.error(start, "malformed scaling, expected NAME(integer)")),
                    }
                } else {
                    Ok(Term::Named(n))
                }
            }
            None => Err(self.error(start, "unexpected end of input")),
        }
    }

    fn gram(&mut self, start: usize) -> Result<Term, ParseError> {
        let bad = |c: &Self| c.error(start, "malformed Gram literal");
        self.pos += 1;
        let mut rows = Vec::new();
        loop {
            if !self.eat('[') {
                return Err(bad(self));
            }
            let mut row = Vec::new();
            loop {
                row.push(self.integer().ok_or_else(|| bad(self))?);
                if self.eat(',') {
                    continue;
                }
                if self.eat(']') {
                    break;
                }
                return Err(bad(self));
            }
            rows.push(row);
            if self.eat(',') {
                continue;
            }
            if self.eat(']') {
                break;
            }
            return Err(bad(self));
        }
        Ok(Term::Gram(rows))
    }
}

pub fn parse_lattice(text: &str) -> Result<LatticeExpression, ParseError> {
    let mut c = Cursor {
        chars: text.chars().collect(),
        pos: 0,
    };
    let mut terms = vec![c.term()?];
    loop {
        match c.peek() {
            None => break,
            Some('+') => {
                c.pos += 1;
                terms.push(c.term()?);
            }
            Some(_) => {
                let p = c.pos;
                return Err(c.error(p, "expected '+' or end of input"));
            }
        }
    }
    Ok(LatticeExpression { terms })
}

/// Negative definite E8 (Bourbaki labels: chain 1-3-4-5-6-7-8, node 2 on 4).
pub fn e8_gram() -> IntMatrix {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = vec![vec![0i128; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in edges {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    g
}

fn named_gram(n: Named) -> IntMatrix {
    match n {
        Named::U => vec![vec![0, 1], vec![1, 0]],
        Named::E8 => e8_gram(),
        Named::A2 => vec![vec![-2, 1], vec![1, -2]],
    }
}

fn block_sum(blocks: &[IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut g = vec![vec![0i128; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            g[off + i][off..off + b.len()].copy_from_slice(row);
        }
        off += b.len();
    }
    g
}

/// Builds the Gram lattice; `even` rejects odd diagonal entries.
pub fn construct(expr: &LatticeExpression, even: bool) -> Result<GramLattice, LatticeError> {
    let mut blocks = Vec::new();
    for t in &expr.terms {
        let b = match t {
            Term::Named(n) => named_gram(*n),
            Term::Scaled(n, s) => named_gram(*n)
                .into_iter()
                .map(|r| r.into_iter().map(|x| x * s).collect())
                .collect(),
            Term::Diag(d) => vec![vec![*d]],
            Term::Gram(g) => {
                if g.iter().any(|r| r.len() != g.len()) {
                    return Err(LatticeError::NotSquare);
                }
                g.clone()
            }
        };
        blocks.push(b);
    }
    let g = block_sum(&blocks);
    if even {
        if let Some(i) = (0..g.len()).find(|&i| g[i][i] % 2 != 0) {
            return Err(LatticeError::OddDiagonal {
                index: i,
                value: g[i][i],
            });
        }
    }
    GramLattice::new(g)
}

pub fn parse_and_construct(text: &str, even: bool) -> Result<GramLattice, LatticeError> {
    construct(&parse_lattice(text)?, even)
}
