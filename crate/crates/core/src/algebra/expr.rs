//! The element expression grammar used by the CLI:
//!
//! ```text
//! element := '0' | ['-'] term (('+'|'-') term)*
//! term    := [coeff '*']? factor ('*' factor)*
//! factor  := 'p(' vertex ')' | 's(' path ')' | 'st(' path ')'
//! path    := id ('.' id)*
//! coeff   := integer | integer '/' integer   (ring-interpreted)
//! ```
//!
//! Whitespace is insignificant. Serialized elements re-parse to equal
//! elements.

use super::{Algebra, AlgebraElement};
use crate::kgraph::Path;
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    /// 1-based column in the expression string.
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "col {}: {}", self.col, self.msg)
    }
}

impl std::error::Error for ExprError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError {
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), ExprError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!(
                "expected `{}`{}",
                b as char,
                match self.peek() {
                    Some(c) => format!(", found `{}`", c as char),
                    None => ", found end of input".to_string(),
                }
            )))
        }
    }

    fn id(&mut self) -> Result<String, ExprError> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an id"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn digits(&mut self) -> Result<BigInt, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }
}

fn parse_path(p: &mut Parser, alg: &Algebra) -> Result<Path, ExprError> {
    let g = alg.graph();
    let mut word = Vec::new();
    loop {
        let at = p.pos;
        let id = p.id()?;
        match g.edge_id(&id) {
            Some(e) => word.push(e),
            None => {
                return Err(ExprError {
                    col: at + 1,
                    msg: format!("unknown edge id `{id}`"),
                })
            }
        }
        if p.peek() == Some(b'.') {
            p.pos += 1;
        } else {
            break;
        }
    }
    let at = p.pos;
    g.canonicalize(&word).map_err(|e| ExprError {
        col: at + 1,
        msg: e.to_string(),
    })
}

fn parse_factor(p: &mut Parser, alg: &Algebra) -> Result<AlgebraElement, ExprError> {
    let g = alg.graph();
    let at = p.pos;
    let head = p.id()?;
    match head.as_str() {
        "p" => {
            p.eat(b'(')?;
            p.skip_ws();
            let vat = p.pos;
            let name = p.id()?;
            let v = g.vertex_id(&name).ok_or(ExprError {
                col: vat + 1,
                msg: format!("unknown vertex id `{name}`"),
            })?;
            p.skip_ws();
            p.eat(b')')?;
            Ok(alg.vertex_idempotent(v))
        }
        "s" | "st" => {
            p.eat(b'(')?;
            p.skip_ws();
            let path = parse_path(p, alg)?;
            p.skip_ws();
            p.eat(b')')?;
            let elem = if head == "s" {
                alg.path_gen(&path)
            } else {
                alg.ghost_gen(&path)
            };
            elem.map_err(|e| ExprError {
                col: at + 1,
                msg: e.to_string(),
            })
        }
        other => Err(ExprError {
            col: at + 1,
            msg: format!("expected p(...), s(...) or st(...), found `{other}`"),
        }),
    }
}

fn parse_term(p: &mut Parser, alg: &Algebra, negate: bool) -> Result<AlgebraElement, ExprError> {
    p.skip_ws();
    let mut coeff = alg.spec().one();
    if p.peek().is_some_and(|c| c.is_ascii_digit()) {
        let num = p.digits()?;
        let den = if p.peek() == Some(b'/') {
            p.pos += 1;
            p.digits()?
        } else {
            BigInt::from(1)
        };
        let at = p.pos;
        coeff = alg.spec().from_ratio(num, den).map_err(|e| ExprError {
            col: at + 1,
            msg: e.to_string(),
        })?;
        p.skip_ws();
        p.eat(b'*')?;
        p.skip_ws();
    }
    if negate {
        coeff = coeff.neg();
    }
    let mut acc = parse_factor(p, alg)?;
    loop {
        p.skip_ws();
        if p.peek() == Some(b'*') {
            p.pos += 1;
            p.skip_ws();
            let at = p.pos;
            let rhs = parse_factor(p, alg)?;
            acc = alg.mul(&acc, &rhs).map_err(|e| ExprError {
                col: at + 1,
                msg: e.to_string(),
            })?;
        } else {
            break;
        }
    }
    alg.scalar_mul(&coeff, &acc).map_err(|e| ExprError {
        col: p.pos + 1,
        msg: e.to_string(),
    })
}

/// Parse an element expression against an algebra (graph + ring).
pub fn parse_element(alg: &Algebra, input: &str) -> Result<AlgebraElement, ExprError> {
    let mut p = Parser::new(input);
    p.skip_ws();
    if p.peek() == Some(b'0') {
        let save = p.pos;
        p.pos += 1;
        p.skip_ws();
        if p.peek().is_none() {
            return Ok(alg.zero());
        }
        p.pos = save;
    }
    let mut negate = false;
    if p.peek() == Some(b'-') {
        p.pos += 1;
        negate = true;
    }
    let mut acc = parse_term(&mut p, alg, negate)?;
    loop {
        p.skip_ws();
        match p.peek() {
            Some(b'+') | Some(b'-') => {
                let negate = p.peek() == Some(b'-');
                p.pos += 1;
                let at = p.pos;
                let term = parse_term(&mut p, alg, negate)?;
                acc = alg.add(&acc, &term).map_err(|e| ExprError {
                    col: at + 1,
                    msg: e.to_string(),
                })?;
            }
            None => return Ok(acc),
            Some(c) => {
                return Err(p.err(format!("unexpected `{}`", c as char)));
            }
        }
    }
}
