//! Plain-text graph format, one declaration per line, `#` comments:
//!
//! ```text
//! k <int>
//! vertex <id>
//! edge <id> <color> <range-id> <source-id>
//! square <g> <h> = <h2> <g2>
//! ```
//!
//! `square g h = h2 g2` means g∘h = h2∘g2 with color(g) = color(g2) <
//! color(h) = color(h2). Ids match `[A-Za-z0-9_]+`; unknown directives are
//! errors. Semantic problems (duplicate ids, dangling endpoints, missing
//! squares) are left to validation.

use super::{EdgeDecl, Presentation, SquareDecl};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Tokens of one line with their 1-based column positions.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        let end = line.find('#').unwrap_or(line.len());
        out.push((s + 1, line[s..end].trim_end()));
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Presentation, ParseError> {
    let mut pres = Presentation::default();
    let mut saw_k = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        if raw
            .chars()
            .any(|c| !c.is_ascii() || (c.is_control() && c != '\t'))
        {
            return Err(err(line, 1, "graph files must be 7-bit printable text"));
        }
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        let (dcol, directive) = toks[0];
        let expect_id = |idx: usize, what: &str| -> Result<String, ParseError> {
            match toks.get(idx) {
                Some(&(_, tok)) if is_id(tok) => Ok(tok.to_string()),
                Some(&(col, tok)) => Err(err(
                    line,
                    col,
                    format!("invalid {what} id `{tok}` (ids match [A-Za-z0-9_]+)"),
                )),
                None => Err(err(line, raw.len() + 1, format!("missing {what} id"))),
            }
        };
        let no_extra = |max: usize| -> Result<(), ParseError> {
            match toks.get(max) {
                Some(&(col, tok)) => Err(err(line, col, format!("unexpected token `{tok}`"))),
                None => Ok(()),
            }
        };
        match directive {
            "k" => {
                if saw_k {
                    return Err(err(line, dcol, "duplicate k declaration"));
                }
                let (col, tok) = *toks
                    .get(1)
                    .ok_or_else(|| err(line, raw.len() + 1, "missing arity after `k`"))?;
                let k: usize = tok
                    .parse()
                    .map_err(|_| err(line, col, format!("invalid arity `{tok}`")))?;
                if k == 0 {
                    return Err(err(line, col, "arity k must be at least 1"));
                }
                no_extra(2)?;
                pres.k = k;
                saw_k = true;
            }
            "vertex" => {
                let id = expect_id(1, "vertex")?;
                no_extra(2)?;
                pres.vertices.push(id);
            }
            "edge" => {
                let id = expect_id(1, "edge")?;
                let (col, tok) = *toks
                    .get(2)
                    .ok_or_else(|| err(line, raw.len() + 1, "missing edge color"))?;
                let color: usize = tok
                    .parse()
                    .map_err(|_| err(line, col, format!("invalid color `{tok}`")))?;
                let range = expect_id(3, "range vertex")?;
                let source = expect_id(4, "source vertex")?;
                no_extra(5)?;
                pres.edges.push(EdgeDecl {
                    id,
                    color,
                    range,
                    source,
                });
            }
            "square" => {
                let g = expect_id(1, "edge")?;
                let h = expect_id(2, "edge")?;
                match toks.get(3) {
                    Some(&(_, "=")) => {}
                    Some(&(col, tok)) => {
                        return Err(err(line, col, format!("expected `=`, found `{tok}`")))
                    }
                    None => return Err(err(line, raw.len() + 1, "expected `=`")),
                }
                let h2 = expect_id(4, "edge")?;
                let g2 = expect_id(5, "edge")?;
                no_extra(6)?;
                pres.squares.push(SquareDecl {
                    first: (g, h),
                    second: (h2, g2),
                });
            }
            other => {
                return Err(err(line, dcol, format!("unknown directive `{other}`")));
            }
        }
    }

    if !saw_k {
        return Err(err(1, 1, "missing k declaration"));
    }
    Ok(pres)
}
