//! Text and JSON notations for divides.
//!
//! ```text
//! # trefoil
//! name: trefoil
//! left: e e
//! word: +1
//! right: m
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divide::{Crossing, Divide, DivideError, Sign, WallItem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("SyntaxError at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] DivideError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Name,
    Left,
    Word,
    Right,
}

/// Parses a divide document; input starting with `{` is read as JSON.
pub fn parse(text: &str) -> Result<Divide, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut name = None;
    let mut left = None;
    let mut word = None;
    let mut right = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim_start();
        let Some(colon) = body.find(':') else {
            return Err(syntax(line_no, indent + 1, "expected `left:`, `word:`, `right:` or `name:`"));
        };
        let key = body[..colon].trim();
        let section = match key.to_ascii_lowercase().as_str() {
            "name" => Section::Name,
            "left" => Section::Left,
            "word" => Section::Word,
            "right" => Section::Right,
            _ => return Err(syntax(line_no, indent + 1, format!("unknown section `{key}`"))),
        };
        let rest_offset = indent + colon + 1;
        let rest = &body[colon + 1..];

        let expected_before = match section {
            Section::Name => left.is_none() && word.is_none() && right.is_none() && name.is_none(),
            Section::Left => left.is_none() && word.is_none() && right.is_none(),
            Section::Word => left.is_some() && word.is_none() && right.is_none(),
            Section::Right => word.is_some() && right.is_none(),
        };
        if !expected_before {
            return Err(syntax(
                line_no,
                indent + 1,
                format!("section `{key}` out of order or repeated (expected name?, left, word, right)"),
            ));
        }

        match section {
            Section::Name => {
                let n = rest.trim();
                if n.is_empty() {
                    return Err(syntax(line_no, rest_offset + 1, "empty name"));
                }
                name = Some(n.to_string());
            }
            Section::Left => left = Some(parse_wall(rest, line_no, rest_offset)?),
            Section::Right => right = Some(parse_wall(rest, line_no, rest_offset)?),
            Section::Word => word = Some(parse_word(rest, line_no, rest_offset)?),
        }
    }

    let missing = |what: &str| syntax(last_line.max(1), 1, format!("missing `{what}:` line"));
    let left = left.ok_or_else(|| missing("left"))?;
    let word = word.ok_or_else(|| missing("word"))?;
    let right = right.ok_or_else(|| missing("right"))?;
    let divide = Divide { name, left, word, right };
    divide.validate()?;
    Ok(divide)
}

/// Tokens of `s` with their 1-based columns, given the column offset of `s`.
fn tokens(s: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((offset + st + 1, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((offset + st + 1, &s[st..]));
    }
    out.into_iter()
}

fn parse_wall(s: &str, line: usize, offset: usize) -> Result<Vec<WallItem>, ParseError> {
    tokens(s, offset)
        .map(|(col, tok)| match tok {
            "e" => Ok(WallItem::Endpoint),
            "m" => Ok(WallItem::TurnBack),
            _ => Err(syntax(line, col, format!("unknown wall item `{tok}` (expected `e` or `m`)"))),
        })
        .collect()
}

fn parse_word(s: &str, line: usize, offset: usize) -> Result<Vec<Crossing>, ParseError> {
    tokens(s, offset)
        .map(|(col, tok)| {
            let (sign, digits) = match tok.as_bytes()[0] {
                b'+' => (Sign::Plus, &tok[1..]),
                b'-' => (Sign::Minus, &tok[1..]),
                _ => return Err(syntax(line, col, format!("crossing `{tok}` needs an explicit sign"))),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(line, col, format!("malformed crossing `{tok}`")));
            }
            let position: usize =
                digits.parse().map_err(|_| syntax(line, col, format!("crossing `{tok}` out of range")))?;
            if position == 0 {
                return Err(syntax(line, col, "crossing positions start at 1"));
            }
            Ok(Crossing { position, sign })
        })
        .collect()
}

/// Canonical serialization.
pub fn emit(divide: &Divide, format: Format) -> String {
    match format {
        Format::Text => emit_text(divide),
        Format::Json => emit_json(divide),
    }
}

fn emit_text(d: &Divide) -> String {
    let mut out = String::new();
    if let Some(name) = &d.name {
        out.push_str("name: ");
        out.push_str(name.trim());
        out.push('\n');
    }
    let wall = |items: &[WallItem]| {
        items.iter().map(|w| w.symbol().to_string()).collect::<Vec<_>>().join(" ")
    };
    let line = |key: &str, body: String| {
        if body.is_empty() {
            format!("{key}:\n")
        } else {
            format!("{key}: {body}\n")
        }
    };
    out.push_str(&line("left", wall(&d.left)));
    out.push_str(&line(
        "word",
        d.word.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
    ));
    out.push_str(&line("right", wall(&d.right)));
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonCrossing {
    pos: usize,
    sign: Sign,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDivide {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    strands: usize,
    left: Vec<WallItem>,
    word: Vec<JsonCrossing>,
    right: Vec<WallItem>,
}

fn emit_json(d: &Divide) -> String {
    let doc = JsonDivide {
        name: d.name.clone(),
        strands: d.strands(),
        left: d.left.clone(),
        word: d.word.iter().map(|c| JsonCrossing { pos: c.position, sign: c.sign }).collect(),
        right: d.right.clone(),
    };
    serde_json::to_string(&doc).expect("divide serializes")
}

pub fn parse_json(text: &str) -> Result<Divide, ParseError> {
    let doc: JsonDivide = serde_json::from_str(text)
        .map_err(|e| syntax(e.line(), e.column(), e.to_string()))?;
    let divide = Divide {
        name: doc.name,
        left: doc.left,
        word: doc.word.into_iter().map(|c| Crossing { position: c.pos, sign: c.sign }).collect(),
        right: doc.right,
    };
    divide.validate()?;
    if divide.strands() != doc.strands {
        return Err(syntax(1, 1, format!("`strands` is {} but the walls hold {}", doc.strands, divide.strands())));
    }
    Ok(divide)
}
