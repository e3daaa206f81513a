//! Message, codeword and received-word files.
//!
//! A file is a sequence of whitespace-separated tokens, one per symbol: the
//! decimal element code, or `?` for an erased symbol in a received word.
//! Files are written as a single line of space-separated tokens ending in LF.

use thiserror::Error;

use crate::gf::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Token { line: usize, column: usize, message: String },
    #[error("expected {expected} symbols, found {got}")]
    Length { expected: usize, got: usize },
}

/// Parses symbols in `[0, q)`, with `?` accepted when `allow_erasures`.
pub fn parse_symbols(
    text: &str,
    q: u32,
    expected: usize,
    allow_erasures: bool,
) -> Result<Vec<Option<Element>>, ParseError> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            let token = &tail[..len];
            let column = line[..offset + start].chars().count() + 1;
            let err = |message: String| ParseError::Token { line: line_no + 1, column, message };
            if token == "?" {
                if !allow_erasures {
                    return Err(err("erasure marker `?` is only allowed in received words".into()));
                }
                out.push(None);
            } else {
                let code: u32 = token.parse().map_err(|_| err(format!("`{token}` is not an element code")))?;
                if code >= q {
                    return Err(err(format!("element code {code} is out of range for GF({q})")));
                }
                out.push(Some(Element::new(code)));
            }
            offset += start + len;
            rest = &tail[len..];
        }
    }
    if out.len() != expected {
        return Err(ParseError::Length { expected, got: out.len() });
    }
    Ok(out)
}

pub fn parse_elements(text: &str, q: u32, expected: usize) -> Result<Vec<Element>, ParseError> {
    Ok(parse_symbols(text, q, expected, false)?.into_iter().map(|s| s.expect("no erasures")).collect())
}

pub fn write_elements(symbols: &[Element]) -> String {
    let mut out = symbols.iter().map(Element::to_string).collect::<Vec<_>>().join(" ");
    out.push('\n');
    out
}

pub fn write_received(symbols: &[Option<Element>]) -> String {
    let mut out = symbols
        .iter()
        .map(|s| s.map_or_else(|| "?".to_owned(), |e| e.to_string()))
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}
