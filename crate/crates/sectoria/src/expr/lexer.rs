//! Tokenizer for the expression grammar.

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

/// A token plus the 1-based byte position where it starts.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub at: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        let at = i + 1; // positions are 1-based
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push(Spanned { tok: Tok::Plus, at });
                i += 1;
            }
            b'-' => {
                out.push(Spanned {
                    tok: Tok::Minus,
                    at,
                });
                i += 1;
            }
            b'*' => {
                out.push(Spanned { tok: Tok::Star, at });
                i += 1;
            }
            b'/' => {
                out.push(Spanned {
                    tok: Tok::Slash,
                    at,
                });
                i += 1;
            }
            b'^' => {
                out.push(Spanned {
                    tok: Tok::Caret,
                    at,
                });
                i += 1;
            }
            b'(' => {
                out.push(Spanned {
                    tok: Tok::LParen,
                    at,
                });
                i += 1;
            }
            b')' => {
                out.push(Spanned {
                    tok: Tok::RParen,
                    at,
                });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let (value, next) = lex_number(src, i)?;
                out.push(Spanned {
                    tok: Tok::Num(value),
                    at,
                });
                i = next;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(src[start..i].to_string()),
                    at,
                });
            }
            _ => {
                return Err(ParseError::Syntax {
                    at,
                    msg: format!("unexpected character `{}`", &src[i..i + utf8_len(b)]),
                })
            }
        }
    }
    Ok(out)
}

/// Decimal literal: digits, optional fraction, optional exponent.
/// `e`/`E` is consumed as an exponent marker only when followed by a digit
/// (possibly signed); otherwise it is left for the identifier lexer, so `2*e`
/// still refers to Euler's constant.
fn lex_number(src: &str, start: usize) -> Result<(f64, usize), ParseError> {
    let bytes = src.as_bytes();
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            i = j;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    let text = &src[start..i];
    text.parse::<f64>()
        .map(|v| (v, i))
        .map_err(|_| ParseError::Syntax {
            at: start + 1,
            msg: format!("malformed number `{text}`"),
        })
}

fn utf8_len(first: u8) -> usize {
    match first {
        0x00..=0x7f => 1,
        0xc0..=0xdf => 2,
        0xe0..=0xef => 3,
        _ => 4,
    }
}
