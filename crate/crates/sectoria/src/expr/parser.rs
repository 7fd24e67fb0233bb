//! Recursive-descent parser producing [`Node`] trees.
//!
//! Grammar (standard precedence, `^` right-associative and binding tighter
//! than unary minus):
//!
//! ```text
//! expr   := term  (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | 'i' | 'pi' | 'e' | 'z'<digits> | func '(' expr ')' | '(' expr ')'
//! func   := exp | sin | cos | sinh | cosh | log
//! ```
//!
//! There is no implicit multiplication: `2z1` is a syntax error.

use num_complex::Complex64;

use super::lexer::{tokenize, Spanned, Tok};
use super::{Func, Node, ParseError};

pub(crate) fn parse_source(src: &str, nvars: usize) -> Result<Node, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        nvars,
        eof_at: src.len() + 1,
    };
    let node = p.expr()?;
    if let Some(s) = p.peek() {
        return Err(ParseError::Syntax {
            at: s.at,
            msg: format!("unexpected `{}`", describe(&s.tok)),
        });
    }
    Ok(node)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    nvars: usize,
    eof_at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.bump() {
            Some(s) if s.tok == want => Ok(()),
            Some(s) => Err(ParseError::Syntax {
                at: s.at,
                msg: format!("expected {what}, found `{}`", describe(&s.tok)),
            }),
            None => Err(ParseError::Syntax {
                at: self.eof_at,
                msg: format!("expected {what}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        while let Some(s) = self.peek() {
            let op = match s.tok {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = if op {
                Node::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(s) = self.peek() {
            let mul = match s.tok {
                Tok::Star => true,
                Tok::Slash => false,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = if mul {
                Node::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if matches!(self.peek(), Some(s) if s.tok == Tok::Minus) {
            self.bump();
            let inner = self.unary()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(s) if s.tok == Tok::Caret) {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let s = match self.bump() {
            Some(s) => s,
            None => {
                return Err(ParseError::Syntax {
                    at: self.eof_at,
                    msg: "expected expression, found end of input".into(),
                })
            }
        };
        match s.tok {
            Tok::Num(v) => Ok(Node::Lit(Complex64::new(v, 0.0))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => self.ident(name, s.at),
            other => Err(ParseError::Syntax {
                at: s.at,
                msg: format!("expected expression, found `{}`", describe(&other)),
            }),
        }
    }

    fn ident(&mut self, name: String, at: usize) -> Result<Node, ParseError> {
        match name.as_str() {
            "i" => return Ok(Node::Lit(Complex64::new(0.0, 1.0))),
            "pi" => return Ok(Node::Lit(Complex64::new(std::f64::consts::PI, 0.0))),
            "e" => return Ok(Node::Lit(Complex64::new(std::f64::consts::E, 0.0))),
            _ => {}
        }
        if let Some(func) = Func::from_name(&name) {
            self.expect(Tok::LParen, "`(` after function name")?;
            let arg = self.expr()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Node::Call(func, Box::new(arg)));
        }
        if let Some(digits) = name.strip_prefix('z') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let index: usize = digits.parse().map_err(|_| ParseError::Syntax {
                    at,
                    msg: format!("variable index `{digits}` too large"),
                })?;
                if index == 0 || index > self.nvars {
                    return Err(ParseError::VariableOutOfRange {
                        index,
                        nvars: self.nvars,
                        at,
                    });
                }
                return Ok(Node::Var(index - 1));
            }
        }
        Err(ParseError::UnknownIdentifier { name, at })
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(v) => format!("{v:?}"),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}
