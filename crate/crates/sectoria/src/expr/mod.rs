//! Interpolating functions `φ(ζ₁,…,ζₙ)` given as expression text.
//!
//! The expression language covers what entire interpolants need at desk scale:
//! complex literals (`1.5`, `i`, `pi`, `e`), variables `z1..zN`, the infix
//! operators `+ - * / ^`, parentheses, and the functions `exp`, `sin`, `cos`,
//! `sinh`, `cosh`, `log`. `^` and `log` use the principal branch
//! (argument in `(−π, π]`); the continuation kernel's `z^ζ` deliberately uses
//! a different branch and lives in [`crate::kernel`], not here.
//!
//! Parsed expressions are immutable and evaluation is pure, so an
//! [`InterpolantExpr`] can be shared freely across threads.

mod lexer;
mod parser;

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Parse failure, with 1-based byte positions into the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {at}: {msg}")]
    Syntax { at: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {at}")]
    UnknownIdentifier { name: String, at: usize },
    #[error("variable z{index} at byte {at} out of range: expression has {nvars} variable(s)")]
    VariableOutOfRange {
        index: usize,
        nvars: usize,
        at: usize,
    },
}

/// Singularity (or overflow) hit while evaluating at a finite point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("zero base raised to a power")]
    ZeroToPower,
    #[error("evaluation overflowed to a non-finite value")]
    NonFinite,
    #[error("expected {expected} argument(s), got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Built-in entire functions of one argument (plus the principal `log`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Log,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        match name {
            "exp" => Some(Func::Exp),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sinh" => Some(Func::Sinh),
            "cosh" => Some(Func::Cosh),
            "log" => Some(Func::Log),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Log => "log",
        }
    }
}

/// Expression tree node. Variable indices are 0-based internally and printed
/// 1-based (`z1..zN`).
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Lit(Complex64),
    Var(usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// A parsed interpolating function of `nvars` complex variables.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolantExpr {
    ast: Node,
    nvars: usize,
}

/// Parse `src` as an expression in the variables `z1..z<nvars>`.
pub fn parse(src: &str, nvars: usize) -> Result<InterpolantExpr, ParseError> {
    assert!(nvars >= 1, "nvars must be at least 1");
    let ast = parser::parse_source(src, nvars)?;
    Ok(InterpolantExpr { ast, nvars })
}

impl InterpolantExpr {
    /// Build directly from an AST; every `Var` index must be `< nvars`.
    pub fn from_ast(ast: Node, nvars: usize) -> Self {
        assert!(nvars >= 1);
        fn check(node: &Node, nvars: usize) {
            match node {
                Node::Var(j) => assert!(*j < nvars, "variable index out of range"),
                Node::Lit(_) => {}
                Node::Neg(a) | Node::Call(_, a) => check(a, nvars),
                Node::Add(a, b)
                | Node::Sub(a, b)
                | Node::Mul(a, b)
                | Node::Div(a, b)
                | Node::Pow(a, b) => {
                    check(a, nvars);
                    check(b, nvars);
                }
            }
        }
        check(&ast, nvars);
        InterpolantExpr { ast, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ast(&self) -> &Node {
        &self.ast
    }

    /// Evaluate at a complex point. Exact node semantics: `^` is
    /// `exp(v·Log w)` with the principal logarithm.
    pub fn eval(&self, args: &[Complex64]) -> Result<Complex64, EvalError> {
        if args.len() != self.nvars {
            return Err(EvalError::ArityMismatch {
                expected: self.nvars,
                got: args.len(),
            });
        }
        let v = eval_node(&self.ast, args)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    /// Evaluate with the variables in `vals` placed at positions `positions`
    /// and every other variable frozen at 0. Used for the boundary sub-series.
    pub fn eval_partial(
        &self,
        positions: &[usize],
        vals: &[Complex64],
    ) -> Result<Complex64, EvalError> {
        debug_assert_eq!(positions.len(), vals.len());
        let mut full = vec![Complex64::new(0.0, 0.0); self.nvars];
        for (&p, &v) in positions.iter().zip(vals) {
            full[p] = v;
        }
        self.eval(&full)
    }

    /// The restriction of this expression with the variables in `frozen`
    /// replaced by the literal 0 and the rest renumbered to `z1..zM`.
    pub fn restrict(&self, keep: &[usize]) -> InterpolantExpr {
        let mut map = vec![None; self.nvars];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        fn rewrite(node: &Node, map: &[Option<usize>]) -> Node {
            match node {
                Node::Var(j) => match map[*j] {
                    Some(new) => Node::Var(new),
                    None => Node::Lit(Complex64::new(0.0, 0.0)),
                },
                Node::Lit(c) => Node::Lit(*c),
                Node::Neg(a) => Node::Neg(Box::new(rewrite(a, map))),
                Node::Call(f, a) => Node::Call(*f, Box::new(rewrite(a, map))),
                Node::Add(a, b) => Node::Add(Box::new(rewrite(a, map)), Box::new(rewrite(b, map))),
                Node::Sub(a, b) => Node::Sub(Box::new(rewrite(a, map)), Box::new(rewrite(b, map))),
                Node::Mul(a, b) => Node::Mul(Box::new(rewrite(a, map)), Box::new(rewrite(b, map))),
                Node::Div(a, b) => Node::Div(Box::new(rewrite(a, map)), Box::new(rewrite(b, map))),
                Node::Pow(a, b) => Node::Pow(Box::new(rewrite(a, map)), Box::new(rewrite(b, map))),
            }
        }
        InterpolantExpr {
            ast: rewrite(&self.ast, &map),
            nvars: keep.len().max(1),
        }
    }
}

fn eval_node(node: &Node, args: &[Complex64]) -> Result<Complex64, EvalError> {
    match node {
        Node::Lit(c) => Ok(*c),
        Node::Var(j) => Ok(args[*j]),
        Node::Neg(a) => Ok(-eval_node(a, args)?),
        Node::Add(a, b) => Ok(eval_node(a, args)? + eval_node(b, args)?),
        Node::Sub(a, b) => Ok(eval_node(a, args)? - eval_node(b, args)?),
        Node::Mul(a, b) => Ok(eval_node(a, args)? * eval_node(b, args)?),
        Node::Div(a, b) => {
            let num = eval_node(a, args)?;
            let den = eval_node(b, args)?;
            if den == Complex64::new(0.0, 0.0) {
                return Err(EvalError::DivisionByZero);
            }
            Ok(num / den)
        }
        Node::Pow(a, b) => {
            let base = eval_node(a, args)?;
            let exponent = eval_node(b, args)?;
            if base == Complex64::new(0.0, 0.0) {
                return Err(EvalError::ZeroToPower);
            }
            Ok((exponent * base.ln()).exp())
        }
        Node::Call(f, a) => {
            let w = eval_node(a, args)?;
            Ok(match f {
                Func::Exp => w.exp(),
                Func::Sin => w.sin(),
                Func::Cos => w.cos(),
                Func::Sinh => w.sinh(),
                Func::Cosh => w.cosh(),
                Func::Log => {
                    if w == Complex64::new(0.0, 0.0) {
                        return Err(EvalError::LogOfZero);
                    }
                    w.ln()
                }
            })
        }
    }
}

// Printing. The canonical form uses minimal parentheses and `{:?}` float
// formatting (shortest string that round-trips), so print∘parse is the
// identity on printed output.

fn prec(node: &Node) -> u8 {
    match node {
        Node::Add(..) | Node::Sub(..) => 1,
        Node::Mul(..) | Node::Div(..) => 2,
        Node::Neg(..) => 3,
        Node::Pow(..) => 4,
        Node::Lit(..) | Node::Var(..) | Node::Call(..) => 5,
    }
}

fn fmt_node(node: &Node, min_prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = prec(node);
    if p < min_prec {
        write!(out, "(")?;
        fmt_node(node, 0, out)?;
        return write!(out, ")");
    }
    match node {
        Node::Lit(c) => fmt_lit(*c, out),
        Node::Var(j) => write!(out, "z{}", j + 1),
        Node::Neg(a) => {
            write!(out, "-")?;
            fmt_node(a, 3, out)
        }
        Node::Add(a, b) => {
            fmt_node(a, 1, out)?;
            write!(out, "+")?;
            fmt_node(b, 2, out)
        }
        Node::Sub(a, b) => {
            fmt_node(a, 1, out)?;
            write!(out, "-")?;
            fmt_node(b, 2, out)
        }
        Node::Mul(a, b) => {
            fmt_node(a, 2, out)?;
            write!(out, "*")?;
            fmt_node(b, 3, out)
        }
        Node::Div(a, b) => {
            fmt_node(a, 2, out)?;
            write!(out, "/")?;
            fmt_node(b, 3, out)
        }
        Node::Pow(a, b) => {
            fmt_node(a, 5, out)?;
            write!(out, "^")?;
            fmt_node(b, 4, out)
        }
        Node::Call(f, a) => {
            write!(out, "{}(", f.name())?;
            fmt_node(a, 0, out)?;
            write!(out, ")")
        }
    }
}

fn fmt_lit(c: Complex64, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.im == 0.0 {
        write!(out, "{:?}", c.re)
    } else if c.re == 0.0 {
        if c.im == 1.0 {
            write!(out, "i")
        } else {
            write!(out, "{:?}*i", c.im)
        }
    } else {
        write!(out, "({:?}+{:?}*i)", c.re, c.im)
    }
}

impl fmt::Display for InterpolantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(&self.ast, 0, f)
    }
}
