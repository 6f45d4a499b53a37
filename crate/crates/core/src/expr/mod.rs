//! Expression language over multivectors.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('^' | '&') factor)*
//! factor  := unary (('*' | '|') unary)*
//! unary   := '-' unary | postfix
//! postfix := primary ('<' INT '>')*
//! primary := NUMBER | BLADE | NAME | FUNC '(' expr ')' | '(' expr ')'
//! ```
//!
//! `*` geometric product, `|` left contraction, `^` outer product, `&`
//! regressive product. Blades are written `e0`, `e13`, `ni`, `e123ni`; a
//! permuted literal such as `e032` carries its permutation sign. Functions:
//! `dual` (conformal), `pdual` (projective), `sharp`, `rev`, `up`, `upP`,
//! `down`. Numbers have no exponent part and scalars must be joined to blades
//! with `*`.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::error::GaError;

pub use eval::{evaluate, Environment};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Geometric,
    Outer,
    LeftContraction,
    Regressive,
    Add,
    Sub,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Geometric => "*",
            BinaryOp::Outer => "^",
            BinaryOp::LeftContraction => "|",
            BinaryOp::Regressive => "&",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Dual,
    ProjectiveDual,
    Sharp,
    Reverse,
    Up,
    UpProjective,
    Down,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Dual,
        Func::ProjectiveDual,
        Func::Sharp,
        Func::Reverse,
        Func::Up,
        Func::UpProjective,
        Func::Down,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Dual => "dual",
            Func::ProjectiveDual => "pdual",
            Func::Sharp => "sharp",
            Func::Reverse => "rev",
            Func::Up => "up",
            Func::UpProjective => "upP",
            Func::Down => "down",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Blade {
        name: String,
        offset: usize,
    },
    Var {
        name: String,
        offset: usize,
    },
    Neg(Box<Expr>),
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
        offset: usize,
    },
    Call {
        func: Func,
        arg: Box<Expr>,
        offset: usize,
    },
    Grade {
        expr: Box<Expr>,
        grade: u32,
    },
}

impl Expr {
    /// Structural equality ignoring source offsets.
    pub fn same_shape(&self, other: &Expr) -> bool {
        use Expr::*;
        match (self, other) {
            (Number(a), Number(b)) => a == b,
            (Blade { name: a, .. }, Blade { name: b, .. }) => a == b,
            (Var { name: a, .. }, Var { name: b, .. }) => a == b,
            (Neg(a), Neg(b)) => a.same_shape(b),
            (
                Binary {
                    op: o1,
                    lhs: l1,
                    rhs: r1,
                    ..
                },
                Binary {
                    op: o2,
                    lhs: l2,
                    rhs: r2,
                    ..
                },
            ) => o1 == o2 && l1.same_shape(l2) && r1.same_shape(r2),
            (Call { func: f1, arg: a1, .. }, Call { func: f2, arg: a2, .. }) => f1 == f2 && a1.same_shape(a2),
            (Grade { expr: e1, grade: g1 }, Grade { expr: e2, grade: g2 }) => g1 == g2 && e1.same_shape(e2),
            _ => false,
        }
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesised source form; parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(x) => write!(f, "{x}"),
            Expr::Blade { name, .. } | Expr::Var { name, .. } => f.write_str(name),
            Expr::Neg(inner) => write!(f, "-({inner})"),
            Expr::Binary { op, lhs, rhs, .. } => write!(f, "({lhs} {} {rhs})", op.symbol()),
            Expr::Call { func, arg, .. } => write!(f, "{}({arg})", func.name()),
            Expr::Grade { expr, grade } => write!(f, "({expr})<{grade}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    MalformedNumber,
    UnexpectedToken(String),
    UnexpectedEnd,
    UnbalancedParen,
    InvalidGrade,
    ExpectedCall(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::MalformedNumber => f.write_str("malformed number"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnbalancedParen => f.write_str("unbalanced parenthesis"),
            ParseErrorKind::InvalidGrade => f.write_str("grade selector must be a non-negative integer"),
            ParseErrorKind::ExpectedCall(name) => write!(f, "`{name}` is a function and must be called"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("parse error at byte {offset}: {kind}")]
    Parse { kind: ParseErrorKind, offset: usize },

    #[error("unbound variable `{name}` at byte {offset}")]
    Unbound { name: String, offset: usize },

    #[error("evaluation error at byte {offset}: {source}")]
    Eval {
        #[source]
        source: GaError,
        offset: usize,
    },
}

impl ExprError {
    pub(crate) fn parse(kind: ParseErrorKind, offset: usize) -> Self {
        ExprError::Parse { kind, offset }
    }

    pub fn offset(&self) -> usize {
        match self {
            ExprError::Parse { offset, .. } | ExprError::Unbound { offset, .. } | ExprError::Eval { offset, .. } => {
                *offset
            }
        }
    }
}

/// `ni` or `e<digits>[ni]`.
pub fn is_blade_literal(name: &str) -> bool {
    if name == "ni" {
        return true;
    }
    let Some(rest) = name.strip_prefix('e') else {
        return false;
    };
    let digits = rest.strip_suffix("ni").unwrap_or(rest);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}
