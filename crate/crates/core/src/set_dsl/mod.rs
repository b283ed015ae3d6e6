//! A small language of set expressions over `[0,1)`.
//!
//! ```text
//! expr   := term { "|" term }
//! term   := factor { "&" factor }
//! factor := "!" factor | atom
//! atom   := "[" rat "," rat ")" | IDENT | "(" expr ")"
//! rat    := INT | INT "/" INT
//! ```
//!
//! `|` is union, `&` intersection, `!` complement. The identifiers are the
//! builtins `cantor3`, `fatcantor` and `dyadictail`.

pub mod builtins;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::interval_algebra::AlgebraElement;
use crate::limit_points::{self, MeasurableSet};
use crate::rat::Rat;

pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Cantor3,
    FatCantor,
    DyadicTail,
}

impl Builtin {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "cantor3" => Some(Builtin::Cantor3),
            "fatcantor" => Some(Builtin::FatCantor),
            "dyadictail" => Some(Builtin::DyadicTail),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Cantor3 => "cantor3",
            Builtin::FatCantor => "fatcantor",
            Builtin::DyadicTail => "dyadictail",
        }
    }

    pub fn oracle(self) -> MeasurableSet {
        match self {
            Builtin::Cantor3 => builtins::cantor3(),
            Builtin::FatCantor => builtins::fatcantor(),
            Builtin::DyadicTail => builtins::dyadictail(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    /// `[lo, hi)` with `0 ≤ lo < hi ≤ 1`.
    IntervalLit(Rat, Rat),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Complement(Box<SetExpr>),
    Builtin(Builtin),
}

impl SetExpr {
    fn precedence(&self) -> u8 {
        match self {
            SetExpr::Union(..) => 1,
            SetExpr::Intersect(..) => 2,
            _ => 3,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }

    /// The algebra element an interval-literal-only expression denotes, or
    /// `None` if it mentions a builtin.
    pub fn as_algebra_element(&self) -> Option<AlgebraElement> {
        Some(match self {
            SetExpr::IntervalLit(lo, hi) => AlgebraElement::interval(lo.clone(), hi.clone()).ok()?,
            SetExpr::Union(a, b) => a.as_algebra_element()?.union(&b.as_algebra_element()?),
            SetExpr::Intersect(a, b) => a.as_algebra_element()?.intersect(&b.as_algebra_element()?),
            SetExpr::Complement(a) => a.as_algebra_element()?.complement(),
            SetExpr::Builtin(_) => return None,
        })
    }
}

impl fmt::Display for SetExpr {
    /// Minimal parenthesization; the output reparses to an equal tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::IntervalLit(lo, hi) => write!(f, "[{lo},{hi})"),
            SetExpr::Builtin(b) => f.write_str(b.name()),
            SetExpr::Union(a, b) => {
                a.write_child(f, 1)?;
                f.write_str(" | ")?;
                b.write_child(f, 2)
            }
            SetExpr::Intersect(a, b) => {
                a.write_child(f, 2)?;
                f.write_str(" & ")?;
                b.write_child(f, 3)
            }
            SetExpr::Complement(a) => {
                f.write_str("!")?;
                a.write_child(f, 3)
            }
        }
    }
}

/// Compiles an expression into a measurable-set oracle: literals embed,
/// operators map to their limit counterparts.
pub fn eval_expr(expr: &SetExpr) -> MeasurableSet {
    match expr {
        SetExpr::IntervalLit(lo, hi) => limit_points::embed(
            AlgebraElement::interval(lo.clone(), hi.clone()).expect("literal endpoints validated at parse time"),
        ),
        SetExpr::Union(a, b) => limit_points::limit_union(&eval_expr(a), &eval_expr(b)),
        SetExpr::Intersect(a, b) => limit_points::limit_intersect(&eval_expr(a), &eval_expr(b)),
        SetExpr::Complement(a) => limit_points::limit_complement(&eval_expr(a)),
        SetExpr::Builtin(b) => b.oracle(),
    }
}

/// Parses and evaluates in one step.
pub fn compile(text: &str) -> Result<MeasurableSet, ParseError> {
    parse(text).map(|e| eval_expr(&e))
}
