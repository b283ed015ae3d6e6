// Recursive descent over
//
//   expr   := term { "|" term }
//   term   := factor { "&" factor }
//   factor := "!" factor | atom
//   atom   := "[" rat "," rat ")" | IDENT | "(" expr ")"

use super::lexer::{tokenize, Token, TokenKind};
use super::{Builtin, ParseError, SetExpr};
use crate::rat::Rat;

pub fn parse(text: &str) -> Result<SetExpr, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        idx: 0,
        end: text.len(),
    };
    let expr = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::new(
            t.pos,
            format!("unexpected `{}` after complete expression", t.lexeme),
        ));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx)
    }

    fn next(&mut self, what: &str) -> Result<Token, ParseError> {
        match self.tokens.get(self.idx) {
            Some(t) => {
                self.idx += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::new(
                self.end,
                format!("expected {what}, found end of input"),
            )),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.term()?;
        while self.eat(&TokenKind::Pipe) {
            let rhs = self.term()?;
            lhs = SetExpr::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat(&TokenKind::Amp) {
            let rhs = self.factor()?;
            lhs = SetExpr::Intersect(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<SetExpr, ParseError> {
        if self.eat(&TokenKind::Bang) {
            return Ok(SetExpr::Complement(Box::new(self.factor()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<SetExpr, ParseError> {
        let t = self.next("an interval, builtin name, or `(`")?;
        match t.kind {
            TokenKind::LBrack => self.interval(t.pos),
            TokenKind::Ident(name) => match Builtin::from_name(&name) {
                Some(b) => Ok(SetExpr::Builtin(b)),
                None => Err(ParseError::new(
                    t.pos,
                    format!("unknown builtin `{name}` (expected cantor3, fatcantor or dyadictail)"),
                )),
            },
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.next("`)`")?;
                if close.kind != TokenKind::RParen {
                    return Err(ParseError::new(
                        close.pos,
                        format!("expected `)`, found `{}`", close.lexeme),
                    ));
                }
                Ok(inner)
            }
            _ => Err(ParseError::new(
                t.pos,
                format!("expected an interval, builtin name, or `(`, found `{}`", t.lexeme),
            )),
        }
    }

    fn interval(&mut self, open: usize) -> Result<SetExpr, ParseError> {
        let (lo, lo_pos) = self.rat()?;
        let comma = self.next("`,`")?;
        if comma.kind != TokenKind::Comma {
            return Err(ParseError::new(
                comma.pos,
                format!("expected `,`, found `{}`", comma.lexeme),
            ));
        }
        let (hi, hi_pos) = self.rat()?;
        let close = self.next("`)`")?;
        match close.kind {
            TokenKind::RParen => {}
            TokenKind::RBrack => {
                return Err(ParseError::new(
                    close.pos,
                    "closed right endpoint not supported; intervals are half-open `[a,b)`",
                ))
            }
            _ => {
                return Err(ParseError::new(
                    close.pos,
                    format!("expected `)`, found `{}`", close.lexeme),
                ))
            }
        }
        for (v, pos) in [(&lo, lo_pos), (&hi, hi_pos)] {
            if *v > 1 {
                return Err(ParseError::new(pos, format!("endpoint {v} outside [0,1]")));
            }
        }
        if lo >= hi {
            return Err(ParseError::new(open, "empty interval literal (lo ≥ hi)"));
        }
        Ok(SetExpr::IntervalLit(lo, hi))
    }

    fn rat(&mut self) -> Result<(Rat, usize), ParseError> {
        let t = self.next("a rational")?;
        match t.kind {
            TokenKind::Rat(v) => Ok((v, t.pos)),
            _ => Err(ParseError::new(
                t.pos,
                format!("expected a rational, found `{}`", t.lexeme),
            )),
        }
    }
}
