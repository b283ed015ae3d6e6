// Tokenizer for set expressions. Rationals are single tokens (`3/4`, `7`);
// whitespace inside a rational is not allowed.

use super::ParseError;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    LBrack,
    /// `]`, lexed only so closed endpoints get a targeted error.
    RBrack,
    Comma,
    Pipe,
    Amp,
    Bang,
    LParen,
    RParen,
    Rat(Rat),
    Ident(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// Byte offset of the first character.
    pub pos: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'[' => Some(TokenKind::LBrack),
            b']' => Some(TokenKind::RBrack),
            b',' => Some(TokenKind::Comma),
            b'|' => Some(TokenKind::Pipe),
            b'&' => Some(TokenKind::Amp),
            b'!' => Some(TokenKind::Bang),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token {
                kind,
                lexeme: (c as char).to_string(),
                pos: start,
            });
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            i = scan_digits(bytes, i);
            if bytes.get(i) == Some(&b'/') {
                let den_start = i + 1;
                i = scan_digits(bytes, den_start);
                if i == den_start {
                    return Err(ParseError::new(den_start, "expected denominator after `/`"));
                }
            }
            if bytes.get(i) == Some(&b'.') {
                return Err(ParseError::new(
                    start,
                    "decimal literals are not supported; write a fraction p/q",
                ));
            }
            let lexeme = &text[start..i];
            let value: Rat = lexeme.parse().map_err(|e| ParseError::new(start, format!("{e}")))?;
            tokens.push(Token {
                kind: TokenKind::Rat(value),
                lexeme: lexeme.to_string(),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let lexeme = &text[start..i];
            tokens.push(Token {
                kind: TokenKind::Ident(lexeme.to_string()),
                lexeme: lexeme.to_string(),
                pos: start,
            });
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
        }
    }
    Ok(tokens)
}

fn scan_digits(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_strictly_increase() {
        let toks = tokenize(" [0, 1/2) | !cantor3").unwrap();
        let pos: Vec<usize> = toks.iter().map(|t| t.pos).collect();
        assert_eq!(pos, vec![1, 2, 3, 5, 8, 10, 12, 13]);
        assert_eq!(toks[3].kind, TokenKind::Rat(Rat::new(1, 2)));
        assert_eq!(toks[7].kind, TokenKind::Ident("cantor3".into()));
    }

    #[test]
    fn lexical_errors_carry_offsets() {
        assert_eq!(tokenize("[0, 0.5)").unwrap_err().pos, 4);
        assert_eq!(tokenize("[0, 1/)").unwrap_err().pos, 6);
        assert_eq!(tokenize("[0, 1/0)").unwrap_err().pos, 4);
        assert_eq!(tokenize("a + b").unwrap_err().pos, 2);
    }
}
