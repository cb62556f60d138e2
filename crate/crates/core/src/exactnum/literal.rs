//! Parser for cyclotomic literals such as `"3*z7^2 - z7 + 1/2"`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" "-"? integer)?
//! atom   := integer | "z" integer | "(" expr ")"
//! ```
//!
//! `zN` denotes the primitive root `exp(2 pi i / N)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CyclotomicNumber, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiteralError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("root of unity at offset {position} has no order (expected `z<N>`)")]
    UnknownConductor { position: usize },
}

pub fn parse_literal(input: &str) -> Result<CyclotomicNumber, LiteralError> {
    let mut parser = Parser {
        tokens: tokenize(input)?,
        pos: 0,
    };
    let value = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(syntax(tok.offset, format!("unexpected `{}`", tok.kind)));
    }
    Ok(value)
}

fn syntax(position: usize, message: impl Into<String>) -> LiteralError {
    LiteralError::Syntax {
        position,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Int(BigInt),
    Root(u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Int(n) => write!(f, "{n}"),
            Kind::Root(n) => write!(f, "z{n}"),
            Kind::Plus => f.write_str("+"),
            Kind::Minus => f.write_str("-"),
            Kind::Star => f.write_str("*"),
            Kind::Slash => f.write_str("/"),
            Kind::Caret => f.write_str("^"),
            Kind::Open => f.write_str("("),
            Kind::Close => f.write_str(")"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    offset: usize,
}

fn tokenize(input: &str) -> Result<Vec<Token>, LiteralError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &input[start..i];
                out.push(Token {
                    kind: Kind::Int(digits.parse().expect("ascii digits")),
                    offset: start,
                });
                continue;
            }
            b'z' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(LiteralError::UnknownConductor { position: start });
                }
                let order: u32 = input[digits_start..i]
                    .parse()
                    .map_err(|_| syntax(start, "root of unity order out of range"))?;
                if order == 0 {
                    return Err(syntax(start, "root of unity order must be positive"));
                }
                out.push(Token {
                    kind: Kind::Root(order),
                    offset: start,
                });
                continue;
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'/' => Kind::Slash,
            b'^' => Kind::Caret,
            b'(' => Kind::Open,
            b')' => Kind::Close,
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        out.push(Token { kind, offset: start });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn end_offset(&self) -> usize {
        self.tokens.last().map(|t| t.offset + 1).unwrap_or(0)
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CyclotomicNumber, LiteralError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Kind::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Kind::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CyclotomicNumber, LiteralError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Kind::Star) {
                acc = &acc * &self.unary()?;
            } else if let Some(Token {
                kind: Kind::Slash,
                offset,
            }) = self.peek().cloned()
            {
                self.pos += 1;
                let divisor = self.unary()?;
                let inv = divisor.inverse().ok_or_else(|| syntax(offset, "division by zero"))?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CyclotomicNumber, LiteralError> {
        if self.eat(&Kind::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Kind::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<CyclotomicNumber, LiteralError> {
        let base = self.atom()?;
        let Some(Token {
            kind: Kind::Caret,
            offset,
        }) = self.peek().cloned()
        else {
            return Ok(base);
        };
        self.pos += 1;
        let negative = self.eat(&Kind::Minus);
        let exponent = match self.peek().cloned() {
            Some(Token { kind: Kind::Int(n), .. }) => {
                self.pos += 1;
                u32::try_from(n).map_err(|_| syntax(offset, "exponent out of range"))?
            }
            _ => return Err(syntax(offset, "expected an integer exponent after `^`")),
        };
        let value = base.pow(exponent);
        if negative {
            value.inverse().ok_or_else(|| syntax(offset, "negative power of zero"))
        } else {
            Ok(value)
        }
    }

    fn atom(&mut self) -> Result<CyclotomicNumber, LiteralError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(self.end_offset(), "unexpected end of literal"));
        };
        self.pos += 1;
        match tok.kind {
            Kind::Int(n) => Ok(CyclotomicNumber::from_rational(Rational::from_integer(n))),
            Kind::Root(order) => Ok(CyclotomicNumber::root_of_unity(order, 1)),
            Kind::Open => {
                let inner = self.expr()?;
                if !self.eat(&Kind::Close) {
                    return Err(syntax(tok.offset, "unbalanced parenthesis"));
                }
                Ok(inner)
            }
            other => Err(syntax(tok.offset, format!("unexpected `{other}`"))),
        }
    }
}

impl Zero for CyclotomicNumber {
    fn zero() -> Self {
        CyclotomicNumber::zero()
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn z(n: u32, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, k)
    }

    #[test]
    fn parses_documented_examples() {
        let x = parse_literal("3*z7^2 - z7 + 1/2").unwrap();
        let expected = CyclotomicNumber::sum([
            &z(7, 2).scale(&rat(3)),
            &-z(7, 1),
            &CyclotomicNumber::from_rational(ratio(1, 2)),
        ]);
        assert_eq!(x, expected);
        assert_eq!(parse_literal("-1").unwrap(), CyclotomicNumber::from_integer(-1));
        assert_eq!(parse_literal("z8 - z8^3").unwrap(), &z(8, 1) - &z(8, 3));
        assert_eq!(
            parse_literal(" ( 1 + z5 ) / 2 ").unwrap(),
            (&CyclotomicNumber::one() + &z(5, 1)).scale(&ratio(1, 2))
        );
        assert_eq!(parse_literal("z9^-1").unwrap(), z(9, 8));
    }

    #[test]
    fn rejects_zero_order_root() {
        assert!(matches!(parse_literal("z0^2"), Err(LiteralError::Syntax { .. })));
    }

    #[test]
    fn missing_order_is_unknown_conductor() {
        assert!(matches!(
            parse_literal("1 + z^2"),
            Err(LiteralError::UnknownConductor { position: 4 })
        ));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1 +", "(1 + z3", "1 2", "2^", "x", "1/0", "z3^1.5"] {
            assert!(parse_literal(bad).is_err(), "{bad:?} should fail");
        }
    }
}
