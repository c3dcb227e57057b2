//! Recursive-descent parser for the expression DSL.
//!
//! ```text
//! expr     := sum
//! sum      := prod (("+" | "-") prod)*
//! prod     := unary ("*" unary)*
//! unary    := "-" unary | atom
//! atom     := rational | var | "max(" expr "," expr ")" | "min(" expr "," expr ")"
//!           | "abs(" expr ")" | "(" expr ")"
//! rational := integer ("/" positive-integer)?
//! var      := "x" positive-integer
//! ```
//!
//! A literal rational (optionally negated) followed by `*` becomes a
//! `Scale` node; `a - b` becomes `a + (-b)`; `abs(e)` becomes `max(e, -e)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, ParseError, Result};
use crate::expr::Expr;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Slash,
    Var(usize),
    Max,
    Min,
    Abs,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'/' => Some(Tok::Slash),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &src[start..i];
            let tok = match word {
                "max" => Tok::Max,
                "min" => Tok::Min,
                "abs" => Tok::Abs,
                _ => {
                    let index = word
                        .strip_prefix('x')
                        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| {
                            ParseError::new(start, format!("unknown identifier `{word}`"))
                        })?;
                    Tok::Var(index)
                }
            };
            out.push((start, tok));
            continue;
        }
        let ch = src[start..].chars().next().unwrap_or('?');
        return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(_) => Err(ParseError::new(at, format!("expected {what}"))),
            None => Err(ParseError::new(at, format!("expected {what}, found end of input"))),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.prod()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::add(acc, self.prod()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::sub(acc, self.prod()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn prod(&mut self) -> Result<Expr, ParseError> {
        let (first, literal) = self.unary()?;
        let mut acc = first;
        if literal && self.peek() == Some(&Tok::Star) {
            self.bump();
            let (rhs, _) = self.unary()?;
            let Expr::Const(q) = acc else { unreachable!() };
            acc = Expr::scale(q, rhs);
        }
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let (rhs, _) = self.unary()?;
            acc = Expr::mul(acc, rhs);
        }
        Ok(acc)
    }

    /// Returns the parsed node and whether it is a bare (possibly negated)
    /// rational literal.
    fn unary(&mut self) -> Result<(Expr, bool), ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            if matches!(self.peek(), Some(Tok::Num(_))) {
                let q = self.rational()?;
                return Ok((Expr::Const(-q), true));
            }
            let (inner, _) = self.unary()?;
            return Ok((Expr::neg(inner), false));
        }
        self.atom()
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        let Some(Tok::Num(num)) = self.bump() else {
            unreachable!("caller checked for a number")
        };
        if self.peek() == Some(&Tok::Slash) {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Num(den)) if !den.is_zero() => Ok(Q::new(num, den)),
                Some(Tok::Num(_)) => Err(ParseError::new(at, "zero denominator")),
                _ => Err(ParseError::new(at, "expected positive integer denominator")),
            }
        } else {
            Ok(Q::from_integer(num))
        }
    }

    fn atom(&mut self) -> Result<(Expr, bool), ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(_)) => Ok((Expr::Const(self.rational()?), true)),
            Some(Tok::Var(i)) => {
                self.bump();
                Ok((Expr::var(i), false))
            }
            Some(tok @ (Tok::Max | Tok::Min)) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.sum()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                let e = if tok == Tok::Max {
                    Expr::join(a, b)
                } else {
                    Expr::meet(a, b)
                };
                Ok((e, false))
            }
            Some(Tok::Abs) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((Expr::abs(a), false))
            }
            Some(Tok::LParen) => {
                self.bump();
                let a = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((a, false))
            }
            Some(_) => Err(ParseError::new(at, "expected an operand")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` as an expression over `arity` variables.
pub fn parse(text: &str, arity: usize) -> Result<Expr> {
    let e = parse_unchecked(text)?;
    e.check_arity(arity)?;
    Ok(e)
}

/// Parses without an arity bound.
pub fn parse_unchecked(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.sum()?;
    if p.pos < toks.len() {
        return Err(ParseError::new(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and infers the arity from the largest variable index (at least 1).
pub fn parse_auto(text: &str) -> Result<(Expr, usize)> {
    let e = parse_unchecked(text).map_err(Error::from)?;
    let n = e.max_var().max(1);
    Ok((e, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn x(i: usize) -> Expr {
        Expr::var(i)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("max(x1, 0) * x2", 2).unwrap(),
            Expr::mul(Expr::join(x(1), Expr::zero()), x(2))
        );
        assert_eq!(parse("3/2", 1).unwrap(), Expr::Const(ratio(3, 2)));
        assert_eq!(
            parse("abs(x1) + 1", 1).unwrap(),
            Expr::add(Expr::join(x(1), Expr::neg(x(1))), Expr::one())
        );
    }

    #[test]
    fn literal_times_expr_is_a_scale() {
        assert_eq!(parse("2 * x1", 1).unwrap(), Expr::scale(int(2), x(1)));
        assert_eq!(parse("-3/4*x1", 1).unwrap(), Expr::scale(ratio(-3, 4), x(1)));
        assert_eq!(parse("(2) * x1", 1).unwrap(), Expr::mul(Expr::int(2), x(1)));
        assert_eq!(parse("x1 * 2", 1).unwrap(), Expr::mul(x(1), Expr::int(2)));
        assert_eq!(
            parse("2 * x1 * x2", 2).unwrap(),
            Expr::mul(Expr::scale(int(2), x(1)), x(2))
        );
    }

    #[test]
    fn minus_forms() {
        assert_eq!(parse("-3", 1).unwrap(), Expr::int(-3));
        assert_eq!(parse("-(3)", 1).unwrap(), Expr::neg(Expr::int(3)));
        assert_eq!(parse("x1 - x2", 2).unwrap(), Expr::sub(x(1), x(2)));
        assert_eq!(parse("--x1", 1).unwrap(), Expr::neg(Expr::neg(x(1))));
        assert_eq!(
            parse("-x1 * x2", 2).unwrap(),
            Expr::mul(Expr::neg(x(1)), x(2))
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse(" max ( x1 ,x2 )*  3 / 2 ", 2).unwrap(),
            parse("max(x1,x2)*3/2", 2).unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse_unchecked("x1 + * x2").unwrap_err();
        assert_eq!(err.offset, 5);
        let err = parse_unchecked("max(x1 x2)").unwrap_err();
        assert_eq!(err.offset, 7);
        let err = parse_unchecked("1/0").unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(parse_unchecked("x0").unwrap_err().offset, 0);
        assert_eq!(parse_unchecked("x1 ? 2").unwrap_err().offset, 3);
        assert_eq!(parse_unchecked("(x1").unwrap_err().offset, 3);
        assert_eq!(parse_unchecked("x1 x2").unwrap_err().offset, 3);
    }

    #[test]
    fn arity_is_enforced() {
        assert_eq!(
            parse("x1 + x3", 2).unwrap_err(),
            Error::VariableOutOfRange { index: 3, arity: 2 }
        );
        assert_eq!(parse_auto("x1 + x3").unwrap().1, 3);
        assert_eq!(parse_auto("7").unwrap().1, 1);
    }

    #[test]
    fn printer_output_parses_back() {
        for src in [
            "x1 - 3",
            "x1 - -3",
            "x1 + -3 * x2",
            "-(2 * x1) * max(x2, -x1)",
            "2 * (3 * x1)",
            "(x1 + x2) * (x1 - x2)",
            "min(abs(x1), 1/2) - -(0)",
        ] {
            let e = parse(src, 2).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed, 2).unwrap(), e, "{src} -> {printed}");
        }
    }
}
