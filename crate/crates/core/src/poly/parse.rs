//! Parser for the polynomial text format.
//!
//! Grammar (whitespace is insignificant except as a factor separator):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'] power)*
//! power  := atom ['^' ['-'] integer]
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! This accepts everything the printer emits (`a*b^2*c*d`, `q1^-1*x2^3`,
//! `-1`) as well as products such as `(a+b)(b+c)`.

use num_bigint::BigInt;

use super::{LaurentPoly, PolyError, VarNames};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(s[start..i].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Parse {
                    pos: start,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a VarNames,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Int(_)) | Some(Tok::Name(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: i32 = match self.peek() {
            Some(Tok::Int(k)) => match i32::try_from(k) {
                Ok(k) => k,
                Err(_) => return self.err("exponent out of range"),
            },
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        base.powi(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<LaurentPoly, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                Ok(LaurentPoly::constant(k))
            }
            Some(Tok::Name(name)) => match self.names.lookup(&name) {
                Some(v) => {
                    self.pos += 1;
                    Ok(LaurentPoly::var(v))
                }
                None => self.err(format!("unknown variable {name:?}")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => self.err("expected a number, a variable or '('"),
        }
    }
}

/// Parse a polynomial, resolving variable names through `names`
/// (`x<i>` and `q<i>` are always understood).
pub fn parse_poly(s: &str, names: &VarNames) -> Result<LaurentPoly, PolyError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
        names,
    };
    let value = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, Var};

    #[test]
    fn printer_output_reparses() {
        let names = VarNames::default();
        for s in ["x1*x2^2*x3*x4", "q1^-1*x2^3", "-1", "0", "3 - 2*x1 + x1^2*q3"] {
            let p = parse_poly(s, &names).unwrap();
            assert_eq!(parse_poly(&p.to_string(), &names).unwrap(), p, "{s}");
        }
    }

    #[test]
    fn printed_form_is_canonical() {
        let names = VarNames::with_pieces(&["a", "b", "c", "d"]);
        let p = parse_poly("d*c*b^2*a + 1", &names).unwrap();
        assert_eq!(p.to_string_with(&names), "1 + a*b^2*c*d");
        let q = parse_poly("q1^-1 x2^3", &names).unwrap();
        assert_eq!(q.to_string(), "x2^3*q1^-1");
        assert_eq!(
            q,
            LaurentPoly::monomial(Monomial::from_exponents([(Var::q(1), -1), (Var::x(2), 3)]))
        );
    }

    #[test]
    fn implicit_products_and_powers() {
        let names = VarNames::with_pieces(&["a", "b"]);
        let p = parse_poly("(a+b)(a-b)", &names).unwrap();
        assert_eq!(p, parse_poly("a^2 - b^2", &names).unwrap());
        assert_eq!(
            parse_poly("(a+b)^2", &names).unwrap(),
            parse_poly("a^2 + 2 a b + b^2", &names).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let names = VarNames::default();
        assert!(matches!(parse_poly("x1 + y", &names), Err(PolyError::Parse { pos: 5, .. })));
        assert!(matches!(parse_poly("(x1", &names), Err(PolyError::Parse { .. })));
        assert!(matches!(
            parse_poly("(x1+x2)^-1", &names),
            Err(PolyError::NegativePowerOfNonUnit(_))
        ));
        assert!(parse_poly("x1 $", &names).is_err());
    }
}
