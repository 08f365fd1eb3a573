//! Text format for bivariate polynomials.
//!
//! Variables are `x`, `y` (aliases `X1`, `X2`); literals are integers or
//! `p/q` rationals; operators are `+ - * ^` with parentheses. Multiplication
//! must be explicit and exponents are nonnegative integer literals.
//! Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bivariate::BivarPoly;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(u8),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((start, Tok::Int(text[start..pos].parse().expect("digits"))));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
                    pos += 1;
                }
                let var = match &text[start..pos] {
                    "x" | "X1" => 0,
                    "y" | "X2" => 1,
                    other => {
                        return Err(Error::Syntax {
                            position: start,
                            message: format!("unknown identifier `{other}`"),
                        })
                    }
                };
                out.push((start, Tok::Var(var)));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BivarPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    let k: u32 = match u32::try_from(&k) {
                        Ok(k) if k <= 1000 => k,
                        _ => return self.err("exponent too large"),
                    };
                    self.at += 1;
                    Ok(base.pow(k))
                }
                _ => self.err("expected integer exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.at += 1;
                            Ok(BivarPoly::constant(Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => self.err("zero denominator"),
                        _ => self.err("expected integer denominator after `/`"),
                    }
                } else {
                    Ok(BivarPoly::constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::Var(0)) => {
                self.at += 1;
                Ok(BivarPoly::x1())
            }
            Some(Tok::Var(_)) => {
                self.at += 1;
                Ok(BivarPoly::x2())
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial with declared degree bound `dbound`.
pub fn parse_poly(text: &str, dbound: u32) -> Result<BivarPoly> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0, end: text.len() };
    let p = parser.expr()?;
    if parser.at != parser.toks.len() {
        return parser.err("trailing input");
    }
    p.with_dbound(dbound)
}

/// Canonical text: terms by descending total degree, then descending power
/// of `x`.
pub fn print_poly(p: &BivarPoly) -> String {
    let mut terms: Vec<_> = p.terms().collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by_key(|&(&(i, j), _)| std::cmp::Reverse((i + j, i)));
    let mut out = String::new();
    for (k, (&(i, j), c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let mut factors = Vec::new();
        if !mag.is_one() || i + j == 0 {
            factors.push(fmt_rational(&mag));
        }
        for (var, e) in [("x", i), ("y", j)] {
            match e {
                0 => {}
                1 => factors.push(var.to_string()),
                _ => factors.push(format!("{var}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{frac, rat};
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let p = parse_poly("x*y - 1", 2).unwrap();
        assert_eq!(p.coeff(1, 1), rat(1));
        assert_eq!(p.coeff(0, 0), rat(-1));
        assert_eq!(p.terms().count(), 2);
        assert!(parse_poly("0", 3).unwrap().is_zero());
        assert!(matches!(parse_poly("1/2*x^2 + y", 1), Err(Error::DegreeOverflow { actual: 2, bound: 1 })));
    }

    #[test]
    fn aliases_and_parentheses() {
        let a = parse_poly("(X1 + X2)^2 - 2*X1*X2", 2).unwrap();
        let b = parse_poly("x^2 + y^2", 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-(-x)", 1).unwrap(), parse_poly("x", 1).unwrap());
        assert_eq!(parse_poly("2/4*x", 1).unwrap().coeff(1, 0), frac(1, 2));
    }

    #[test]
    fn syntax_errors_report_position() {
        assert!(matches!(parse_poly("x +", 1), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_poly("2x", 1), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(parse_poly("x + z", 1), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_poly("x^y", 2), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_poly("1/0", 0), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x", 1), Err(Error::Syntax { position: 2, .. })));
    }

    #[test]
    fn printer_orders_by_descending_degree() {
        let p = parse_poly("1 - y + x*y + 1/2*x^2 - 3*y^2", 2).unwrap();
        assert_eq!(print_poly(&p), "1/2*x^2 + x*y - 3*y^2 - y + 1");
        assert_eq!(print_poly(&parse_poly("-x", 1).unwrap()), "-x");
        assert_eq!(print_poly(&parse_poly("0", 0).unwrap()), "0");
    }

    proptest! {
        #[test]
        fn print_parse_is_a_fixed_point(coeffs in proptest::collection::vec((-7i64..=7, 1i64..=4), 10)) {
            let terms = crate::poly::monomials(3).zip(coeffs).map(|(e, (n, d))| (e, frac(n, d)));
            let p = BivarPoly::from_terms(3, terms).unwrap();
            let text = print_poly(&p);
            let q = parse_poly(&text, 3).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(print_poly(&q), text);
        }
    }
}
