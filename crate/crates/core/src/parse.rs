//! Text format for algebra elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] int)?
//! atom   := int ['/' int] | 'q' | generator | '(' expr ')' | 'conj' '(' expr ')'
//! ```
//!
//! Products are free; nothing is reduced modulo relations here.

use num_bigint::BigInt;

use crate::coeffring::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::ncalg::{Gen, NCPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Int(text.parse().expect("digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(bytes[start..i].iter().map(|(_, c)| *c).collect())));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            _ => return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") }),
        };
        out.push((pos, t));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(_, t)| t.clone());
        self.i += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            _ => Err(Error::Syntax { pos, msg: format!("expected {what}") }),
        }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = NCPoly::zero();
        loop {
            let t = self.term()?;
            if neg {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(Tok::Plus) => neg = false,
                Some(Tok::Minus) => neg = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul_free(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            let e = match self.bump() {
                Some(Tok::Int(n)) => i32::try_from(n).map_err(|_| Error::MalformedExponent {
                    pos,
                    msg: "exponent out of range".into(),
                })?,
                _ => return Err(Error::MalformedExponent { pos, msg: "expected an integer".into() }),
            };
            return power(base, if neg { -e } else { e }, pos);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NCPoly> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut r = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => r /= Rational::from_integer(d),
                        _ => return Err(Error::Syntax { pos: dpos, msg: "expected a nonzero denominator".into() }),
                    }
                }
                Ok(NCPoly::scalar(LaurentPoly::constant(r)))
            }
            Some(Tok::Ident(name)) => {
                if name == "q" {
                    return Ok(NCPoly::scalar(LaurentPoly::q_pow(1)));
                }
                if name == "conj" {
                    self.expect(Tok::LParen, "`(` after conj")?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(e.star());
                }
                Gen::from_name(&name)
                    .map(NCPoly::gen)
                    .ok_or(Error::UnknownGenerator { pos, name })
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(Error::Syntax { pos, msg: "expected a number, generator or `(`".into() }),
        }
    }
}

fn power(base: NCPoly, e: i32, pos: usize) -> Result<NCPoly> {
    if e >= 0 {
        let mut acc = NCPoly::one();
        for _ in 0..e {
            acc = acc.mul_free(&base);
        }
        return Ok(acc);
    }
    let inv = base
        .as_scalar()
        .and_then(|c| c.unit_inverse())
        .ok_or_else(|| Error::MalformedExponent {
            pos,
            msg: "negative exponent of a non-monomial".into(),
        })?;
    Ok(NCPoly::scalar(inv.pow(e.unsigned_abs())))
}

fn parse_all(s: &str) -> Result<(Parser, NCPoly)> {
    let mut p = Parser { toks: lex(s)?, i: 0, end: s.len() };
    let e = p.expr()?;
    Ok((p, e))
}

/// Parse an expression into an unreduced polynomial.
pub fn parse_expr(s: &str) -> Result<NCPoly> {
    let (p, e) = parse_all(s)?;
    if p.i < p.toks.len() {
        return Err(Error::Syntax { pos: p.pos(), msg: "unexpected trailing input".into() });
    }
    Ok(e)
}

/// Parse `lhs = rhs`.
pub fn parse_identity(s: &str) -> Result<(NCPoly, NCPoly)> {
    let (mut p, lhs) = parse_all(s)?;
    p.expect(Tok::Eq, "`=`")?;
    let rhs = p.expr()?;
    if p.i < p.toks.len() {
        return Err(Error::Syntax { pos: p.pos(), msg: "unexpected trailing input".into() });
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    #[test]
    fn word_is_unreduced() {
        let e = parse_expr("x2 * x1").unwrap();
        assert_eq!(e, NCPoly::word(vec![Gen::X(2), Gen::X(1)]));
    }

    #[test]
    fn conj_lowers_to_star() {
        assert_eq!(parse_expr("conj(x1)").unwrap(), NCPoly::gen(Gen::XB(1)));
        assert_eq!(parse_expr("conj(q*x2*x1)").unwrap(), parse_expr("q*xb1*xb2").unwrap());
    }

    #[test]
    fn two_term_example() {
        let e = parse_expr("q^-1 * x1 * x2 + (1 - q^-2) * t").unwrap();
        let mut want = NCPoly::term(vec![Gen::X(1), Gen::X(2)], LaurentPoly::q_pow(-1));
        want.add_term(vec![Gen::T], LaurentPoly::from_terms([(0, rat(1, 1)), (-2, rat(-1, 1))]));
        assert_eq!(e, want);
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_expr("x1 * y7"),
            Err(Error::UnknownGenerator { pos: 5, name: "y7".into() })
        );
        assert!(matches!(parse_expr("x1 +"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("q^x1"), Err(Error::MalformedExponent { pos: 2, .. })));
        assert!(matches!(parse_expr("x1^-1"), Err(Error::MalformedExponent { .. })));
        assert!(matches!(parse_expr("x1 # x2"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("(x1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rational_and_powers() {
        assert_eq!(
            parse_expr("3/2*q^2 - (q)^-2").unwrap().as_scalar().unwrap(),
            LaurentPoly::from_terms([(2, rat(3, 2)), (-2, rat(-1, 1))])
        );
        assert_eq!(parse_expr("(1+q)^2").unwrap(), parse_expr("1 + 2*q + q^2").unwrap());
    }

    #[test]
    fn identities() {
        let (l, r) = parse_identity("x1*x2 = q*x2*x1").unwrap();
        assert_eq!(l, NCPoly::word(vec![Gen::X(1), Gen::X(2)]));
        assert_eq!(r.len(), 1);
        assert!(parse_identity("x1*x2").is_err());
    }
}
