//! Text grammar for polynomials:
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := coef ('*' mono)* | mono ('*' mono)*
//! mono  := var ('^' nat)?
//! var   := 'd' | 'x' | 'l' | 'm'
//! coef  := integer | integer '/' positive-integer
//! ```
//!
//! Whitespace is ignored. Errors carry the byte offset of the problem.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MPoly, Monomial, Rat, UPoly, Var};
use crate::error::{CendError, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    allowed: &'a [Var],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn digits(&mut self, what: &str) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return Err(CendError::parse(start, format!("expected {what}")));
        }
        self.pos += len;
        Ok(self.src[start..start + len].parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut out = MPoly::zero();
        let mut negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(other) => {
                    return Err(CendError::parse(
                        self.pos,
                        format!("unexpected character '{other}'"),
                    ))
                }
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rat)> {
        let mut coef = Rat::one();
        let mut mono = Monomial::ONE;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits("an integer")?;
                coef = if self.peek() == Some('/') {
                    self.bump();
                    let at = self.pos;
                    let den = self.digits("a denominator")?;
                    if den.is_zero() {
                        return Err(CendError::parse(at, "zero denominator"));
                    }
                    Rat::new(num, den)
                } else {
                    Rat::from_integer(num)
                };
            }
            _ => self.mono(&mut mono)?,
        }
        while self.peek() == Some('*') {
            self.bump();
            self.mono(&mut mono)?;
        }
        Ok((mono, coef))
    }

    fn mono(&mut self, acc: &mut Monomial) -> Result<()> {
        let at = self.pos_after_ws();
        let v = match self.peek() {
            None => return Err(CendError::parse(at, "unexpected end of input")),
            Some(c) => match Var::from_letter(c) {
                Some(v) => v,
                None if c.is_alphabetic() => {
                    return Err(CendError::parse(at, format!("unknown variable '{c}'")))
                }
                None => return Err(CendError::parse(at, format!("unexpected character '{c}'"))),
            },
        };
        if !self.allowed.contains(&v) {
            return Err(CendError::parse(
                at,
                format!("variable '{}' is not allowed here", v.letter()),
            ));
        }
        self.bump();
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.bump();
            let at = self.pos_after_ws();
            let n = self.digits("an exponent")?;
            e = u32::try_from(n).map_err(|_| CendError::parse(at, "exponent too large"))?;
        }
        acc.0[v.index()] += e;
        Ok(())
    }

    fn pos_after_ws(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }
}

fn parse_with(text: &str, allowed: &[Var]) -> Result<MPoly> {
    let mut p = Parser {
        src: text,
        pos: 0,
        allowed,
    };
    if p.peek().is_none() {
        return Err(CendError::parse(p.pos, "empty polynomial"));
    }
    p.expr()
}

/// Parses a polynomial over `{∂, x, λ, μ}`.
pub fn parse_mpoly(text: &str) -> Result<MPoly> {
    parse_with(text, &Var::ALL)
}

/// Parses a polynomial in the single variable `v`.
pub fn parse_upoly(text: &str, v: Var) -> Result<UPoly> {
    let p = parse_with(text, &[v])?;
    Ok(UPoly::from_mpoly(&p, v).expect("parser enforced the variable"))
}

/// Parses a polynomial restricted to the given variables.
pub fn parse_mpoly_in(text: &str, vars: &[Var]) -> Result<MPoly> {
    parse_with(text, vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn grammar_examples() {
        let p = parse_mpoly("x^2 + 1/2*d").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff_of(Var::D, 1).constant_term(), ratio(1, 2));
        assert_eq!(parse_mpoly(" - 3 * x*x ").unwrap(), MPoly::int(-3) * MPoly::var(Var::X).pow(2));
        assert_eq!(parse_mpoly("0").unwrap(), MPoly::zero());
        assert_eq!(parse_mpoly("2*x + d - 1/2*l^2").unwrap().num_terms(), 3);
    }

    #[test]
    fn error_offsets() {
        let offset = |s: &str| match parse_mpoly(s) {
            Err(CendError::Parse { offset, .. }) => offset,
            other => panic!("{s}: expected parse error, got {other:?}"),
        };
        assert_eq!(offset("x^"), 2);
        assert_eq!(offset("x + y"), 4);
        assert_eq!(offset("1/0"), 2);
        assert_eq!(offset("x +"), 3);
        assert_eq!(offset(""), 0);
        assert_eq!(offset("2x"), 1);
        assert_eq!(offset("x*3"), 2);
    }

    #[test]
    fn univariate_restriction() {
        assert_eq!(parse_upoly("x^2 - 1", Var::X).unwrap(), UPoly::new(vec![rat(-1), rat(0), rat(1)]));
        assert!(matches!(
            parse_upoly("x + d", Var::X),
            Err(CendError::Parse { offset: 4, .. })
        ));
    }
}
