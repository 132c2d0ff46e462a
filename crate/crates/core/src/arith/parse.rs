//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | variable | '(' expr ')'
//! number := digits ('/' digits)?
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{MultiPoly, Var};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Parses `text`, rejecting variables outside `allowed`.
pub fn parse_poly(text: &str, allowed: &[Var]) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        allowed,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses with the full alphabet allowed.
pub fn parse_poly_any(text: &str) -> Result<MultiPoly> {
    parse_poly(text, &Var::ALL)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allowed: &'a [Var],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        let e: u32 = digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: "expected a nonnegative integer exponent".into(),
        })?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let var = (name.len() == 1)
                    .then(|| Var::from_symbol(name.chars().next().unwrap()))
                    .flatten()
                    .filter(|v| self.allowed.contains(v));
                var.map(MultiPoly::var).ok_or(Error::UnknownVariable {
                    name,
                    position: start,
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<MultiPoly> {
        let start = self.pos;
        let num: BigInt = self.digits().parse().expect("digits");
        // `/` only ever appears inside a numeric literal.
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den_digits = self.digits();
            if den_digits.is_empty() {
                return Err(self.error("expected denominator digits after `/`"));
            }
            let den: BigInt = den_digits.parse().expect("digits");
            if den.is_zero() {
                return Err(Error::Syntax {
                    position: start,
                    message: "zero denominator".into(),
                });
            }
            return Ok(MultiPoly::constant(Rational::new(num, den)));
        }
        Ok(MultiPoly::constant(Rational::from_integer(num)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    const XYZ: [Var; 3] = [Var::X, Var::Y, Var::Z];

    #[test]
    fn hamilton_form() {
        let q = parse_poly("-1*x^2 - 1*y^2 + 1*z^2", &XYZ).unwrap();
        let x = MultiPoly::var(Var::X);
        let y = MultiPoly::var(Var::Y);
        let z = MultiPoly::var(Var::Z);
        assert_eq!(q, z.pow(2) - x.pow(2) - y.pow(2));
        assert_eq!(q.to_string(), "-1*x^2 - 1*y^2 + z^2");
    }

    #[test]
    fn zero_and_univariate() {
        assert!(parse_poly("0", &XYZ).unwrap().is_zero());
        let p = parse_poly("u^2 - 2", &[Var::U]).unwrap();
        assert_eq!(p.degree_in(Var::U), 2);
        assert_eq!(p.variables(), vec![Var::U]);
    }

    #[test]
    fn rationals_parentheses_and_whitespace() {
        let p = parse_poly(" -3/2 * ( x + 2 ) ^ 2 ", &XYZ).unwrap();
        assert_eq!(p.coefficient(&crate::arith::poly::Monomial::one()), int(-6));
        assert_eq!(p.leading_coefficient(), ratio(-3, 2));
        assert_eq!(parse_poly("--x", &XYZ).unwrap(), MultiPoly::var(Var::X));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly("x + q", &XYZ).unwrap_err(),
            Error::UnknownVariable {
                name: "q".into(),
                position: 4
            }
        );
        assert_eq!(
            parse_poly("u + 1", &XYZ).unwrap_err(),
            Error::UnknownVariable {
                name: "u".into(),
                position: 0
            }
        );
        assert!(matches!(
            parse_poly("x +", &XYZ),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(parse_poly("(x", &XYZ), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_poly("x y", &XYZ),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x^-1", &XYZ),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_poly("1/0", &XYZ), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x/2", &XYZ), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_poly("xy", &XYZ),
            Err(Error::UnknownVariable { .. })
        ));
    }
}
