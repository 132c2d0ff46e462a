//! Arithmetic in the quaternion algebra `(a,b/Q)`.
//!
//! Basis `1, i, j, k = ij` with `i^2 = a`, `j^2 = b`, `ji = -ij`. The rest of
//! the multiplication table follows from those three relations:
//!
//! | `*` | i      | j      | k       |
//! |-----|--------|--------|---------|
//! | i   | a      | k      | a·j     |
//! | j   | -k     | b      | -b·i    |
//! | k   | -a·j   | b·i    | -ab     |

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra {
    a: Rational,
    b: Rational,
}

impl QuaternionAlgebra {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DegenerateAlgebra);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn one(&self) -> Quaternion {
        self.element(
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn i(&self) -> Quaternion {
        self.element(
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn j(&self) -> Quaternion {
        self.element(
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        )
    }

    pub fn k(&self) -> Quaternion {
        self.element(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        )
    }

    pub fn element(&self, x0: Rational, x: Rational, y: Rational, z: Rational) -> Quaternion {
        Quaternion {
            algebra: self.clone(),
            coords: [x0, x, y, z],
        }
    }

    pub fn scalar(&self, c: Rational) -> Quaternion {
        self.element(c, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// Parses `x0 + x*i + y*j + z*k` in this algebra.
    pub fn parse(&self, text: &str) -> Result<Quaternion> {
        let [x0, x, y, z] = parse_coords(text)?;
        Ok(self.element(x0, x, y, z))
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}/Q)", self.a, self.b)
    }
}

/// `x0 + x·i + y·j + z·k` in a fixed algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    algebra: QuaternionAlgebra,
    coords: [Rational; 4],
}

impl Quaternion {
    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Quaternion) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Quaternion) -> Result<Quaternion> {
        self.check_same(other)?;
        let c = |n: usize| &self.coords[n] + &other.coords[n];
        Ok(self.algebra.element(c(0), c(1), c(2), c(3)))
    }

    pub fn scale(&self, r: &Rational) -> Quaternion {
        let [x0, x, y, z] = &self.coords;
        self.algebra.element(x0 * r, x * r, y * r, z * r)
    }

    /// Product from the hard-coded multiplication table.
    pub fn mul(&self, other: &Quaternion) -> Result<Quaternion> {
        self.check_same(other)?;
        let (a, b) = (&self.algebra.a, &self.algebra.b);
        let ab = a * b;
        let [p0, p1, p2, p3] = &self.coords;
        let [q0, q1, q2, q3] = &other.coords;
        let r0 = p0 * q0 + a * (p1 * q1) + b * (p2 * q2) - &ab * (p3 * q3);
        let r1 = p0 * q1 + p1 * q0 - b * (p2 * q3) + b * (p3 * q2);
        let r2 = p0 * q2 + p2 * q0 + a * (p1 * q3) - a * (p3 * q1);
        let r3 = p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1;
        Ok(self.algebra.element(r0, r1, r2, r3))
    }

    /// The *-involution `x0 - x·i - y·j - z·k`.
    pub fn conj(&self) -> Quaternion {
        let [x0, x, y, z] = &self.coords;
        self.algebra
            .element(x0.clone(), -x.clone(), -y.clone(), -z.clone())
    }

    /// `N(u) = x0^2 - a x^2 - b y^2 + ab z^2`, the scalar part of `u·u*`.
    pub fn norm(&self) -> Rational {
        let (a, b) = (&self.algebra.a, &self.algebra.b);
        let [x0, x, y, z] = &self.coords;
        x0 * x0 - a * (x * x) - b * (y * y) + a * b * (z * z)
    }

    /// `u* / N(u)`; fails whenever the norm vanishes.
    pub fn inverse(&self) -> Result<Quaternion> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn to_record(&self) -> QuaternionRecord {
        let [x0, x, y, z] = &self.coords;
        QuaternionRecord {
            a: self.algebra.a.to_string(),
            b: self.algebra.b.to_string(),
            x0: x0.to_string(),
            x: x.to_string(),
            y: y.to_string(),
            z: z.to_string(),
        }
    }
}

impl fmt::Display for Quaternion {
    /// Always prints all four coordinates: `x0 + x*i + y*j + z*k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x, y, z] = &self.coords;
        write!(f, "{x0}")?;
        for (c, unit) in [(x, 'i'), (y, 'j'), (z, 'k')] {
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}*{unit}", c.abs())?;
        }
        Ok(())
    }
}

/// JSON form `{a, b, x0, x, y, z}` with exact rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionRecord {
    pub a: String,
    pub b: String,
    pub x0: String,
    pub x: String,
    pub y: String,
    pub z: String,
}

impl QuaternionRecord {
    pub fn to_quaternion(&self) -> Result<Quaternion> {
        let alg = QuaternionAlgebra::new(parse_rational(&self.a)?, parse_rational(&self.b)?)?;
        Ok(alg.element(
            parse_rational(&self.x0)?,
            parse_rational(&self.x)?,
            parse_rational(&self.y)?,
            parse_rational(&self.z)?,
        ))
    }
}

/// Coordinates of a linear combination of `1, i, j, k`.
///
/// Terms are `c`, `c*u`, or `u` with `c` an optionally signed rational and
/// `u` one of `i`, `j`, `k`; repeated units accumulate.
pub fn parse_coords(text: &str) -> Result<[Rational; 4]> {
    let mut coords: [Rational; 4] = Default::default();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let syntax = |position: usize, message: &str| Error::Syntax {
        position,
        message: message.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            if first {
                return Err(syntax(pos, "empty quaternion"));
            }
            break;
        }
        let mut sign = Rational::one();
        if first {
            if bytes[pos] == b'-' || bytes[pos] == b'+' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
        } else {
            match bytes[pos] {
                b'+' => {}
                b'-' => sign = -sign,
                _ => return Err(syntax(pos, "expected `+` or `-`")),
            }
            pos += 1;
        }
        first = false;
        skip_ws(&mut pos);
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coeff = if pos > start {
            parse_rational(&text[start..pos]).map_err(|_| syntax(start, "malformed coefficient"))?
        } else {
            Rational::one()
        };
        let has_number = pos > start;
        skip_ws(&mut pos);
        let slot = if bytes.get(pos) == Some(&b'*') {
            if !has_number {
                return Err(syntax(pos, "`*` without coefficient"));
            }
            pos += 1;
            skip_ws(&mut pos);
            let s = unit_slot(bytes.get(pos)).ok_or_else(|| syntax(pos, "expected i, j or k"))?;
            pos += 1;
            s
        } else if let Some(s) = unit_slot(bytes.get(pos)) {
            if has_number {
                return Err(syntax(pos, "expected `*` between coefficient and unit"));
            }
            pos += 1;
            s
        } else if has_number {
            0
        } else {
            return Err(syntax(pos, "expected a coefficient or unit"));
        };
        if pos < bytes.len() && bytes[pos].is_ascii_alphanumeric() {
            return Err(syntax(pos, "unexpected character"));
        }
        coords[slot] += sign * coeff;
    }
    Ok(coords)
}

fn unit_slot(c: Option<&u8>) -> Option<usize> {
    match c {
        Some(b'i') => Some(1),
        Some(b'j') => Some(2),
        Some(b'k') => Some(3),
        _ => None,
    }
}

impl FromStr for QuaternionRecord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Record(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    fn alg(a: i64, b: i64) -> QuaternionAlgebra {
        QuaternionAlgebra::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn basis_products() {
        let h = alg(2, 3);
        assert_eq!(h.i().mul(&h.j()).unwrap(), h.k());
        assert_eq!(h.j().mul(&h.i()).unwrap(), h.k().scale(&int(-1)));
        let ham = alg(-1, -1);
        assert_eq!(ham.i().mul(&ham.i()).unwrap(), ham.scalar(int(-1)));
    }

    #[test]
    fn conjugation() {
        let h = alg(-1, -1);
        let u = h.parse("1 + i + j + k").unwrap();
        assert_eq!(u.conj(), h.parse("1 - i - j - k").unwrap());
        assert_eq!(u.conj().conj(), u);
        let ij = h.i().mul(&h.j()).unwrap();
        let rhs = h.j().conj().mul(&h.i().conj()).unwrap();
        assert_eq!(ij.conj(), rhs);
        assert_eq!(rhs, h.k().scale(&int(-1)));
    }

    #[test]
    fn norms() {
        let h = alg(-1, -1);
        assert_eq!(h.parse("1 + 1*i + 1*j + 1*k").unwrap().norm(), int(4));
        assert_eq!(h.one().norm(), int(1));
        assert_eq!(alg(2, 3).i().norm(), int(-2));
    }

    #[test]
    fn inverses() {
        let h = alg(-1, -1);
        let u = h.parse("1 + i").unwrap();
        assert_eq!(u.inverse().unwrap(), h.parse("1/2 - 1/2*i").unwrap());
        assert_eq!(h.one().inverse().unwrap(), h.one());
        assert_eq!(h.i().inverse().unwrap(), h.parse("-i").unwrap());
        // 1 + i is a zero divisor in the split algebra (1,1/Q)
        let split = alg(1, 1);
        assert_eq!(
            split.parse("1 + i").unwrap().inverse(),
            Err(Error::ZeroNorm)
        );
        assert_eq!(h.scalar(int(0)).inverse(), Err(Error::ZeroNorm));
    }

    #[test]
    fn algebra_mismatch() {
        assert_eq!(
            alg(-1, -1).i().mul(&alg(1, 1).i()),
            Err(Error::AlgebraMismatch)
        );
        assert_eq!(
            QuaternionAlgebra::new(int(0), int(1)),
            Err(Error::DegenerateAlgebra)
        );
    }

    #[test]
    fn text_forms() {
        let h = alg(2, 3);
        let u = h.parse("-3/2 + 2*i - j + 0*k").unwrap();
        assert_eq!(u.coords(), &[ratio(-3, 2), int(2), int(-1), int(0)]);
        assert_eq!(u.to_string(), "-3/2 + 2*i - 1*j + 0*k");
        assert_eq!(h.parse(&u.to_string()).unwrap(), u);
        assert_eq!(h.parse("k + k").unwrap(), h.k().scale(&int(2)));
        for bad in ["", "2i", "1 +", "x", "1 * ", "* i", "1 2"] {
            assert!(h.parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn json_record_round_trip() {
        let u = alg(-1, 3).parse("1/3 - 2*k").unwrap();
        let json = serde_json::to_string(&u.to_record()).unwrap();
        assert_eq!(
            json,
            r#"{"a":"-1","b":"3","x0":"1/3","x":"0","y":"0","z":"-2"}"#
        );
        let back: QuaternionRecord = json.parse().unwrap();
        assert_eq!(back.to_quaternion().unwrap(), u);
    }
}
