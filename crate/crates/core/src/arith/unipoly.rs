use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, MultiPoly, Var};
use super::rational::{common_denominator, numerator_gcd, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(
            var,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Reads a `MultiPoly` that only mentions `var`.
    pub fn from_multi(p: &MultiPoly, var: Var) -> Result<Self> {
        if p.variables().iter().any(|v| *v != var) {
            return Err(Error::NotUnivariate(var.symbol()));
        }
        let coeffs = p
            .coefficients_in(var)
            .into_iter()
            .map(|c| c.as_constant().expect("univariate coefficient"))
            .collect();
        Ok(Self::new(var, coeffs))
    }

    pub fn to_multi(&self) -> MultiPoly {
        MultiPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(self.var, k as u32), c.clone())),
        )
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * r + c)
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(&self.coeffs);
        let num = numerator_gcd(&self.coeffs);
        let mut scale = Rational::new(den, num);
        if self.leading().is_negative() {
            scale = -scale;
        }
        UniPoly::new(self.var, self.coeffs.iter().map(|c| c * &scale).collect())
    }

    pub fn is_primitive(&self) -> bool {
        *self == self.primitive()
    }

    /// Rational roots, by the rational root theorem on the primitive part.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let p = self.primitive();
        let mut roots = Vec::new();
        // Strip zero roots first so the constant term is nonzero.
        let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push(Rational::zero());
        }
        let shifted = UniPoly::new(p.var, p.coeffs[zeros..].to_vec());
        if shifted.degree() == 0 {
            return roots;
        }
        let c0 = shifted.constant_term().numer().abs();
        let lead = shifted.leading().numer().abs();
        for n in divisors(&c0) {
            for d in divisors(&lead) {
                if n.gcd(&d) != BigInt::one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = Rational::new(&n * sign, d.clone());
                    if shifted.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            out.push(k.clone());
            let other = n / &k;
            if other != k {
                out.push(other);
            }
        }
        k += 1;
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi())
    }
}

/// Clears the denominator of `target(numerator / denominator)`: returns the
/// primitive part of `denominator^deg * target(numerator / denominator)`.
pub fn substitute_rational(
    target: &UniPoly,
    numerator: &MultiPoly,
    denominator: &MultiPoly,
) -> Result<MultiPoly> {
    if denominator.is_zero() {
        return Err(Error::ZeroPolynomialDenominator);
    }
    let acc = target
        .to_multi()
        .substitute_fraction(target.var(), numerator, denominator);
    Ok(acc.primitive_part())
}
