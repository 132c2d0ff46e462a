//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables come from a fixed ordered alphabet. Terms are kept in a
//! `BTreeMap` keyed by exponent vectors under the lexicographic order of
//! that alphabet (`x > y > z > u > w > v > s > t > m > a > b`), so the
//! printed form and the "leading term" are both deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, numerator_gcd, Rational};

pub const NVARS: usize = 11;

/// A symbol of the fixed polynomial alphabet, listed in term-order priority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    U,
    W,
    V,
    S,
    T,
    M,
    /// Symbolic algebra parameter `a`.
    A,
    /// Symbolic algebra parameter `b`.
    B,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::X,
        Var::Y,
        Var::Z,
        Var::U,
        Var::W,
        Var::V,
        Var::S,
        Var::T,
        Var::M,
        Var::A,
        Var::B,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        b"xyzuwvstmab"[self.index()] as char
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.symbol() == c)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        Var::ALL.into_iter().filter(|v| self.exp(*v) > 0)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(mut self, rhs: Monomial) -> Monomial {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        // Factors print alphabetically; term order is independent of this.
        let mut vars: Vec<Var> = self.vars().collect();
        vars.sort_by_key(|v| v.symbol());
        let mut first = true;
        for v in vars {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match self.exp(v) {
                1 => write!(f, "{v}")?,
                e => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over the rationals. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Returns the value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0))
            .collect()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (*m * mono, k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients of `self` viewed as a polynomial in `v`: entry `k` is the
    /// coefficient of `v^k` (a polynomial in the remaining variables).
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Self {
        let coeffs = self.coefficients_in(v);
        // Horner in v.
        coeffs
            .iter()
            .rev()
            .fold(MultiPoly::zero(), |acc, c| &(&acc * value) + c)
    }

    /// `den^n * self(v = num/den)` with `n = deg_v(self)`; no normalization.
    pub fn substitute_fraction(&self, v: Var, num: &MultiPoly, den: &MultiPoly) -> Self {
        let coeffs = self.coefficients_in(v);
        let n = coeffs.len() - 1;
        let mut den_pows = vec![MultiPoly::one()];
        for k in 1..=n {
            den_pows.push(&den_pows[k - 1] * den);
        }
        let mut acc = MultiPoly::zero();
        let mut num_pow = MultiPoly::one();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + &(c * &num_pow) * &den_pows[n - k];
            }
            num_pow = &num_pow * num;
        }
        acc
    }

    /// Evaluates at a full or partial assignment; unassigned variables stay symbolic.
    pub fn eval(&self, assignment: &[(Var, Rational)]) -> Self {
        assignment.iter().fold(self.clone(), |p, (v, r)| {
            p.substitute(*v, &MultiPoly::constant(r.clone()))
        })
    }

    /// Evaluates to a rational when every mentioned variable is assigned.
    pub fn eval_rational(&self, assignment: &[(Var, Rational)]) -> Option<Rational> {
        self.eval(assignment).as_constant()
    }

    /// Splits `self` as `content * primitive`, where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn content_primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), MultiPoly::zero());
        }
        let den = common_denominator(self.terms.values());
        let num = numerator_gcd(self.terms.values());
        let mut content = Rational::new(num, den);
        if self.leading_coefficient().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn primitive_part(&self) -> MultiPoly {
        self.content_primitive().1
    }

    /// True when `self = c * other` for some nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        self.primitive_part() == other.primitive_part()
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for MultiPoly {
    /// Descending term order, explicit `*` and `^`. A coefficient is omitted
    /// exactly when it equals 1 on a nonconstant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let shown = if i == 0 {
                c.clone()
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
                c.abs()
            };
            if m.is_one() {
                write!(f, "{shown}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{shown}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
