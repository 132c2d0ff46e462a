//! Local Hilbert symbols over Q and the division/split decision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::factor::{factorize, is_prime, FactorBudget};
use crate::arith::rational::Rational;
use crate::error::{Error, Result};
use crate::quaternion::QuaternionAlgebra;

/// The diagonal ternary form `-a x^2 - b y^2 + ab z^2` attached to `(a,b/Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    a: Rational,
    b: Rational,
}

impl TernaryForm {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DegenerateAlgebra);
        }
        Ok(Self { a, b })
    }

    pub fn from_algebra(alg: &QuaternionAlgebra) -> Self {
        Self {
            a: alg.a().clone(),
            b: alg.b().clone(),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn eval(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        -(&self.a * x * x) - &self.b * y * y + &self.a * &self.b * z * z
    }

    pub fn algebra(&self) -> QuaternionAlgebra {
        QuaternionAlgebra::new(self.a.clone(), self.b.clone()).expect("nonzero parameters")
    }
}

pub fn form_from_algebra(alg: &QuaternionAlgebra) -> TernaryForm {
    TernaryForm::from_algebra(alg)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(BigInt),
}

impl Place {
    pub fn prime(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Place::Finite(p))
    }

    fn to_json(&self) -> Value {
        match self {
            Place::Real => json!("inf"),
            Place::Finite(p) => match p.to_u64() {
                Some(p) => json!(p),
                None => json!(p.to_string()),
            },
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// Places where `(a,b/Q)` ramifies, real place first then primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RamificationSet {
    places: Vec<Place>,
}

impl RamificationSet {
    pub fn from_places(mut places: Vec<Place>) -> Self {
        places.sort();
        places.dedup();
        Self { places }
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn contains(&self, p: &Place) -> bool {
        self.places.contains(p)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.places.iter().map(Place::to_json).collect())
    }
}

impl fmt::Display for RamificationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.places.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Squarefree integer `s` with `r = s * t^2`, `t` rational.
pub fn square_class(r: &Rational) -> Result<BigInt> {
    square_class_with(r, &FactorBudget::default())
}

pub fn square_class_with(r: &Rational, budget: &FactorBudget) -> Result<BigInt> {
    if r.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    // n/d = n*d / d^2
    let n = r.numer() * r.denom();
    let mut s = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in factorize(&n, budget)? {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let r = u.mod_floor(p);
    debug_assert!(!r.is_zero());
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Splits a squarefree `s` as `p^alpha * unit` with `alpha` in {0, 1}.
fn split(s: &BigInt, p: &BigInt) -> (u32, BigInt) {
    if (s % p).is_zero() {
        (1, s / p)
    } else {
        (0, s.clone())
    }
}

/// Hilbert symbol `(a,b)_v` from the closed formulas on square classes.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: &Place) -> Result<i8> {
    hilbert_symbol_with(a, b, place, &FactorBudget::default())
}

pub fn hilbert_symbol_with(
    a: &Rational,
    b: &Rational,
    place: &Place,
    budget: &FactorBudget,
) -> Result<i8> {
    let sa = square_class_with(a, budget)?;
    let sb = square_class_with(b, budget)?;
    Ok(symbol_on_classes(&sa, &sb, place))
}

/// Hilbert symbol of two squarefree integers.
pub fn symbol_on_classes(sa: &BigInt, sb: &BigInt, place: &Place) -> i8 {
    match place {
        Place::Real => {
            if sa.is_negative() && sb.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) if *p == BigInt::from(2) => {
            let (alpha, u) = split(sa, p);
            let (beta, v) = split(sb, p);
            let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u8().unwrap();
            let (u8_, v8) = (m8(&u), m8(&v));
            let eps = |r: u8| u32::from(r % 4 == 3);
            let omega = |r: u8| u32::from(r == 3 || r == 5);
            let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split(sa, p);
            let (beta, v) = split(sb, p);
            let mut s: i8 = 1;
            if alpha * beta == 1 && ((p - 1u32) >> 1u32).is_odd() {
                s = -s;
            }
            if beta == 1 {
                s *= legendre(&u, p);
            }
            if alpha == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// Places worth examining: the real place, 2, and odd primes dividing the square classes.
pub fn candidate_places(sa: &BigInt, sb: &BigInt, budget: &FactorBudget) -> Result<Vec<Place>> {
    let mut places = vec![Place::Real, Place::Finite(BigInt::from(2))];
    for s in [sa, sb] {
        for (p, _) in factorize(s, budget)? {
            if p != BigInt::from(2) {
                places.push(Place::Finite(p));
            }
        }
    }
    places.sort();
    places.dedup();
    Ok(places)
}

pub fn ramified_places(alg: &QuaternionAlgebra) -> Result<RamificationSet> {
    ramified_places_with(alg, &FactorBudget::default())
}

pub fn ramified_places_with(
    alg: &QuaternionAlgebra,
    budget: &FactorBudget,
) -> Result<RamificationSet> {
    let sa = square_class_with(alg.a(), budget)?;
    let sb = square_class_with(alg.b(), budget)?;
    let places = candidate_places(&sa, &sb, budget)?
        .into_iter()
        .filter(|v| symbol_on_classes(&sa, &sb, v) == -1)
        .collect();
    Ok(RamificationSet::from_places(places))
}

/// `(a,b/Q)` is a division algebra iff it ramifies somewhere, i.e. iff the
/// ternary form has no nontrivial rational zero.
pub fn is_division(alg: &QuaternionAlgebra) -> Result<bool> {
    Ok(!ramified_places(alg)?.is_empty())
}

pub fn are_isomorphic(x: &QuaternionAlgebra, y: &QuaternionAlgebra) -> Result<bool> {
    Ok(ramified_places(x)? == ramified_places(y)?)
}

/// JSON classification record `{a, b, division, ramified}`.
pub fn classification_record(alg: &QuaternionAlgebra) -> Result<Value> {
    let ram = ramified_places(alg)?;
    Ok(json!({
        "a": alg.a().to_string(),
        "b": alg.b().to_string(),
        "division": !ram.is_empty(),
        "ramified": ram.to_json(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};

    fn alg(a: i64, b: i64) -> QuaternionAlgebra {
        QuaternionAlgebra::new(int(a), int(b)).unwrap()
    }

    fn two() -> Place {
        Place::prime(2).unwrap()
    }

    #[test]
    fn forms() {
        let f = form_from_algebra(&alg(-1, -1));
        assert_eq!(f.eval(&int(1), &int(1), &int(1)), int(3));
        let g = form_from_algebra(&alg(1, 1));
        assert_eq!(g.eval(&int(0), &int(1), &int(1)), int(0));
        let h = form_from_algebra(&alg(2, 3));
        assert_eq!(h.eval(&int(1), &int(1), &int(1)), int(-2 - 3 + 6));
        assert_eq!(h.eval(&int(0), &int(0), &int(0)), int(0));
    }

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&int(8)).unwrap(), BigInt::from(2));
        assert_eq!(square_class(&ratio(-9, 4)).unwrap(), BigInt::from(-1));
        assert_eq!(square_class(&ratio(12, 5)).unwrap(), BigInt::from(15));
        assert_eq!(square_class(&int(0)), Err(Error::ZeroSquareClass));
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(
            hilbert_symbol(&int(-1), &int(-1), &Place::Real).unwrap(),
            -1
        );
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), &two()).unwrap(), -1);
        for b in [-7, -1, 2, 3, 6] {
            for v in [
                Place::Real,
                two(),
                Place::prime(3).unwrap(),
                Place::prime(7).unwrap(),
            ] {
                assert_eq!(hilbert_symbol(&int(1), &int(b), &v).unwrap(), 1);
            }
        }
        // (2,3)_3 = (2|3) = -1, (2,3)_2 = -1
        assert_eq!(
            hilbert_symbol(&int(2), &int(3), &Place::prime(3).unwrap()).unwrap(),
            -1
        );
        assert_eq!(hilbert_symbol(&int(2), &int(3), &two()).unwrap(), -1);
        assert!(matches!(Place::prime(9), Err(Error::NotPrime(_))));
    }

    #[test]
    fn ramification() {
        let ham = ramified_places(&alg(-1, -1)).unwrap();
        assert_eq!(ham.places(), &[Place::Real, two()]);
        assert_eq!(ham.to_string(), "{inf, 2}");
        assert!(ramified_places(&alg(1, 1)).unwrap().is_empty());
        assert_eq!(ham, ramified_places(&alg(-1, -4)).unwrap());
        assert_eq!(
            ramified_places(&alg(-1, 3)).unwrap().places(),
            &[two(), Place::prime(3).unwrap()]
        );
    }

    #[test]
    fn division_and_isomorphism() {
        assert!(is_division(&alg(-1, -1)).unwrap());
        assert!(!is_division(&alg(1, 1)).unwrap());
        assert!(are_isomorphic(&alg(-1, -1), &alg(-1, -1)).unwrap());
        assert!(!are_isomorphic(&alg(-1, -1), &alg(1, 1)).unwrap());
        assert!(are_isomorphic(&alg(2, 5), &alg(5, 2)).unwrap());
        // positive a, b and still a division algebra
        assert_eq!(
            ramified_places(&alg(3, 5)).unwrap().places(),
            &[Place::prime(3).unwrap(), Place::prime(5).unwrap()]
        );
    }

    #[test]
    fn json_record() {
        let rec = classification_record(&alg(-1, -1)).unwrap();
        assert_eq!(
            rec.to_string(),
            r#"{"a":"-1","b":"-1","division":true,"ramified":["inf",2]}"#
        );
    }
}
