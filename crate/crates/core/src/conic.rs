//! The conic `z^2 = a x^2 + b y^2`: rational points, parametrizations, and
//! normal forms modulo the ternary form.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::poly::{MultiPoly, Var};
use crate::arith::rational::{gcd3, Rational};
use crate::arith::tower::Tower;
use crate::error::{Error, Result};
use crate::local::hilbert::{is_division, TernaryForm};
use crate::local::oracle::{first_diagonal_zero, integral_diagonal, Triple};
use crate::quaternion::QuaternionAlgebra;

/// Projective plane conic `z^2 = a x^2 + b y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conic {
    a: Rational,
    b: Rational,
}

impl Conic {
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

    /// Quaternion algebra `(a,b/Q)`; it splits iff the conic has a rational point.
    pub fn algebra(&self) -> QuaternionAlgebra {
        QuaternionAlgebra::new(self.a.clone(), self.b.clone()).expect("nonzero parameters")
    }

    pub fn contains(&self, x: &Rational, y: &Rational, z: &Rational) -> bool {
        z * z == &self.a * x * x + &self.b * y * y
    }

    pub fn contains_point(&self, p: &ConicPoint) -> bool {
        let [x, y, z] = p.rationals();
        self.contains(&x, &y, &z)
    }

    /// `z^2 - a x^2 - b y^2` as a polynomial in `x, y, z`.
    pub fn equation(&self) -> MultiPoly {
        let sq = |v: Var| MultiPoly::var(v).pow(2);
        sq(Var::Z) - sq(Var::X).scale(&self.a) - sq(Var::Y).scale(&self.b)
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^2 = ({})*x^2 + ({})*y^2", self.a, self.b)
    }
}

/// The conic `z^2 = (1/b) x^2 + (1/a) y^2` attached to the ternary form.
pub fn conic_from_form(form: &TernaryForm) -> Conic {
    Conic {
        a: form.b().recip(),
        b: form.a().recip(),
    }
}

/// Coordinate correspondence between zeros of `-a x^2 - b y^2 + ab z^2` and
/// points of [`conic_from_form`].
///
/// Dividing the form by `ab` gives `z^2 = x^2/b + y^2/a`, which is exactly the
/// conic with `a' = 1/b`, `b' = 1/a` in the same coordinates. The map is the
/// identity in both directions.
pub fn form_zero_to_conic_point(t: &Triple) -> Triple {
    t.clone()
}

pub fn conic_point_to_form_zero(t: &Triple) -> Triple {
    t.clone()
}

/// Primitive integer point on a conic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointRecord", into = "PointRecord")]
pub struct ConicPoint {
    x: BigInt,
    y: BigInt,
    z: BigInt,
}

impl ConicPoint {
    /// Scales to a primitive representative; rejects the zero triple.
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        let g = gcd3(&x, &y, &z);
        if g.is_zero() {
            return Err(Error::PointNotOnConic("0, 0, 0".into()));
        }
        Ok(Self {
            x: x / &g,
            y: y / &g,
            z: z / &g,
        })
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    fn rationals(&self) -> [Rational; 3] {
        [&self.x, &self.y, &self.z].map(|c| Rational::from_integer(c.clone()))
    }
}

impl fmt::Display for ConicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// JSON shape `{x, y, z}` with integer strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PointRecord {
    x: String,
    y: String,
    z: String,
}

impl TryFrom<PointRecord> for ConicPoint {
    type Error = Error;
    fn try_from(r: PointRecord) -> Result<Self> {
        let int = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::InvalidNumber(s.to_string()))
        };
        ConicPoint::new(int(&r.x)?, int(&r.y)?, int(&r.z)?)
    }
}

impl From<ConicPoint> for PointRecord {
    fn from(p: ConicPoint) -> Self {
        PointRecord {
            x: p.x.to_string(),
            y: p.y.to_string(),
            z: p.z.to_string(),
        }
    }
}

/// First rational point in (height, lexicographic) order over the
/// nonnegative octant, searching with bounds `initial, 10*initial, ...`.
///
/// Division-algebra conics have no rational points and are rejected before
/// any searching; for split conics the deepening always terminates.
pub fn find_point(conic: &Conic, initial_bound: u64) -> Result<ConicPoint> {
    if is_division(&conic.algebra())? {
        return Err(Error::NoRationalPoint {
            a: conic.a.to_string(),
            b: conic.b.to_string(),
        });
    }
    let (p, q, r) = integral_diagonal(&conic.a, &conic.b);
    let mut bound = initial_bound.max(1);
    loop {
        if let Some(t) = first_diagonal_zero(&p, &q, &r, bound) {
            return ConicPoint::new(t.x, t.y, t.z);
        }
        bound = bound.saturating_mul(10);
    }
}

/// Three binary quadratic forms `X, Y, Z` in `u, v` with
/// `Z^2 - a X^2 - b Y^2 = 0` identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalParametrization {
    pub x: MultiPoly,
    pub y: MultiPoly,
    pub z: MultiPoly,
    /// Parameter `(u, v)` that maps to a multiple of the base point.
    pub base_parameter: (Rational, Rational),
}

impl RationalParametrization {
    pub fn eval(&self, u: &Rational, v: &Rational) -> [Rational; 3] {
        let at = [(Var::U, u.clone()), (Var::V, v.clone())];
        [&self.x, &self.y, &self.z].map(|p| p.eval_rational(&at).expect("binary form"))
    }

    /// `Z^2 - a X^2 - b Y^2`, which is the zero polynomial for a valid parametrization.
    pub fn defining_identity(&self, conic: &Conic) -> MultiPoly {
        self.z.pow(2) - self.x.pow(2).scale(&conic.a) - self.y.pow(2).scale(&conic.b)
    }

    /// The three coordinate polynomials, one per line.
    pub fn to_lines(&self) -> String {
        format!("{}\n{}\n{}\n", self.x, self.y, self.z)
    }
}

/// Pencil of lines through `p0`.
///
/// For a direction `D` on a coordinate line not containing `p0`, the second
/// intersection of the line `p0 + λD` with the conic is
/// `-G(D)·p0 + 2B(p0, D)·D`, where `G` is `a x^2 + b y^2 - z^2` and `B` its
/// polar form. Letting `D` run over `(u, v)` gives quadratic forms in `u, v`.
pub fn parametrize_from_point(conic: &Conic, p0: &ConicPoint) -> Result<RationalParametrization> {
    if !conic.contains_point(p0) {
        return Err(Error::PointNotOnConic(format!(
            "{}, {}, {}",
            p0.x, p0.y, p0.z
        )));
    }
    let [x0, y0, z0] = p0.rationals();
    let (u, v) = (MultiPoly::var(Var::U), MultiPoly::var(Var::V));
    let zero = MultiPoly::zero;
    // Direction plane: a coordinate hyperplane where p0 has a nonzero coordinate.
    let (d, free): ([MultiPoly; 3], [usize; 2]) = if !z0.is_zero() {
        ([u.clone(), v.clone(), zero()], [0, 1])
    } else if !x0.is_zero() {
        ([zero(), u.clone(), v.clone()], [1, 2])
    } else {
        ([u.clone(), zero(), v.clone()], [0, 2])
    };
    let weights = [conic.a.clone(), conic.b.clone(), -Rational::one()];
    let g_d = (0..3).fold(MultiPoly::zero(), |acc, i| {
        acc + d[i].pow(2).scale(&weights[i])
    });
    let base = [&x0, &y0, &z0];
    let polar = (0..3).fold(MultiPoly::zero(), |acc, i| {
        acc + d[i].scale(&(&weights[i] * base[i]))
    });
    let coord =
        |i: usize| d[i].scale(&Rational::from_integer(2.into())) * &polar - g_d.scale(base[i]);
    // B(p0, D) vanishes on the direction (c1, -c0) in the free coordinates.
    let c = free.map(|i| &weights[i] * base[i]);
    let base_parameter = (c[1].clone(), -c[0].clone());
    Ok(RationalParametrization {
        x: coord(0),
        y: coord(1),
        z: coord(2),
        base_parameter,
    })
}

/// Parameter for [`radical_parametrization_check`]: a symbol or a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Symbolic,
    Value(Rational),
}

/// Verifies the parametrization
/// `x = (u^2 - v^2)/√-a`, `y = 2uv/√-b`, `z = √-1 (u^2 + v^2)`
/// of `z^2 = a x^2 + b y^2` inside `Q(a,b)[s,t,m]/(s^2+a, t^2+b, m^2+1)`.
///
/// Multiplying every coordinate by `st` clears the inverse square roots, so
/// the check is that `(stz)^2 - a (stx)^2 - b (sty)^2` reduces to zero.
pub fn radical_parametrization_check(a: &Param, b: &Param) -> bool {
    radical_parametrization_check_with(a, b, &MultiPoly::zero())
}

/// As [`radical_parametrization_check`], with `z_offset` added to `z`.
pub fn radical_parametrization_check_with(a: &Param, b: &Param, z_offset: &MultiPoly) -> bool {
    let param = |p: &Param, sym: Var| match p {
        Param::Symbolic => MultiPoly::var(sym),
        Param::Value(r) => MultiPoly::constant(r.clone()),
    };
    let (a, b) = (param(a, Var::A), param(b, Var::B));
    let var = MultiPoly::var;
    let tower = Tower::new(vec![
        (Var::S, var(Var::S).pow(2) + &a),
        (Var::T, var(Var::T).pow(2) + &b),
        (Var::M, var(Var::M).pow(2) + MultiPoly::one()),
    ])
    .expect("monic relations");
    let (u, v, s, t, m) = (
        var(Var::U),
        var(Var::V),
        var(Var::S),
        var(Var::T),
        var(Var::M),
    );
    let st = &s * &t;
    let sum = u.pow(2) + v.pow(2);
    let diff = u.pow(2) - v.pow(2);
    let x = &t * &diff;
    let y = &s * &(&u * &v).scale(&Rational::from_integer(2.into()));
    let z = &st * &(&m * &sum + z_offset);
    let expr = z.pow(2) - &a * &x.pow(2) - &b * &y.pow(2);
    Arc::new(tower).element(expr).is_zero()
}

/// Normal form of `f` modulo the form `-a x^2 - b y^2 + ab z^2`, using the
/// rewrite `z^2 -> (a x^2 + b y^2)/(ab)` until `z` has degree at most 1.
pub fn coordinate_ring_normal_form(f: &MultiPoly, form: &TernaryForm) -> MultiPoly {
    ring_tower(form).reduce(f)
}

fn ring_tower(form: &TernaryForm) -> Tower {
    let (a, b) = (form.a(), form.b());
    let inv_ab = (a * b).recip();
    let rhs = (MultiPoly::var(Var::X).pow(2).scale(a) + MultiPoly::var(Var::Y).pow(2).scale(b))
        .scale(&inv_ab);
    Tower::new(vec![(Var::Z, MultiPoly::var(Var::Z).pow(2) - rhs)]).expect("monic in z")
}

/// The ternary form as a polynomial in `x, y, z`.
pub fn form_polynomial(form: &TernaryForm) -> MultiPoly {
    let sq = |v: Var| MultiPoly::var(v).pow(2);
    sq(Var::Z).scale(&(form.a() * form.b()))
        - sq(Var::X).scale(form.a())
        - sq(Var::Y).scale(form.b())
}
