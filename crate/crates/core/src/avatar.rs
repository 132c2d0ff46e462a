//! The avatar surface: two hypersurfaces in `x, y, z, u, w` cut out by the
//! minimal polynomials `p(u)`, `q(w)` of the algebra parameters.
//!
//! Everything is built from
//!
//! ```text
//! F(x, y, z, u, w) = -u x^2 - w y^2 + u w z^2
//! ```
//!
//! by solving `F = 0` for `u` (resp. `w`) and substituting into `p` (resp. `q`).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::parse::parse_poly;
use crate::arith::poly::{MultiPoly, Var};
use crate::arith::rational::Rational;
use crate::arith::tower::{symbol_inverse, Tower};
use crate::arith::unipoly::{substitute_rational, UniPoly};
use crate::conic::form_polynomial;
use crate::error::{Error, Result};
use crate::local::hilbert::TernaryForm;

/// `d·u - n` for `r = n/d` in lowest terms.
pub fn minimal_poly_of_rational(r: &Rational) -> UniPoly {
    UniPoly::new(
        Var::U,
        vec![
            Rational::from_integer(-r.numer()),
            Rational::from_integer(r.denom().clone()),
        ],
    )
}

/// `-u x^2 - w y^2 + u w z^2`.
pub fn build_f() -> MultiPoly {
    let v = MultiPoly::var;
    let (x2, y2, z2) = (v(Var::X).pow(2), v(Var::Y).pow(2), v(Var::Z).pow(2));
    let (u, w) = (v(Var::U), v(Var::W));
    -(&u * &x2) - &w * &y2 + &(&u * &w) * &z2
}

/// A rational expression `numerator / denominator` for one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedExpression {
    pub symbol: Var,
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl SolvedExpression {
    /// Zero set of the denominator, where the expression is undefined.
    pub fn excluded_locus(&self) -> &MultiPoly {
        &self.denominator
    }

    /// Value at a point, or `None` on the excluded locus.
    pub fn eval(&self, at: &[(Var, Rational)]) -> Option<Rational> {
        let den = self.denominator.eval_rational(at)?;
        if den.is_zero() {
            return None;
        }
        Some(self.numerator.eval_rational(at)? / den)
    }

    /// `den^k · F(symbol = num/den)` with `k = deg_symbol F`.
    pub fn cleared_substitution(&self, f: &MultiPoly) -> MultiPoly {
        f.substitute_fraction(self.symbol, &self.numerator, &self.denominator)
    }
}

/// `u = w y^2 / (w z^2 - x^2)` and `w = u x^2 / (u z^2 - y^2)`.
pub fn solved_expressions() -> (SolvedExpression, SolvedExpression) {
    let v = MultiPoly::var;
    let (x2, y2, z2) = (v(Var::X).pow(2), v(Var::Y).pow(2), v(Var::Z).pow(2));
    let (u, w) = (v(Var::U), v(Var::W));
    let for_u = SolvedExpression {
        symbol: Var::U,
        numerator: &w * &y2,
        denominator: &(&w * &z2) - &x2,
    };
    let for_w = SolvedExpression {
        symbol: Var::W,
        numerator: &u * &x2,
        denominator: &(&u * &z2) - &y2,
    };
    (for_u, for_w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePresentation {
    pub p: UniPoly,
    pub q: UniPoly,
    pub f: MultiPoly,
    pub eq1: MultiPoly,
    pub eq2: MultiPoly,
    pub warnings: Vec<String>,
}

fn validate(poly: &UniPoly, name: &'static str, warnings: &mut Vec<String>) -> Result<UniPoly> {
    if poly.degree() == 0 {
        return Err(Error::ConstantPolynomial(name));
    }
    let poly = poly.primitive();
    if poly.constant_term().is_zero() {
        return Err(Error::ZeroRoot(name));
    }
    match poly.degree() {
        1 => {}
        2 | 3 => {
            // A quadratic or cubic is reducible iff it has a rational root.
            if !poly.rational_roots().is_empty() {
                return Err(Error::Reducible(name));
            }
        }
        d => warnings.push(format!("{name} has degree {d}; irreducibility not checked")),
    }
    Ok(poly)
}

/// Builds `eq1`, `eq2` from `p(u)` and `q(w)`.
///
/// Both inputs are normalized to primitive integer polynomials first.
pub fn build_surface(p: &UniPoly, q: &UniPoly) -> Result<SurfacePresentation> {
    if p.var() != Var::U {
        return Err(Error::NotUnivariate('u'));
    }
    if q.var() != Var::W {
        return Err(Error::NotUnivariate('w'));
    }
    let mut warnings = Vec::new();
    let p = validate(p, "p", &mut warnings)?;
    let q = validate(q, "q", &mut warnings)?;
    let (for_u, for_w) = solved_expressions();
    let eq1 = substitute_rational(&p, &for_u.numerator, &for_u.denominator)?;
    let eq2 = substitute_rational(&q, &for_w.numerator, &for_w.denominator)?;
    Ok(SurfacePresentation {
        p,
        q,
        f: build_f(),
        eq1,
        eq2,
        warnings,
    })
}

/// Parses `p` over `u` and `q` over `w`, then builds the surface.
pub fn build_surface_from_text(p: &str, q: &str) -> Result<SurfacePresentation> {
    let p = UniPoly::from_multi(&parse_poly(p, &[Var::U])?, Var::U)?;
    let q = UniPoly::from_multi(&parse_poly(q, &[Var::W])?, Var::W)?;
    build_surface(&p, &q)
}

/// For rational `a, b`: both surface equations specialize to multiples of
/// `-a x^2 - b y^2 + ab z^2`.
pub fn specialize_check(a: &Rational, b: &Rational) -> Result<bool> {
    let form = TernaryForm::new(a.clone(), b.clone())?;
    let q_b = minimal_poly_of_rational(b);
    let q_b = UniPoly::new(Var::W, q_b.coeffs().to_vec());
    let s = build_surface(&minimal_poly_of_rational(a), &q_b)?;
    let target = form_polynomial(&form);
    let eq1 = s.eq1.eval(&[(Var::W, b.clone())]);
    let eq2 = s.eq2.eval(&[(Var::U, a.clone())]);
    Ok(eq1.is_proportional_to(&target) && eq2.is_proportional_to(&target))
}

/// The tower `Q[u, w]/(p, q)` with `z` adjoined by `u w z^2 = u x^2 + w y^2`.
pub fn surface_tower(p: &UniPoly, q: &UniPoly) -> Result<Tower> {
    let (pm, qm) = (p.to_multi(), q.to_multi());
    let u_inv = symbol_inverse(&pm, Var::U).ok_or(Error::ZeroRoot("p"))?;
    let w_inv = symbol_inverse(&qm, Var::W).ok_or(Error::ZeroRoot("q"))?;
    let v = MultiPoly::var;
    let z_rel = v(Var::Z).pow(2) - &v(Var::X).pow(2) * &w_inv - &v(Var::Y).pow(2) * &u_inv;
    Tower::new(vec![(Var::U, pm), (Var::W, qm), (Var::Z, z_rel)])
}

/// `eq1` and `eq2` both reduce to zero in [`surface_tower`].
pub fn tower_consistency_check(p: &UniPoly, q: &UniPoly) -> Result<bool> {
    let s = build_surface(p, q)?;
    let tower = Arc::new(surface_tower(&s.p, &s.q)?);
    Ok(tower.element(s.eq1).is_zero() && tower.element(s.eq2).is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceFormat {
    Text,
    Json,
    Ideal,
}

impl FromStr for SurfaceFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            "ideal" => Ok(Self::Ideal),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for SurfaceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Text => "text",
            Self::Json => "json",
            Self::Ideal => "ideal",
        })
    }
}

/// JSON shape of a surface: four canonical polynomial strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub p: String,
    pub q: String,
    pub eq1: String,
    pub eq2: String,
}

impl SurfaceRecord {
    pub fn from_surface(s: &SurfacePresentation) -> Self {
        Self {
            p: s.p.to_string(),
            q: s.q.to_string(),
            eq1: s.eq1.to_string(),
            eq2: s.eq2.to_string(),
        }
    }

    /// Parses the strings back; returns `(p, q, eq1, eq2)`.
    pub fn polynomials(&self) -> Result<(MultiPoly, MultiPoly, MultiPoly, MultiPoly)> {
        use Var::*;
        Ok((
            parse_poly(&self.p, &[U])?,
            parse_poly(&self.q, &[W])?,
            parse_poly(&self.eq1, &[X, Y, Z, W])?,
            parse_poly(&self.eq2, &[X, Y, Z, U])?,
        ))
    }
}

pub fn emit_surface(s: &SurfacePresentation, format: SurfaceFormat) -> String {
    match format {
        SurfaceFormat::Text => format!("{}\n{}\n", s.eq1, s.eq2),
        SurfaceFormat::Json => {
            let record = SurfaceRecord::from_surface(s);
            serde_json::to_string(&record).expect("string fields") + "\n"
        }
        SurfaceFormat::Ideal => format!(
            "ring R = QQ[x,y,z,u,w];\nideal I = ({}, {});\n",
            s.eq1, s.eq2
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly_any;
    use crate::arith::rational::{int, ratio};

    fn mp(s: &str) -> MultiPoly {
        parse_poly_any(s).unwrap()
    }

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::U, c)
    }

    fn wp(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::W, c)
    }

    #[test]
    fn rational_minimal_polynomials() {
        assert_eq!(minimal_poly_of_rational(&int(-1)), up(&[1, 1]));
        assert_eq!(minimal_poly_of_rational(&ratio(3, 2)), up(&[-3, 2]));
        assert_eq!(minimal_poly_of_rational(&int(0)), up(&[0, 1]));
    }

    #[test]
    fn f_specializations() {
        let f = build_f();
        let at = |u, w| f.eval(&[(Var::U, int(u)), (Var::W, int(w))]);
        assert_eq!(at(-1, -1), mp("x^2 + y^2 + z^2"));
        assert_eq!(at(2, 3), mp("-2*x^2 - 3*y^2 + 6*z^2"));
        let origin = [(Var::X, int(0)), (Var::Y, int(0)), (Var::Z, int(0))];
        assert!(f.eval(&origin).is_zero());
    }

    #[test]
    fn solved_expressions_clear_f() {
        let f = build_f();
        let (for_u, for_w) = solved_expressions();
        assert!(for_u.cleared_substitution(&f).is_zero());
        assert!(for_w.cleared_substitution(&f).is_zero());
        // w z^2 = x^2 with y != 0
        let at = [
            (Var::W, int(1)),
            (Var::X, int(2)),
            (Var::Y, int(1)),
            (Var::Z, int(2)),
        ];
        assert_eq!(for_u.eval(&at), None);
        assert!(for_u.excluded_locus().eval_rational(&at).unwrap().is_zero());
        let off = [
            (Var::W, int(1)),
            (Var::X, int(1)),
            (Var::Y, int(1)),
            (Var::Z, int(2)),
        ];
        assert_eq!(for_u.eval(&off), Some(ratio(1, 3)));
    }

    #[test]
    fn linear_surface() {
        let s = build_surface(&up(&[1, 1]), &wp(&[1, 1])).unwrap();
        assert_eq!(s.eq1.to_string(), "x^2 - 1*w*y^2 - 1*w*z^2");
        assert!(s.eq2.is_proportional_to(&mp("y^2 - u*x^2 - u*z^2")));
        assert_eq!(s.eq2.to_string(), "u*x^2 - 1*y^2 + u*z^2");
        assert!(s.warnings.is_empty());
    }

    #[test]
    fn quadratic_surface() {
        let s = build_surface(&up(&[-2, 0, 1]), &wp(&[1, 1])).unwrap();
        assert_eq!(s.eq1, mp("w^2*y^4 - 2*(w*z^2 - x^2)^2").primitive_part());
        assert_eq!(s.eq1.degree_in(Var::W), 2);
        assert!(!s.eq1.mentions(Var::U) && !s.eq2.mentions(Var::W));
    }

    #[test]
    fn rejected_inputs() {
        assert_eq!(
            build_surface(&up(&[0, 1]), &wp(&[1, 1])),
            Err(Error::ZeroRoot("p"))
        );
        assert_eq!(
            build_surface(&up(&[3]), &wp(&[1, 1])),
            Err(Error::ConstantPolynomial("p"))
        );
        assert_eq!(
            build_surface(&up(&[1, 1]), &UniPoly::new(Var::W, vec![])),
            Err(Error::ConstantPolynomial("q"))
        );
        assert_eq!(
            build_surface(&up(&[-1, 0, 1]), &wp(&[1, 1])),
            Err(Error::Reducible("p"))
        );
        assert_eq!(
            build_surface(&up(&[1, 1]), &wp(&[-8, 0, 0, 1])),
            Err(Error::Reducible("q"))
        );
        let quartic = build_surface(&up(&[1, 0, 0, 0, 1]), &wp(&[1, 1])).unwrap();
        assert_eq!(quartic.warnings.len(), 1);
    }

    #[test]
    fn rational_inputs_are_normalized() {
        let p = UniPoly::new(Var::U, vec![ratio(1, 2), ratio(1, 2)]);
        let s = build_surface(&p, &wp(&[1, 1])).unwrap();
        assert_eq!(s.p, up(&[1, 1]));
    }

    #[test]
    fn specializations() {
        assert!(specialize_check(&int(-1), &int(-1)).unwrap());
        assert!(specialize_check(&int(2), &int(3)).unwrap());
        assert!(specialize_check(&int(-1), &ratio(3, 2)).unwrap());
        assert!(specialize_check(&ratio(-5, 7), &ratio(11, 3)).unwrap());
        assert!(specialize_check(&int(0), &int(1)).is_err());
    }

    #[test]
    fn tower_consistency() {
        for (p, q) in [
            (up(&[1, 1]), wp(&[1, 1])),
            (up(&[-2, 0, 1]), wp(&[1, 1])),
            (up(&[1, 0, 1]), wp(&[2, 0, 1])),
            (up(&[-1, -1, 1]), wp(&[2, 1])),
        ] {
            assert!(tower_consistency_check(&p, &q).unwrap(), "{p} / {q}");
        }
    }

    #[test]
    fn tower_detects_wrong_equation() {
        let s = build_surface(&up(&[1, 1]), &wp(&[1, 1])).unwrap();
        let tower = Arc::new(surface_tower(&s.p, &s.q).unwrap());
        assert!(!tower.element(&s.eq1 + &MultiPoly::var(Var::X)).is_zero());
    }

    #[test]
    fn emitters() {
        let s = build_surface_from_text("u+1", "w+1").unwrap();
        assert_eq!(
            emit_surface(&s, SurfaceFormat::Text),
            "x^2 - 1*w*y^2 - 1*w*z^2\nu*x^2 - 1*y^2 + u*z^2\n"
        );
        let json = emit_surface(&s, SurfaceFormat::Json);
        let record: SurfaceRecord = serde_json::from_str(&json).unwrap();
        let (p, q, eq1, eq2) = record.polynomials().unwrap();
        assert_eq!((p, q), (s.p.to_multi(), s.q.to_multi()));
        assert_eq!((eq1, eq2), (s.eq1.clone(), s.eq2.clone()));
        assert!(emit_surface(&s, SurfaceFormat::Ideal)
            .starts_with("ring R = QQ[x,y,z,u,w];\nideal I = (x^2"));
        assert!("".parse::<SurfaceFormat>().is_err());
        assert!("latex".parse::<SurfaceFormat>().is_err());
    }
}
