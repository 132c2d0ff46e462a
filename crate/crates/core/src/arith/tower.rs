//! Quotient rings by a triangular chain of univariate relations.
//!
//! A tower `[(s1, r1), (s2, r2), ...]` adjoins `s1` subject to `r1(s1) = 0`,
//! then `s2` subject to `r2 = 0` where `r2` may use `s1` and any free
//! variables in its coefficients, and so on. Every relation is stored monic
//! in its own symbol, so reduction is a plain rewrite `s^d -> -(r - s^d)`
//! and normal forms are unique.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly, Var};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    symbol: Var,
    degree: u32,
    /// `symbol^degree = tail`
    tail: MultiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tower {
    relations: Vec<Relation>,
}

impl Tower {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a tower, rescaling each relation to be monic in its symbol.
    ///
    /// The leading coefficient (in the relation's own symbol) must be a
    /// nonzero rational constant, and a relation may not mention symbols
    /// adjoined after it.
    pub fn new(relations: Vec<(Var, MultiPoly)>) -> Result<Self> {
        let symbols: Vec<Var> = relations.iter().map(|(v, _)| *v).collect();
        let mut out = Vec::with_capacity(relations.len());
        for (i, (symbol, rel)) in relations.into_iter().enumerate() {
            if let Some(other) = symbols[i + 1..].iter().find(|s| rel.mentions(**s)) {
                return Err(Error::RelationOrder {
                    symbol: symbol.symbol(),
                    other: other.symbol(),
                });
            }
            let degree = rel.degree_in(symbol);
            if degree == 0 {
                return Err(Error::DegenerateRelation(symbol.symbol()));
            }
            let coeffs = rel.coefficients_in(symbol);
            let lead = coeffs[degree as usize]
                .as_constant()
                .filter(|c| !c.is_zero())
                .ok_or(Error::NonMonicRelation(symbol.symbol()))?;
            let monic = rel.scale(&lead.recip());
            let tail =
                -&(&monic - &MultiPoly::term(Rational::one(), Monomial::var(symbol, degree)));
            out.push(Relation {
                symbol,
                degree,
                tail,
            });
        }
        Ok(Self { relations: out })
    }

    pub fn symbols(&self) -> impl Iterator<Item = Var> + '_ {
        self.relations.iter().map(|r| r.symbol)
    }

    /// Monic relation polynomial for `symbol`, if adjoined.
    pub fn relation(&self, symbol: Var) -> Option<MultiPoly> {
        self.relations
            .iter()
            .find(|r| r.symbol == symbol)
            .map(|r| &MultiPoly::var(r.symbol).pow(r.degree) - &r.tail)
    }

    /// Normal form of `p`: every tower symbol below its relation degree.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        // Top-down: later relations may use earlier symbols, never the reverse.
        self.relations
            .iter()
            .rev()
            .fold(p.clone(), |acc, rel| reduce_by(&acc, rel))
    }

    pub fn element(self: &Arc<Self>, value: MultiPoly) -> TowerElement {
        TowerElement {
            tower: Arc::clone(self),
            value,
        }
    }
}

fn reduce_by(p: &MultiPoly, rel: &Relation) -> MultiPoly {
    let mut current = p.clone();
    loop {
        if current.degree_in(rel.symbol) < rel.degree {
            return current;
        }
        let mut keep = Vec::new();
        let mut rewritten = MultiPoly::zero();
        for (m, c) in current.terms() {
            let e = m.exp(rel.symbol);
            if e >= rel.degree {
                let rest = m.with_exp(rel.symbol, e - rel.degree);
                rewritten = rewritten + rel.tail.mul_monomial(rest).scale(c);
            } else {
                keep.push((*m, c.clone()));
            }
        }
        current = MultiPoly::from_terms(keep) + rewritten;
    }
}

/// A value in the quotient ring described by its tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElement {
    tower: Arc<Tower>,
    value: MultiPoly,
}

impl TowerElement {
    pub fn new(tower: Arc<Tower>, value: MultiPoly) -> Self {
        Self { tower, value }
    }

    pub fn value(&self) -> &MultiPoly {
        &self.value
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn reduce(&self) -> TowerElement {
        TowerElement {
            tower: Arc::clone(&self.tower),
            value: self.tower.reduce(&self.value),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tower.reduce(&self.value).is_zero()
    }

    pub fn mul(&self, other: &TowerElement) -> TowerElement {
        debug_assert_eq!(self.tower, other.tower);
        self.tower.element(&self.value * &other.value).reduce()
    }

    pub fn add(&self, other: &TowerElement) -> TowerElement {
        debug_assert_eq!(self.tower, other.tower);
        self.tower.element(&self.value + &other.value).reduce()
    }
}

/// Free-function form of [`TowerElement::reduce`].
pub fn tower_reduce(e: &TowerElement) -> TowerElement {
    e.reduce()
}

/// Inverse of `symbol` modulo a univariate relation with nonzero constant term:
/// from `r = c0 + symbol * g` it follows that `symbol^{-1} = -g / c0`.
pub fn symbol_inverse(relation: &MultiPoly, symbol: Var) -> Option<MultiPoly> {
    let coeffs = relation.coefficients_in(symbol);
    let c0 = coeffs.first()?.as_constant()?;
    if c0.is_zero() {
        return None;
    }
    let g = MultiPoly::from_terms(coeffs.iter().enumerate().skip(1).flat_map(|(k, c)| {
        c.terms()
            .map(move |(m, v)| (m.with_exp(symbol, m.exp(symbol) + k as u32 - 1), v.clone()))
            .collect::<Vec<_>>()
    }));
    Some(g.scale(&(-c0.recip())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly_any;

    fn mp(s: &str) -> MultiPoly {
        parse_poly_any(s).unwrap()
    }

    fn gaussian() -> Arc<Tower> {
        Arc::new(Tower::new(vec![(Var::S, mp("s^2 + 1"))]).unwrap())
    }

    #[test]
    fn relation_reduces_to_constant() {
        let e = gaussian().element(mp("s^2")).reduce();
        assert_eq!(e.value(), &MultiPoly::int(-1));
    }

    #[test]
    fn cube_cancels() {
        assert!(gaussian().element(mp("s^3 + s")).is_zero());
        assert_eq!(
            gaussian().element(mp("s^5 + x*s^2")).reduce().value(),
            &mp("s - x")
        );
    }

    #[test]
    fn empty_tower_is_identity() {
        let t = Arc::new(Tower::empty());
        let f = mp("x^3*s^7 - 2");
        assert_eq!(t.element(f.clone()).reduce().value(), &f);
    }

    #[test]
    fn rescales_to_monic() {
        let t = Tower::new(vec![(Var::U, mp("2*u^2 - 4"))]).unwrap();
        assert_eq!(t.relation(Var::U).unwrap(), mp("u^2 - 2"));
        assert_eq!(t.reduce(&mp("u^3")), mp("2*u"));
    }

    #[test]
    fn rejects_bad_relations() {
        assert_eq!(
            Tower::new(vec![(Var::S, mp("x + 1"))]),
            Err(Error::DegenerateRelation('s'))
        );
        assert_eq!(
            Tower::new(vec![(Var::Z, mp("u*z^2 - x^2"))]),
            Err(Error::NonMonicRelation('z'))
        );
        assert_eq!(
            Tower::new(vec![(Var::S, mp("s^2 - t")), (Var::T, mp("t^2 + 1"))]),
            Err(Error::RelationOrder {
                symbol: 's',
                other: 't'
            })
        );
    }

    #[test]
    fn nested_relations() {
        // s = sqrt(2), t = sqrt(s): t^4 = 2
        let t = Tower::new(vec![(Var::S, mp("s^2 - 2")), (Var::T, mp("t^2 - s"))]).unwrap();
        assert_eq!(t.reduce(&mp("t^4")), MultiPoly::int(2));
        assert_eq!(t.reduce(&mp("t^5")), mp("2*t"));
    }

    #[test]
    fn inverse_of_symbol() {
        let rel = mp("u^2 - u - 1");
        let inv = symbol_inverse(&rel, Var::U).unwrap();
        let t = Tower::new(vec![(Var::U, rel)]).unwrap();
        assert_eq!(
            t.reduce(&(&inv * &MultiPoly::var(Var::U))),
            MultiPoly::one()
        );
        assert!(symbol_inverse(&mp("u^2 + u"), Var::U).is_none());
    }
}
