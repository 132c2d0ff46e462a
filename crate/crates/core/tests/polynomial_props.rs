use std::sync::Arc;

use avatar_core::arith::rational::ratio;
use avatar_core::arith::{
    parse_poly_any, substitute_rational, Monomial, MultiPoly, Rational, Tower, UniPoly, Var,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn poly_in(vars: &'static [Var], max_degree: u32) -> impl Strategy<Value = MultiPoly> {
    let term = (
        proptest::collection::vec(0..=max_degree, vars.len()),
        rational(),
    )
        .prop_map(move |(exps, c)| {
            let m = vars
                .iter()
                .zip(exps)
                .fold(Monomial::one(), |m, (v, e)| m.with_exp(*v, e));
            (m, c)
        });
    proptest::collection::vec(term, 0..6).prop_map(MultiPoly::from_terms)
}

const XYZUW: &[Var] = &[Var::X, Var::Y, Var::Z, Var::U, Var::W];
const XYZ: &[Var] = &[Var::X, Var::Y, Var::Z];

fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(XYZUW, 3)
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn multiplication_is_a_ring_product(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &MultiPoly::one(), p.clone());
    }

    #[test]
    fn print_then_parse_is_identity(p in poly()) {
        let text = p.to_string();
        prop_assert_eq!(parse_poly_any(&text).unwrap(), p, "{}", text);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), vals in proptest::collection::vec(rational(), 5)) {
        let at: Vec<(Var, Rational)> = XYZUW.iter().copied().zip(vals).collect();
        let ev = |f: &MultiPoly| f.eval_rational(&at).unwrap();
        prop_assert_eq!(ev(&(&p * &q)), ev(&p) * ev(&q));
        prop_assert_eq!(ev(&(&p + &q)), ev(&p) + ev(&q));
    }

    #[test]
    fn primitive_part_is_canonical(p in poly(), c in rational()) {
        prop_assume!(!p.is_zero() && c != ratio(0, 1));
        let pp = p.primitive_part();
        prop_assert!(pp.has_integer_coefficients());
        prop_assert!(pp.leading_coefficient() > ratio(0, 1));
        prop_assert_eq!(p.scale(&c).primitive_part(), pp.clone());
        prop_assert!(p.is_proportional_to(&pp));
    }

    #[test]
    fn cleared_substitution_matches_evaluation(
        coeffs in proptest::collection::vec(-9i64..=9, 1..5),
        vals in proptest::collection::vec(rational(), 3),
    ) {
        let target = UniPoly::from_ints(Var::U, &coeffs);
        prop_assume!(target.degree() >= 1);
        let num = parse_poly_any("x*y + 2").unwrap();
        let den = parse_poly_any("z^2 + 1").unwrap();
        let cleared = substitute_rational(&target, &num, &den).unwrap();
        let at: Vec<(Var, Rational)> = XYZ.iter().copied().zip(vals).collect();
        let n = num.eval_rational(&at).unwrap();
        let d = den.eval_rational(&at).unwrap();
        let direct = target.eval(&(n / &d)) * num_traits::pow(d, target.degree());
        let got = cleared.eval_rational(&at).unwrap();
        // The primitive part differs from the cleared value by a constant factor.
        let unscaled = target.to_multi().substitute_fraction(Var::U, &num, &den);
        let (content, prim) = unscaled.content_primitive();
        prop_assert_eq!(&prim, &cleared);
        prop_assert_eq!(got * content, direct);
    }

    #[test]
    fn tower_reduction_is_idempotent_and_linear(p in poly_in(&[Var::S, Var::T, Var::X], 5), q in poly_in(&[Var::S, Var::T, Var::X], 5)) {
        let tower = Arc::new(Tower::new(vec![
            (Var::S, parse_poly_any("s^2 - 2").unwrap()),
            (Var::T, parse_poly_any("t^3 - s*t - x").unwrap()),
        ]).unwrap());
        let rp = tower.reduce(&p);
        prop_assert_eq!(tower.reduce(&rp), rp.clone());
        prop_assert!(rp.degree_in(Var::S) < 2 && rp.degree_in(Var::T) < 3);
        prop_assert_eq!(tower.reduce(&(&p + &q)), &rp + &tower.reduce(&q));
        let prod = tower.element(p.clone()).mul(&tower.element(q.clone()));
        prop_assert_eq!(prod.value(), &tower.reduce(&(&rp * &tower.reduce(&q))));
    }
}
