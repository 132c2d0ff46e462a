//! Built-in property suites: algebraic identities and oracle cross-checks,
//! run with a fixed seed so reports are reproducible.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::parse::parse_poly_any;
use crate::arith::poly::{Monomial, MultiPoly, Var};
use crate::arith::rational::{int, Rational};
use crate::arith::unipoly::UniPoly;
use crate::avatar::{specialize_check, tower_consistency_check};
use crate::conic::{
    coordinate_ring_normal_form, find_point, form_polynomial, parametrize_from_point,
    radical_parametrization_check, radical_parametrization_check_with, Conic, Param,
};
use crate::error::{Error, Result};
use crate::local::factor::FactorBudget;
use crate::local::hilbert::{
    candidate_places, is_division, ramified_places, symbol_on_classes, Place, TernaryForm,
};
use crate::local::oracle::{isotropy_oracle, padic_solvability_oracle};
use crate::quaternion::QuaternionAlgebra;

const SEED: u64 = 0x5eed_0a7a_7a12;

/// Hilbert symbol on squarefree classes; replaceable for mutation testing.
pub type SymbolFn = dyn Fn(&BigInt, &BigInt, &Place) -> i8 + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Quick,
    Full,
}

impl FromStr for Depth {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Self::Quick),
            "full" => Ok(Self::Full),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub millis: u128,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {:<24} {}/{} cases",
            self.name,
            self.cases - self.failures,
            self.cases
        )?;
        if let Some(case) = &self.first_failure {
            write!(f, "  first failure: {case}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        writeln!(f, "{} suites, {} failed", self.suites.len(), failed)
    }
}

/// Counts cases and keeps the first failure.
struct Tally {
    name: &'static str,
    cases: u64,
    failures: u64,
    first_failure: Option<String>,
    start: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            millis: self.start.elapsed().as_millis(),
            first_failure: self.first_failure,
        }
    }
}

struct Sizes {
    norm_pairs: usize,
    reciprocity_bound: i64,
    padic_bound: i64,
    isotropy_bound: u64,
    random_polys: usize,
    specializations: usize,
    conic_bound: i64,
}

impl Sizes {
    fn of(depth: Depth) -> Self {
        match depth {
            Depth::Quick => Self {
                norm_pairs: 200,
                reciprocity_bound: 15,
                padic_bound: 7,
                isotropy_bound: 50,
                random_polys: 30,
                specializations: 10,
                conic_bound: 6,
            },
            Depth::Full => Self {
                norm_pairs: 1000,
                reciprocity_bound: 30,
                padic_bound: 15,
                isotropy_bound: 200,
                random_polys: 100,
                specializations: 25,
                conic_bound: 10,
            },
        }
    }
}

pub fn run(depth: Depth) -> Report {
    run_with(depth, &symbol_on_classes)
}

/// Runs every suite; the local-global suites use `symbol` in place of the
/// built-in Hilbert symbol.
pub fn run_with(depth: Depth, symbol: &SymbolFn) -> Report {
    let sizes = Sizes::of(depth);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let suites = vec![
        norm_multiplicativity(&mut rng, sizes.norm_pairs),
        hamilton(),
        reciprocity(sizes.reciprocity_bound, symbol),
        padic_agreement(sizes.padic_bound, symbol),
        isotropy_agreement(sizes.padic_bound, sizes.isotropy_bound, symbol),
        radical_identity(),
        coordinate_ring(&mut rng, sizes.random_polys),
        specialization(&mut rng, sizes.specializations),
        tower_consistency(),
        split_conics(sizes.conic_bound),
        round_trip(&mut rng, sizes.random_polys),
    ];
    Report { suites }
}

/// [`symbol_on_classes`] with the sign flipped at 2.
pub fn symbol_with_sign_error_at_two(sa: &BigInt, sb: &BigInt, place: &Place) -> i8 {
    let s = symbol_on_classes(sa, sb, place);
    match place {
        Place::Finite(p) if *p == BigInt::from(2) => -s,
        _ => s,
    }
}

/// Squarefree integers `s` with `1 <= |s| <= bound`.
pub fn squarefree_up_to(bound: i64) -> Vec<i64> {
    let positive: Vec<i64> = (1..=bound)
        .filter(|n| {
            (2..=*n)
                .take_while(|d| d * d <= *n)
                .all(|d| n % (d * d) != 0)
        })
        .collect();
    let mut out: Vec<i64> = positive.iter().map(|n| -n).rev().collect();
    out.extend(positive);
    out
}

pub fn random_rational(rng: &mut impl Rng, height: i64) -> Rational {
    Rational::new(
        rng.gen_range(-height..=height).into(),
        rng.gen_range(1..=height).into(),
    )
}

pub fn random_nonzero_rational(rng: &mut impl Rng, height: i64) -> Rational {
    loop {
        let r = random_rational(rng, height);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random polynomial with up to `max_terms` terms of total degree at most
/// `max_degree` in `vars`, and rational coefficients of height `height`.
pub fn random_poly(
    rng: &mut impl Rng,
    vars: &[Var],
    max_terms: usize,
    max_degree: u32,
    height: i64,
) -> MultiPoly {
    let n = rng.gen_range(0..=max_terms);
    MultiPoly::from_terms((0..n).map(|_| {
        let mut m = Monomial::one();
        let mut budget = rng.gen_range(0..=max_degree);
        for &v in vars {
            let e = rng.gen_range(0..=budget);
            m = m.with_exp(v, e);
            budget -= e;
        }
        (m, random_rational(rng, height))
    }))
}

fn norm_multiplicativity(rng: &mut impl Rng, pairs: usize) -> SuiteResult {
    let mut t = Tally::new("norm-multiplicativity");
    let algebras: Vec<QuaternionAlgebra> = (0..10)
        .map(|_| {
            QuaternionAlgebra::new(
                random_nonzero_rational(rng, 100),
                random_nonzero_rational(rng, 100),
            )
            .expect("nonzero")
        })
        .collect();
    for k in 0..pairs {
        let alg = &algebras[k % algebras.len()];
        let mut q = || {
            let c: [Rational; 4] = std::array::from_fn(|_| random_rational(rng, 100));
            let [x0, x, y, z] = c;
            alg.element(x0, x, y, z)
        };
        let (u, v) = (q(), q());
        let uv = u.mul(&v).expect("same algebra");
        t.check(uv.norm() == u.norm() * v.norm(), || format!("{u} * {v}"));
    }
    t.finish()
}

fn hamilton() -> SuiteResult {
    let mut t = Tally::new("hamilton");
    let alg = QuaternionAlgebra::new(int(-1), int(-1)).expect("nonzero");
    t.check(is_division(&alg).unwrap_or(false), || "is_division".into());
    let ram = ramified_places(&alg)
        .map(|r| r.to_string())
        .unwrap_or_default();
    t.check(ram == "{inf, 2}", || format!("ramified {ram}"));
    let form = TernaryForm::from_algebra(&alg);
    t.check(isotropy_oracle(&form, 50).is_none(), || {
        "isotropic at bound 50".into()
    });
    t.finish()
}

fn reciprocity(bound: i64, symbol: &SymbolFn) -> SuiteResult {
    let mut t = Tally::new("reciprocity");
    let budget = FactorBudget::default();
    let classes = squarefree_up_to(bound);
    for &a in &classes {
        for &b in &classes {
            let (sa, sb) = (BigInt::from(a), BigInt::from(b));
            let places = candidate_places(&sa, &sb, &budget).expect("small");
            let symbols: Vec<i8> = places.iter().map(|v| symbol(&sa, &sb, v)).collect();
            let product: i8 = symbols.iter().product();
            let ramified = symbols.iter().filter(|s| **s == -1).count();
            t.check(product == 1 && ramified % 2 == 0, || format!("({a}, {b})"));
        }
    }
    t.finish()
}

/// Primes at which `z^2 = a x^2 + b y^2` can fail to be locally solvable.
fn relevant_primes(a: i64, b: i64) -> Vec<BigInt> {
    let budget = FactorBudget::default();
    candidate_places(&a.into(), &b.into(), &budget)
        .expect("small")
        .into_iter()
        .filter_map(|v| match v {
            Place::Finite(p) => Some(p),
            Place::Real => None,
        })
        .collect()
}

fn padic_agreement(bound: i64, symbol: &SymbolFn) -> SuiteResult {
    let mut t = Tally::new("hilbert-vs-padic");
    let classes = squarefree_up_to(bound);
    for &a in &classes {
        for &b in &classes {
            for p in relevant_primes(a, b) {
                let expected = symbol(&a.into(), &b.into(), &Place::Finite(p.clone()));
                let got = padic_solvability_oracle(&int(a), &int(b), &p);
                t.check(got.as_ref() == Ok(&expected), || {
                    format!("({a}, {b}) at {p}: {got:?}")
                });
            }
        }
    }
    t.finish()
}

fn isotropy_agreement(class_bound: i64, search_bound: u64, symbol: &SymbolFn) -> SuiteResult {
    let mut t = Tally::new("division-vs-isotropy");
    let budget = FactorBudget::default();
    let classes = squarefree_up_to(class_bound);
    for &a in &classes {
        for &b in &classes {
            let (sa, sb) = (BigInt::from(a), BigInt::from(b));
            let division = candidate_places(&sa, &sb, &budget)
                .expect("small")
                .iter()
                .any(|v| symbol(&sa, &sb, v) == -1);
            let form = TernaryForm::new(int(a), int(b)).expect("nonzero");
            let zero = isotropy_oracle(&form, search_bound);
            // A zero proves the algebra split; a division verdict forbids zeros.
            t.check(!(division && zero.is_some()), || {
                format!("({a}, {b}) zero {zero:?}")
            });
        }
    }
    t.finish()
}

fn radical_identity() -> SuiteResult {
    let mut t = Tally::new("radical-identity");
    t.check(
        radical_parametrization_check(&Param::Symbolic, &Param::Symbolic),
        || "symbolic".into(),
    );
    let bump = MultiPoly::var(Var::U);
    t.check(
        !radical_parametrization_check_with(&Param::Symbolic, &Param::Symbolic, &bump),
        || "mutated identity accepted".into(),
    );
    t.finish()
}

fn coordinate_ring(rng: &mut impl Rng, count: usize) -> SuiteResult {
    let mut t = Tally::new("coordinate-ring");
    let forms: Vec<TernaryForm> = [(-1, -1), (2, 3), (-5, 7)]
        .iter()
        .map(|&(a, b)| TernaryForm::new(int(a), int(b)).expect("nonzero"))
        .collect();
    for form in &forms {
        t.check(
            coordinate_ring_normal_form(&form_polynomial(form), form).is_zero(),
            || format!("Q for ({}, {})", form.a(), form.b()),
        );
    }
    let xyz = [Var::X, Var::Y, Var::Z];
    for k in 0..count {
        let form = &forms[k % forms.len()];
        let f = random_poly(rng, &xyz, 6, 5, 20);
        let g = random_poly(rng, &xyz, 6, 5, 20);
        let nf = coordinate_ring_normal_form(&f, form);
        let idempotent = coordinate_ring_normal_form(&nf, form) == nf;
        let additive = coordinate_ring_normal_form(&(&f + &g), form)
            == &nf + &coordinate_ring_normal_form(&g, form);
        t.check(idempotent && additive && nf.degree_in(Var::Z) <= 1, || {
            format!("{f}")
        });
    }
    t.finish()
}

fn specialization(rng: &mut impl Rng, count: usize) -> SuiteResult {
    let mut t = Tally::new("specialization");
    let mut pairs = vec![
        (int(-1), int(-1)),
        (int(2), int(3)),
        (int(-1), Rational::new(3.into(), 2.into())),
    ];
    while pairs.len() < count {
        pairs.push((
            random_nonzero_rational(rng, 50),
            random_nonzero_rational(rng, 50),
        ));
    }
    for (a, b) in pairs {
        t.check(specialize_check(&a, &b).unwrap_or(false), || {
            format!("({a}, {b})")
        });
    }
    t.finish()
}

/// `(p, q)` pairs whose towers must contain the surface equations.
pub fn tower_suite() -> Vec<(UniPoly, UniPoly)> {
    let up = |c: &[i64]| UniPoly::from_ints(Var::U, c);
    let wp = |c: &[i64]| UniPoly::from_ints(Var::W, c);
    vec![
        (up(&[1, 1]), wp(&[1, 1])),
        (up(&[-2, 0, 1]), wp(&[1, 1])),
        (up(&[1, 0, 1]), wp(&[2, 0, 1])),
        (up(&[-1, -1, 1]), wp(&[2, 1])),
    ]
}

fn tower_consistency() -> SuiteResult {
    let mut t = Tally::new("tower-consistency");
    for (p, q) in tower_suite() {
        t.check(tower_consistency_check(&p, &q).unwrap_or(false), || {
            format!("{p}, {q}")
        });
    }
    t.finish()
}

fn split_conics(bound: i64) -> SuiteResult {
    let mut t = Tally::new("split-conics");
    let classes = squarefree_up_to(bound);
    for &a in &classes {
        for &b in &classes {
            let conic = Conic::new(int(a), int(b)).expect("nonzero");
            if is_division(&conic.algebra()).expect("small") {
                continue;
            }
            let ok = find_point(&conic, 10).and_then(|p0| {
                let par = parametrize_from_point(&conic, &p0)?;
                Ok(conic.contains_point(&p0) && par.defining_identity(&conic).is_zero())
            });
            t.check(ok == Ok(true), || format!("({a}, {b}): {ok:?}"));
        }
    }
    t.finish()
}

fn round_trip(rng: &mut impl Rng, count: usize) -> SuiteResult {
    let mut t = Tally::new("parse-print");
    let vars = [Var::X, Var::Y, Var::Z, Var::U, Var::W];
    for _ in 0..count {
        let p = random_poly(rng, &vars, 6, 6, 1000);
        let text = p.to_string();
        let back = parse_poly_any(&text);
        t.check(back.as_ref() == Ok(&p), || text.clone());
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_listing() {
        assert_eq!(
            squarefree_up_to(10),
            vec![-10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10]
        );
    }

    #[test]
    fn quick_suite_passes() {
        let report = run(Depth::Quick);
        assert!(report.passed(), "{report}");
        assert_eq!(report.suites.len(), 11);
    }

    #[test]
    fn sign_error_at_two_breaks_reciprocity() {
        let report = run_with(Depth::Quick, &symbol_with_sign_error_at_two);
        assert!(!report.suite("reciprocity").unwrap().passed());
        assert!(!report.suite("hilbert-vs-padic").unwrap().passed());
        assert!(report.suite("norm-multiplicativity").unwrap().passed());
    }
}
