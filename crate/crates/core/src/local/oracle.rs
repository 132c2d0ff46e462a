//! Independent checks for the Hilbert-symbol route.
//!
//! Neither oracle looks at square classes or Legendre symbols: one searches
//! for rational zeros of the ternary form directly, the other decides local
//! solvability by lifting solutions modulo growing powers of `p`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::is_prime;
use super::hilbert::TernaryForm;
use crate::arith::rational::{exact_sqrt, gcd3, valuation, Rational};
use crate::error::{Error, Result};

/// A nonnegative integer triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl Triple {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn height(&self) -> BigInt {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// The search order: height first, then `(x, y, z)` lexicographically.
    pub fn search_cmp(&self, other: &Triple) -> Ordering {
        (self.height(), &self.x, &self.y, &self.z).cmp(&(
            other.height(),
            &other.x,
            &other.y,
            &other.z,
        ))
    }
}

/// Integer coefficients `(p, q, r)` with `r z^2 = p x^2 + q y^2` having the
/// same zeros as `z^2 = a x^2 + b y^2`.
pub(crate) fn integral_diagonal(a: &Rational, b: &Rational) -> (BigInt, BigInt, BigInt) {
    let (n1, d1) = (a.numer(), a.denom());
    let (n2, d2) = (b.numer(), b.denom());
    (n1 * d2, n2 * d1, d1 * d2)
}

/// First zero of `r z^2 = p x^2 + q y^2` among nonnegative primitive triples of
/// height at most `bound`, in [`Triple::search_cmp`] order.
///
/// Every zero is a sign change away from a nonnegative one, so restricting
/// to the nonnegative octant loses nothing. For each `(x, y)` the only
/// candidate `z` is an exact square root, which keeps the scan quadratic.
pub(crate) fn first_diagonal_zero(
    p: &BigInt,
    q: &BigInt,
    r: &BigInt,
    bound: u64,
) -> Option<Triple> {
    if bound == 0 {
        return None;
    }
    let small = |v: &BigInt| v.abs() < BigInt::from(1u64 << 40);
    if bound < (1 << 20) && small(p) && small(q) && small(r) {
        let (p, q, r) = (p.to_i128()?, q.to_i128()?, r.to_i128()?);
        return search_parallel(bound, |lo, hi| search_small(p, q, r, bound, lo, hi));
    }
    search_parallel(bound, |lo, hi| search_big(p, q, r, bound, lo, hi))
}

fn search_parallel<F>(bound: u64, f: F) -> Option<Triple>
where
    F: Fn(u64, u64) -> Option<Triple> + Sync,
{
    let workers = if bound < 64 {
        1
    } else {
        std::thread::available_parallelism()
            .map_or(1, |n| n.get())
            .min(8) as u64
    };
    let chunk = (bound + 1).div_ceil(workers);
    let found: Vec<Option<Triple>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let f = &f;
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(bound + 1);
                scope.spawn(move || if lo < hi { f(lo, hi) } else { None })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker"))
            .collect()
    });
    // Minimum in the fixed order, independent of which worker finished first.
    found.into_iter().flatten().min_by(Triple::search_cmp)
}

fn search_small(p: i128, q: i128, r: i128, bound: u64, lo: u64, hi: u64) -> Option<Triple> {
    let mut best: Option<(u64, u64, u64, u64)> = None;
    let b = bound as i128;
    for x in lo..hi {
        let xi = x as i128;
        let px = p * xi * xi;
        for y in 0..=bound {
            let yi = y as i128;
            let rhs = px + q * yi * yi;
            if rhs % r != 0 {
                continue;
            }
            let z2 = rhs / r;
            if z2 < 0 {
                continue;
            }
            let z = (z2 as u128).sqrt() as i128;
            if z * z != z2 || z > b || (x == 0 && y == 0 && z == 0) {
                continue;
            }
            if x.gcd(&y).gcd(&(z as u64)) != 1 {
                continue;
            }
            let key = (x.max(y).max(z as u64), x, y, z as u64);
            if best.is_none_or(|k| key < k) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, x, y, z)| Triple::new(x, y, z))
}

fn search_big(p: &BigInt, q: &BigInt, r: &BigInt, bound: u64, lo: u64, hi: u64) -> Option<Triple> {
    let mut best: Option<Triple> = None;
    let b = BigInt::from(bound);
    for x in lo..hi {
        let xb = BigInt::from(x);
        let px = p * &xb * &xb;
        for y in 0..=bound {
            let yb = BigInt::from(y);
            let rhs = &px + q * &yb * &yb;
            let (z2, rem) = rhs.div_rem(r);
            if !rem.is_zero() {
                continue;
            }
            let Some(z) = exact_sqrt(&z2) else { continue };
            if z > b || (x == 0 && y == 0 && z.is_zero()) || !gcd3(&xb, &yb, &z).is_one() {
                continue;
            }
            let t = Triple::new(xb.clone(), yb, z);
            if best
                .as_ref()
                .is_none_or(|cur| t.search_cmp(cur) == Ordering::Less)
            {
                best = Some(t);
            }
        }
    }
    best
}

/// First primitive zero of `-a x^2 - b y^2 + ab z^2` with height at most `bound`.
pub fn isotropy_oracle(form: &TernaryForm, bound: u64) -> Option<Triple> {
    // Q = 0  <=>  ab z^2 = a x^2 + b y^2; clear denominators.
    let (n1, d1) = (form.a().numer(), form.a().denom());
    let (n2, d2) = (form.b().numer(), form.b().denom());
    first_diagonal_zero(&(n1 * d2), &(n2 * d1), &(n1 * n2), bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicBudget {
    /// Largest admissible modulus `p^K`; at most 2^42 so `i128` arithmetic stays exact.
    pub max_modulus: u128,
    /// Largest number of partial solutions kept at any precision level.
    pub max_states: usize,
}

impl Default for PadicBudget {
    fn default() -> Self {
        Self {
            max_modulus: 1 << 40,
            max_states: 1 << 22,
        }
    }
}

/// Decides whether `z^2 = a x^2 + b y^2` has a nontrivial `p`-adic solution.
pub fn padic_solvability_oracle(a: &Rational, b: &Rational, p: &BigInt) -> Result<i8> {
    padic_solvability_oracle_with(a, b, p, &PadicBudget::default())
}

/// Primitive solutions of `A x^2 + B y^2 - z^2 = 0` are lifted one power of
/// `p` at a time, with the first unit coordinate normalized to 1. The search
/// returns `-1` once no primitive solution survives modulo `p^k`, and `+1` as
/// soon as some solution `v` satisfies Hensel's condition
/// `v_p(f(v)) >= 2 * min_i v_p(df/dx_i (v)) + 1`. With `K = 2 v_p(4AB) + 3` any
/// primitive solution modulo `p^K` already meets that condition.
pub fn padic_solvability_oracle_with(
    a: &Rational,
    b: &Rational,
    p: &BigInt,
    budget: &PadicBudget,
) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::DegenerateAlgebra);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    // a = n/d has the square class of n*d.
    let big_a = a.numer() * a.denom();
    let big_b = b.numer() * b.denom();
    let e = valuation(&(BigInt::from(4) * &big_a * &big_b), p);
    let k_max = 2 * e + 3;
    let modulus = p.pow(k_max);
    let too_big = || Error::ModulusBudget(modulus.to_string());
    modulus
        .to_u128()
        .filter(|m| *m <= budget.max_modulus)
        .ok_or_else(too_big)?;
    let pp = p.to_u128().ok_or_else(too_big)?;
    let coef = |c: &BigInt| {
        c.mod_floor(&modulus)
            .to_i128()
            .expect("reduced below modulus")
    };
    let lifter = Lifter {
        a: coef(&big_a),
        b: coef(&big_b),
        p: pp as i128,
        k_max,
    };

    // Level 1: primitive triples modulo p, first unit coordinate scaled to 1.
    let pi = pp as i128;
    let mut level: Vec<[i128; 3]> = Vec::new();
    for s in 0..pi {
        for t in 0..pi {
            level.push([1, s, t]);
        }
        level.push([0, 1, s]);
    }
    level.push([0, 0, 1]);
    level.retain(|v| lifter.value(v).rem_euclid(pi) == 0);
    let mut pk = pi;
    for k in 1..=k_max {
        if level.is_empty() {
            return Ok(-1);
        }
        if level.iter().any(|v| lifter.hensel_certificate(v)) {
            return Ok(1);
        }
        if k == k_max {
            break;
        }
        let next_pk = pk * pi;
        let mut next = Vec::new();
        for v in &level {
            let pivot = v
                .iter()
                .position(|c| c.rem_euclid(pi) != 0)
                .expect("primitive");
            let free: Vec<usize> = (0..3).filter(|i| *i != pivot).collect();
            for s in 0..pi {
                for t in 0..pi {
                    let mut w = *v;
                    w[free[0]] += s * pk;
                    w[free[1]] += t * pk;
                    if lifter.value(&w).rem_euclid(next_pk) == 0 {
                        next.push(w);
                    }
                }
            }
            if next.len() > budget.max_states {
                return Err(too_big());
            }
        }
        level = next;
        pk = next_pk;
    }
    // Unreachable by the precision argument above.
    Err(Error::ModulusBudget(format!(
        "{modulus} (no certificate at full precision)"
    )))
}

struct Lifter {
    a: i128,
    b: i128,
    p: i128,
    k_max: u32,
}

impl Lifter {
    fn value(&self, v: &[i128; 3]) -> i128 {
        self.a * v[0] * v[0] + self.b * v[1] * v[1] - v[2] * v[2]
    }

    /// `v_p(n)`, capped at `k_max` (zero counts as `k_max`).
    fn val(&self, mut n: i128) -> u32 {
        let mut v = 0;
        while v < self.k_max && n != 0 && n % self.p == 0 {
            n /= self.p;
            v += 1;
        }
        if n == 0 {
            self.k_max
        } else {
            v
        }
    }

    fn hensel_certificate(&self, v: &[i128; 3]) -> bool {
        let grads = [2 * self.a * v[0], 2 * self.b * v[1], 2 * v[2]];
        let delta = grads
            .iter()
            .map(|g| self.val(*g))
            .min()
            .expect("three partials");
        let fv = self.val(self.value(v));
        2 * delta < self.k_max && fv > 2 * delta
    }
}
