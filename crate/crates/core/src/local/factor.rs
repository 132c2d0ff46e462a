//! Integer factorization: trial division, then Pollard–Brent rho, both bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Largest trial divisor.
    pub trial_limit: u64,
    /// Total rho iterations across all splits.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            trial_limit: 1 << 16,
            rho_iterations: 1 << 22,
        }
    }
}

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first 13 prime bases; deterministic below 3.3e24.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
pub fn factorize(n: &BigInt, budget: &FactorBudget) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, out: &mut Vec<(BigInt, u32)>| match out.iter_mut().find(|(q, _)| *q == p)
    {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };

    let mut d = 2u64;
    while d <= budget.trial_limit {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        while (&m % &bd).is_zero() {
            m /= &bd;
            push(bd.clone(), &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }

    let mut iterations = 0u64;
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        let bound = BigInt::from(budget.trial_limit);
        if is_prime(&c) || &bound * &bound >= c {
            // Below trial_limit^2 every cofactor left over is prime.
            push(c, &mut out);
            continue;
        }
        let f = pollard_brent(&c, budget.rho_iterations, &mut iterations)
            .ok_or_else(|| Error::FactorBudget(n.to_string()))?;
        stack.push(&c / &f);
        stack.push(f);
    }
    out.sort();
    Ok(out)
}

fn pollard_brent(n: &BigInt, limit: u64, used: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                *used += steps;
                if *used > limit {
                    return None;
                }
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        if c.to_u32().unwrap_or(u32::MAX) > 32 {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn primality() {
        let primes: Vec<i64> = (0..100).filter(|n| is_prime(&b(*n))).collect();
        assert_eq!(
            primes,
            vec![
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                83, 89, 97
            ]
        );
        assert!(is_prime(&b(1_000_000_007)));
        assert!(!is_prime(&b(3_215_031_751))); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn small_factorizations() {
        let budget = FactorBudget::default();
        assert_eq!(
            factorize(&b(-360), &budget).unwrap(),
            vec![(b(2), 3), (b(3), 2), (b(5), 1)]
        );
        assert_eq!(factorize(&b(1), &budget).unwrap(), vec![]);
        assert_eq!(factorize(&b(0), &budget), Err(Error::ZeroSquareClass));
    }

    #[test]
    fn rho_splits_semiprimes() {
        let tiny = FactorBudget {
            trial_limit: 100,
            rho_iterations: 1 << 20,
        };
        let n = b(1_000_003) * b(999_983);
        assert_eq!(
            factorize(&n, &tiny).unwrap(),
            vec![(b(999_983), 1), (b(1_000_003), 1)]
        );
    }

    #[test]
    fn budget_is_enforced() {
        let starved = FactorBudget {
            trial_limit: 10,
            rho_iterations: 10,
        };
        let n = b(1_000_000_007) * b(998_244_353);
        assert!(matches!(
            factorize(&n, &starved),
            Err(Error::FactorBudget(_))
        ));
    }
}
