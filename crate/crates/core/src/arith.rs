//! Exact integer helpers: factorization and binomial coefficients.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Sorted prime factorization `n = ∏ p_t^{α_t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking every invariant.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::invalid(format!("repeated prime {}", w[0].0)));
            }
        }
        for &(p, e) in &factors {
            if !is_prime(p) {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
            if e == 0 {
                return Err(Error::invalid("exponents must be positive"));
            }
        }
        let f = PrimeFactorization { factors };
        f.checked_value()?;
        Ok(f)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, e)| e)
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> u64 {
        self.checked_value().expect("factorization built from a u64")
    }

    fn checked_value(&self) -> Result<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            checked_pow(p, e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or_else(|| Error::overflow("factorization product"))
        })
    }

    /// Euler's totient.
    pub fn totient(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n ≥ 2` by trial division.
pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    if n < 2 {
        return Err(Error::invalid(format!("cannot factor {n}; need n >= 2")));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut push = |m: &mut u64, p: u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut m, 2);
    push(&mut m, 3);
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= m) {
        push(&mut m, p);
        push(&mut m, p + 2);
        p += 6;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(PrimeFactorization { factors })
}

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= n) {
        if n.is_multiple_of(p) || n.is_multiple_of(p + 2) {
            return false;
        }
        p += 6;
    }
    true
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Natural {
    if k < 0 || k as u64 > n {
        return Natural::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Natural::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `[C(n, 0), C(n, 1), …, C(n, kmax)]`, padded with zeros past `n`.
pub fn binomial_row(n: u64, kmax: usize) -> Vec<Natural> {
    let mut row = Vec::with_capacity(kmax + 1);
    let mut cur = Natural::one();
    row.push(cur.clone());
    for j in 1..=kmax as u64 {
        if j > n {
            cur = Natural::zero();
        } else {
            cur *= n - j + 1;
            cur /= j;
        }
        row.push(cur.clone());
    }
    row
}

/// `C(d+K+ℓ, i+1) − C(d+K, i+1)`, the sum of `C(d+K+t, i)` over `0 ≤ t < ℓ`.
pub fn constant_block_sum(d: u64, offset: u64, len: u64, i: u64) -> Natural {
    let base = d + offset;
    let k = i as i64 + 1;
    binomial(base + len, k) - binomial(base, k)
}
