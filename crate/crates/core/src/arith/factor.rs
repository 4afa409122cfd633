use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Trial-division factorizer. Inputs whose cofactor after dividing out all
/// primes up to `bound` is neither 1 nor provably prime are refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorizer {
    pub bound: u64,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer { bound: DEFAULT_FACTOR_BOUND }
    }
}

impl Factorizer {
    pub fn new(bound: u64) -> Self {
        Factorizer { bound: bound.max(2) }
    }

    /// Prime factorization of |n| as (prime, exponent) pairs, primes ascending.
    pub fn factor(&self, n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
        if n.is_zero() {
            return Err(Error::invalid("cannot factor 0"));
        }
        let mut rest = n.clone();
        let mut out = Vec::new();
        let mut d: u64 = 2;
        while d <= self.bound {
            let dd = BigUint::from(d);
            if &dd * &dd > rest {
                break;
            }
            let mut e = 0;
            while (&rest % d).is_zero() {
                rest /= d;
                e += 1;
            }
            if e > 0 {
                out.push((dd, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if !rest.is_one() {
            // Every divisor <= min(bound, sqrt(rest)) has been removed.
            if BigUint::from(d) * BigUint::from(d) <= rest {
                return Err(Error::Unfactorable { value: n.to_string(), bound: self.bound });
            }
            out.push((rest, 1));
        }
        Ok(out)
    }

    /// Writes `n = c^2 * m` with `m` square-free, `sign(m) = sign(n)`, `c > 0`.
    pub fn squarefree_decompose(&self, n: &BigInt) -> Result<(BigUint, BigInt)> {
        if n.is_zero() {
            return Err(Error::invalid("squarefree_decompose of 0"));
        }
        let mut c = BigUint::one();
        let mut m = BigUint::one();
        for (prime, e) in self.factor(n.magnitude())? {
            c *= prime.pow(e / 2);
            if e % 2 == 1 {
                m *= prime;
            }
        }
        let sign = if n.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus };
        Ok((c, BigInt::from_biguint(sign, m)))
    }

    /// Prime divisors of a nonzero integer, with -1 prepended when negative.
    pub fn square_class_generators(&self, n: &BigInt) -> Result<Vec<BigInt>> {
        let mut out = Vec::new();
        if n.sign() == Sign::Minus {
            out.push(BigInt::from(-1));
        }
        for (prime, _) in self.factor(n.magnitude())? {
            out.push(BigInt::from(prime));
        }
        Ok(out)
    }
}

/// `squarefree_decompose` with the default trial-division bound.
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigUint, BigInt)> {
    Factorizer::default().squarefree_decompose(n)
}

pub(crate) fn small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
