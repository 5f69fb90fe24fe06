//! Thin wrappers over `num-prime`: sieving, primality and budgeted factorization.

use num_bigint::{BigInt, BigUint};
use num_prime::nt_funcs;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    nt_funcs::primes(limit).into_iter().filter(|&p| p <= limit).collect()
}

pub fn is_prime(n: u128) -> bool {
    match n.to_u64() {
        Some(small) => nt_funcs::is_prime64(small),
        None => nt_funcs::is_prime(&n, None).probably(),
    }
}

pub fn is_prime_big(n: &BigUint) -> bool {
    match n.to_u128() {
        Some(small) => is_prime(small),
        None => nt_funcs::is_prime(n, None).probably(),
    }
}

/// Prime factorization of `|n|`. Parts the default effort could not split
/// are kept in `cofactors`; they are composite and their primes are unknown.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "crate::json::prime_powers")]
    pub primes: Vec<(BigUint, u32)>,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub cofactors: Vec<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactors.is_empty()
    }

    pub fn prime_list(&self) -> Vec<BigUint> {
        self.primes.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Product of the distinct primes, times every unfactored cofactor.
    /// Always an upper bound for the radical.
    pub fn radical_upper(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, _) in &self.primes {
            acc *= p;
        }
        for c in &self.cofactors {
            acc *= c;
        }
        acc
    }

    /// Whether `p` divides the factored number.
    pub fn divisible_by(&self, p: &BigUint) -> bool {
        self.primes.iter().any(|(q, _)| q == p) || self.cofactors.iter().any(|c| (c % p).is_zero())
    }
}

pub fn factor(n: &BigInt) -> Factorization {
    let n = n.abs().to_biguint().expect("nonnegative");
    if n <= BigUint::one() {
        return Factorization::default();
    }
    if let Some(small) = n.to_u128() {
        let map = nt_funcs::factorize128(small);
        return Factorization {
            primes: map.into_iter().map(|(p, e)| (BigUint::from(p), e as u32)).collect(),
            cofactors: Vec::new(),
        };
    }
    let (map, rest) = nt_funcs::factors(n, None);
    Factorization {
        primes: map.into_iter().map(|(p, e)| (p, e as u32)).collect(),
        cofactors: rest.unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(100).len(), 25);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(1) && !is_prime(91));
        assert!(is_prime(170141183460469231731687303715884105727)); // 2^127 - 1
        assert!(!is_prime(340282366920938463463374607431768211455));
    }

    #[test]
    fn factors_small_and_large() {
        let f = factor(&BigInt::from(-20));
        assert_eq!(f.primes, vec![(BigUint::from(2u32), 2), (BigUint::from(5u32), 1)]);
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64) * BigInt::from(u64::MAX - 58);
        let f = factor(&big);
        assert!(f.is_complete());
        assert_eq!(f.primes.len(), 3);
        assert!(factor(&BigInt::from(1)).primes.is_empty());
    }
}
