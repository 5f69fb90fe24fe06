//! Coefficient rings used by the sparse polynomial type.
//!
//! Elements do not carry their ring; every operation goes through a ring
//! value. That keeps `F_p` elements as plain integers while letting the same
//! polynomial and gcd code run over `Z`, `Q` and `F_p`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a non-negative integer.
    fn embed_u64(&self, n: u64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A ring with exact division and a normalized gcd (a gcd domain).
pub trait GcdRing: Ring {
    /// `Some(a / b)` when `b` divides `a`, `None` otherwise (including `b = 0`).
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// Normalized gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// A unit `u` such that `a * u` is in normal form (positive over `Z`, one over a field).
    fn normal_unit(&self, a: &Self::Elem) -> Self::Elem;
}

/// The integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn embed_u64(&self, n: u64) -> BigInt {
        BigInt::from(n)
    }
}

impl GcdRing for Integers {
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
    fn normal_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn embed_u64(&self, n: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl GcdRing for Rationals {
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn gcd(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() && b.is_zero() {
            BigRational::zero()
        } else {
            BigRational::one()
        }
    }
    fn normal_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
///
/// Moduli up to `2^127` are supported; products of residues below `2^64`
/// use native 128-bit multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u128,
}

impl PrimeField {
    /// The caller guarantees `p` is prime; `modp::prime_field` checks it.
    pub fn new_unchecked(p: u128) -> Self {
        assert!((2..1u128 << 127).contains(&p), "modulus out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u128 {
        self.p
    }

    pub fn reduce_bigint(&self, a: &BigInt) -> u128 {
        let p = BigInt::from(self.p);
        let r = a.mod_floor(&p);
        u128::try_from(r).expect("residue fits")
    }

    pub fn inv(&self, a: u128) -> Option<u128> {
        if a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(pow_mod(a, self.p - 2, self.p))
    }
}

pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    // double-and-add; m < 2^127 so the sums cannot overflow
    let mut a = a % m;
    let mut b = b % m;
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc += a;
            if acc >= m {
                acc -= m;
            }
        }
        a <<= 1;
        if a >= m {
            a -= m;
        }
        b >>= 1;
    }
    acc
}

pub(crate) fn pow_mod(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

impl Ring for PrimeField {
    type Elem = u128;

    fn zero(&self) -> u128 {
        0
    }
    fn one(&self) -> u128 {
        1
    }
    fn is_zero(&self, a: &u128) -> bool {
        *a == 0
    }
    fn add(&self, a: &u128, b: &u128) -> u128 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u128, b: &u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }
    fn mul(&self, a: &u128, b: &u128) -> u128 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u128) -> u128 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn embed_u64(&self, n: u64) -> u128 {
        n as u128 % self.p
    }
}

impl GcdRing for PrimeField {
    fn div_exact(&self, a: &u128, b: &u128) -> Option<u128> {
        self.inv(*b).map(|bi| self.mul(a, &bi))
    }
    fn gcd(&self, a: &u128, b: &u128) -> u128 {
        if *a == 0 && *b == 0 {
            0
        } else {
            1
        }
    }
    fn normal_unit(&self, a: &u128) -> u128 {
        self.inv(*a).unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_modulus_arithmetic() {
        // 2^89 - 1 is a Mersenne prime
        let p = (1u128 << 89) - 1;
        let f = PrimeField::new_unchecked(p);
        let a = p - 3;
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
        assert_eq!(mul_mod(p - 1, p - 1, p), 1);
    }

    #[test]
    fn integer_normal_unit() {
        let z = Integers;
        assert_eq!(z.normal_unit(&BigInt::from(-4)), BigInt::from(-1));
        assert_eq!(z.div_exact(&BigInt::from(12), &BigInt::from(5)), None);
        assert_eq!(z.div_exact(&BigInt::from(-12), &BigInt::from(4)), Some(BigInt::from(-3)));
    }
}
