//! Serde helpers: big integers are written as decimal strings, primes as
//! numbers when they fit in `u64`.

use num_bigint::{BigInt, BigUint};
use serde::Serializer;

pub fn big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn big_vec<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// A `u64` as a JSON number, anything larger as a string.
#[derive(serde::Serialize)]
#[serde(untagged)]
enum Uint {
    Small(u64),
    Large(String),
}

impl From<&BigUint> for Uint {
    fn from(x: &BigUint) -> Self {
        use num_traits::ToPrimitive;
        x.to_u64().map_or_else(|| Uint::Large(x.to_string()), Uint::Small)
    }
}

pub fn uint_vec<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(Uint::from))
}

pub fn poly<S: Serializer>(p: &crate::poly::IntPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::poly::format_poly(p, "T"))
}

pub fn prime_powers<S: Serializer>(xs: &[(BigUint, u32)], s: S) -> Result<S::Ok, S::Error> {
    #[derive(serde::Serialize)]
    struct Entry {
        p: Uint,
        e: u32,
    }
    s.collect_seq(xs.iter().map(|(p, e)| Entry { p: p.into(), e: *e }))
}
