//! Reduction modulo a prime and squarefreeness over `F_p`; the brute-force
//! oracle that every certificate is checked against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{content_primitive, gcd, int_content, FpPoly, HomPoly, IntPoly, PrimeField, Ring};
use crate::primes::{is_prime, primes_up_to};

pub fn reduce_mod_p(f: &IntPoly, p: u128) -> Result<FpPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c = int_content(f);
    if c != 1.into() {
        return Err(Error::NotPrimitive(c.to_string()));
    }
    if !is_prime(p) || p >= 1 << 127 {
        return Err(Error::NotPrime(p.to_string()));
    }
    let field = PrimeField::new_unchecked(p);
    Ok(f.map_ring(field, |c| field.reduce_bigint(c)))
}

/// True iff `f` has no repeated factor over `F_p`: `gcd(f, ∂f/∂T_i ...)` is constant.
pub fn squarefree_mod_p(f: &FpPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Ok(gcd::is_squarefree(f));
    }
    if squarefree_on_some_line(f) {
        return Ok(true);
    }
    Ok(match dehomogenize(f) {
        Some(g) => gcd::is_squarefree(&g),
        None => false,
    })
}

const LINE_TRIES: usize = 4;

/// Sufficient test for a form `F` of degree `δ`: if `G(s, t) = F(s a + t b)`
/// is a squarefree binary form for some `a, b`, then so is `F`, since a
/// square factor `Q²` of `F` restricts to the square of a nonconstant
/// binary form. `G` is squarefree iff `g(t) = G(1, t)` has degree at least
/// `δ - 1` and `gcd(g, g') = 1`.
fn squarefree_on_some_line(f: &FpPoly) -> bool {
    let field = *f.ring();
    let p = field.modulus();
    let delta = f.total_degree().expect("nonzero") as usize;
    if delta == 0 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
    let n = f.nvars();
    (0..LINE_TRIES).any(|_| {
        let a: Vec<u128> = (0..n).map(|_| rng.random::<u128>() % p).collect();
        let b: Vec<u128> = (0..n).map(|_| rng.random::<u128>() % p).collect();
        let g = restrict_to_line(f, &a, &b);
        g.len() >= delta && uni_is_squarefree(&field, &g)
    })
}

/// Dense coefficients of `f(a + t b)`, trailing zeros trimmed.
fn restrict_to_line(f: &FpPoly, a: &[u128], b: &[u128]) -> Vec<u128> {
    let field = *f.ring();
    let degs = f.degrees();
    let powers: Vec<Vec<Vec<u128>>> = (0..f.nvars())
        .map(|i| {
            let mut out = vec![vec![1u128]];
            for _ in 0..degs[i] {
                out.push(uni_mul(&field, out.last().expect("nonempty"), &[a[i], b[i]]));
            }
            out
        })
        .collect();
    let mut acc = vec![0u128; f.total_degree().unwrap_or(0) as usize + 1];
    for (m, c) in f.terms() {
        let mut term = vec![*c];
        for (i, pw) in powers.iter().enumerate() {
            let e = m.exp(i) as usize;
            if e > 0 {
                term = uni_mul(&field, &term, &pw[e]);
            }
        }
        for (k, t) in term.iter().enumerate() {
            acc[k] = field.add(&acc[k], t);
        }
    }
    uni_trim(acc)
}

fn uni_trim(mut a: Vec<u128>) -> Vec<u128> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn uni_mul(field: &PrimeField, a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}

fn uni_rem(field: &PrimeField, a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut r = a.to_vec();
    let lead_inv = field.inv(*b.last().expect("nonzero divisor")).expect("unit");
    while r.len() >= b.len() {
        let q = field.mul(r.last().expect("nonempty"), &lead_inv);
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = field.sub(&r[shift + j], &field.mul(&q, y));
        }
        r = uni_trim(r);
    }
    r
}

fn uni_is_squarefree(field: &PrimeField, g: &[u128]) -> bool {
    let dg: Vec<u128> = g.iter().enumerate().skip(1).map(|(k, c)| field.mul(c, &field.embed_u64(k as u64))).collect();
    let (mut x, mut y) = (g.to_vec(), uni_trim(dg));
    if y.is_empty() {
        return x.len() <= 1;
    }
    while !y.is_empty() {
        let r = uni_rem(field, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    x.len() == 1
}

/// For a form `f = T_k^e g` with `T_k ∤ g`, returns `g(T_k = 1)`, or `None`
/// when `e >= 2`. `k` is a variable carrying a pure power when there is one.
/// Factors of `g` and of its dehomogenization correspond one to one, so
/// `f` is squarefree iff the result is.
fn dehomogenize(f: &FpPoly) -> Option<FpPoly> {
    let support = f.support_vars();
    let Some(&last) = support.last() else {
        return Some(f.clone());
    };
    let d = f.total_degree().expect("nonzero");
    let k = support.iter().copied().find(|&v| f.terms().iter().any(|(m, _)| m.exp(v) == d)).unwrap_or(last);
    let e = f.terms().iter().map(|(m, _)| m.exp(k)).min().expect("nonzero");
    if e >= 2 {
        return None;
    }
    Some(FpPoly::from_terms(*f.ring(), f.nvars(), f.terms().iter().map(|(m, c)| (m.with_exp(k, 0), *c))))
}

/// Whether the reduction of primitive `f` at `p` has a square factor.
pub fn is_bad_prime(f: &IntPoly, p: u128) -> Result<bool> {
    Ok(!squarefree_mod_p(&reduce_mod_p(f, p)?)?)
}

/// The primes among `candidates` at which primitive `f` acquires a square
/// factor, in the input order.
pub fn bad_primes_among(f: &IntPoly, candidates: &[u128]) -> Result<Vec<u128>> {
    let flags: Vec<Result<bool>> = candidates.par_iter().map(|&p| is_bad_prime(f, p)).collect();
    let mut out = Vec::new();
    for (&p, flag) in candidates.iter().zip(flags) {
        if flag? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Checks that `f` is a nonzero homogeneous form, squarefree over `Q`, and
/// returns its primitive integer form.
pub fn reduced_hypersurface(f: &HomPoly) -> Result<IntPoly> {
    let (_, prim) = content_primitive(f)?;
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !gcd::is_squarefree(&prim) {
        return Err(Error::SquareFactor);
    }
    Ok(prim)
}

/// All primes `p <= p_max` at which the reduction of `f` is not squarefree.
pub fn oracle_bad_primes(f: &HomPoly, p_max: u64) -> Result<Vec<u64>> {
    if p_max < 2 {
        return Err(Error::Range("p_max must be at least 2".into()));
    }
    let prim = reduced_hypersurface(f)?;
    let primes: Vec<u128> = primes_up_to(p_max).into_iter().map(u128::from).collect();
    Ok(bad_primes_among(&prim, &primes)?.into_iter().map(|p| p as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Integers, Poly};

    fn z(s: &str, n: usize) -> IntPoly {
        parse_poly(s, n).unwrap().map_ring(Integers, |c| c.to_integer())
    }

    fn fp(s: &str, n: usize, p: u128) -> FpPoly {
        let field = PrimeField::new_unchecked(p);
        z(s, n).map_ring(field, |c| field.reduce_bigint(c))
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_p(&z("T1^2 - 5*T0^2", 2), 5).unwrap(), fp("T1^2", 2, 5));
        assert_eq!(reduce_mod_p(&z("T1^2 - 5*T0^2", 2), 3).unwrap(), fp("T1^2 + T0^2", 2, 3));
        assert_eq!(reduce_mod_p(&z("6*T0 + T1", 2), 2).unwrap(), fp("T1", 2, 2));
        assert_eq!(reduce_mod_p(&z("2*T0 + 4*T1", 2), 3), Err(Error::NotPrimitive("2".into())));
        assert_eq!(reduce_mod_p(&z("T0", 2), 9), Err(Error::NotPrime("9".into())));
    }

    #[test]
    fn squarefree_examples() {
        assert!(!squarefree_mod_p(&fp("T1^2", 2, 5)).unwrap());
        assert!(squarefree_mod_p(&fp("T1^2 + T0^2", 2, 3)).unwrap());
        assert!(!squarefree_mod_p(&fp("T0^2 + 2*T0*T1 + T1^2", 2, 2)).unwrap());
        let zero = Poly::zero(PrimeField::new_unchecked(3), 2);
        assert_eq!(squarefree_mod_p(&zero), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn frobenius_edge() {
        // every exponent a multiple of p, all partials vanish
        assert!(!squarefree_mod_p(&fp("T0^5 + 3*T1^5 + T0^10", 2, 5)).unwrap());
        assert!(squarefree_mod_p(&fp("4", 2, 5)).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let q = |s| parse_poly(s, 2).unwrap();
        assert_eq!(oracle_bad_primes(&q("T1^2 - 5*T0^2"), 100).unwrap(), vec![2, 5]);
        assert_eq!(oracle_bad_primes(&q("T0 + T1"), 100).unwrap(), Vec::<u64>::new());
        assert_eq!(oracle_bad_primes(&q("T0^2 - T1^2"), 10).unwrap(), vec![2]);
        assert_eq!(oracle_bad_primes(&q("(T0 + T1)^2"), 10), Err(Error::SquareFactor));
        assert_eq!(oracle_bad_primes(&q("T0 + 1"), 10), Err(Error::NotHomogeneous));
    }

    /// Squarefreeness of a dense univariate polynomial over `F_p` by trying
    /// every monic `q` of degree `1..=deg/2` and testing `q^2 | f`.
    fn trial_squarefree(f: &[u64], p: u64) -> bool {
        fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
            let mut r = a.to_vec();
            let db = b.len() - 1;
            let inv = (1..p).find(|x| x * b[db] % p == 1).unwrap();
            while r.len() > db {
                let lead = *r.last().unwrap() * inv % p;
                let shift = r.len() - 1 - db;
                for (j, &bj) in b.iter().enumerate() {
                    r[shift + j] = (r[shift + j] + p * p - lead * bj % p) % p;
                }
                r.pop();
            }
            while r.last() == Some(&0) {
                r.pop();
            }
            r
        }
        fn square(q: &[u64], p: u64) -> Vec<u64> {
            let mut out = vec![0; 2 * q.len() - 1];
            for (i, a) in q.iter().enumerate() {
                for (j, b) in q.iter().enumerate() {
                    out[i + j] = (out[i + j] + a * b) % p;
                }
            }
            out
        }
        let deg = f.len() - 1;
        for k in 1..=deg / 2 {
            for code in 0..p.pow(k as u32) {
                let mut q: Vec<u64> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
                q.push(1);
                if rem(f, &square(&q, p), p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn agrees_with_trial_division_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &p in &[2u64, 3, 5, 7] {
            let field = PrimeField::new_unchecked(p as u128);
            for _ in 0..150 {
                let deg = rng.random_range(1..=6usize);
                let mut dense: Vec<u64> = (0..=deg).map(|_| rng.random_range(0..p)).collect();
                dense[deg] = rng.random_range(1..p);
                let poly = Poly::from_exps(
                    field,
                    1,
                    dense.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (vec![i as u32], *c as u128)),
                );
                assert_eq!(squarefree_mod_p(&poly).unwrap(), trial_squarefree(&dense, p), "{dense:?} mod {p}");
            }
        }
    }

    #[test]
    fn binary_forms_agree_with_trial_division_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for &p in &[2u64, 3, 5, 7] {
            let field = PrimeField::new_unchecked(p as u128);
            for _ in 0..150 {
                let deg = rng.random_range(1..=6u32);
                let dense: Vec<u64> = (0..=deg).map(|_| rng.random_range(0..p)).collect();
                if dense.iter().all(|&c| c == 0) {
                    continue;
                }
                let form = Poly::from_exps(
                    field,
                    2,
                    dense.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (vec![i as u32, deg - i as u32], *c as u128)),
                );
                let mut g = dense.clone();
                while g.last() == Some(&0) {
                    g.pop();
                }
                let expected = g.len() >= deg as usize && trial_squarefree(&g, p);
                assert_eq!(squarefree_mod_p(&form).unwrap(), expected, "{dense:?} mod {p}");
            }
        }
    }

    #[test]
    fn fast_path_agrees_with_gcd_on_ternary_forms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for &p in &[2u128, 3, 5, 101, 65537] {
            let field = PrimeField::new_unchecked(p);
            for _ in 0..40 {
                let mut random_form = |deg: Option<u32>| {
                    let deg = deg.unwrap_or_else(|| rng.random_range(1..=4));
                    Poly::from_exps(
                        field,
                        3,
                        (0..5).map(|_| {
                            let a = rng.random_range(0..=deg);
                            let b = rng.random_range(0..=deg - a);
                            (vec![a, b, deg - a - b], rng.random_range(1..p))
                        }),
                    )
                };
                let f = random_form(None);
                let q = random_form(Some(1));
                for g in [f.clone(), f.mul(&q).mul(&q)] {
                    if g.is_zero() {
                        continue;
                    }
                    assert_eq!(squarefree_mod_p(&g).unwrap(), gcd::is_squarefree(&g), "{g:?}");
                }
            }
        }
    }
}
