//! Multivariate gcd over a gcd domain by recursive content/primitive-part
//! splitting and the subresultant polynomial remainder sequence, one
//! variable at a time. Shared by the integer and `F_p` code paths.

use super::ring::GcdRing;
use super::sparse::Poly;

/// Normalized gcd of `f` and `g` (`gcd(0, 0) = 0`).
pub fn gcd<R: GcdRing>(f: &Poly<R>, g: &Poly<R>) -> Poly<R> {
    if f.is_zero() {
        return g.unit_normalize();
    }
    if g.is_zero() {
        return f.unit_normalize();
    }
    let ring = f.ring().clone();
    let n = f.nvars();
    let top = (0..n).rev().find(|&v| f.degree_in(v) > 0 || g.degree_in(v) > 0);
    let Some(v) = top else {
        let a = f.constant_value().expect("constant");
        let b = g.constant_value().expect("constant");
        let c = ring.gcd(&a, &b);
        return Poly::constant(ring, n, c);
    };
    if f.degree_in(v) == 0 {
        return gcd(f, &content_in(g, v));
    }
    if g.degree_in(v) == 0 {
        return gcd(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    let c = gcd(&cf, &cg);
    let h = primitive_prs_gcd(&pf, &pg, v);
    c.mul(&h).unit_normalize()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `T_v`.
pub fn content_in<R: GcdRing>(f: &Poly<R>, v: usize) -> Poly<R> {
    let mut acc = Poly::zero(f.ring().clone(), f.nvars());
    for t in f.as_univariate(v) {
        if t.is_zero() {
            continue;
        }
        acc = gcd(&acc, &t);
        if acc.is_constant() && f.ring().is_one(&acc.constant_value().unwrap()) {
            break;
        }
    }
    acc
}

/// Primitive part of `f` with respect to `T_v`, unit-normalized.
pub fn primitive_part_in<R: GcdRing>(f: &Poly<R>, v: usize) -> Poly<R> {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, v);
    f.div_exact(&c).expect("content divides").unit_normalize()
}

type Dense<R> = Vec<Poly<R>>;

fn trim<R: GcdRing>(a: &mut Dense<R>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// Pseudo-remainder `prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b` in `D[x]`.
fn prem<R: GcdRing>(a: &Dense<R>, b: &Dense<R>) -> Dense<R> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.clone();
    let mut e = (a.len() - b.len() + 1) as u32;
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&lr.mul(bj));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = pow(lcb, e);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn pow<R: GcdRing>(p: &Poly<R>, e: u32) -> Poly<R> {
    p.pow(e)
}

fn div_all<R: GcdRing>(a: &mut Dense<R>, d: &Poly<R>) {
    for c in a.iter_mut() {
        *c = c.div_exact(d).expect("subresultant division is exact");
    }
}

/// Gcd of two polynomials that are primitive in `T_v` and of positive
/// degree in it; the result is primitive in `T_v`.
fn primitive_prs_gcd<R: GcdRing>(f: &Poly<R>, g: &Poly<R>, v: usize) -> Poly<R> {
    let ring = f.ring().clone();
    let n = f.nvars();
    let mut a = f.as_univariate(v);
    let mut b = g.as_univariate(v);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut gg = Poly::one(ring.clone(), n);
    let mut h = Poly::one(ring.clone(), n);
    loop {
        let delta = (a.len() - b.len()) as u32;
        let mut r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return Poly::one(ring, n);
        }
        let divisor = gg.mul(&pow(&h, delta));
        div_all(&mut r, &divisor);
        a = std::mem::replace(&mut b, r);
        gg = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            pow(&gg, delta)
                .div_exact(&pow(&h, delta - 1))
                .expect("subresultant division is exact")
        };
    }
    let res = Poly::from_univariate(ring, n, v, &b);
    primitive_part_in(&res, v)
}

/// Whether `f` has no repeated factor of positive degree, tested as
/// `gcd(f, ∂f/∂T_0, ..., ∂f/∂T_n)` being a constant. The gcd is accumulated
/// and the scan stops early once it is constant.
pub fn is_squarefree<R: GcdRing>(f: &Poly<R>) -> bool {
    assert!(!f.is_zero(), "squarefreeness of zero is undefined");
    let mut g = f.clone();
    for v in f.support_vars() {
        g = gcd(&g, &f.derivative(v));
        if g.total_degree() == Some(0) {
            return true;
        }
    }
    g.total_degree() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;
    use crate::poly::ring::{Integers, PrimeField};
    use crate::poly::IntPoly;

    fn zp(s: &str, n: usize) -> IntPoly {
        crate::poly::content_primitive(&parse_poly(s, n).unwrap()).unwrap().1
    }

    fn zraw(s: &str, n: usize) -> IntPoly {
        let q = parse_poly(s, n).unwrap();
        q.map_ring(Integers, |c| c.to_integer())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(gcd(&zp("T0^2 - T1^2", 2), &zp("T0 + T1", 2)), zp("T0 + T1", 2));
    }

    #[test]
    fn coprime_monomials() {
        assert_eq!(gcd(&zp("T0", 2), &zp("T1", 2)), zp("1", 2));
    }

    #[test]
    fn planted_square_factor() {
        let f = zp("(T0 + 2*T1)^2*T1", 2);
        let g = zp("(T0 + 2*T1)*T0", 2);
        let h = gcd(&f, &g);
        assert_eq!(h, zp("T0 + 2*T1", 2));
        assert!(f.div_exact(&h).is_some() && g.div_exact(&h).is_some());
    }

    #[test]
    fn integer_content_is_kept() {
        assert_eq!(gcd(&zraw("4*T0 + 4*T1", 2), &zraw("6*T0 + 6*T1", 2)), zraw("2*T0 + 2*T1", 2));
    }

    #[test]
    fn three_variable_common_factor() {
        let f = zp("(T0*T1 - T2^2 + 3*T0*T2)*(T1 + T2)", 3);
        let g = zp("(T0*T1 - T2^2 + 3*T0*T2)*(T0 - 5*T1)^2", 3);
        assert_eq!(gcd(&f, &g), zp("T0*T1 - T2^2 + 3*T0*T2", 3));
    }

    #[test]
    fn squarefree_over_small_fields() {
        let f2 = PrimeField::new_unchecked(2);
        let f = zraw("T0^2 + 2*T0*T1 + T1^2", 2);
        let fp = f.map_ring(f2, |c| f2.reduce_bigint(c));
        assert!(!is_squarefree(&fp));
        let f3 = PrimeField::new_unchecked(3);
        let g = zraw("T1^2 + T0^2", 2).map_ring(f3, |c| f3.reduce_bigint(c));
        assert!(is_squarefree(&g));
    }

    #[test]
    fn frobenius_power_is_not_squarefree() {
        // T0^3 + T1^3 = (T0 + T1)^3 over F_3; every partial vanishes
        let f3 = PrimeField::new_unchecked(3);
        let f = zraw("T0^3 + T1^3", 2).map_ring(f3, |c| f3.reduce_bigint(c));
        assert!(f.derivative(0).is_zero() && f.derivative(1).is_zero());
        assert!(!is_squarefree(&f));
    }
}
