//! Exact sparse multivariate polynomial arithmetic over `Q`, `Z` and `F_p`.

pub mod format;
pub mod gcd;
pub mod parse;
pub mod ring;
mod sparse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use format::format_poly;
pub use parse::{parse_poly, parse_poly_auto};
pub use ring::{GcdRing, Integers, PrimeField, Rationals, Ring};
pub use sparse::{Mono, Poly, MAX_VARS};

use crate::error::{Error, Result};

/// Polynomial with rational coefficients; homogeneity is a property checked
/// with [`Poly::is_homogeneous`], not a type-level guarantee.
pub type HomPoly = Poly<Rationals>;
/// Polynomial with integer coefficients.
pub type IntPoly = Poly<Integers>;
/// Polynomial over a prime field.
pub type FpPoly = Poly<PrimeField>;

/// Positive gcd of the integer coefficients; zero for the zero polynomial.
pub fn int_content(p: &IntPoly) -> BigInt {
    p.coeff_content().abs()
}

/// Largest absolute value of a coefficient; zero for the zero polynomial.
pub fn max_abs_coeff(p: &IntPoly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

pub fn to_rational(p: &IntPoly) -> HomPoly {
    p.map_ring(Rationals, |c| BigRational::from_integer(c.clone()))
}

/// Splits `p = scale * prim` with `prim` integral, of content one and with
/// positive graded-lex leading coefficient.
pub fn content_primitive(p: &HomPoly) -> Result<(BigRational, IntPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(c.numer());
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut scale = BigRational::new(num_gcd, den_lcm);
    let (_, lead) = p.grlex_leading().expect("nonzero");
    if lead.is_negative() {
        scale = -scale;
    }
    let prim = p.map_ring(Integers, |c| {
        let q = c / &scale;
        debug_assert!(q.is_integer());
        q.to_integer()
    });
    Ok((scale, prim))
}

/// Primitive integer form of an integer polynomial, with its (signed) scale.
pub fn int_primitive(p: &IntPoly) -> Result<(BigInt, IntPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut c = int_content(p);
    let (_, lead) = p.grlex_leading().expect("nonzero");
    if lead.is_negative() {
        c = -c;
    }
    let prim = p.div_exact(&Poly::constant(Integers, p.nvars(), c.clone())).expect("content divides");
    Ok((c, prim))
}

pub fn partial_derivative<R: Ring>(p: &Poly<R>, var: usize) -> Poly<R> {
    p.derivative(var)
}

pub fn as_univariate<R: Ring>(p: &Poly<R>, var: usize) -> Vec<Poly<R>> {
    p.as_univariate(var)
}

/// Gcd over `Q[T_0..T_n]`, returned primitive over `Z` with positive leading coefficient.
pub fn gcd_rational(f: &HomPoly, g: &HomPoly) -> Result<IntPoly> {
    let (_, pf) = content_primitive(f)?;
    let (_, pg) = content_primitive(g)?;
    let h = gcd::gcd(&pf, &pg);
    Ok(int_primitive(&h)?.1)
}

/// Squarefreeness over `Q` of an integer polynomial (its integer content is ignored).
pub fn is_squarefree_over_q(f: &IntPoly) -> bool {
    gcd::is_squarefree(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ip(s: &str, n: usize) -> IntPoly {
        parse_poly(s, n).unwrap().map_ring(Integers, |c| c.to_integer())
    }

    #[test]
    fn content_primitive_examples() {
        let (s, p) = content_primitive(&parse_poly("4*T0^2 + 6*T1^2", 2).unwrap()).unwrap();
        assert_eq!(s, q(2, 1));
        assert_eq!(p, ip("2*T0^2 + 3*T1^2", 2));

        let (s, p) = content_primitive(&parse_poly("T0/2 + T1/3", 2).unwrap()).unwrap();
        assert_eq!(s, q(1, 6));
        assert_eq!(p, ip("3*T0 + 2*T1", 2));

        let (s, p) = content_primitive(&parse_poly("T1^2 - 5*T0^2", 2).unwrap()).unwrap();
        assert_eq!(s, q(1, 1));
        assert_eq!(p, ip("T1^2 - 5*T0^2", 2));
    }

    #[test]
    fn content_primitive_sign_follows_grlex_leader() {
        // the grlex leader of -T1 + 2 T0 is T1
        let (s, p) = content_primitive(&parse_poly("-T1 + 2*T0", 2).unwrap()).unwrap();
        assert_eq!(s, q(-1, 1));
        assert_eq!(p, ip("T1 - 2*T0", 2));
    }

    #[test]
    fn zero_has_no_primitive_form() {
        assert_eq!(content_primitive(&parse_poly("0", 2).unwrap()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn derivative_examples() {
        let f = parse_poly("T1^2 - 5*T0^2", 2).unwrap();
        assert_eq!(partial_derivative(&f, 1), parse_poly("2*T1", 2).unwrap());
        assert!(partial_derivative(&parse_poly("T0^3", 2).unwrap(), 1).is_zero());
        assert_eq!(
            partial_derivative(&parse_poly("T0^2*T1", 2).unwrap(), 0),
            parse_poly("2*T0*T1", 2).unwrap()
        );
    }

    #[test]
    fn univariate_examples() {
        let f = parse_poly("T1^2 - 5*T0^2", 2).unwrap();
        let cs = as_univariate(&f, 1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], parse_poly("-5*T0^2", 2).unwrap());
        assert!(cs[1].is_zero());
        assert_eq!(cs[2], parse_poly("1", 2).unwrap());
        let g = parse_poly("7*T0^3", 2).unwrap();
        assert_eq!(as_univariate(&g, 1), vec![g.clone()]);
    }

    #[test]
    fn rational_gcd_examples() {
        let g = gcd_rational(
            &parse_poly("T0^2 - T1^2", 2).unwrap(),
            &parse_poly("T0/2 + T1/2", 2).unwrap(),
        )
        .unwrap();
        assert_eq!(g, ip("T0 + T1", 2));
        let one = gcd_rational(&parse_poly("T0", 2).unwrap(), &parse_poly("T1", 2).unwrap()).unwrap();
        assert_eq!(one, ip("1", 2));
    }

    #[test]
    fn squarefree_over_q() {
        assert!(is_squarefree_over_q(&ip("T1^2 - 5*T0^2", 2)));
        assert!(!is_squarefree_over_q(&ip("T0^2 + 2*T0*T1 + T1^2", 2)));
        assert!(!is_squarefree_over_q(&ip("T0^2*T1", 2)));
    }
}
