//! Sylvester-type `(m, n)`-resultants over integer polynomial coefficient
//! rings, evaluated by fraction-free (Bareiss) elimination.
//!
//! Declared degrees may exceed the true degrees; the padded matrix then has
//! leading zero columns and the resultant can be the zero ideal by
//! construction. Over `Z[T]` the resultant ideal is represented by the one
//! determinant; its integer content names the primes at which it vanishes.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{content_primitive, gcd, int_content, HomPoly, IntPoly, Integers, Poly};

/// Coefficient lists of `f` and `g` in the eliminated variable, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct SylvesterSpec {
    pub f_coeffs: Vec<IntPoly>,
    pub g_coeffs: Vec<IntPoly>,
    pub m: usize,
    pub n: usize,
}

impl SylvesterSpec {
    /// Zero-pads the coefficient lists to the declared degrees.
    pub fn new(f: &IntPoly, g: &IntPoly, var: usize, m: u32, n: u32) -> Result<Self> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if m == 0 && n == 0 {
            return Err(Error::EmptySylvester);
        }
        for (p, declared) in [(f, m), (g, n)] {
            let actual = p.degree_in(var);
            if actual > declared {
                return Err(Error::DegreeBound { declared, actual });
            }
        }
        let pad = |p: &IntPoly, d: u32| {
            let mut cs = p.as_univariate(var);
            cs.resize(d as usize + 1, Poly::zero(Integers, p.nvars()));
            cs
        };
        Ok(SylvesterSpec { f_coeffs: pad(f, m), g_coeffs: pad(g, n), m: m as usize, n: n as usize })
    }

    /// The `(m+n) x (m+n)` matrix: `n` shifted rows `[t_m .. t_0]` followed by
    /// `m` shifted rows `[s_n .. s_0]`.
    pub fn matrix(&self) -> Vec<Vec<IntPoly>> {
        let size = self.m + self.n;
        let nvars = self.f_coeffs[0].nvars();
        let zero = Poly::zero(Integers, nvars);
        let mut rows = Vec::with_capacity(size);
        for (coeffs, count) in [(&self.f_coeffs, self.n), (&self.g_coeffs, self.m)] {
            for shift in 0..count {
                let mut row = vec![zero.clone(); size];
                for (k, c) in coeffs.iter().rev().enumerate() {
                    row[shift + k] = c.clone();
                }
                rows.push(row);
            }
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultantValue {
    pub det: IntPoly,
    /// Gcd of the determinant's coefficients; zero iff the determinant is zero.
    pub content: BigInt,
    pub is_zero_ideal: bool,
}

impl ResultantValue {
    fn from_det(det: IntPoly) -> Self {
        let content = int_content(&det);
        let is_zero_ideal = det.is_zero();
        ResultantValue { det, content, is_zero_ideal }
    }
}

/// Determinant by Bareiss elimination. At each step the pivot is the
/// nonzero candidate with the fewest terms.
pub fn bareiss_det(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let size = a.len();
    assert!(a.iter().all(|r| r.len() == size), "matrix must be square");
    let nvars = a.first().map(|r| r[0].nvars()).unwrap_or(1);
    if size == 0 {
        return Poly::one(Integers, nvars);
    }
    let mut negate = false;
    let mut prev = Poly::one(Integers, nvars);
    for k in 0..size {
        let pivot = (k..size)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].num_terms());
        let Some(p) = pivot else {
            return Poly::zero(Integers, nvars);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero(Integers, nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Resultant of an explicit spec, without any primitivization.
pub fn resultant_from_spec(spec: &SylvesterSpec) -> ResultantValue {
    ResultantValue::from_det(bareiss_det(spec.matrix()))
}

/// The `(m, n)`-resultant of `f` and `g` with respect to `T_var`; both
/// inputs are first replaced by their primitive integer forms.
pub fn sylvester_resultant(f: &HomPoly, g: &HomPoly, var: usize, m: u32, n: u32) -> Result<ResultantValue> {
    let (_, pf) = content_primitive(f)?;
    let (_, pg) = content_primitive(g)?;
    Ok(resultant_from_spec(&SylvesterSpec::new(&pf, &pg, var, m, n)?))
}

/// Whether the resultant at the true degrees in `T_var` is the zero ideal,
/// i.e. whether `f` and `g` share a factor involving `T_var`.
pub fn resultant_is_zero(f: &HomPoly, g: &HomPoly, var: usize) -> Result<bool> {
    let (m, n) = (f.degree_in(var), g.degree_in(var));
    if m == 0 && n == 0 {
        return Err(Error::AbsentVariable(var));
    }
    Ok(sylvester_resultant(f, g, var, m, n)?.is_zero_ideal)
}

/// `res_(d, d-1)(f, ∂f/∂T_var)` for the primitive form of an integer
/// polynomial `f` of degree `d >= 1` in `T_var`. The derivative is used as
/// is: its own content carries primes (e.g. `p | d`) that must not be lost.
/// For `d = 1` the matrix is the `1 x 1` matrix `[t_1]`.
pub fn derivation_resultant_int(f: &IntPoly, var: usize) -> Result<ResultantValue> {
    let d = f.degree_in(var);
    if d == 0 {
        return Err(Error::AbsentVariable(var));
    }
    let df = f.derivative(var);
    Ok(resultant_from_spec(&SylvesterSpec::new(f, &df, var, d, d - 1)?))
}

pub fn derivation_resultants(f: &HomPoly, var: usize) -> Result<ResultantValue> {
    let (_, pf) = content_primitive(f)?;
    derivation_resultant_int(&pf, var)
}

/// Degree in `T_var` of the rational gcd; the reference side of the
/// common-factor criterion.
pub fn gcd_degree_in(f: &HomPoly, g: &HomPoly, var: usize) -> Result<u32> {
    let (_, pf) = content_primitive(f)?;
    let (_, pg) = content_primitive(g)?;
    Ok(gcd::gcd(&pf, &pg).degree_in(var))
}

impl ResultantValue {
    pub fn content_is_unit(&self) -> bool {
        !self.content.is_zero() && self.content == BigInt::from(1)
    }
}
