//! Sparse multivariate polynomials over a [`Ring`].
//!
//! Monomials are packed into a `u64`, eight bits per variable with `T0` in
//! the most significant byte, so integer order on the packed word is lex
//! order with `T0 > T1 > ...`. Terms are kept sorted ascending by that word
//! with no zero coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::ring::{GcdRing, Ring};

pub const MAX_VARS: usize = 8;
const MAX_EXP: u32 = 255;

/// Packed exponent vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut w = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent {e} exceeds {MAX_EXP}");
            w |= (e as u64) << shift(i);
        }
        Mono(w)
    }

    pub fn var(i: usize, e: u32) -> Mono {
        let mut exps = [0u32; MAX_VARS];
        exps[i] = e;
        Mono::from_exps(&exps)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }


    pub fn divides(self, other: Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(self, other: Mono) -> Mono {
        Mono(other.0 - self.0)
    }

    pub fn with_exp(self, i: usize, e: u32) -> Mono {
        assert!(e <= MAX_EXP);
        let cleared = self.0 & !(0xffu64 << shift(i));
        Mono(cleared | ((e as u64) << shift(i)))
    }

    /// Graded lex with `T0 < T1 < ... < Tn`: total degree first, then the
    /// exponent of the highest-indexed variable, and so on downwards.
    pub fn grlex_cmp(self, other: Mono, nvars: usize) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..nvars).rev() {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

#[inline]
fn shift(i: usize) -> u32 {
    debug_assert!(i < MAX_VARS);
    (8 * (MAX_VARS - 1 - i)) as u32
}

/// Product; panics if an exponent would overflow a byte.
impl std::ops::Mul for Mono {
    type Output = Mono;

    fn mul(self, other: Mono) -> Mono {
        let mut w = 0u64;
        for i in 0..MAX_VARS {
            let e = self.exp(i) + other.exp(i);
            assert!(e <= MAX_EXP, "exponent overflow in monomial product");
            w |= (e as u64) << shift(i);
        }
        Mono(w)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: Ring> {
    ring: R,
    nvars: usize,
    terms: Vec<(Mono, R::Elem)>,
}

impl<R: Ring> Poly<R> {
    pub fn zero(ring: R, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Poly { ring, nvars, terms: Vec::new() }
    }

    pub fn constant(ring: R, nvars: usize, c: R::Elem) -> Self {
        Self::monomial(ring, nvars, Mono::ONE, c)
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let c = ring.one();
        Self::constant(ring, nvars, c)
    }

    pub fn monomial(ring: R, nvars: usize, m: Mono, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, nvars);
        if !p.ring.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    /// The variable `T_i`.
    pub fn var(ring: R, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let c = ring.one();
        Self::monomial(ring, nvars, Mono::var(i, 1), c)
    }

    /// Builds a canonical polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ring: R, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, R::Elem)>,
    {
        let mut p = Self::zero(ring, nvars);
        let mut raw: Vec<(Mono, R::Elem)> = terms.into_iter().collect();
        raw.sort_by_key(|t| t.0);
        for (m, c) in raw {
            debug_assert!((nvars..MAX_VARS).all(|i| m.exp(i) == 0));
            match p.terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = p.ring.add(lc, &c),
                _ => p.terms.push((m, c)),
            }
        }
        let ring = p.ring.clone();
        p.terms.retain(|(_, c)| !ring.is_zero(c));
        p
    }

    pub fn from_exps<I>(ring: R, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, R::Elem)>,
    {
        Self::from_terms(ring, nvars, terms.into_iter().map(|(e, c)| (Mono::from_exps(&e), c)))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, R::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, R::Elem)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero and free of variables.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, m: Mono) -> R::Elem {
        match self.terms.binary_search_by(|(tm, _)| tm.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    /// Constant term value when the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<R::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.ring.zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree in `T_var`; 0 for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.nvars).map(|v| self.degree_in(v)).collect()
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.degree_in(v) > 0).collect()
    }

    /// Leading term under graded lex with `T0 < T1 < ...`.
    pub fn grlex_leading(&self) -> Option<&(Mono, R::Elem)> {
        let n = self.nvars;
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0, n))
    }

    /// Lex-leading term (`T0 > T1 > ...`), the order used by division.
    fn lex_leading(&self) -> Option<&(Mono, R::Elem)> {
        self.terms.last()
    }

    pub fn neg(&self) -> Self {
        let ring = self.ring.clone();
        self.map_terms(|c| ring.neg(c))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.nvars);
        }
        let ring = self.ring.clone();
        let mut out = self.map_terms(|a| ring.mul(a, c));
        // zero divisors cannot occur in the rings used here, but keep the
        // canonical form honest anyway
        out.terms.retain(|(_, a)| !ring.is_zero(a));
        out
    }

    fn map_terms(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Poly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.nvars);
        }
        let ring = &self.ring;
        let mut terms: Vec<(Mono, R::Elem)> = self
            .terms
            .iter()
            .map(|(tm, tc)| (*tm * m, ring.mul(tc, c)))
            .filter(|(_, c)| !ring.is_zero(c))
            .collect();
        // multiplying by a monomial preserves lex order
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        terms.shrink_to_fit();
        Poly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { ring.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        ring.sub(&a[i].1, &b[j].1)
                    } else {
                        ring.add(&a[i].1, &b[j].1)
                    };
                    if !ring.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { ring: self.ring.clone(), nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone(), self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_mono(other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_mono(self.terms[0].0, &self.terms[0].1);
        }
        let ring = &self.ring;
        let mut acc: HashMap<Mono, R::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ring.mul(ca, cb);
                acc.entry(*ma * *mb)
                    .and_modify(|c| *c = ring.add(c, &prod))
                    .or_insert(prod);
            }
        }
        let mut terms: Vec<(Mono, R::Elem)> =
            acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        terms.sort_by_key(|t| t.0);
        Poly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `T_var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let ring = &self.ring;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), ring.mul(c, &ring.embed_u64(e as u64)))
            });
        // lowering one exponent can reorder terms, and in positive
        // characteristic the factor e may vanish
        Self::from_terms(self.ring.clone(), self.nvars, terms.collect::<Vec<_>>())
    }

    /// Coefficients `[t_0, ..., t_d]` of the polynomial viewed in `T_var`;
    /// each `t_i` lives in the same variable set with `T_var` absent.
    /// The zero polynomial yields an empty list.
    pub fn as_univariate(&self, var: usize) -> Vec<Self> {
        assert!(var < self.nvars, "variable index out of range");
        if self.is_zero() {
            return Vec::new();
        }
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Mono, R::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|ts| Self::from_terms(self.ring.clone(), self.nvars, ts))
            .collect()
    }

    /// Inverse of [`Poly::as_univariate`].
    pub fn from_univariate(ring: R, nvars: usize, var: usize, coeffs: &[Self]) -> Self {
        let one = ring.one();
        let mut terms = Vec::new();
        for (i, t) in coeffs.iter().enumerate() {
            let shifted = t.mul_mono(Mono::var(var, i as u32), &one);
            terms.extend(shifted.terms);
        }
        Self::from_terms(ring, nvars, terms)
    }

    /// Replace `T_var` by `c * T_target`.
    pub fn substitute_scaled_var(&self, var: usize, target: usize, c: &R::Elem) -> Self {
        let coeffs = self.as_univariate(var);
        let lin = Self::monomial(self.ring.clone(), self.nvars, Mono::var(target, 1), c.clone());
        let mut acc = Self::zero(self.ring.clone(), self.nvars);
        let mut power = Self::one(self.ring.clone(), self.nvars);
        for t in coeffs {
            acc = acc.add(&t.mul(&power));
            power = power.mul(&lin);
        }
        acc
    }

    /// Applies a ring homomorphism coefficientwise.
    pub fn map_ring<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        Poly::from_terms(target, self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Same polynomial in a larger variable set.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars || self.support_vars().iter().all(|&v| v < nvars));
        assert!(nvars <= MAX_VARS);
        Poly { ring: self.ring.clone(), nvars, terms: self.terms.clone() }
    }
}

impl<R: GcdRing> Poly<R> {
    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        let (lm, lc) = divisor.lex_leading()?.clone();
        if self.is_zero() {
            return Some(Self::zero(self.ring.clone(), self.nvars));
        }
        if divisor.terms.len() == 1 {
            let ring = &self.ring;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !lm.divides(*m) {
                    return None;
                }
                terms.push((lm.quotient_of(*m), ring.div_exact(c, &lc)?));
            }
            return Some(Poly { ring: self.ring.clone(), nvars: self.nvars, terms });
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, R::Elem)> = Vec::new();
        while let Some((rm, rc)) = rem.lex_leading().cloned() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.quotient_of(rm);
            let qc = self.ring.div_exact(&rc, &lc)?;
            rem = rem.sub(&divisor.mul_mono(qm, &qc));
            quot.push((qm, qc));
        }
        Some(Self::from_terms(self.ring.clone(), self.nvars, quot))
    }

    /// Gcd of all coefficients (the ring content); zero for the zero polynomial.
    pub fn coeff_content(&self) -> R::Elem {
        let mut g = self.ring.zero();
        for (_, c) in &self.terms {
            g = self.ring.gcd(&g, c);
            if self.ring.is_one(&g) {
                break;
            }
        }
        g
    }

    /// Multiply by the unit that normalizes the grlex-leading coefficient.
    pub fn unit_normalize(&self) -> Self {
        match self.grlex_leading() {
            None => self.clone(),
            Some((_, c)) => {
                let u = self.ring.normal_unit(c);
                if self.ring.is_one(&u) {
                    self.clone()
                } else {
                    self.scale(&u)
                }
            }
        }
    }
}

impl<R: Ring> fmt::Display for Poly<R>
where
    R::Elem: super::format::FormatCoeff,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::format::format_poly(self, "T"))
    }
}
