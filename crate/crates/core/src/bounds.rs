//! Explicit bounds on bad-reduction primes, the recursive resultant
//! certifier for hypersurfaces and the verdict that checks it against the
//! `F_p` oracle.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json;
use crate::modp::{bad_primes_among, reduced_hypersurface};
use crate::poly::{gcd, int_primitive, max_abs_coeff, HomPoly, IntPoly, Integers, Poly};
use crate::primes::{factor, primes_up_to, Factorization};
use crate::resultant::derivation_resultant_int;

const LN2: f64 = std::f64::consts::LN_2;

/// Natural logarithm of a big integer; `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * LN2
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_big(&binomial(n, k))
}

pub fn harmonic(n: u64) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// Log of `C(δ+n, n)^((2δ-1) degK / 2) · δ^(δ degK) · exp(degK h)^(2δ-1)`.
pub fn hypersurface_bound_log(n: u32, delta: u32, deg_k: u32, h: f64) -> f64 {
    let (d, k) = (delta as f64, deg_k as f64);
    (2.0 * d - 1.0) * k / 2.0 * ln_binomial((delta + n) as u64, n as u64)
        + d * k * d.ln()
        + (2.0 * d - 1.0) * k * h
}

/// Upper bound for the number of bad primes `>= N0`.
pub fn hypersurface_count_bound(n: u32, delta: u32, deg_k: u32, h: f64, n0: f64) -> Result<f64> {
    check_n0(n0)?;
    let d = delta as f64;
    let inner = (2.0 * d - 1.0) * h + d * d.ln() + (2.0 * d - 1.0) / 2.0 * ln_binomial((n + delta) as u64, delta as u64);
    Ok(deg_k as f64 / n0.ln() * inner)
}

fn check_n0(n0: f64) -> Result<()> {
    if n0 >= 2.0 {
        Ok(())
    } else {
        Err(Error::Range(format!("N0 = {n0} is below 2")))
    }
}

/// `N = C(n+1, d+1) - 1`, the dimension of the ambient space of Cayley forms.
pub fn cayley_dimension(n: u32, d: u32) -> Result<u64> {
    if n == 0 || d >= n {
        return Err(Error::Range(format!("need 0 <= d < n, got d = {d}, n = {n}")));
    }
    binomial(n as u64 + 1, d as u64 + 1)
        .to_u64()
        .map(|b| b - 1)
        .ok_or_else(|| Error::Range("Cayley dimension overflows".into()))
}

fn check_delta(delta: u32) -> Result<()> {
    if delta == 0 {
        Err(Error::Range("degree must be positive".into()))
    } else {
        Ok(())
    }
}

/// Log of the bound for pure `d`-dimensional `X` of degree `δ` in `P^n`.
pub fn pure_dim_bound_log(n: u32, d: u32, delta: u32, deg_k: u32, arakelov_h: f64) -> Result<f64> {
    check_delta(delta)?;
    let big_n = cayley_dimension(n, d)?;
    let (dl, k, nn) = (delta as f64, deg_k as f64, big_n as f64);
    Ok((2.0 * dl - 1.0) * k / 2.0 * ln_binomial(delta as u64 + big_n, big_n)
        + dl * k * dl.ln()
        + (2.0 * dl - 1.0)
            * k
            * (arakelov_h - dl * harmonic(big_n) / 2.0 + 4.0 * dl * (nn + 1.0).ln() + (nn + 1.0) * dl * LN2))
}

pub fn pure_dim_count_bound(n: u32, d: u32, delta: u32, deg_k: u32, arakelov_h: f64, n0: f64) -> Result<f64> {
    check_n0(n0)?;
    let c1 = c1_constant(d, n, delta)?;
    Ok(deg_k as f64 / n0.ln() * ((2.0 * delta as f64 - 1.0) * arakelov_h + c1))
}

/// The height-free part of the pure-dimensional count bound.
pub fn c1_constant(d: u32, n: u32, delta: u32) -> Result<f64> {
    check_delta(delta)?;
    let big_n = cayley_dimension(n, d)?;
    let (dl, nn) = (delta as f64, big_n as f64);
    let e = 2.0 * dl - 1.0;
    Ok(-e / 2.0 * dl * harmonic(big_n)
        + (4.0 * e + e / 2.0) * dl * (nn + 1.0).ln()
        + e * (nn + 1.0) * dl * LN2
        + dl * dl.ln())
}

/// `C1(d, n, δ) / δ²` for `δ = 1..=max_delta`.
pub fn c1_growth_ratios(d: u32, n: u32, max_delta: u32) -> Result<Vec<f64>> {
    (1..=max_delta).map(|delta| Ok(c1_constant(d, n, delta)? / (delta as f64).powi(2))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaCount {
    pub count: usize,
    pub bound: f64,
    #[serde(serialize_with = "json::uint_vec")]
    pub primes: Vec<BigUint>,
}

/// Distinct primes `p >= N0` dividing `a`, against `log|a| / log N0`.
/// An unfactored cofactor is composite with all prime factors above the
/// trial-division range and is counted as two primes.
pub fn omega_count(a: &BigInt, n0: f64) -> Result<OmegaCount> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_n0(n0)?;
    let fac = factor(a);
    let primes: Vec<BigUint> =
        fac.prime_list().into_iter().filter(|p| p.to_f64().is_some_and(|v| v >= n0)).collect();
    let count = primes.len() + 2 * fac.cofactors.len();
    let bound = ln_big(&a.abs().to_biguint().expect("nonnegative")) / n0.ln();
    Ok(OmegaCount { count, bound, primes })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstanteCheck {
    pub powers: bool,
    pub self_powers: bool,
    pub binomials: bool,
}

impl ConstanteCheck {
    pub fn all(&self) -> bool {
        self.powers && self.self_powers && self.binomials
    }
}

/// The three product inequalities for `a_1..a_m >= 1`, `r >= 1`. The third
/// uses `C(a_i + n - i + 1, n - i + 1)` and so needs `m <= n + 1`.
pub fn check_constante_inequalities(a: &[u64], r: f64, n: u32) -> Result<ConstanteCheck> {
    if a.is_empty() || a.contains(&0) || r.is_nan() || r < 1.0 || a.len() > n as usize + 1 {
        return Err(Error::Range("need nonempty a_i >= 1, r >= 1 and m <= n + 1".into()));
    }
    let m = a.len() as f64;
    let sum: u64 = a.iter().sum();
    let s = sum as f64;
    let powers = (2.0 * s - m) * r.ln() <= (2.0 * s - 1.0) * r.ln();

    let lhs: BigUint = a.iter().map(|&x| BigUint::from(x).pow(x as u32)).product();
    let self_powers = lhs <= BigUint::from(sum).pow(sum as u32);

    let lhs: BigUint = a
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let top = n as u64 - i as u64;
            binomial(x + top, top).pow((2 * x - 1) as u32)
        })
        .product();
    let binomials = lhs <= binomial(sum + n as u64, n as u64).pow((2 * sum - 1) as u32);
    Ok(ConstanteCheck { powers, self_powers, binomials })
}

/// What a certification level recurses on.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// The leading coefficient `t_d` in the eliminated variable.
    LeadingCoefficient,
    /// A lower coefficient `t_i`, used when `t_d` is not squarefree.
    Coefficient { index: u32 },
    /// `f(T_var := Σ c·T_w)`, used when no coefficient is squarefree.
    Substitution { form: Vec<(usize, i64)> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertLevel {
    pub var: usize,
    pub d: u32,
    #[serde(serialize_with = "json::poly")]
    pub poly: IntPoly,
    #[serde(serialize_with = "json::big")]
    pub content: BigInt,
    pub content_factorization: Factorization,
    #[serde(serialize_with = "json::big")]
    pub leading_content: BigInt,
    pub step: Step,
    #[serde(serialize_with = "json::poly")]
    pub next: IntPoly,
    #[serde(serialize_with = "json::big")]
    pub next_content: BigInt,
    /// `max|coeff(next)| <= max|coeff(poly)|`.
    pub height_ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    Constant,
    /// A primitive linear form stays squarefree modulo every prime.
    Linear,
    SquarefreeMonomial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultantCertificate {
    #[serde(serialize_with = "json::poly")]
    pub input: IntPoly,
    pub n: u32,
    pub delta: u32,
    pub levels: Vec<CertLevel>,
    #[serde(rename = "superset", serialize_with = "json::uint_vec")]
    pub prime_superset: Vec<BigUint>,
    /// Composite factors of level contents that could not be split.
    #[serde(serialize_with = "json::big_vec")]
    pub unfactored: Vec<BigUint>,
    pub terminal: Terminal,
}

impl ResultantCertificate {
    /// Whether the certificate names `p`: it is in the superset or divides
    /// an unfactored cofactor.
    pub fn covers(&self, p: &BigUint) -> bool {
        self.prime_superset.binary_search(p).is_ok() || self.unfactored.iter().any(|c| (c % p).is_zero())
    }

    /// Total degree strictly decreases across coefficient levels, of which
    /// there are at most `δ`.
    pub fn degrees_decrease(&self) -> bool {
        let coeff_levels: Vec<&CertLevel> =
            self.levels.iter().filter(|l| !matches!(l.step, Step::Substitution { .. })).collect();
        coeff_levels.len() <= self.delta as usize
            && coeff_levels.iter().all(|l| match (l.poly.total_degree(), l.next.total_degree()) {
                (Some(a), Some(b)) => b < a,
                _ => false,
            })
    }
}

struct Collector {
    primes: BTreeSet<BigUint>,
    unfactored: BTreeSet<BigUint>,
}

impl Collector {
    fn add(&mut self, c: &BigInt) -> Factorization {
        let fac = factor(c);
        self.primes.extend(fac.prime_list());
        self.unfactored.extend(fac.cofactors.iter().cloned());
        fac
    }
}

fn max_degree_var(g: &IntPoly) -> usize {
    let degs = g.degrees();
    let best = *degs.iter().max().expect("at least one variable");
    (0..degs.len()).rev().find(|&v| degs[v] == best).expect("maximum exists")
}

/// Chooses what the level recurses on: a squarefree coefficient or, failing
/// that, a squarefree hyperplane section `T_v := Σ c·T_w`.
fn choose_step(g: &IntPoly, v: usize, coeffs: &[IntPoly]) -> Result<(Step, IntPoly)> {
    let d = coeffs.len() - 1;
    for i in (1..=d).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let (_, prim) = int_primitive(&coeffs[i])?;
        if gcd::is_squarefree(&prim) {
            let step = if i == d { Step::LeadingCoefficient } else { Step::Coefficient { index: i as u32 } };
            return Ok((step, coeffs[i].clone()));
        }
    }
    let others: Vec<usize> = g.support_vars().into_iter().rev().filter(|&w| w != v).collect();
    let mut forms: Vec<Vec<(usize, i64)>> =
        (1..=8i64).flat_map(|k| [k, -k]).flat_map(|k| others.iter().map(move |&w| vec![(w, k)])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..64 {
        forms.push(others.iter().map(|&w| (w, rng.random_range(-6..=6i64))).filter(|&(_, c)| c != 0).collect());
    }
    for form in forms.into_iter().filter(|f| !f.is_empty()) {
        let s = substitute_linear(g, v, &form);
        if !s.is_zero() && gcd::is_squarefree(&s) {
            return Ok((Step::Substitution { form }, s));
        }
    }
    Err(Error::RecursionStuck)
}

fn substitute_linear(g: &IntPoly, v: usize, form: &[(usize, i64)]) -> IntPoly {
    let nvars = g.nvars();
    let lin = form.iter().fold(Poly::zero(Integers, nvars), |acc, &(w, c)| {
        acc.add(&Poly::var(Integers, nvars, w).scale(&BigInt::from(c)))
    });
    g.as_univariate(v).iter().rev().fold(Poly::zero(Integers, nvars), |acc, t| acc.mul(&lin).add(t))
}

/// The recursive certifier on a primitive integer form that is squarefree over `Q`.
pub fn certify_resultants(f: &IntPoly) -> Result<ResultantCertificate> {
    let delta = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let mut acc = Collector { primes: BTreeSet::new(), unfactored: BTreeSet::new() };
    let mut levels = Vec::new();
    let mut g = f.clone();
    let terminal = loop {
        if g.is_constant() {
            break Terminal::Constant;
        }
        if g.total_degree() == Some(1) {
            break Terminal::Linear;
        }
        if g.is_monomial() {
            break Terminal::SquarefreeMonomial;
        }
        let v = max_degree_var(&g);
        let d = g.degree_in(v);
        let res = derivation_resultant_int(&g, v)?;
        if res.is_zero_ideal {
            return Err(Error::SquareFactor);
        }
        let content_factorization = acc.add(&res.content);
        let coeffs = g.as_univariate(v);
        let leading_content = crate::poly::int_content(&coeffs[d as usize]);
        acc.add(&leading_content);
        let (step, raw) = choose_step(&g, v, &coeffs)?;
        let (next_content, next) = int_primitive(&raw)?;
        let next_content = next_content.abs();
        acc.add(&next_content);
        let height_ok = max_abs_coeff(&next) <= max_abs_coeff(&g);
        levels.push(CertLevel {
            var: v,
            d,
            poly: g.clone(),
            content: res.content,
            content_factorization,
            leading_content,
            step,
            next: next.clone(),
            next_content,
            height_ok,
        });
        g = next;
    };
    Ok(ResultantCertificate {
        input: f.clone(),
        n: f.nvars() as u32 - 1,
        delta,
        levels,
        prime_superset: acc.primes.into_iter().collect(),
        unfactored: acc.unfactored.into_iter().collect(),
        terminal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Pass {
    pub containment: bool,
    pub product: bool,
    pub count: bool,
}

impl Pass {
    pub fn all(&self) -> bool {
        self.containment && self.product && self.count
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundVerdict {
    pub classical_height: f64,
    /// Bad primes among all primes `<= oracle_pmax` and the superset primes.
    #[serde(rename = "oracle", serialize_with = "json::uint_vec")]
    pub oracle_primes: Vec<BigUint>,
    pub oracle_pmax: u64,
    /// Superset primes too large for the `F_p` oracle.
    #[serde(serialize_with = "json::uint_vec")]
    pub untested: Vec<BigUint>,
    pub bound_log: f64,
    pub product_log: f64,
    pub count: usize,
    pub count_bound: f64,
    pub pass: Pass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Every prime up to this is also tested by the oracle.
    pub pmax: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { pmax: 100 }
    }
}

/// `prod² <= C(δ+n, n)^(2δ-1) · δ^(2δ) · H^(2(2δ-1))`, the squared bound for `K = Q`.
pub fn product_within_bound(product: &BigUint, n: u32, delta: u32, height: &BigUint) -> bool {
    let e = 2 * delta - 1;
    let rhs = binomial((delta + n) as u64, n as u64).pow(e)
        * BigUint::from(delta).pow(2 * delta)
        * height.pow(2 * e);
    product * product <= rhs
}

/// Certifies a reduced hypersurface over `Q` and checks the certificate
/// and the bounds against the oracle.
pub fn certify_hypersurface(f: &HomPoly, opts: &CertifyOptions) -> Result<(ResultantCertificate, BoundVerdict)> {
    let prim = reduced_hypersurface(f)?;
    let cert = certify_resultants(&prim)?;
    let (n, delta) = (cert.n, cert.delta);
    let height = max_abs_coeff(&prim).to_biguint().expect("nonnegative");
    let h = ln_big(&height);

    let limit = BigUint::one() << 127u32;
    let mut candidates: BTreeSet<u128> = primes_up_to(opts.pmax).into_iter().map(u128::from).collect();
    let mut untested = Vec::new();
    for p in &cert.prime_superset {
        if p < &limit {
            candidates.insert(p.to_u128().expect("below 2^127"));
        } else {
            untested.push(p.clone());
        }
    }
    let candidates: Vec<u128> = candidates.into_iter().collect();
    let oracle_primes: Vec<BigUint> = bad_primes_among(&prim, &candidates)?.into_iter().map(BigUint::from).collect();

    let containment = oracle_primes.iter().all(|p| cert.covers(p));
    let product: BigUint = oracle_primes.iter().product();
    let bound_log = hypersurface_bound_log(n, delta, 1, h);
    let count_bound = hypersurface_count_bound(n, delta, 1, h, 2.0)?;
    let count = oracle_primes.len();
    let pass = Pass {
        containment,
        product: product_within_bound(&product, n, delta, &height),
        count: count as f64 <= count_bound + 1e-9,
    };
    let verdict = BoundVerdict {
        classical_height: h,
        oracle_primes,
        oracle_pmax: opts.pmax,
        untested,
        bound_log,
        product_log: ln_big(&product),
        count,
        count_bound,
        pass,
    };
    Ok((cert, verdict))
}

/// Certificate and verdict in one JSON object with a stable field order.
#[derive(Serialize)]
pub struct CertificateReport<'a> {
    #[serde(flatten)]
    pub certificate: &'a ResultantCertificate,
    #[serde(flatten)]
    pub verdict: &'a BoundVerdict,
}
