//! Heights of polynomials: classical height, L2 norm, Mahler measure by torus
//! quadrature (with a root-finding path for one variable), the Fubini-Study
//! 0-norm by Monte Carlo, the Philippon height, and the comparison
//! inequalities between them.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{binomial, ln_big};
use crate::error::{Error, Result};
use crate::json;
use crate::poly::{content_primitive, max_abs_coeff, to_rational, HomPoly, IntPoly};

const LN2: f64 = std::f64::consts::LN_2;
const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalHeight {
    pub value: f64,
    /// `max |coefficient|` of the primitive form; `value = log(witness)`.
    #[serde(serialize_with = "json::big")]
    pub witness: BigInt,
}

pub fn classical_height(f: &HomPoly) -> Result<ClassicalHeight> {
    let (_, prim) = content_primitive(f)?;
    let witness = max_abs_coeff(&prim);
    let value = ln_big(witness.magnitude());
    Ok(ClassicalHeight { value, witness })
}

fn sum_of_squares(f: &HomPoly) -> BigRational {
    f.terms().iter().fold(BigRational::zero(), |acc, (_, c)| acc + c * c)
}

fn ln_rational(q: &BigRational) -> f64 {
    ln_big(q.numer().magnitude()) - ln_big(q.denom().magnitude())
}

/// `(1/2) log Σ |a_i|²`.
pub fn l2_norm_log(f: &HomPoly) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(0.5 * ln_rational(&sum_of_squares(f)))
}

/// Dense-enough evaluation data: exponent rows over the integrated
/// variables and float coefficients.
struct TorusPoly {
    exps: Vec<Vec<u32>>,
    coeffs: Vec<f64>,
    dims: usize,
}

impl TorusPoly {
    /// Variables integrated over: the support, minus the first support
    /// variable when `f` is homogeneous (it may be set to 1).
    fn new(f: &HomPoly) -> Self {
        let mut vars = f.support_vars();
        if f.is_homogeneous() && !vars.is_empty() {
            vars.remove(0);
        }
        let exps = f.terms().iter().map(|(m, _)| vars.iter().map(|&v| m.exp(v)).collect()).collect();
        let coeffs = f.terms().iter().map(|(_, c)| c.to_f64().expect("finite coefficient")).collect();
        TorusPoly { exps, coeffs, dims: vars.len() }
    }

    fn eval_at(&self, t: &[f64]) -> Complex64 {
        self.exps
            .iter()
            .zip(&self.coeffs)
            .map(|(e, &c)| {
                let phase: f64 = e.iter().zip(t).map(|(&k, &x)| k as f64 * x).sum();
                Complex64::from_polar(c, TAU * phase)
            })
            .sum()
    }

    /// Midpoint trapezoid mean of `log|f|` on the `side^dims` grid.
    fn grid_mean(&self, side: usize, floor: f64) -> f64 {
        let n2 = 2 * side as u64;
        let table: Vec<Complex64> = (0..n2).map(|m| Complex64::from_polar(1.0, TAU * m as f64 / n2 as f64)).collect();
        let points = side.pow(self.dims as u32 - 1);
        let row_sum = |i0: usize| -> f64 {
            let mut idx = vec![0usize; self.dims];
            idx[0] = i0;
            let mut acc = 0.0;
            for flat in 0..points {
                let mut r = flat;
                for slot in idx.iter_mut().skip(1) {
                    *slot = r % side;
                    r /= side;
                }
                let mut v = Complex64::zero();
                for (e, &c) in self.exps.iter().zip(&self.coeffs) {
                    let m: u64 = e.iter().zip(&idx).map(|(&k, &i)| k as u64 * (2 * i as u64 + 1)).sum();
                    v += table[(m % n2) as usize] * c;
                }
                let mut a = v.norm();
                if a < floor {
                    // near a zero on the torus: jitter inside the cell
                    let t: Vec<f64> = idx.iter().map(|&i| (i as f64 + 0.5 + 0.1234567) / side as f64).collect();
                    a = self.eval_at(&t).norm().max(f64::MIN_POSITIVE);
                }
                acc += a.ln();
            }
            acc
        };
        let total: f64 = (0..side).into_par_iter().map(row_sum).collect::<Vec<f64>>().iter().sum();
        total / (side as f64).powi(self.dims as i32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub est: f64,
    pub err: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MahlerEstimate {
    pub est: f64,
    pub err: f64,
    /// Grid side of the final estimate; 0 when the value is exact.
    pub grid: usize,
    /// False when the grid budget ran out before two successive grids agreed.
    pub converged: bool,
}

impl MahlerEstimate {
    pub fn estimate(&self) -> Estimate {
        Estimate { est: self.est, err: self.err }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MahlerOptions {
    /// Stop once successive grids differ by less than this.
    pub tol: f64,
    /// Cap on the grid side; `None` uses a per-dimension default.
    pub max_side: Option<usize>,
}

impl Default for MahlerOptions {
    fn default() -> Self {
        MahlerOptions { tol: 2f64.powi(-20), max_side: None }
    }
}

impl MahlerOptions {
    pub fn with_precision_bits(bits: u32) -> Self {
        MahlerOptions { tol: 2f64.powi(-(bits as i32)), ..Default::default() }
    }
}

/// Twice the last refinement step, but never below the rounding of a long
/// floating-point sum.
fn quadrature_err(est: f64, diff: f64) -> f64 {
    (2.0 * diff).max(1e-12 * (1.0 + est.abs()))
}

fn default_max_side(dims: usize) -> usize {
    match dims {
        1 => 1 << 22,
        2 => 2048,
        _ => 128,
    }
}

/// `log M(f) = ∫ log|f(e^{2πit})| dt` over the torus. Homogeneous inputs
/// are dehomogenized first, which leaves the measure unchanged.
pub fn mahler_measure_log(f: &HomPoly, opts: &MahlerOptions) -> Result<MahlerEstimate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_monomial() {
        let (_, c) = &f.terms()[0];
        return Ok(MahlerEstimate { est: ln_rational(&c.abs()), err: 0.0, grid: 0, converged: true });
    }
    let tp = TorusPoly::new(f);
    if tp.dims > 3 {
        return Err(Error::Range("Mahler quadrature supports at most 3 torus variables".into()));
    }
    let floor = 1e-12 * sum_of_squares(f).to_f64().expect("finite").sqrt();
    let cap = opts.max_side.unwrap_or_else(|| default_max_side(tp.dims));
    let mut side = 16usize.min(cap.max(2));
    let mut prev = tp.grid_mean(side, floor);
    loop {
        if side * 2 > cap {
            let diff = (prev - tp.grid_mean(side / 2, floor)).abs();
            return Ok(MahlerEstimate { est: prev, err: quadrature_err(prev, diff), grid: side, converged: false });
        }
        side *= 2;
        let cur = tp.grid_mean(side, floor);
        let diff = (cur - prev).abs();
        if diff < opts.tol {
            return Ok(MahlerEstimate { est: cur, err: quadrature_err(cur, diff), grid: side, converged: true });
        }
        prev = cur;
    }
}

/// Roots of `Σ a_k z^k` (lowest degree first, nonzero leading coefficient)
/// by the Aberth-Ehrlich iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    assert!(d >= 1 && coeffs[d] != 0.0);
    let lead = coeffs[d];
    let mono: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = mono[0].abs().powf(1.0 / d as f64).max(1e-3);
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius, TAU * k as f64 / d as f64 + 0.4)).collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in mono.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// `log M(f)` by Jensen's formula, for `f` in one variable (after
/// dehomogenization): `log|a_d| + Σ log max(1, |root|)`.
pub fn mahler_measure_log_jensen(f: &HomPoly) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let tp = TorusPoly::new(f);
    if tp.dims > 1 {
        return Err(Error::Range("Jensen path needs a single variable".into()));
    }
    if tp.dims == 0 {
        let c: f64 = tp.coeffs.iter().sum();
        return Ok(c.abs().ln());
    }
    let deg = tp.exps.iter().map(|e| e[0]).max().expect("nonempty") as usize;
    let low = tp.exps.iter().map(|e| e[0]).min().expect("nonempty") as usize;
    let mut dense = vec![0.0; deg + 1];
    for (e, &c) in tp.exps.iter().zip(&tp.coeffs) {
        dense[e[0] as usize] += c;
    }
    let dense = &dense[low..];
    let lead = dense[dense.len() - 1];
    Ok(match dense.len() - 1 {
        0 => lead.abs().ln(),
        1 => lead.abs().ln() + (dense[0] / lead).abs().ln().max(0.0),
        _ => lead.abs().ln() + polynomial_roots(dense).iter().map(|r| r.norm().ln().max(0.0)).sum::<f64>(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroNormOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for ZeroNormOptions {
    fn default() -> Self {
        ZeroNormOptions { samples: 20_000, seed: 0 }
    }
}

const BATCH: usize = 4096;

/// Monte Carlo estimate of `∫ log|f(x)|` over the unit sphere of `C^(n+1)`.
/// Batch `b` draws from stream `b` of a generator seeded with `seed`, so
/// the result does not depend on scheduling.
pub fn zero_norm_log(f: &HomPoly, opts: &ZeroNormOptions) -> Result<Estimate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if opts.samples < 2 {
        return Err(Error::Range("at least two samples are needed".into()));
    }
    let nv = f.nvars();
    let exps: Vec<Vec<u32>> = f.terms().iter().map(|(m, _)| m.exps(nv)).collect();
    let coeffs: Vec<f64> = f.terms().iter().map(|(_, c)| c.to_f64().expect("finite")).collect();
    let batches = opts.samples.div_ceil(BATCH);
    let sums: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(b as u64);
            let count = BATCH.min(opts.samples - b * BATCH);
            let mut x = vec![Complex64::zero(); nv];
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                for xi in x.iter_mut() {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    *xi = Complex64::new(re, im);
                }
                let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                x.iter_mut().for_each(|z| *z /= norm);
                let v: Complex64 = exps
                    .iter()
                    .zip(&coeffs)
                    .map(|(e, &c)| e.iter().zip(&x).fold(Complex64::new(c, 0.0), |acc, (&k, z)| acc * z.powu(k)))
                    .sum();
                let l = v.norm().max(f64::MIN_POSITIVE).ln();
                s += l;
                s2 += l * l;
            }
            (s, s2)
        })
        .collect();
    let n = opts.samples as f64;
    let (s, s2) = sums.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let mean = s / n;
    let var = ((s2 - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(Estimate { est: mean, err: 3.0 * var.sqrt() / n.sqrt() })
}

/// `Σ_p log|f|_p + log M(f)`: the finite places cancel the content, so this
/// is `log M` of the primitive form.
pub fn philippon_height(f: &HomPoly, opts: &MahlerOptions) -> Result<MahlerEstimate> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let (_, prim) = content_primitive(f)?;
    mahler_measure_log(&to_rational(&prim), opts)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative slack within `tol` still passes.
    pub slack: f64,
    pub tol: f64,
    pub pass: bool,
}

impl InequalityCheck {
    fn new(name: &'static str, lhs: f64, rhs: f64, tol: f64) -> Self {
        InequalityCheck { name, lhs, rhs, slack: rhs - lhs, tol, pass: lhs <= rhs + tol }
    }

    fn exact(name: &'static str, lhs: f64, rhs: f64, pass: bool) -> Self {
        InequalityCheck { name, lhs, rhs, slack: rhs - lhs, tol: 0.0, pass }
    }
}

/// Every comparison inequality on the primitive form of homogeneous `f`.
/// Numerical sides are tolerated by their error bounds; the norm sandwich
/// and coefficient counting are decided in exact integer arithmetic.
pub fn check_height_inequalities(
    f: &HomPoly,
    mahler: &MahlerEstimate,
    zero_norm: &Estimate,
) -> Result<Vec<InequalityCheck>> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let (_, prim) = content_primitive(f)?;
    let n = prim.nvars() as u32 - 1;
    let delta = prim.total_degree().expect("nonzero");
    let (nf, df) = (n as f64, delta as f64);
    let hmax = max_abs_coeff(&prim).to_biguint().expect("nonnegative");
    let h = ln_big(&hmax);
    let sumsq: BigUint =
        prim.terms().iter().map(|(_, c)| (c * c).to_biguint().expect("square")).sum();
    let l2 = 0.5 * ln_big(&sumsq);
    let max2 = &hmax * &hmax;
    let (m, em) = (mahler.est, mahler.err);
    let mut out = vec![
        InequalityCheck::new("philippon_lower", m - 0.5 * ((nf + 1.0) * (df + 1.0)).ln(), h, em),
        InequalityCheck::new("philippon_upper", h, m + (nf + 1.0) * df * LN2, em),
        InequalityCheck::new("zero_norm_lower", 0.0, m - zero_norm.est, em + zero_norm.err),
        InequalityCheck::new("zero_norm_upper", m - zero_norm.est, 4.0 * df * (nf + 1.0).ln(), em + zero_norm.err),
    ];
    let cells: BigUint = prim.degrees().iter().map(|&d| BigUint::from(d + 1)).product();
    out.push(InequalityCheck::exact("l2_vs_degree_box", l2, h + 0.5 * ln_big(&cells), sumsq <= &cells * &max2));
    out.push(InequalityCheck::exact("l2_sandwich_lower", h, l2, max2 <= sumsq));
    let binom = binomial((n + delta) as u64, delta as u64);
    out.push(InequalityCheck::exact("l2_sandwich_upper", l2, h + 0.5 * ln_big(&binom), sumsq <= &binom * &max2));

    // coefficient bound on the dehomogenization T0 = 1
    let dehom: Vec<u32> = (1..prim.nvars()).map(|v| prim.degree_in(v)).collect();
    let worst = prim
        .terms()
        .iter()
        .map(|(mono, c)| {
            let weight: BigUint =
                dehom.iter().enumerate().map(|(j, &d)| binomial(d as u64, mono.exp(j + 1) as u64)).product();
            ln_big(c.magnitude()) - ln_big(&weight)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    out.push(InequalityCheck::exact("coefficient_vs_mahler", worst, m + em, worst <= m + em));
    let sum_deg: u32 = dehom.iter().sum();
    out.push(InequalityCheck::new("classical_vs_mahler", h, sum_deg as f64 * LN2 + m, em));
    out.push(InequalityCheck::new("mahler_vs_l2", m, l2, em));
    Ok(out)
}

/// `|log M(fg) - log M(f) - log M(g)|` against the sum of the three errors.
pub fn check_mahler_multiplicativity(f: &HomPoly, g: &HomPoly, opts: &MahlerOptions) -> Result<InequalityCheck> {
    let mf = mahler_measure_log(f, opts)?;
    let mg = mahler_measure_log(g, opts)?;
    let mfg = mahler_measure_log(&f.mul(g), opts)?;
    Ok(InequalityCheck::new("mahler_multiplicativity", (mfg.est - mf.est - mg.est).abs(), 0.0, mf.err + mg.err + mfg.err))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightReport {
    #[serde(serialize_with = "json::poly")]
    pub primitive: IntPoly,
    pub classical: ClassicalHeight,
    pub l2: f64,
    pub mahler: MahlerEstimate,
    pub zero_norm: Estimate,
    pub philippon: Estimate,
    pub inequalities: Vec<InequalityCheck>,
    pub samples: usize,
    pub seed: u64,
}

impl HeightReport {
    pub fn all_pass(&self) -> bool {
        self.inequalities.iter().all(|c| c.pass)
    }
}

/// All heights of the primitive form of homogeneous `f` and their inequalities.
pub fn height_report(f: &HomPoly, mopts: &MahlerOptions, zopts: &ZeroNormOptions) -> Result<HeightReport> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let (_, prim) = content_primitive(f)?;
    let q = to_rational(&prim);
    let mahler = mahler_measure_log(&q, mopts)?;
    let zero_norm = zero_norm_log(&q, zopts)?;
    let inequalities = check_height_inequalities(&q, &mahler, &zero_norm)?;
    Ok(HeightReport {
        classical: classical_height(&q)?,
        l2: l2_norm_log(&q)?,
        philippon: mahler.estimate(),
        mahler,
        zero_norm,
        inequalities,
        samples: zopts.samples,
        seed: zopts.seed,
        primitive: prim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn q(s: &str, n: usize) -> HomPoly {
        parse_poly(s, n).unwrap()
    }

    fn harmonic(n: usize) -> f64 {
        (1..=n).map(|k| 1.0 / k as f64).sum()
    }

    #[test]
    fn classical_examples() {
        let c = classical_height(&q("T1^2 - 5*T0^2", 2)).unwrap();
        assert_eq!(c.witness, BigInt::from(5));
        assert!((c.value - 5f64.ln()).abs() < 1e-15);
        assert!((classical_height(&q("2*T0 + 4*T1", 2)).unwrap().value - LN2).abs() < 1e-15);
        assert_eq!(classical_height(&q("T0 + T1", 2)).unwrap().value, 0.0);
        assert_eq!(classical_height(&q("0", 2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn l2_examples() {
        assert!((l2_norm_log(&q("T0 + T1", 2)).unwrap() - 0.5 * LN2).abs() < 1e-15);
        assert!((l2_norm_log(&q("3*T0", 1)).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((l2_norm_log(&q("T1^2 - 5*T0^2", 2)).unwrap() - 0.5 * 26f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn jensen_examples() {
        assert_eq!(mahler_measure_log_jensen(&q("2*T0", 1)).unwrap(), LN2);
        assert_eq!(mahler_measure_log_jensen(&q("T0 - 1", 1)).unwrap(), 0.0);
        let v = mahler_measure_log_jensen(&q("T1^2 - 5*T0^2", 2)).unwrap();
        assert!((v - 5f64.ln()).abs() < 1e-12);
        // roots 1/2, 3, -4: M = 2 · 3 · 4
        let v = mahler_measure_log_jensen(&q("2*T0^3 + 1*T0^2 - 25*T0 + 12", 1)).unwrap();
        assert!((v - 24f64.ln()).abs() < 1e-10, "{v}");
    }

    #[test]
    fn quadrature_examples() {
        let opts = MahlerOptions::default();
        let m = mahler_measure_log(&q("2*T0", 1), &opts).unwrap();
        assert_eq!((m.est, m.err), (LN2, 0.0));
        let m = mahler_measure_log(&q("T0 - 1", 1), &opts).unwrap();
        assert!(m.est.abs() < 1e-5 && m.converged);
        let m = mahler_measure_log(&q("1 + T0 + T1", 2), &opts).unwrap();
        assert!((m.est - 0.3230659472).abs() < 1e-4, "{m:?}");
        let m = mahler_measure_log(&q("T1^2 - 5*T0^2", 2), &opts).unwrap();
        assert!((m.est - 5f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn quadrature_matches_jensen() {
        let opts = MahlerOptions { tol: 1e-10, max_side: None };
        for s in ["3*T0^4 - T0^3 + 7*T0 - 2", "T0^6 + 5*T0^5 - 9*T0^2 + 1", "-4*T0^2 + T0 + 11"] {
            let f = q(s, 1);
            let a = mahler_measure_log(&f, &opts).unwrap().est;
            let b = mahler_measure_log_jensen(&f).unwrap();
            assert!((a - b).abs() < 1e-8, "{s}: {a} vs {b}");
        }
    }

    #[test]
    fn zero_norm_examples() {
        let opts = ZeroNormOptions::default();
        let z = zero_norm_log(&q("5", 1), &opts).unwrap();
        assert!((z.est - 5f64.ln()).abs() < 1e-12);
        let z = zero_norm_log(&q("T0", 1), &opts).unwrap();
        assert!(z.est.abs() < 1e-12);
        // |z0|² is uniform on [0, 1] for the sphere in C², so E log|z0 z1| = -1
        let z = zero_norm_log(&q("T0*T1", 2), &opts).unwrap();
        assert!((z.est + 1.0).abs() <= z.err, "{z:?}");
        assert_eq!(zero_norm_log(&q("T0 + 1", 1), &opts), Err(Error::NotHomogeneous));
    }

    #[test]
    fn zero_norm_of_linear_form_is_unitary_invariant() {
        // ∫ log|<a, x>| over the sphere of C^(n+1) is log‖a‖₂ - H_n / 2
        let f = q("T0 + 2*T1 - 2*T2", 3);
        let z = zero_norm_log(&f, &ZeroNormOptions { samples: 40_000, seed: 7 }).unwrap();
        let want = 3f64.ln() - harmonic(2) / 2.0;
        assert!((z.est - want).abs() <= z.err, "{} vs {want} ± {}", z.est, z.err);
    }

    #[test]
    fn zero_norm_is_deterministic() {
        let f = q("T0^3 - 2*T1^3 + T0*T1^2", 2);
        let opts = ZeroNormOptions { samples: 10_000, seed: 42 };
        assert_eq!(zero_norm_log(&f, &opts).unwrap(), zero_norm_log(&f, &opts).unwrap());
    }

    #[test]
    fn philippon_examples() {
        let opts = MahlerOptions::default();
        assert!(philippon_height(&q("T0 + T1", 2), &opts).unwrap().est.abs() < 1e-5);
        assert_eq!(philippon_height(&q("2*T0", 1), &opts).unwrap().est, 0.0);
        let p = philippon_height(&q("T1^2 - 5*T0^2", 2), &opts).unwrap();
        assert!((p.est - 5f64.ln()).abs() <= p.err + 1e-9);
    }

    #[test]
    fn inequalities_hold_on_examples() {
        for s in ["T0 + T1", "T1^2 - 5*T0^2", "3*T0^2 + T0*T1 - 7*T1*T2 + T2^2"] {
            let f = q(s, 3);
            let r = height_report(&f, &MahlerOptions::default(), &ZeroNormOptions::default()).unwrap();
            for c in &r.inequalities {
                assert!(c.pass, "{s}: {c:?}");
            }
        }
    }

    #[test]
    fn multiplicativity_on_planted_square() {
        let g = q("T0 + T1", 2);
        let c = check_mahler_multiplicativity(&g, &g, &MahlerOptions::default()).unwrap();
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn report_serializes_in_order() {
        let r = height_report(&q("T0 + T1", 2), &MahlerOptions::default(), &ZeroNormOptions::default()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let keys = ["\"classical\"", "\"l2\"", "\"mahler\"", "\"zero_norm\"", "\"philippon\"", "\"inequalities\""];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
    }
}
