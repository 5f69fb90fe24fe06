//! Zero-dimensional cycles of rational points in `P^n`: Cayley forms,
//! heights and bad primes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::{ln_big, pure_dim_bound_log};
use crate::error::{Error, Result};
use crate::json;
use crate::modp::bad_primes_among;
use crate::poly::{IntPoly, Integers, Mono, Poly, MAX_VARS};
use crate::primes::primes_up_to;

/// Primitive integer coordinates with first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::Range("the zero vector is not a projective point".into()));
        }
        let first = coords.iter().find(|c| !c.is_zero()).expect("nonzero");
        let g = if first.is_negative() { -g } else { g };
        Ok(ProjPoint { coords: coords.into_iter().map(|c| c / &g).collect() })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// `log ‖p‖₂`.
    pub fn height(&self) -> f64 {
        let s: BigInt = self.coords.iter().map(|c| c * c).sum();
        0.5 * ln_big(s.magnitude())
    }

    /// The dual linear form `Σ p_j u_j`.
    pub fn linear_form(&self) -> IntPoly {
        let n = self.coords.len();
        Poly::from_terms(
            Integers,
            n,
            self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (Mono::var(j, 1), c.clone())),
        )
    }

    /// Gcd of all 2x2 minors with `other`; `p` divides it iff the two
    /// reductions are proportional mod `p`.
    pub fn minor_gcd(&self, other: &ProjPoint) -> BigInt {
        let (a, b) = (&self.coords, &other.coords);
        let mut g = BigInt::zero();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                g = g.gcd(&(&a[i] * &b[j] - &a[j] * &b[i]));
            }
        }
        g
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointCycle {
    n: usize,
    points: Vec<(ProjPoint, u32)>,
}

impl PointCycle {
    /// Builds a cycle in `P^n`; repeated points have their multiplicities added.
    pub fn new(n: usize, points: Vec<(ProjPoint, u32)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Range("a cycle needs at least one point".into()));
        }
        if n + 1 > MAX_VARS {
            return Err(Error::Range(format!("at most {MAX_VARS} coordinates are supported")));
        }
        let mut merged: Vec<(ProjPoint, u32)> = Vec::new();
        for (p, m) in points {
            if p.coords.len() != n + 1 {
                return Err(Error::Range(format!("point {p} does not lie in P^{n}")));
            }
            if m == 0 {
                return Err(Error::Range("multiplicities must be positive".into()));
            }
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, k)) => *k += m,
                None => merged.push((p, m)),
            }
        }
        Ok(PointCycle { n, points: merged })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[(ProjPoint, u32)] {
        &self.points
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|&(_, m)| m == 1)
    }

    /// The cycle `self + other`.
    pub fn union(&self, other: &PointCycle) -> Result<PointCycle> {
        PointCycle::new(self.n, self.points.iter().chain(&other.points).cloned().collect())
    }
}

/// Parses one point per line, `[a0 : a1 : ... : an] * m`, with `* m`
/// optional. Blank lines and lines starting with `#` are skipped.
pub fn parse_cycle(text: &str) -> Result<PointCycle> {
    let mut points = Vec::new();
    let mut n = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| Error::PointSyntax { line, msg: msg.to_string() };
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let rest = s.strip_prefix('[').ok_or_else(|| err("expected '['"))?;
        let close = rest.find(']').ok_or_else(|| err("expected ']'"))?;
        let coords = rest[..close]
            .split(':')
            .map(|t| t.parse::<BigInt>().map_err(|_| err(&format!("bad coordinate {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let tail = &rest[close + 1..];
        let m = if tail.is_empty() {
            1
        } else {
            let m = tail.strip_prefix('*').ok_or_else(|| err("expected '* m' after the point"))?;
            m.parse::<u32>().ok().filter(|&m| m > 0).ok_or_else(|| err("multiplicity must be a positive integer"))?
        };
        if *n.get_or_insert(coords.len()) != coords.len() {
            return Err(err("points have different numbers of coordinates"));
        }
        if coords.len() < 2 {
            return Err(err("a point needs at least two coordinates"));
        }
        let p = ProjPoint::new(coords).map_err(|_| err("the zero vector is not a point"))?;
        points.push((p, m));
    }
    let n = n.ok_or(Error::PointSyntax { line: 0, msg: "no points".into() })?;
    PointCycle::new(n - 1, points)
}

/// `Π_i (Σ_j p_ij u_j)^(m_i)` in the dual variables `u_0..u_n`.
pub fn cayley_form(c: &PointCycle) -> IntPoly {
    c.points
        .iter()
        .fold(Poly::one(Integers, c.n + 1), |acc, (p, m)| acc.mul(&p.linear_form().pow(*m)))
}

/// `Σ m_i log ‖p_i‖₂`.
pub fn cycle_height(c: &PointCycle) -> f64 {
    c.points.iter().map(|(p, m)| *m as f64 * p.height()).sum()
}

/// Every prime at which two points of the cycle can collide divides
/// some minor gcd, and those are at most `2 max|coord|²`.
pub fn default_pmax(c: &PointCycle) -> u64 {
    let max = c.points.iter().flat_map(|(p, _)| p.coords.iter()).map(|x| x.abs()).max().expect("nonempty");
    (BigInt::from(2) * &max * &max).to_u64().unwrap_or(u64::MAX).max(2)
}

/// Primes `p <= p_max` at which the Cayley form acquires a square factor.
pub fn cycle_bad_primes(c: &PointCycle, p_max: u64) -> Result<Vec<u64>> {
    if !c.is_reduced() {
        return Err(Error::NonReducedCycle);
    }
    if p_max < 2 {
        return Err(Error::Range("p_max must be at least 2".into()));
    }
    let psi = cayley_form(c);
    let primes: Vec<u128> = primes_up_to(p_max).into_iter().map(u128::from).collect();
    Ok(bad_primes_among(&psi, &primes)?.into_iter().map(|p| p as u64).collect())
}

/// Primes `p <= p_max` at which two points become proportional mod `p`.
pub fn pairwise_bad_primes(c: &PointCycle, p_max: u64) -> Vec<u64> {
    let gs: Vec<BigInt> = c
        .points
        .iter()
        .enumerate()
        .flat_map(|(i, (a, _))| c.points[i + 1..].iter().map(move |(b, _)| a.minor_gcd(b)))
        .collect();
    primes_up_to(p_max)
        .into_iter()
        .filter(|&p| gs.iter().any(|g| (g % BigInt::from(p)).is_zero()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePass {
    pub oracle_agrees: bool,
    pub product: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleReport {
    pub points: Vec<String>,
    pub n: usize,
    pub degree: u32,
    #[serde(serialize_with = "json::poly")]
    pub cayley_form: IntPoly,
    pub height: f64,
    pub pmax: u64,
    pub bad_primes: Vec<u64>,
    pub pairwise_primes: Vec<u64>,
    pub product_log: f64,
    pub bound_log: f64,
    pub pass: CyclePass,
}

/// Bad primes of a reduced cycle by both methods, and the `d = 0` bound
/// with `N = n`.
pub fn analyze_cycle(c: &PointCycle, p_max: Option<u64>) -> Result<CycleReport> {
    let pmax = p_max.unwrap_or_else(|| default_pmax(c));
    let bad_primes = cycle_bad_primes(c, pmax)?;
    let pairwise_primes = pairwise_bad_primes(c, pmax);
    let product: BigUint = bad_primes.iter().map(|&p| BigUint::from(p)).product();
    let product_log = ln_big(&product);
    let height = cycle_height(c);
    let bound_log = pure_dim_bound_log(c.n as u32, 0, c.degree(), 1, height)?;
    Ok(CycleReport {
        points: c.points.iter().map(|(p, _)| p.to_string()).collect(),
        n: c.n,
        degree: c.degree(),
        cayley_form: cayley_form(c),
        height,
        pmax,
        pass: CyclePass { oracle_agrees: bad_primes == pairwise_primes, product: product_log <= bound_log },
        bad_primes,
        pairwise_primes,
        product_log,
        bound_log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn z(s: &str, n: usize) -> IntPoly {
        parse_poly(s, n).unwrap().map_ring(Integers, |c| c.to_integer())
    }

    fn cyc(text: &str) -> PointCycle {
        parse_cycle(text).unwrap()
    }

    #[test]
    fn canonical_points() {
        assert_eq!(ProjPoint::from_i64(&[-2, 4, 0]).unwrap().coords(), ProjPoint::from_i64(&[1, -2, 0]).unwrap().coords());
        assert_eq!(ProjPoint::from_i64(&[0, -3]).unwrap(), ProjPoint::from_i64(&[0, 1]).unwrap());
        assert!(ProjPoint::from_i64(&[0, 0]).is_err());
    }

    #[test]
    fn parses_point_files() {
        let c = cyc("# two points\n[1 : 1] * 2\n\n[ 2:-2 ]\n");
        assert_eq!(c.n(), 1);
        assert_eq!(c.points().len(), 2);
        assert_eq!(c.degree(), 3);
        let merged = cyc("[1:1]\n[2:2]");
        assert_eq!(merged.points(), &[(ProjPoint::from_i64(&[1, 1]).unwrap(), 2)]);
        assert!(matches!(parse_cycle("[1:2]\n[1:2:3]"), Err(Error::PointSyntax { line: 2, .. })));
        assert!(matches!(parse_cycle("[1:x]"), Err(Error::PointSyntax { line: 1, .. })));
        assert!(matches!(parse_cycle("[1:2] * 0"), Err(Error::PointSyntax { line: 1, .. })));
        assert!(matches!(parse_cycle("[0:0]"), Err(Error::PointSyntax { .. })));
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley_form(&cyc("[1:0]\n[0:1]")), z("T0*T1", 2));
        assert_eq!(cayley_form(&cyc("[1:1]\n[1:-1]")), z("T0^2 - T1^2", 2));
        let sq = cayley_form(&cyc("[1:1]*2"));
        assert_eq!(sq, z("(T0 + T1)^2", 2));
        assert!(!crate::poly::is_squarefree_over_q(&sq));
    }

    #[test]
    fn bad_prime_examples() {
        assert_eq!(cycle_bad_primes(&cyc("[1:0]\n[0:1]"), 100).unwrap(), Vec::<u64>::new());
        assert_eq!(cycle_bad_primes(&cyc("[1:1]\n[1:-1]"), 100).unwrap(), vec![2]);
        assert_eq!(cycle_bad_primes(&cyc("[1:0]\n[1:5]"), 100).unwrap(), vec![5]);
        assert_eq!(cycle_bad_primes(&cyc("[1:1]*2"), 100), Err(Error::NonReducedCycle));
        assert_eq!(pairwise_bad_primes(&cyc("[1:0]\n[1:5]"), 100), vec![5]);
    }

    #[test]
    fn height_examples() {
        assert_eq!(cycle_height(&cyc("[1:0]")), 0.0);
        assert!((cycle_height(&cyc("[3:4]")) - 5f64.ln()).abs() < 1e-15);
        assert!((cycle_height(&cyc("[1:1]\n[1:-1]")) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn union_multiplies_cayley_forms() {
        let a = cyc("[1:2:3]\n[0:1:1]");
        let b = cyc("[5:0:1]");
        assert_eq!(cayley_form(&a.union(&b).unwrap()), cayley_form(&a).mul(&cayley_form(&b)));
    }

    #[test]
    fn analysis_passes_on_example() {
        let r = analyze_cycle(&cyc("[1:1]\n[1:-1]"), None).unwrap();
        assert_eq!(r.bad_primes, vec![2]);
        assert!(r.pass.oracle_agrees && r.pass.product);
        let expected = pure_dim_bound_log(1, 0, 2, 1, 2f64.ln()).unwrap();
        assert_eq!(r.bound_log, expected);
    }
}
