//! Seeded random corpora of hypersurfaces and point cycles, and the
//! batch runners behind the `corpus` subcommand.
//!
//! Instance `i` draws from stream `i` of a ChaCha8 generator seeded with
//! the corpus seed, so instances can run in parallel and still replay
//! byte for byte.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{certify_hypersurface, CertifyOptions};
use crate::cycles::{analyze_cycle, PointCycle, ProjPoint};
use crate::poly::{content_primitive, format_poly, gcd, HomPoly, Mono, Poly, Rationals};

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HypersurfaceSpec {
    pub min_vars: usize,
    pub max_vars: usize,
    pub min_degree: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    pub coeff: i64,
}

impl Default for HypersurfaceSpec {
    fn default() -> Self {
        HypersurfaceSpec { min_vars: 2, max_vars: 4, min_degree: 2, max_degree: 5, max_terms: 12, coeff: 99 }
    }
}

fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Mono {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.random_range(0..nvars)] += 1;
    }
    Mono::from_exps(&exps)
}

/// A primitive homogeneous form, squarefree over `Q`, of exact degree drawn
/// from the ranges in `spec`.
pub fn random_hypersurface<R: Rng>(rng: &mut R, spec: &HypersurfaceSpec) -> HomPoly {
    loop {
        let nvars = rng.random_range(spec.min_vars..=spec.max_vars);
        let delta = rng.random_range(spec.min_degree..=spec.max_degree);
        let terms = rng.random_range(2..=spec.max_terms.max(2));
        let f = Poly::from_terms(
            Rationals,
            nvars,
            (0..terms).map(|_| {
                let mut c = 0;
                while c == 0 {
                    c = rng.random_range(-spec.coeff..=spec.coeff);
                }
                (random_monomial(rng, nvars, delta), BigRational::from_integer(BigInt::from(c)))
            }),
        );
        if f.is_zero() {
            continue;
        }
        let (_, prim) = content_primitive(&f).expect("nonzero");
        if gcd::is_squarefree(&prim) {
            return f;
        }
    }
}

/// A reduced cycle of `δ` distinct points of `P^n`.
pub fn random_cycle<R: Rng>(rng: &mut R, max_n: usize, max_degree: u32, coord: i64) -> PointCycle {
    let n = rng.random_range(1..=max_n);
    let delta = rng.random_range(1..=max_degree) as usize;
    let mut points: Vec<ProjPoint> = Vec::new();
    while points.len() < delta {
        let coords: Vec<i64> = (0..=n).map(|_| rng.random_range(-coord..=coord)).collect();
        if let Ok(p) = ProjPoint::from_i64(&coords) {
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    PointCycle::new(n, points.into_iter().map(|p| (p, 1)).collect()).expect("valid cycle")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceResult {
    pub index: usize,
    pub input: String,
    pub superset: Vec<String>,
    pub oracle: Vec<String>,
    pub slack_log: f64,
    pub pass: Vec<(&'static str, bool)>,
    pub error: Option<String>,
}

impl InstanceResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.pass.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub kind: &'static str,
    pub count: usize,
    pub seed: u64,
    pub passed: usize,
    /// Per check: how many instances passed it.
    pub totals: Vec<(&'static str, usize)>,
    pub errors: usize,
    pub min_slack_log: f64,
    pub max_slack_log: f64,
    pub instances: Vec<InstanceResult>,
}

impl CorpusSummary {
    fn assemble(kind: &'static str, seed: u64, instances: Vec<InstanceResult>) -> Self {
        let names: Vec<&'static str> =
            instances.iter().find(|r| r.error.is_none()).map(|r| r.pass.iter().map(|(n, _)| *n).collect()).unwrap_or_default();
        let totals = names
            .iter()
            .map(|&name| (name, instances.iter().filter(|r| r.pass.iter().any(|&(n, ok)| n == name && ok)).count()))
            .collect();
        let slacks = instances.iter().filter(|r| r.error.is_none()).map(|r| r.slack_log);
        CorpusSummary {
            kind,
            count: instances.len(),
            seed,
            passed: instances.iter().filter(|r| r.passed()).count(),
            totals,
            errors: instances.iter().filter(|r| r.error.is_some()).count(),
            min_slack_log: slacks.clone().fold(f64::INFINITY, f64::min),
            max_slack_log: slacks.fold(f64::NEG_INFINITY, f64::max),
            instances,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.count
    }
}

pub fn run_hypersurface_corpus(count: usize, seed: u64, spec: &HypersurfaceSpec, opts: &CertifyOptions) -> CorpusSummary {
    let instances = (0..count)
        .into_par_iter()
        .map(|i| {
            let f = random_hypersurface(&mut instance_rng(seed, i as u64), spec);
            let input = format_poly(&f, "T");
            match certify_hypersurface(&f, opts) {
                Ok((cert, verdict)) => InstanceResult {
                    index: i,
                    input,
                    superset: cert.prime_superset.iter().map(|p| p.to_string()).collect(),
                    oracle: verdict.oracle_primes.iter().map(|p| p.to_string()).collect(),
                    slack_log: verdict.bound_log - verdict.product_log,
                    pass: vec![
                        ("containment", verdict.pass.containment),
                        ("product", verdict.pass.product),
                        ("count", verdict.pass.count),
                    ],
                    error: None,
                },
                Err(e) => InstanceResult {
                    index: i,
                    input,
                    superset: vec![],
                    oracle: vec![],
                    slack_log: 0.0,
                    pass: vec![],
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    CorpusSummary::assemble("hypersurface", seed, instances)
}

pub fn run_cycle_corpus(count: usize, seed: u64, max_n: usize, max_degree: u32, coord: i64) -> CorpusSummary {
    let instances = (0..count)
        .into_par_iter()
        .map(|i| {
            let c = random_cycle(&mut instance_rng(seed, i as u64), max_n, max_degree, coord);
            let input = c.points().iter().map(|(p, _)| p.to_string()).collect::<Vec<_>>().join(" ");
            match analyze_cycle(&c, None) {
                Ok(r) => InstanceResult {
                    index: i,
                    input,
                    superset: r.pairwise_primes.iter().map(|p| p.to_string()).collect(),
                    oracle: r.bad_primes.iter().map(|p| p.to_string()).collect(),
                    slack_log: r.bound_log - r.product_log,
                    pass: vec![("oracle_agrees", r.pass.oracle_agrees), ("product", r.pass.product)],
                    error: None,
                },
                Err(e) => InstanceResult {
                    index: i,
                    input,
                    superset: vec![],
                    oracle: vec![],
                    slack_log: 0.0,
                    pass: vec![],
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    CorpusSummary::assemble("cycle", seed, instances)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_ranges() {
        let spec = HypersurfaceSpec::default();
        for i in 0..20 {
            let f = random_hypersurface(&mut instance_rng(3, i), &spec);
            let d = f.total_degree().unwrap();
            assert!(f.is_homogeneous() && (2..=5).contains(&d) && (2..=4).contains(&f.nvars()));
            let c = random_cycle(&mut instance_rng(3, i), 3, 6, 50);
            assert!(c.is_reduced() && (1..=6).contains(&c.degree()));
        }
    }

    #[test]
    fn hyperplane_corpus_has_empty_supersets() {
        let spec = HypersurfaceSpec { min_degree: 1, max_degree: 1, ..Default::default() };
        let s = run_hypersurface_corpus(10, 5, &spec, &CertifyOptions { pmax: 30 });
        assert!(s.all_passed());
        assert!(s.instances.iter().all(|r| r.superset.is_empty() && r.oracle.is_empty()));
    }

    #[test]
    fn small_corpus_replays() {
        let spec = HypersurfaceSpec { max_vars: 3, max_degree: 3, ..Default::default() };
        let a = run_hypersurface_corpus(8, 9, &spec, &CertifyOptions { pmax: 50 });
        let b = run_hypersurface_corpus(8, 9, &spec, &CertifyOptions { pmax: 50 });
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.all_passed(), "{a:?}");
    }
}
