use badprimes::cycles::{cayley_form, PointCycle, ProjPoint};
use badprimes::modp::{reduce_mod_p, squarefree_mod_p};
use badprimes::poly::{format_poly, gcd, parse_poly, HomPoly, IntPoly, Integers, Poly, Rationals};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn form(nvars: usize, degree: u32, terms: Vec<(Vec<usize>, i64)>) -> HomPoly {
    Poly::from_exps(
        Rationals,
        nvars,
        terms.into_iter().map(|(picks, c)| {
            let mut e = vec![0u32; nvars];
            for k in picks.into_iter().take(degree as usize) {
                e[k % nvars] += 1;
            }
            let fill = degree - e.iter().sum::<u32>();
            e[0] += fill;
            (e, BigRational::from_integer(c.into()))
        }),
    )
}

prop_compose! {
    fn homogeneous(max_vars: usize, max_degree: u32, coeff: i64)
        (nvars in 1..=max_vars, degree in 0..=max_degree)
        (terms in prop::collection::vec(
            (prop::collection::vec(0..nvars, degree as usize), (-coeff..=coeff).prop_filter("nonzero", |c| *c != 0)),
            1..8),
         nvars in Just(nvars), degree in Just(degree))
        -> HomPoly
    {
        form(nvars, degree, terms)
    }
}

fn to_int(f: &HomPoly) -> IntPoly {
    f.map_ring(Integers, |c| c.to_integer())
}

fn sum_sq(f: &HomPoly) -> BigUint {
    f.terms().iter().map(|(_, c)| (c.numer() * c.numer()).to_biguint().unwrap()).sum()
}

fn binom(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

proptest! {
    #[test]
    fn euler_relation(f in homogeneous(4, 5, 50)) {
        prop_assume!(!f.is_zero());
        let delta = f.total_degree().unwrap();
        let mut acc = Poly::zero(Rationals, f.nvars());
        for v in 0..f.nvars() {
            acc = acc.add(&Poly::var(Rationals, f.nvars(), v).mul(&f.derivative(v)));
        }
        prop_assert_eq!(acc, f.scale(&BigRational::from_integer(delta.into())));
    }

    #[test]
    fn format_parse_round_trip(f in homogeneous(4, 5, 1000)) {
        let text = format_poly(&f, "T");
        prop_assert_eq!(parse_poly(&text, f.nvars()).unwrap(), f);
    }

    #[test]
    fn gcd_contract(a in homogeneous(3, 2, 9), b in homogeneous(3, 2, 9), h in homogeneous(3, 2, 9)) {
        let n = a.nvars().max(b.nvars()).max(h.nvars());
        let (a, b, h) = (to_int(&a.with_nvars(n)), to_int(&b.with_nvars(n)), to_int(&h.with_nvars(n)));
        prop_assume!(!a.is_zero() && !b.is_zero() && !h.is_zero());
        let (x, y) = (a.mul(&h), b.mul(&h));
        let g = gcd::gcd(&x, &y);
        prop_assert!(x.div_exact(&g).is_some());
        prop_assert!(y.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&h).is_some());
    }

    #[test]
    fn derivative_norm_growth(f in homogeneous(4, 6, 200)) {
        prop_assume!(!f.is_zero() && f.total_degree().unwrap() > 0);
        let delta = f.total_degree().unwrap();
        let bound = BigUint::from(delta * delta) * sum_sq(&f);
        for v in 0..f.nvars() {
            prop_assert!(sum_sq(&f.derivative(v)) <= bound);
        }
    }

    #[test]
    fn reduction_commutes_with_products(a in homogeneous(3, 3, 30), b in homogeneous(3, 3, 30), p in prop::sample::select(vec![2u128, 3, 5, 7, 11, 13])) {
        let n = a.nvars().max(b.nvars());
        let (a, b) = (to_int(&a.with_nvars(n)), to_int(&b.with_nvars(n)));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (_, pa) = badprimes::poly::int_primitive(&a).unwrap();
        let (_, pb) = badprimes::poly::int_primitive(&b).unwrap();
        let prod = pa.mul(&pb);
        let ra = reduce_mod_p(&pa, p).unwrap();
        let rb = reduce_mod_p(&pb, p).unwrap();
        prop_assert_eq!(reduce_mod_p(&prod, p).unwrap(), ra.mul(&rb));
        // a square factor mod p survives multiplication
        if !squarefree_mod_p(&ra).unwrap() {
            prop_assert!(!squarefree_mod_p(&ra.mul(&rb)).unwrap());
        }
        let sq = pa.mul(&pa);
        if pa.total_degree().unwrap() > 0 {
            prop_assert!(!squarefree_mod_p(&reduce_mod_p(&sq, p).unwrap()).unwrap());
        }
    }

    #[test]
    fn cycle_union_multiplies_cayley_forms(
        xs in prop::collection::vec(prop::collection::vec(-20i64..=20, 3), 1..4),
        ys in prop::collection::vec(prop::collection::vec(-20i64..=20, 3), 1..4),
    ) {
        let cycle = |pts: &[Vec<i64>]| {
            let points: Vec<(ProjPoint, u32)> =
                pts.iter().filter_map(|c| ProjPoint::from_i64(c).ok()).map(|p| (p, 1)).collect();
            PointCycle::new(2, points).ok()
        };
        let (Some(a), Some(b)) = (cycle(&xs), cycle(&ys)) else { return Ok(()) };
        let u = a.union(&b).unwrap();
        prop_assert_eq!(u.degree(), a.degree() + b.degree());
        prop_assert_eq!(cayley_form(&u), cayley_form(&a).mul(&cayley_form(&b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn l2_sandwich(f in homogeneous(4, 6, 1000)) {
        prop_assume!(!f.is_zero());
        let n = f.nvars() as u64 - 1;
        let delta = f.total_degree().unwrap() as u64;
        let max = f.terms().iter().map(|(_, c)| c.numer().abs()).max().unwrap();
        let max2 = (&max * &max).to_biguint().unwrap();
        let s = sum_sq(&f);
        prop_assert!(max2 <= s);
        prop_assert!(s <= binom(n + delta, delta) * max2);
    }

    #[test]
    fn omega_never_exceeds_log_ratio(a in 1u64..=1_000_000_000_000, n0 in 2u64..=1000) {
        let r = badprimes::bounds::omega_count(&BigInt::from(a), n0 as f64).unwrap();
        prop_assert!(BigUint::from(n0).pow(r.count as u32) <= BigUint::from(a));
    }

    #[test]
    fn constante_holds(
        n in 1u32..=6,
        raw in prop::collection::vec(1u64..=15, 1..=7),
        r in 1.0f64..1e6,
    ) {
        let a: Vec<u64> = raw.into_iter().take(n as usize + 1).collect();
        prop_assert!(badprimes::bounds::check_constante_inequalities(&a, r, n).unwrap().all());
    }
}
