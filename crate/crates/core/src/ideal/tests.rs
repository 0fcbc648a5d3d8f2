use num_bigint::BigInt;
use num_traits::Zero;

use super::*;
use crate::ring::{dimension, parse_poly, LaurentPoly, TruncatedPoly};

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn poly(degree: usize, coeffs: &[i64]) -> TruncatedPoly {
    let mut v = big(coeffs);
    v.resize(dimension(degree), BigInt::zero());
    TruncatedPoly::from_coeffs(degree, v).unwrap()
}

#[test]
fn generator_at_trivial_unit_is_q() {
    for q in [2, 3, 5] {
        let gens = cyclotomic_generators(q, 3, 3);
        assert_eq!(gens[0], TruncatedPoly::one(3).scale(&BigInt::from(q)));
    }
}

#[test]
fn generator_examples() {
    // grid order is i-major: index 1 is u = y, index grid is u = x
    let g2 = cyclotomic_generators(2, 2, 2);
    assert_eq!(g2[2], poly(2, &[2, -1, 0]), "1 + x = 2 - a");
    let g3 = cyclotomic_generators(3, 3, 3);
    // 1 + y + y^2 = 3 - 3b + b^2; coordinates [1, a, b, a^2, ab, b^2]
    assert_eq!(g3[1], poly(3, &[3, 0, -3, 0, 0, 1]));
}

#[test]
fn unit_ideal_is_everything() {
    let basis = build_ideal_lattice(&[TruncatedPoly::one(3)], 3).unwrap();
    assert_eq!(basis.rank(), 6);
    assert!(basis.pivots().all(|(_, p)| *p == BigInt::from(1)));
}

#[test]
fn cyclotomic_two_at_degree_two() {
    let params = BurnsideParams::new(2).unwrap();
    let ideal = IdealLattice::cyclotomic(&params, 2).unwrap();
    let rows: Vec<_> = ideal.basis().rows().cloned().collect();
    assert_eq!(rows, vec![big(&[2, 0, 0]), big(&[0, 1, 0]), big(&[0, 0, 1])]);
    let prod = ideal.times_sigma().unwrap();
    let rows: Vec<_> = prod.basis().rows().cloned().collect();
    assert_eq!(rows, vec![big(&[0, 2, 0]), big(&[0, 0, 2])]);
    assert_eq!(prod.label, IdealLabel::CyclotomicTimesSigma);
}

#[test]
fn product_ideal_from_generators_matches_derived_construction() {
    for q in [2, 3, 4] {
        let params = BurnsideParams::new(q).unwrap();
        let d = params.degree;
        let gens: Vec<_> = cyclotomic_generators(q, d, d)
            .into_iter()
            .flat_map(|g| [g.mul_a(), g.mul_b()])
            .collect();
        let direct = build_ideal_lattice(&gens, d).unwrap();
        let derived = IdealLattice::cyclotomic(&params, d).unwrap().times_sigma().unwrap();
        assert_eq!(&direct, derived.basis(), "q={q}");
    }
}

#[test]
fn membership_examples() {
    let params = BurnsideParams::new(3).unwrap();
    let ideal = IdealLattice::cyclotomic(&params, params.degree).unwrap();
    assert!(ideal.contains(&LaurentPoly::constant(3)).unwrap());
    assert!(ideal.contains(&parse_poly("(1-x)^2").unwrap()).unwrap());
    assert!(!ideal.contains(&parse_poly("1-x").unwrap()).unwrap());
    assert!(!ideal.contains(&LaurentPoly::one()).unwrap());
    assert!(matches!(ideal.contains(&LaurentPoly::t()), Err(IdealError::Ring(_))));
}

#[test]
fn inclusions_for_small_q() {
    for q in [2, 3, 4, 5, 7] {
        let params = BurnsideParams::new(q).unwrap();
        let k = params.bound as usize;
        let ideal = IdealLattice::cyclotomic(&params, params.degree).unwrap();
        for r in 0..=k {
            let m = TruncatedPoly::monomial(params.degree, r, k - r);
            assert!(ideal.contains_truncated(&m).unwrap(), "q={q} a^{r} b^{}", k - r);
        }
        let witness = (0..k).any(|r| {
            let m = TruncatedPoly::monomial(params.degree, r, k - 1 - r);
            !ideal.contains_truncated(&m).unwrap()
        });
        assert!(witness, "q={q}: degree e*phi-1 should not be contained");
    }
}

#[test]
fn augmentation_and_closure() {
    for q in [2, 3, 4, 5] {
        let ctx = SContext::new(q).unwrap();
        for row in ctx.cyclotomic.basis().rows() {
            assert!((&row[0] % BigInt::from(q)).is_zero());
        }
        for row in ctx.lattice.basis().rows() {
            assert!(row[0].is_zero());
        }
        assert!(ctx.cyclotomic.is_closed());
        assert!(ctx.lattice.is_closed());
        assert!(ctx.cyclotomic.contains_ideal(&ctx.lattice));
        let sigma_d = IdealLattice::sigma_power(params_degree(q), params_degree(q));
        assert!(ctx.lattice.contains_ideal(&sigma_d));
    }
}

fn params_degree(q: u64) -> usize {
    BurnsideParams::new(q).unwrap().degree
}

#[test]
fn refined_inclusion_small() {
    let q4 = BurnsideParams::new(4).unwrap();
    assert_eq!(p_power_sigma_check(&q4, 1, 3), Ok(true));
    assert_eq!(p_power_sigma_check(&q4, 0, 4), Ok(true));
    assert!(matches!(p_power_sigma_check(&q4, 1, 2), Err(IdealError::Precondition(_))));
    assert!(matches!(p_power_sigma_check(&q4, 2, 4), Err(IdealError::Precondition(_))));
    let q5 = BurnsideParams::new(5).unwrap();
    assert!(matches!(p_power_sigma_check(&q5, 0, 4), Err(IdealError::Precondition(_))));
}

#[test]
fn sigma_power_lattice() {
    let l = IdealLattice::sigma_power(2, 4);
    assert_eq!(l.basis().rank(), dimension(4) - dimension(2));
    assert!(l.contains(&parse_poly("(1-x)*(1-y)").unwrap()).unwrap());
    assert!(!l.contains(&parse_poly("1-x").unwrap()).unwrap());
    assert!(l.is_closed());
}

#[test]
fn s_reduce_examples() {
    let ctx = SContext::new(2).unwrap();
    assert!(ctx.reduce(&TruncatedPoly::zero(2)).unwrap().is_zero());
    assert!(ctx.reduce(&poly(2, &[0, 2, 0])).unwrap().is_zero());
    let v = poly(2, &[5, 3, -7]);
    let r = ctx.reduce(&v).unwrap();
    assert_eq!(r.coeffs(), &[5, 1, 1]);
    assert_eq!(ctx.reduce(&r.to_truncated(2)).unwrap(), r);
    assert!(matches!(ctx.reduce(&TruncatedPoly::zero(3)), Err(IdealError::DegreeMismatch { .. })));
}

#[test]
fn s_arithmetic_examples() {
    for q in [2, 3, 5] {
        let ctx = SContext::new(q).unwrap();
        let x = ctx.from_laurent(&LaurentPoly::x()).unwrap();
        let xinv = ctx.from_laurent(&LaurentPoly::xyt(-1, 0, 0)).unwrap();
        assert!(ctx.mul(&x, &xinv).unwrap().is_one());
        assert!(ctx.mul(&x, &ctx.zero()).unwrap().is_zero());
        assert_eq!(ctx.inverse(&x).unwrap(), xinv);
        let xy = ctx.from_laurent(&parse_poly("-x*y^2").unwrap()).unwrap();
        let inv = ctx.inverse(&xy).unwrap();
        assert!(ctx.mul(&xy, &inv).unwrap().is_one());
        // u^q = 1 for every positive unit
        let mut p = ctx.one();
        for _ in 0..q {
            p = ctx.mul(&p, &x).unwrap();
        }
        assert!(p.is_one(), "x^{q} = 1 in S({q})");
    }
    let ctx = SContext::new(2).unwrap();
    let a = ctx.from_laurent(&parse_poly("1-x").unwrap()).unwrap();
    assert!(ctx.mul(&a, &a).unwrap().is_zero());
    let other = SContext::new(3).unwrap();
    assert!(matches!(ctx.add(&a, &other.one()), Err(IdealError::ContextMismatch { .. })));
    assert!(ctx.inverse(&ctx.zero()).is_none());
}

#[test]
fn cache_roundtrip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    let (ctx, status) = cache.s_context(3).unwrap();
    assert_eq!(status, [CacheStatus::Miss, CacheStatus::Miss]);
    let (again, status) = cache.s_context(3).unwrap();
    assert_eq!(status, [CacheStatus::Hit, CacheStatus::Hit]);
    assert_eq!(again.lattice, ctx.lattice);
    let path = cache.path_for(IdealLabel::CyclotomicTimesSigma, 3, 3);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(encode(&decode(&text, IdealLabel::CyclotomicTimesSigma, 3, 3).unwrap()), text);
    assert!(text.starts_with("cyclotomic_sigma 3 3 6\n"));
}

#[test]
fn corrupted_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    cache.s_context(2).unwrap();
    let path = cache.path_for(IdealLabel::Cyclotomic, 2, 2);
    std::fs::write(&path, "cyclotomic 2 2 4\n2 0 0\n").unwrap();
    let (_, status) = cache.s_context(2).unwrap();
    assert!(matches!(&status[0], CacheStatus::Rebuilt(_)));
    assert_eq!(status[1], CacheStatus::Hit);
    // rows that are not reduced HNF are rejected too
    std::fs::write(&path, "cyclotomic 2 2 3\n2 5 0\n0 1 0\n0 0 1\n").unwrap();
    assert!(cache.load(IdealLabel::Cyclotomic, 2, 2).is_err());
    let (_, status) = cache.s_context(2).unwrap();
    assert!(matches!(&status[0], CacheStatus::Rebuilt(_)));
    assert_eq!(cache.verify(2).unwrap(), vec![(IdealLabel::Cyclotomic, true), (IdealLabel::CyclotomicTimesSigma, true)]);
    assert_eq!(cache.clear().unwrap(), 2);
}
