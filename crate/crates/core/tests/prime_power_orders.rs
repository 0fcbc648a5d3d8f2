//! For proper prime powers q, zero exponent sum in T does not force w^q = 1.
//! The check here avoids the S[t^±1] arithmetic: the power is formed over
//! Z[x^±1, y^±1, t^±1] and each t-coefficient is reduced into S(q) separately.

use solvmat::group::{eval_in, order_in_g, GroupWord, Order};
use solvmat::ideal::SContext;
use solvmat::matrix::LaurentRing;

fn power_is_identity_via_free_ring(w: &str, q: u64) -> bool {
    let ctx = SContext::new(q).unwrap();
    let w = GroupWord::parse(w).unwrap();
    let m = eval_in(&LaurentRing::free(), &w.pow(q as usize));
    m.m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, e)| {
            let coeffs = e.t_coefficients();
            let diag_ok = i != j || coeffs.contains_key(&0);
            diag_ok
                && coeffs.iter().all(|(&k, c)| {
                    let s = ctx.from_laurent(c).unwrap();
                    if i == j && k == 0 {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
        })
    })
}

#[test]
fn commutator_has_exponent_q_for_primes() {
    for q in [2, 3, 5] {
        assert!(power_is_identity_via_free_ring("abAB", q), "q={q}");
        assert!(power_is_identity_via_free_ring("abaB", q), "q={q}");
    }
}

#[test]
fn commutator_exponent_fails_at_four() {
    assert!(!power_is_identity_via_free_ring("abAB", 4));
    assert!(!power_is_identity_via_free_ring("abaB", 4));
    // the conjugate of a generator still has order q
    assert!(power_is_identity_via_free_ring("baB", 4));
    let ctx = SContext::new(4).unwrap();
    assert!(order_in_g(&GroupWord::parse("abAB").unwrap(), &ctx).is_err());
    assert_eq!(order_in_g(&GroupWord::parse("baB").unwrap(), &ctx), Ok(Order::Finite { order: 4 }));
}

#[test]
fn zero_sum_word_fails_at_nine() {
    assert!(!power_is_identity_via_free_ring("abaB", 9));
}
