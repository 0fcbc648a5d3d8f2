use proptest::prelude::*;
use solvmat::group::{
    commutative_square_check, eval_in, normal_form, order_in_g, word_normal_form, GroupWord, Letter, Order,
};
use solvmat::ideal::SContext;
use solvmat::matrix::{CoeffRing, LaurentRing, SRing, STRing, TruncRing};
use solvmat::ring::Assignment;

fn word(max_len: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=max_len).prop_map(GroupWord::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_homomorphism(u in word(6), v in word(6)) {
        let r = LaurentRing::free();
        prop_assert_eq!(eval_in(&r, &u.concat(&v)), r.mat_mul(&eval_in(&r, &u), &eval_in(&r, &v)));
        prop_assert!(r.is_identity(&eval_in(&r, &u.concat(&u.inverse()))));
        prop_assert_eq!(eval_in(&r, &u), eval_in(&r, &u.reduced()));
    }

    #[test]
    fn rings_agree_through_their_maps(w in word(8)) {
        let ctx = SContext::new(3).unwrap();
        let free = eval_in(&LaurentRing::free(), &w);
        let meta = eval_in(&LaurentRing::metabelian(), &w);
        prop_assert_eq!(&free.specialize(&Assignment::T_TO_ONE), &meta);

        let s = SRing::new(ctx.clone());
        let st = STRing::new(ctx.clone());
        prop_assert_eq!(eval_in(&s, &w), meta.map(|e| s.embed(e)));
        prop_assert_eq!(eval_in(&st, &w), free.map(|e| st.embed(e)));
        prop_assert!(commutative_square_check(&w, &ctx));

        let trunc = TruncRing { degree: 4 };
        prop_assert_eq!(eval_in(&trunc, &w), meta.map(|e| trunc.embed(e)));
    }

    #[test]
    fn determinant_is_a_unit(w in word(10)) {
        let r = LaurentRing::free();
        let det = r.det(&eval_in(&r, &w));
        let u = det.as_unit().expect("unit");
        prop_assert_eq!(u.exp.t as i64, w.t_exponent_sum());
        let nf = normal_form(&eval_in(&LaurentRing::metabelian(), &w)).unwrap();
        prop_assert!(nf.satisfies_constraint());
        prop_assert_eq!(word_normal_form(&w).unwrap(), nf);
    }

    #[test]
    fn orders_at_prime_q(w in word(8), q in prop::sample::select(vec![2u64, 3, 5])) {
        let ctx = SContext::new(q).unwrap();
        match order_in_g(&w, &ctx).unwrap() {
            Order::Finite { order } => {
                prop_assert_eq!(w.t_exponent_sum(), 0);
                prop_assert_eq!(q % order, 0);
            }
            Order::Infinite { det_t_degree } => prop_assert_eq!(det_t_degree, w.t_exponent_sum()),
        }
    }
}

#[test]
fn word_syntax() {
    assert_eq!(GroupWord::parse("a b A B").unwrap().to_string(), "abAB");
    assert_eq!(GroupWord::parse("1").unwrap(), GroupWord::empty());
    assert!(GroupWord::parse("abx").is_err());
    assert_eq!(GroupWord::parse("abBA").unwrap().reduced(), GroupWord::empty());
}
