//! `(t-1)`-adic structure of matrices over `R[t^±1]`.
//!
//! Every `g` has a formal expansion `g = A_0 + (t-1) A_1 + (t-1)^2 A_2 + ...`
//! with `t`-free coefficients. The checks here never build that series:
//!
//! * `(t-1)^d` divides `g - I` exactly when `A_0 = I` and `A_1 = ... =
//!   A_(d-1) = 0`, so the valuation is computed by repeated exact division.
//! * All `A_i` lie in `Sigma^d` exactly when every `t`-coefficient of `g - I`
//!   does. One direction is clear, since the `A_i` are integer combinations
//!   of those coefficients. For the other, if the expansion over `R/Sigma^d`
//!   vanishes, then the image of `g - I`, a Laurent polynomial in `t` of some
//!   width `n`, is divisible by `(t-1)^m` for every `m`, and a nonzero
//!   polynomial of degree `n` is not divisible by `(t-1)^(n+1)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::group::{CommutatorTree, Evaluator, GroupError};
use crate::matrix::{CoeffRing, LaurentRing, Matrix2, SeriesRing, TPolyRing, TruncRing};
use crate::ring::{Assignment, LaurentPoly, RingError, Valuation};

/// `[[1, 0], [-1, 0]]`, with `T = I + (t-1) S` and `M2T = M2 (I + (t-1) S)`.
pub fn shift_matrix() -> Matrix2<LaurentPoly> {
    Matrix2::new(LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::constant(-1), LaurentPoly::zero())
}

/// `T = [[t, 0], [1-t, 1]]`.
pub fn t_matrix() -> Matrix2<LaurentPoly> {
    let t = LaurentPoly::t();
    Matrix2::new(t.clone(), LaurentPoly::zero(), LaurentPoly::one() - t, LaurentPoly::one())
}

fn at_t_one(g: &Matrix2<LaurentPoly>) -> Matrix2<LaurentPoly> {
    g.specialize(&Assignment::T_TO_ONE)
}

fn minus_identity(g: &Matrix2<LaurentPoly>) -> Matrix2<LaurentPoly> {
    let r = LaurentRing::free();
    r.mat_sub(g, &r.identity())
}

/// `A_0, ..., A_n` by `g_0 = g`, `A_i = g_i(t = 1)`, `g_(i+1) = (g_i - A_i)/(t-1)`.
pub fn formal_coefficients(g: &Matrix2<LaurentPoly>, n: usize) -> Vec<Matrix2<LaurentPoly>> {
    let r = LaurentRing::free();
    let mut out = Vec::with_capacity(n + 1);
    let mut gi = g.clone();
    for i in 0..=n {
        let a = at_t_one(&gi);
        if i == n {
            out.push(a);
            break;
        }
        let diff = r.mat_sub(&gi, &a);
        gi = diff.map(|e| e.div_t_minus_one().expect("vanishes at t = 1"));
        out.push(a);
    }
    out
}

/// The single coefficient `A_i`.
pub fn formal_coefficient(g: &Matrix2<LaurentPoly>, i: usize) -> Matrix2<LaurentPoly> {
    formal_coefficients(g, i).pop().expect("nonempty")
}

/// Largest `d` with `(t-1)^d` dividing every entry of `g - I`; infinite iff `g = I`.
pub fn t1_valuation(g: &Matrix2<LaurentPoly>) -> Valuation {
    let mut m = minus_identity(g);
    if m.entries().all(LaurentPoly::is_zero) {
        return Valuation::Infinite;
    }
    let mut d = 0;
    loop {
        let next: Option<Vec<LaurentPoly>> = m.entries().map(|e| e.div_t_minus_one()).collect();
        match next {
            Some(v) => {
                let mut it = v.into_iter();
                let mut take = || it.next().expect("four entries");
                m = Matrix2::new(take(), take(), take(), take());
                d += 1;
            }
            None => return Valuation::Finite(d),
        }
    }
}

/// Smallest `Sigma`-valuation over the `t`-coefficients of the entries of `g - I`.
pub fn sigma_valuation_of_coefficients(g: &Matrix2<LaurentPoly>) -> Result<Valuation, RingError> {
    let mut best = Valuation::Infinite;
    for e in minus_identity(g).entries() {
        for c in e.t_coefficients().values() {
            let v = c.sigma_valuation()?;
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// Every formal coefficient of `g - I` lies in `Sigma^d`.
pub fn vanishes_mod_sigma(g: &Matrix2<LaurentPoly>, d: u32) -> bool {
    minus_identity(g).entries().all(|e| {
        e.t_coefficients()
            .values()
            .all(|c| c.sigma_valuation().expect("t-free coefficient").at_least(d))
    })
}

/// What is known about a `(t-1)`-valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValuationBound {
    Exact(u32),
    AtLeast(u32),
    Infinite,
}

impl ValuationBound {
    pub fn at_least(self, d: u32) -> bool {
        match self {
            ValuationBound::Exact(v) | ValuationBound::AtLeast(v) => v >= d,
            ValuationBound::Infinite => true,
        }
    }
}

impl From<Valuation> for ValuationBound {
    fn from(v: Valuation) -> Self {
        match v {
            Valuation::Finite(d) => ValuationBound::Exact(d),
            Valuation::Infinite => ValuationBound::Infinite,
        }
    }
}

impl fmt::Display for ValuationBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationBound::Exact(v) => write!(f, "{v}"),
            ValuationBound::AtLeast(v) => write!(f, ">={v}"),
            ValuationBound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ValuationBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Outcome of the derived-layer test for one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LayerCheck {
    pub k: u32,
    pub valuation: ValuationBound,
    pub required_valuation: u32,
    pub sigma_power: u32,
    pub sigma_ok: bool,
}

impl LayerCheck {
    pub fn passed(&self) -> bool {
        self.valuation.at_least(self.required_valuation) && self.sigma_ok
    }
}

fn layer_params(k: u32) -> (u32, u32) {
    assert!(k >= 2, "derived layers start at k = 2");
    let d = 1u32 << (k - 2);
    (d, 2 * d)
}

/// For `g` in the `k`-th derived subgroup (`k >= 2`): `g = I + (t-1)^d A_d + ...`
/// with `d = 2^(k-2)` and all `A_i` in `Sigma^(2d)`.
pub fn check_derived_layer(g: &Matrix2<LaurentPoly>, k: u32) -> bool {
    derived_layer(g, k).passed()
}

pub fn derived_layer(g: &Matrix2<LaurentPoly>, k: u32) -> LayerCheck {
    let (d, sigma_power) = layer_params(k);
    let valuation = ValuationBound::from(t1_valuation(g));
    LayerCheck {
        k,
        valuation,
        required_valuation: d,
        sigma_power,
        sigma_ok: vanishes_mod_sigma(g, sigma_power),
    }
}

/// [`derived_layer`] for a commutator tree without expanding it over `R[t^±1]`.
///
/// Entries of deep trees are far too large to write down, so the tree is
/// evaluated in two exact images instead: `R[s]/(s^(d+1))` with `t = 1 + s`,
/// where `g = I` exactly when `(t-1)^(d+1)` divides `g - I` (the first
/// nonzero `s`-coefficient gives the exact valuation below that), and
/// `(R/Sigma^(2d))[t^±1]`, where `g = I` exactly when every `t`-coefficient
/// of `g - I` lies in `Sigma^(2d)`.
pub fn derived_layer_of_tree(tree: &CommutatorTree, k: u32) -> Result<LayerCheck, GroupError> {
    let (d, sigma_power) = layer_params(k);
    let order = d as usize + 1;
    let series = SeriesRing::new(LaurentRing::metabelian(), order);
    let g = tree.eval(&Evaluator::new(&series))?;
    let diff = series.mat_sub(&g, &series.identity());
    let first = (0..order).find(|&i| diff.entries().any(|e| !e[i].is_zero()));
    let valuation = match first {
        Some(v) => ValuationBound::Exact(v as u32),
        None => ValuationBound::AtLeast(order as u32),
    };
    let trunc = TPolyRing::new(TruncRing {
        degree: sigma_power as usize,
    });
    let h = tree.eval(&Evaluator::new(&trunc))?;
    Ok(LayerCheck {
        k,
        valuation,
        required_valuation: d,
        sigma_power,
        sigma_ok: trunc.is_identity(&h),
    })
}

/// The first `n + 1` formal coefficients modulo `Sigma^c`, computed in
/// `(R/Sigma^c)[s]/(s^(n+1))`; entry `i` is zero when `A_i` lies in `Sigma^c`.
pub fn coefficients_mod_sigma(tree: &CommutatorTree, n: usize, c: usize) -> Result<Vec<bool>, GroupError> {
    let series = SeriesRing::new(TruncRing { degree: c }, n + 1);
    let g = tree.eval(&Evaluator::new(&series))?;
    let zero_rhs = |i: usize, m: &Matrix2<Vec<crate::ring::TruncatedPoly>>| {
        // A_0 is compared with I, the rest with 0
        let want = |r: usize, col: usize| {
            if i == 0 && r == col {
                series.base.one()
            } else {
                series.base.zero()
            }
        };
        (0..2).all(|r| (0..2).all(|col| m.m[r][col][i] == want(r, col)))
    };
    Ok((0..=n).map(|i| zero_rhs(i, &g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{eval_in, GroupWord};
    use crate::ring::parse_poly;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    fn word(s: &str) -> Matrix2<LaurentPoly> {
        eval_in(&LaurentRing::free(), &GroupWord::parse(s).unwrap())
    }

    #[test]
    fn shift_matrix_identities() {
        let r = LaurentRing::free();
        let s = shift_matrix();
        assert_eq!(r.mat_mul(&s, &s), s);
        let tm1 = LaurentPoly::t() - LaurentPoly::one();
        let i_plus = r.mat_sub(&r.identity(), &r.mat_scale(&-tm1, &s));
        assert_eq!(i_plus, t_matrix());
        let m2 = word("b").specialize(&Assignment::T_TO_ONE);
        assert_eq!(r.mat_mul(&m2, &i_plus), word("b"));
    }

    #[test]
    fn coefficients_of_t() {
        let a = formal_coefficients(&t_matrix(), 4);
        let r = LaurentRing::free();
        assert_eq!(a[0], r.identity());
        assert_eq!(a[1], shift_matrix());
        assert!(a[2..].iter().all(|m| m.entries().all(LaurentPoly::is_zero)));
    }

    #[test]
    fn coefficients_of_inverse_generator() {
        let r = LaurentRing::free();
        let m2_inv = word("B").specialize(&Assignment::T_TO_ONE);
        let a = formal_coefficients(&word("B"), 6);
        assert_eq!(a[0], m2_inv);
        let s_m2_inv = r.mat_mul(&shift_matrix(), &m2_inv);
        for (i, ai) in a.iter().enumerate().skip(1) {
            let sign = LaurentPoly::constant(if i % 2 == 0 { 1 } else { -1 });
            assert_eq!(*ai, r.mat_scale(&sign, &s_m2_inv), "A_{i}");
        }
        let free = word("aa");
        assert_eq!(formal_coefficient(&free, 0), free);
        assert!(formal_coefficient(&free, 3).entries().all(LaurentPoly::is_zero));
    }

    #[test]
    fn expansion_reproduces_polynomial_matrices() {
        let r = LaurentRing::free();
        let g = word("abab");
        let n = 8;
        let a = formal_coefficients(&g, n);
        let tm1 = LaurentPoly::t() - LaurentPoly::one();
        let mut acc = Matrix2::new(p("0"), p("0"), p("0"), p("0"));
        for (i, ai) in a.iter().enumerate() {
            let scaled = r.mat_scale(&tm1.pow(i as u32), ai);
            acc = Matrix2::new(
                &acc.m[0][0] + &scaled.m[0][0],
                &acc.m[0][1] + &scaled.m[0][1],
                &acc.m[1][0] + &scaled.m[1][0],
                &acc.m[1][1] + &scaled.m[1][1],
            );
        }
        assert_eq!(acc, g);
    }

    #[test]
    fn valuations() {
        let r = LaurentRing::free();
        assert_eq!(t1_valuation(&r.identity()), Valuation::Infinite);
        assert_eq!(t1_valuation(&t_matrix()), Valuation::Finite(1));
        let tinv = Matrix2::new(p("t^-1"), p("0"), p("0"), p("1"));
        assert_eq!(t1_valuation(&tinv), Valuation::Finite(1));
        assert_eq!(t1_valuation(&word("a")), Valuation::Finite(0));
    }

    #[test]
    fn tree_route_matches_direct_expansion() {
        use crate::group::sample_rng;
        let ring = LaurentRing::free();
        let ev = Evaluator::new(&ring);
        for (k, seeds) in [(2u32, 0..6u64), (3, 0..3)] {
            for seed in seeds {
                let tree = CommutatorTree::random(&mut sample_rng(11, seed), k, 2);
                let g = tree.eval(&ev).unwrap();
                let direct = derived_layer(&g, k);
                let images = derived_layer_of_tree(&tree, k).unwrap();
                assert_eq!(direct.sigma_ok, images.sigma_ok, "{tree}");
                assert_eq!(direct.passed(), images.passed(), "{tree}");
                match (direct.valuation, images.valuation) {
                    (ValuationBound::Exact(a), ValuationBound::Exact(b)) => assert_eq!(a, b),
                    (ValuationBound::Exact(a), ValuationBound::AtLeast(b)) => assert!(a >= b),
                    (ValuationBound::Infinite, ValuationBound::AtLeast(_)) => {}
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn sigma_vanishing() {
        let r = LaurentRing::free();
        assert!(vanishes_mod_sigma(&r.identity(), 5));
        assert!(vanishes_mod_sigma(&word("abAB"), 1));
        // every t-free group element is congruent to I modulo Sigma
        assert!(vanishes_mod_sigma(&word("a"), 1));
        assert!(!vanishes_mod_sigma(&word("a"), 2));
        assert!(!vanishes_mod_sigma(&word("b"), 1));
        assert!(check_derived_layer(&r.identity(), 3));
    }
}
