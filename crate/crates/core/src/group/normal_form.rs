//! Elements of `F(R)` written as `u*I + N`, where row `i` of `N` is
//! `lambda_i * (1-x, 1-y)` and `lambda_1 (1-x) + lambda_2 (1-y) = 1 - u`.

use std::fmt;

use crate::matrix::{CoeffRing, LaurentRing, Matrix2};
use crate::ring::{LaurentPoly, UnitMonomial};

use super::eval::eval_in;
use super::word::{GroupWord, Letter};
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub u: UnitMonomial,
    pub lambda1: LaurentPoly,
    pub lambda2: LaurentPoly,
}

fn one_minus_x() -> LaurentPoly {
    LaurentPoly::one() - LaurentPoly::x()
}

fn one_minus_y() -> LaurentPoly {
    LaurentPoly::one() - LaurentPoly::y()
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm {
            u: UnitMonomial::positive(Default::default()),
            lambda1: LaurentPoly::zero(),
            lambda2: LaurentPoly::zero(),
        }
    }

    /// The nilpotent part `N`.
    pub fn n_matrix(&self) -> Matrix2<LaurentPoly> {
        let (a, b) = (one_minus_x(), one_minus_y());
        Matrix2::new(&self.lambda1 * &a, &self.lambda1 * &b, &self.lambda2 * &a, &self.lambda2 * &b)
    }

    pub fn to_matrix(&self) -> Matrix2<LaurentPoly> {
        let u = self.u.to_poly();
        let n = self.n_matrix();
        Matrix2::new(&u + &n.m[0][0], n.m[0][1].clone(), n.m[1][0].clone(), &u + &n.m[1][1])
    }

    /// `lambda_1 (1-x) + lambda_2 (1-y) = 1 - u`.
    pub fn satisfies_constraint(&self) -> bool {
        &self.lambda1 * &one_minus_x() + &self.lambda2 * &one_minus_y() == LaurentPoly::one() - self.u.to_poly()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = {}, lambda1 = {}, lambda2 = {}", self.u.to_poly(), self.lambda1, self.lambda2)
    }
}

/// Decomposes a matrix of `F(R)` (no `t`).
pub fn normal_form(m: &Matrix2<LaurentPoly>) -> Result<NormalForm, GroupError> {
    let bad = |why: &str| GroupError::NonConforming(why.to_string());
    if m.entries().any(LaurentPoly::has_t) {
        return Err(bad("entries involve t"));
    }
    let det = LaurentRing::free().det(m);
    let u = det
        .as_unit()
        .filter(|u| u.is_positive())
        .ok_or_else(|| bad("determinant is not a positive unit"))?;
    let up = u.to_poly();
    let extract = |diag: &LaurentPoly, off: &LaurentPoly, diag_is_x: bool| -> Option<LaurentPoly> {
        let d = diag - &up;
        if diag_is_x {
            d.div_one_minus_x().or_else(|| off.div_one_minus_y())
        } else {
            off.div_one_minus_x().or_else(|| d.div_one_minus_y())
        }
    };
    let lambda1 = extract(&m.m[0][0], &m.m[0][1], true).ok_or_else(|| bad("row 1 is not a multiple of (1-x, 1-y)"))?;
    let lambda2 = extract(&m.m[1][1], &m.m[1][0], false).ok_or_else(|| bad("row 2 is not a multiple of (1-x, 1-y)"))?;
    let nf = NormalForm { u, lambda1, lambda2 };
    if nf.to_matrix() != *m {
        return Err(bad("reconstruction differs from the input"));
    }
    if !nf.satisfies_constraint() {
        return Err(bad("lambda1 (1-x) + lambda2 (1-y) != 1 - u"));
    }
    Ok(nf)
}

/// `M^n = u^n + (1 + u + ... + u^(n-1)) N`.
pub fn power_closed_form(nf: &NormalForm, n: u32) -> Matrix2<LaurentPoly> {
    let u = nf.u.to_poly();
    let un = u.pow(n);
    let mut geom = LaurentPoly::zero();
    let mut power = LaurentPoly::one();
    for _ in 0..n {
        geom = &geom + &power;
        power = &power * &u;
    }
    let n_mat = nf.n_matrix();
    let scaled = n_mat.map(|e| &geom * e);
    Matrix2::new(
        &un + &scaled.m[0][0],
        scaled.m[0][1].clone(),
        scaled.m[1][0].clone(),
        &un + &scaled.m[1][1],
    )
}

/// Normal form of `W1 * W2`: `(u1 u2, u1 delta + lambda)`.
pub fn product_normal_form_rule(w1: &NormalForm, w2: &NormalForm) -> NormalForm {
    let u1 = w1.u.to_poly();
    let u = (&u1 * &w2.u.to_poly()).as_unit().expect("product of units");
    NormalForm {
        u,
        lambda1: &(&u1 * &w2.lambda1) + &w1.lambda1,
        lambda2: &(&u1 * &w2.lambda2) + &w1.lambda2,
    }
}

/// `(1-x, 1-y) M = (1-x, 1-y)`.
pub fn check_row_fixed(m: &Matrix2<LaurentPoly>) -> bool {
    let (a, b) = (one_minus_x(), one_minus_y());
    let c0 = &(&a * &m.m[0][0]) + &(&b * &m.m[1][0]);
    let c1 = &(&a * &m.m[0][1]) + &(&b * &m.m[1][1]);
    c0 == a && c1 == b
}

/// `g h g^-1 h^-1`, with inverses from the adjugate (determinants are units).
pub fn commutator<R: CoeffRing>(ring: &R, g: &Matrix2<R::Elem>, h: &Matrix2<R::Elem>) -> Result<Matrix2<R::Elem>, GroupError> {
    let gi = ring.mat_inverse(g).ok_or(GroupError::NotInvertible)?;
    let hi = ring.mat_inverse(h).ok_or(GroupError::NotInvertible)?;
    Ok(ring.mat_mul(&ring.mat_mul(g, h), &ring.mat_mul(&gi, &hi)))
}

/// The left-normed commutator `[M2, M1, M2 (b times), M1 (a times)]` and the
/// predicted normal form `lambda_1 = -(1-y)^(b+1) (1-x)^a`,
/// `lambda_2 = (1-y)^b (1-x)^(a+1)`. Its weight is `a + b + 2`.
pub fn basic_commutator(a: u32, b: u32) -> (GroupWord, NormalForm) {
    let m1 = GroupWord::letter(Letter::G1);
    let m2 = GroupWord::letter(Letter::G2T);
    let mut w = GroupWord::commutator(&m2, &m1);
    for _ in 0..b {
        w = GroupWord::commutator(&w, &m2);
    }
    for _ in 0..a {
        w = GroupWord::commutator(&w, &m1);
    }
    let (ox, oy) = (one_minus_x(), one_minus_y());
    let nf = NormalForm {
        u: UnitMonomial::positive(Default::default()),
        lambda1: -(oy.pow(b + 1) * ox.pow(a)),
        lambda2: oy.pow(b) * ox.pow(a + 1),
    };
    (w, nf)
}

/// The `t`-degree `k` of `det M = x^i y^j t^k`.
pub fn det_t_degree(m: &Matrix2<LaurentPoly>) -> Result<i64, GroupError> {
    let det = LaurentRing::free().det(m);
    let u = det
        .as_unit()
        .filter(|u| u.is_positive())
        .ok_or_else(|| GroupError::NonConforming(format!("determinant {det} is not a positive unit")))?;
    Ok(u.exp.t as i64)
}

/// Normal form of a word evaluated at `t = 1`.
pub fn word_normal_form(w: &GroupWord) -> Result<NormalForm, GroupError> {
    normal_form(&eval_in(&LaurentRing::metabelian(), w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, Exponent};

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    fn nf_of(w: &str) -> NormalForm {
        word_normal_form(&GroupWord::parse(w).unwrap()).unwrap()
    }

    #[test]
    fn generator_forms() {
        let m1 = nf_of("a");
        assert_eq!(m1.u, UnitMonomial::positive(Exponent::new(1, 0, 0)));
        assert_eq!((m1.lambda1.clone(), m1.lambda2.clone()), (p("1"), p("0")));
        let m2 = nf_of("b");
        assert_eq!(m2.u, UnitMonomial::positive(Exponent::new(0, 1, 0)));
        assert_eq!((m2.lambda1.clone(), m2.lambda2.clone()), (p("0"), p("1")));
        assert_eq!(nf_of("1"), NormalForm::identity());
    }

    #[test]
    fn commutator_of_generators() {
        let nf = nf_of("baBA");
        assert!(nf.u.to_poly().is_one());
        assert_eq!(nf.lambda1, p("-(1-y)"));
        assert_eq!(nf.lambda2, p("1-x"));
        let r = LaurentRing::metabelian();
        let m2 = eval_in(&r, &GroupWord::parse("b").unwrap());
        let m1 = eval_in(&r, &GroupWord::parse("a").unwrap());
        assert_eq!(normal_form(&commutator(&r, &m2, &m1).unwrap()).unwrap(), nf);
        assert!(r.is_identity(&commutator(&r, &m1, &m1).unwrap()));
        assert!(r.is_identity(&commutator(&r, &r.identity(), &m1).unwrap()));
    }

    #[test]
    fn square_of_m1() {
        let m = power_closed_form(&nf_of("a"), 2);
        assert_eq!(m, Matrix2::new(p("1"), p("(1+x)*(1-y)"), p("0"), p("x^2")));
        let direct = eval_in(&LaurentRing::metabelian(), &GroupWord::parse("aa").unwrap());
        assert_eq!(m, direct);
        assert_eq!(power_closed_form(&nf_of("abA"), 1), nf_of("abA").to_matrix());
    }

    #[test]
    fn basic_commutator_small_cases() {
        for (a, b, l1, l2) in [
            (0, 0, "-(1-y)", "1-x"),
            (1, 0, "-(1-y)*(1-x)", "(1-x)^2"),
            (0, 1, "-(1-y)^2", "(1-y)*(1-x)"),
            (2, 1, "-(1-y)^2*(1-x)^2", "(1-y)*(1-x)^3"),
        ] {
            let (w, predicted) = basic_commutator(a, b);
            assert_eq!(predicted.lambda1, p(l1));
            assert_eq!(predicted.lambda2, p(l2));
            assert_eq!(word_normal_form(&w).unwrap(), predicted, "a={a} b={b}");
        }
    }

    #[test]
    fn product_rule_on_generators() {
        let rule = product_normal_form_rule(&nf_of("a"), &nf_of("b"));
        assert_eq!(rule.u, UnitMonomial::positive(Exponent::new(1, 1, 0)));
        assert_eq!((rule.lambda1.clone(), rule.lambda2.clone()), (p("1"), p("x")));
        assert_eq!(rule, nf_of("ab"));
        assert!(rule.satisfies_constraint());
        assert_eq!(product_normal_form_rule(&nf_of("aB"), &NormalForm::identity()), nf_of("aB"));
    }

    #[test]
    fn non_conforming_inputs() {
        let m = Matrix2::new(p("2"), p("0"), p("0"), p("1"));
        assert!(matches!(normal_form(&m), Err(GroupError::NonConforming(_))));
        let m = Matrix2::new(p("x"), p("0"), p("0"), p("1"));
        assert!(matches!(normal_form(&m), Err(GroupError::NonConforming(_))));
        let free = eval_in(&LaurentRing::free(), &GroupWord::parse("b").unwrap());
        assert!(normal_form(&free).is_err());
    }

    #[test]
    fn row_fixed_and_det_degree() {
        let r = LaurentRing::metabelian();
        assert!(check_row_fixed(&r.identity()));
        assert!(check_row_fixed(&eval_in(&r, &GroupWord::parse("a").unwrap())));
        assert!(check_row_fixed(&eval_in(&r, &GroupWord::parse("abbAABaB").unwrap())));
        let free = LaurentRing::free();
        assert_eq!(det_t_degree(&eval_in(&free, &GroupWord::parse("b").unwrap())), Ok(1));
        assert_eq!(det_t_degree(&free.identity()), Ok(0));
        assert_eq!(det_t_degree(&eval_in(&free, &GroupWord::parse("BBaBab").unwrap())), Ok(-2));
    }
}
