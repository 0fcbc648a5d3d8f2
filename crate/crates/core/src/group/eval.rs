use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::ideal::{SContext, SElement};
use crate::matrix::{CoeffRing, LaurentRing, Matrix2, SRing, STPoly, STRing};
use crate::ring::LaurentPoly;

use super::word::{GroupWord, Letter};

/// The generators and their inverses over `R[t^±1]`, in [`Letter::ALL`] order.
pub struct Generators {
    mats: [Matrix2<LaurentPoly>; 4],
}

impl Generators {
    fn build() -> Self {
        let p = |i: i32, j: i32, k: i32| LaurentPoly::xyt(i, j, k);
        let one = LaurentPoly::one;
        let zero = LaurentPoly::zero;
        let m1 = Matrix2::new(one(), one() - p(0, 1, 0), zero(), p(1, 0, 0));
        // [[1, -x^-1 (1-y)], [0, x^-1]]
        let m1_inv = Matrix2::new(one(), p(-1, 1, 0) - p(-1, 0, 0), zero(), p(-1, 0, 0));
        let m2t = Matrix2::new(p(0, 1, 1), zero(), one() - p(1, 0, 1), one());
        // [[y^-1 t^-1, 0], [-(1 - xt) y^-1 t^-1, 1]]
        let m2t_inv = Matrix2::new(p(0, -1, -1), zero(), p(1, -1, 0) - p(0, -1, -1), one());
        let ring = LaurentRing::free();
        for (m, inv) in [(&m1, &m1_inv), (&m2t, &m2t_inv)] {
            assert!(ring.is_identity(&ring.mat_mul(m, inv)), "generator inverse");
            assert!(ring.is_identity(&ring.mat_mul(inv, m)), "generator inverse");
        }
        Generators {
            mats: [m1, m1_inv, m2t, m2t_inv],
        }
    }

    pub fn get() -> &'static Generators {
        static GENS: OnceLock<Generators> = OnceLock::new();
        GENS.get_or_init(Generators::build)
    }

    pub fn matrix(&self, l: Letter) -> &Matrix2<LaurentPoly> {
        &self.mats[l as usize]
    }
}

/// Generator matrices embedded into a coefficient ring, for repeated evaluation.
pub struct Evaluator<'r, R: CoeffRing> {
    ring: &'r R,
    gens: [Matrix2<R::Elem>; 4],
}

impl<'r, R: CoeffRing> Evaluator<'r, R> {
    pub fn new(ring: &'r R) -> Self {
        let g = Generators::get();
        Evaluator {
            ring,
            gens: Letter::ALL.map(|l| ring.embed_matrix(g.matrix(l))),
        }
    }

    pub fn ring(&self) -> &R {
        self.ring
    }

    pub fn generator(&self, l: Letter) -> &Matrix2<R::Elem> {
        &self.gens[l as usize]
    }

    pub fn eval(&self, w: &GroupWord) -> Matrix2<R::Elem> {
        let mut acc = self.ring.identity();
        for &l in w.letters() {
            acc = self.ring.mat_mul(&acc, self.generator(l));
        }
        acc
    }
}

/// Evaluates a word in any coefficient ring.
pub fn eval_in<R: CoeffRing>(ring: &R, w: &GroupWord) -> Matrix2<R::Elem> {
    Evaluator::new(ring).eval(w)
}

/// The four groups of the commutative square.
#[derive(Clone, Debug)]
pub enum GroupContext {
    /// `F = F(R[t^±1])`, the free group.
    Free,
    /// `F(R)`, the free metabelian group (`t = 1`).
    Metabelian,
    /// `F(S)`, the free metabelian Burnside group.
    S(Arc<SContext>),
    /// `G = F(S[t^±1])`.
    ST(Arc<SContext>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupMatrix {
    Free(Matrix2<LaurentPoly>),
    Metabelian(Matrix2<LaurentPoly>),
    S(Matrix2<SElement>),
    ST(Matrix2<STPoly>),
}

pub fn eval_word(w: &GroupWord, ctx: &GroupContext) -> GroupMatrix {
    match ctx {
        GroupContext::Free => GroupMatrix::Free(eval_in(&LaurentRing::free(), w)),
        GroupContext::Metabelian => GroupMatrix::Metabelian(eval_in(&LaurentRing::metabelian(), w)),
        GroupContext::S(c) => GroupMatrix::S(eval_in(&SRing::new(c.clone()), w)),
        GroupContext::ST(c) => GroupMatrix::ST(eval_in(&STRing::new(c.clone()), w)),
    }
}

impl GroupMatrix {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupMatrix::Free(m) | GroupMatrix::Metabelian(m) => LaurentRing::free().is_identity(m),
            GroupMatrix::S(m) => m.m[0][0].is_one() && m.m[1][1].is_one() && m.m[0][1].is_zero() && m.m[1][0].is_zero(),
            GroupMatrix::ST(m) => m.m[0][0].is_one() && m.m[1][1].is_one() && m.m[0][1].is_zero() && m.m[1][0].is_zero(),
        }
    }
}

impl fmt::Display for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupMatrix::Free(m) | GroupMatrix::Metabelian(m) => m.fmt(f),
            GroupMatrix::S(m) => m.fmt(f),
            GroupMatrix::ST(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn generator_displays() {
        let m = eval_in(&LaurentRing::free(), &GroupWord::parse("a").unwrap());
        assert_eq!(m, Matrix2::new(p("1"), p("1-y"), p("0"), p("x")));
        let m = eval_in(&LaurentRing::free(), &GroupWord::parse("b").unwrap());
        assert_eq!(m, Matrix2::new(p("y*t"), p("0"), p("1-x*t"), p("1")));
        assert!(eval_word(&GroupWord::empty(), &GroupContext::Free).is_identity());
    }

    #[test]
    fn word_and_inverse_cancel_in_every_ring() {
        let ctx = SContext::new(3).unwrap();
        let w = GroupWord::parse("abbAbaBBa").unwrap();
        let ww = w.concat(&w.inverse());
        for c in [
            GroupContext::Free,
            GroupContext::Metabelian,
            GroupContext::S(ctx.clone()),
            GroupContext::ST(ctx),
        ] {
            assert!(eval_word(&ww, &c).is_identity(), "{c:?}");
            assert!(!eval_word(&w, &c).is_identity());
        }
    }
}
