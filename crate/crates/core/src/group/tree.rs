use std::fmt;

use rand::Rng;

use crate::matrix::{CoeffRing, Matrix2};

use super::eval::Evaluator;
use super::normal_form::commutator;
use super::word::GroupWord;
use super::GroupError;

/// A commutator expression over words. A balanced tree of depth `k` is an
/// element of the `k`-th derived subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorTree {
    Leaf(GroupWord),
    Node(Box<CommutatorTree>, Box<CommutatorTree>),
}

impl CommutatorTree {
    pub fn node(g: CommutatorTree, h: CommutatorTree) -> Self {
        CommutatorTree::Node(Box::new(g), Box::new(h))
    }

    /// Balanced tree of the given depth whose leaves are random reduced words
    /// of length `1..=base_len`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, depth: u32, base_len: usize) -> Self {
        if depth == 0 {
            CommutatorTree::Leaf(GroupWord::random(rng, base_len))
        } else {
            let g = CommutatorTree::random(rng, depth - 1, base_len);
            let h = CommutatorTree::random(rng, depth - 1, base_len);
            CommutatorTree::node(g, h)
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            CommutatorTree::Leaf(_) => 0,
            CommutatorTree::Node(g, h) => 1 + g.depth().max(h.depth()),
        }
    }

    /// The expanded word (length grows like `4^depth`).
    pub fn to_word(&self) -> GroupWord {
        match self {
            CommutatorTree::Leaf(w) => w.clone(),
            CommutatorTree::Node(g, h) => GroupWord::commutator(&g.to_word(), &h.to_word()),
        }
    }

    /// Evaluates leaves as words and inner nodes as matrix commutators.
    pub fn eval<R: CoeffRing>(&self, ev: &Evaluator<'_, R>) -> Result<Matrix2<R::Elem>, GroupError> {
        match self {
            CommutatorTree::Leaf(w) => Ok(ev.eval(w)),
            CommutatorTree::Node(g, h) => {
                let gm = g.eval(ev)?;
                let hm = h.eval(ev)?;
                let ring = ev.ring();
                // [1, h] = [g, 1] = 1 saves the multiplications
                if ring.is_identity(&gm) || ring.is_identity(&hm) {
                    return Ok(ring.identity());
                }
                commutator(ring, &gm, &hm)
            }
        }
    }
}

impl fmt::Display for CommutatorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorTree::Leaf(w) => w.fmt(f),
            CommutatorTree::Node(g, h) => write!(f, "[{g}, {h}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{eval_in, sample_rng};
    use crate::matrix::LaurentRing;

    #[test]
    fn matrix_and_word_evaluation_agree() {
        let ring = LaurentRing::free();
        let ev = Evaluator::new(&ring);
        let mut rng = sample_rng(1, 0);
        for depth in 0..3 {
            let t = CommutatorTree::random(&mut rng, depth, 3);
            assert_eq!(t.depth(), depth);
            assert_eq!(t.eval(&ev).unwrap(), eval_in(&ring, &t.to_word()), "{t}");
        }
    }

    #[test]
    fn display() {
        let a = CommutatorTree::Leaf(GroupWord::parse("a").unwrap());
        let b = CommutatorTree::Leaf(GroupWord::parse("bA").unwrap());
        let t = CommutatorTree::node(a, b);
        assert_eq!(t.to_string(), "[a, bA]");
        assert_eq!(t.to_word().to_string(), "abAAaB");
    }
}
