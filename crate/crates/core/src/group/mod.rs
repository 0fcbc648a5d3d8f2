//! Words in `M1`, `M2T` and their images in the four groups
//! `F(R[t^±1]) -> F(R)`, `F(S[t^±1]) -> F(S)`.

mod eval;
mod normal_form;
mod order;
mod tree;
mod word;

use thiserror::Error;

use crate::ideal::IdealError;

pub use eval::{eval_in, eval_word, Evaluator, Generators, GroupContext, GroupMatrix};
pub use normal_form::{
    basic_commutator, check_row_fixed, commutator, det_t_degree, normal_form, power_closed_form,
    product_normal_form_rule, word_normal_form, NormalForm,
};
pub use order::{
    closure_size, commutative_square_check, nilpotent_quotient_check, order_in_g, sanov_check, NilpotentCheck, Order,
    SanovReport,
};
pub use tree::CommutatorTree;
pub use word::{sample_rng, GroupWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid letter {found:?} at position {position} (expected one of a, A, b, B)")]
    InvalidLetter { position: usize, found: char },
    #[error("matrix is not of the form u*I + N: {0}")]
    NonConforming(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("integer overflow")]
    Overflow,
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}
