//! The cyclotomic ideal `I(q)`, the product `I(q) Sigma`, powers of the
//! augmentation ideal, and the quotient ring `S(q) = R / I(q) Sigma`.

mod cache;
mod lattice;
mod params;
mod quotient;

#[cfg(test)]
mod tests;

pub use cache::{decode, encode, CacheStatus, LatticeCache, CACHE_DIR_ENV};
pub use lattice::{
    build_ideal_lattice, cyclotomic_generators, monomial_vector, p_power_sigma_check, query_degree, IdealLabel,
    IdealLattice,
};
pub use params::{prime_power, BurnsideParams};
pub use quotient::{SContext, SElement};

use thiserror::Error;

use crate::hnf::HnfError;
use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("lattice for q={q} at degree {degree} changed when the unit grid was enlarged")]
    Unstable { q: u64, degree: usize },
    #[error("lattice has degree {lattice}, element has degree {element}")]
    DegreeMismatch { lattice: usize, element: usize },
    #[error("element of S({found}) used in S({expected})")]
    ContextMismatch { expected: u64, found: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown ideal label {0:?}")]
    BadLabel(String),
    #[error("coefficient does not fit in a machine word")]
    Overflow,
    #[error("cache i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Hnf(#[from] HnfError),
}
