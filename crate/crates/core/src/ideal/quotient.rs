//! Arithmetic in `S(q) = R / I(q) Sigma`.
//!
//! `Sigma^D ⊆ I(q) Sigma` for `D = e*phi + 1`, so `S(q)` is a quotient of the
//! truncated ring `Z[a, b]/(a, b)^D`. Elements are kept as canonical residues
//! modulo the HNF of `I(q) Sigma`. Every row of that lattice has pivot dividing
//! `q` and zero constant coordinate, so residues are small and fit in `i64`;
//! overflow is checked and treated as a bug.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ring::{degree_at, dimension, index, monomial_at, LaurentPoly, TruncatedPoly};

use super::lattice::IdealLattice;
use super::params::BurnsideParams;
use super::IdealError;

#[derive(Debug)]
pub struct SContext {
    pub params: BurnsideParams,
    /// HNF lattice of `I(q) Sigma` at degree `params.degree`.
    pub lattice: IdealLattice,
    /// `I(q)` at the same degree.
    pub cyclotomic: IdealLattice,
    reduce_rows: Vec<(usize, i64, Vec<i64>)>,
    /// `(i, j, k)` with coordinate `i` times coordinate `j` landing on `k`.
    mul_table: Vec<(usize, usize, usize)>,
}

impl SContext {
    /// Builds both lattices from scratch.
    pub fn new(q: u64) -> Result<Arc<Self>, IdealError> {
        let params = BurnsideParams::new(q)?;
        let cyclotomic = IdealLattice::cyclotomic(&params, params.degree)?;
        let lattice = cyclotomic.times_sigma()?;
        Self::from_lattices(params, cyclotomic, lattice)
    }

    pub fn from_lattices(
        params: BurnsideParams,
        cyclotomic: IdealLattice,
        lattice: IdealLattice,
    ) -> Result<Arc<Self>, IdealError> {
        if lattice.degree != params.degree || cyclotomic.degree != params.degree {
            return Err(IdealError::DegreeMismatch {
                lattice: lattice.degree,
                element: params.degree,
            });
        }
        let mut reduce_rows = Vec::new();
        for row in lattice.basis().rows() {
            let col = row.iter().position(|c| c != &BigInt::from(0)).expect("nonzero row");
            let r: Vec<i64> = row.iter().map(|c| c.to_i64().ok_or(IdealError::Overflow)).collect::<Result<_, _>>()?;
            reduce_rows.push((col, r[col], r));
        }
        let d = params.degree;
        let n = dimension(d);
        let mut mul_table = Vec::new();
        for i in 0..n {
            let (r1, s1) = monomial_at(i);
            for j in 0..n {
                let (r2, s2) = monomial_at(j);
                if r1 + s1 + r2 + s2 < d {
                    mul_table.push((i, j, index(r1 + r2, s1 + s2)));
                }
            }
        }
        Ok(Arc::new(SContext {
            params,
            lattice,
            cyclotomic,
            reduce_rows,
            mul_table,
        }))
    }

    pub fn q(&self) -> u64 {
        self.params.q
    }

    pub fn dimension(&self) -> usize {
        dimension(self.params.degree)
    }

    pub fn zero(&self) -> SElement {
        SElement {
            q: self.params.q,
            coeffs: vec![0; self.dimension()],
        }
    }

    pub fn one(&self) -> SElement {
        let mut z = self.zero();
        z.coeffs[0] = 1;
        z
    }

    /// Canonical residue of a truncated polynomial.
    pub fn reduce(&self, v: &TruncatedPoly) -> Result<SElement, IdealError> {
        if v.degree() != self.params.degree {
            return Err(IdealError::DegreeMismatch {
                lattice: self.params.degree,
                element: v.degree(),
            });
        }
        let reduced = self.lattice.basis().reduce(v.coeffs());
        let coeffs = reduced
            .iter()
            .map(|c| c.to_i64().ok_or(IdealError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(SElement { q: self.params.q, coeffs })
    }

    /// Image of an element of `R` (no `t`).
    pub fn from_laurent(&self, f: &LaurentPoly) -> Result<SElement, IdealError> {
        self.reduce(&f.to_truncated(self.params.degree)?)
    }

    /// In-place canonical reduction of raw coordinates.
    pub(crate) fn reduce_in_place(&self, v: &mut [i64]) {
        for (col, pivot, row) in &self.reduce_rows {
            let k = v[*col].div_euclid(*pivot);
            if k != 0 {
                for (a, b) in v[*col..].iter_mut().zip(&row[*col..]) {
                    *a = b
                        .checked_mul(k)
                        .and_then(|kb| a.checked_sub(kb))
                        .expect("S(q) coefficient overflow");
                }
            }
        }
    }

    /// `acc += u * v` on raw (unreduced) coordinates.
    pub(crate) fn mul_acc(&self, acc: &mut [i64], u: &[i64], v: &[i64]) {
        for &(i, j, k) in &self.mul_table {
            let (ui, vj) = (u[i], v[j]);
            if ui != 0 && vj != 0 {
                acc[k] = ui
                    .checked_mul(vj)
                    .and_then(|p| acc[k].checked_add(p))
                    .expect("S(q) coefficient overflow");
            }
        }
    }

    fn check(&self, u: &SElement) -> Result<(), IdealError> {
        if u.q != self.params.q || u.coeffs.len() != self.dimension() {
            return Err(IdealError::ContextMismatch {
                expected: self.params.q,
                found: u.q,
            });
        }
        Ok(())
    }

    pub fn add(&self, u: &SElement, v: &SElement) -> Result<SElement, IdealError> {
        self.check(u)?;
        self.check(v)?;
        let mut coeffs: Vec<i64> = u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a + b).collect();
        self.reduce_in_place(&mut coeffs);
        Ok(SElement { q: u.q, coeffs })
    }

    pub fn sub(&self, u: &SElement, v: &SElement) -> Result<SElement, IdealError> {
        self.check(u)?;
        self.check(v)?;
        let mut coeffs: Vec<i64> = u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a - b).collect();
        self.reduce_in_place(&mut coeffs);
        Ok(SElement { q: u.q, coeffs })
    }

    pub fn mul(&self, u: &SElement, v: &SElement) -> Result<SElement, IdealError> {
        self.check(u)?;
        self.check(v)?;
        let mut coeffs = vec![0; self.dimension()];
        self.mul_acc(&mut coeffs, &u.coeffs, &v.coeffs);
        self.reduce_in_place(&mut coeffs);
        Ok(SElement { q: u.q, coeffs })
    }

    /// Inverse of a unit. Elements with augmentation `±1` are units: with
    /// `u = ±(1 + n)` and `n` nilpotent (`n^D = 0`), `u^-1 = ±(1 - n + n^2 - ...)`.
    pub fn inverse(&self, u: &SElement) -> Option<SElement> {
        let sign = match u.coeffs[0] {
            1 => 1,
            -1 => -1,
            _ => return None,
        };
        let mut n: Vec<i64> = u.coeffs.iter().map(|c| c * sign).collect();
        n[0] = 0;
        // sum_{k < D} (-n)^k
        let mut term = self.one().coeffs;
        let mut acc = term.clone();
        for _ in 1..self.params.degree {
            let mut next = vec![0; self.dimension()];
            self.mul_acc(&mut next, &term, &n);
            next.iter_mut().for_each(|c| *c = -*c);
            self.reduce_in_place(&mut next);
            acc.iter_mut().zip(&next).for_each(|(a, b)| *a += b);
            term = next;
        }
        acc.iter_mut().for_each(|c| *c *= sign);
        self.reduce_in_place(&mut acc);
        Some(SElement { q: u.q, coeffs: acc })
    }

    /// Augmentation `S(q) -> Z` (well defined since `I(q) Sigma ⊆ Sigma`).
    pub fn augmentation(&self, u: &SElement) -> i64 {
        u.coeffs[0]
    }
}

/// Canonical residue in `S(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SElement {
    pub(crate) q: u64,
    pub(crate) coeffs: Vec<i64>,
}

impl SElement {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn to_truncated(&self, degree: usize) -> TruncatedPoly {
        TruncatedPoly::from_coeffs(degree, self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .expect("dimension matches degree")
    }

    /// Lowest `(a, b)`-degree present in the residue.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0).map(degree_at)
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degree = (0..).find(|d| dimension(*d) == self.coeffs.len()).unwrap_or(0);
        write!(f, "{}", self.to_truncated(degree))
    }
}
