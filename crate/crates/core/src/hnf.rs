//! Incremental row-style Hermite normal form over the integers.
//!
//! Rows are upper triangular with strictly increasing pivot columns, positive
//! pivots, and every entry above a pivot reduced into `[0, pivot)`. That form
//! is unique for a lattice, which is what makes lattices comparable and
//! membership decidable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnfError {
    #[error("row has {found} entries, lattice dimension is {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("rows are not in Hermite normal form: {0}")]
    NotCanonical(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    dim: usize,
    /// pivot column -> row
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl HermiteBasis {
    pub fn new(dim: usize) -> Self {
        HermiteBasis {
            dim,
            rows: BTreeMap::new(),
        }
    }

    /// HNF of the span of `rows`.
    pub fn from_generators<I>(dim: usize, rows: I) -> Result<Self, HnfError>
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut h = HermiteBasis::new(dim);
        for r in rows {
            h.insert(r)?;
        }
        h.normalize();
        Ok(h)
    }

    /// Accepts rows that must already be in canonical form (used when loading
    /// persisted lattices).
    pub fn from_canonical_rows(dim: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, HnfError> {
        let mut map = BTreeMap::new();
        let mut last: Option<usize> = None;
        for r in rows {
            if r.len() != dim {
                return Err(HnfError::Dimension {
                    expected: dim,
                    found: r.len(),
                });
            }
            let Some(p) = r.iter().position(|c| !c.is_zero()) else {
                return Err(HnfError::NotCanonical("zero row".into()));
            };
            if last.is_some_and(|l| p <= l) {
                return Err(HnfError::NotCanonical("pivots not increasing".into()));
            }
            if !r[p].is_positive() {
                return Err(HnfError::NotCanonical(format!("non-positive pivot in column {p}")));
            }
            last = Some(p);
            map.insert(p, r);
        }
        let h = HermiteBasis { dim, rows: map };
        let mut check = h.clone();
        check.normalize();
        if check != h {
            return Err(HnfError::NotCanonical("entries above pivots not reduced".into()));
        }
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.rows.values()
    }

    /// `(column, pivot value)` pairs in increasing column order.
    pub fn pivots(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.rows.iter().map(|(c, r)| (*c, &r[*c]))
    }

    pub fn pivot_at(&self, col: usize) -> Option<&BigInt> {
        self.rows.get(&col).map(|r| &r[col])
    }

    /// Adds a vector to the span. Returns whether the lattice grew.
    ///
    /// The basis may be left partially unreduced; call [`normalize`](Self::normalize)
    /// before comparing or exporting.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> Result<bool, HnfError> {
        if v.len() != self.dim {
            return Err(HnfError::Dimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut changed = false;
        let mut col = 0;
        loop {
            while col < self.dim && v[col].is_zero() {
                col += 1;
            }
            if col == self.dim {
                return Ok(changed);
            }
            let Some(row) = self.rows.get_mut(&col) else {
                if v[col].is_negative() {
                    v.iter_mut().for_each(|c| *c = -std::mem::take(c));
                }
                self.rows.insert(col, v);
                return Ok(true);
            };
            let p = row[col].clone();
            let k = v[col].div_floor(&p);
            if !k.is_zero() {
                axpy(&mut v, &-k, row, col);
            }
            let r = v[col].clone();
            if r.is_zero() {
                continue;
            }
            // 0 < r < p: replace the pivot row by a combination with pivot gcd(p, r)
            // and keep eliminating with the remainder.
            let eg = p.extended_gcd(&r);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let mut new_row: Vec<BigInt> = row.iter().map(|c| c * &s).collect();
            axpy(&mut new_row, &t, &v, col);
            let rg = &r / &g;
            let pg = &p / &g;
            let mut rest: Vec<BigInt> = row.iter().map(|c| c * &rg).collect();
            axpy(&mut rest, &-pg, &v, col);
            *row = new_row;
            self.reduce_tail(col);
            v = rest;
            changed = true;
        }
    }

    /// Reduces the row with pivot `col` against all later pivot rows.
    fn reduce_tail(&mut self, col: usize) {
        let mut row = self.rows.remove(&col).expect("pivot row");
        for (&cj, pivot_row) in self.rows.range(col + 1..) {
            let k = row[cj].div_floor(&pivot_row[cj]);
            if !k.is_zero() {
                axpy(&mut row, &-k, pivot_row, cj);
            }
        }
        self.rows.insert(col, row);
    }

    /// Reduces every entry above a pivot into `[0, pivot)`.
    pub fn normalize(&mut self) {
        let cols: Vec<usize> = self.rows.keys().copied().collect();
        for (i, &ci) in cols.iter().enumerate() {
            for &cj in &cols[i + 1..] {
                let pivot_row = self.rows[&cj].clone();
                let row = self.rows.get_mut(&ci).expect("pivot row");
                let k = row[cj].div_floor(&pivot_row[cj]);
                if !k.is_zero() {
                    axpy(row, &-k, &pivot_row, cj);
                }
            }
        }
    }

    /// Canonical coset representative: pivot coordinates land in `[0, pivot)`,
    /// other coordinates are untouched by pivot rows to their left.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for (&c, row) in &self.rows {
            let k = v[c].div_floor(&row[c]);
            if !k.is_zero() {
                axpy(&mut v, &-k, row, c);
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.dim && self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Whether every row of `other` lies in this lattice.
    pub fn contains_lattice(&self, other: &HermiteBasis) -> bool {
        other.rows().all(|r| self.contains(r))
    }
}

/// `v += k * row`, touching only columns `>= from` (row is zero before its pivot).
fn axpy(v: &mut [BigInt], k: &BigInt, row: &[BigInt], from: usize) {
    for (a, b) in v[from..].iter_mut().zip(&row[from..]) {
        if !b.is_zero() {
            *a += k * b;
        }
    }
}
