//! 2x2 matrices over the coefficient rings used by the groups:
//! `R[t^±1]`, its specializations (such as `t = 1`, giving `R`),
//! `R/Sigma^c`, `S(q)` and `S(q)[t^±1]`.
//!
//! Rings are context objects ([`CoeffRing`]); elements are plain data.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::ideal::{SContext, SElement};
use crate::ring::{Assignment, LaurentPoly, TruncatedPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2<E> {
    pub m: [[E; 2]; 2],
}

impl<E> Matrix2<E> {
    pub fn new(a: E, b: E, c: E, d: E) -> Self {
        Matrix2 { m: [[a, b], [c, d]] }
    }

    pub fn map<F, G>(&self, mut f: G) -> Matrix2<F>
    where
        G: FnMut(&E) -> F,
    {
        Matrix2::new(f(&self.m[0][0]), f(&self.m[0][1]), f(&self.m[1][0]), f(&self.m[1][1]))
    }

    pub fn entries(&self) -> impl Iterator<Item = &E> {
        self.m.iter().flatten()
    }
}

impl Matrix2<LaurentPoly> {
    pub fn specialize(&self, a: &Assignment) -> Self {
        self.map(|e| e.specialize(a))
    }

    /// Total number of terms over all entries.
    pub fn size(&self) -> usize {
        self.entries().map(LaurentPoly::num_terms).sum()
    }
}

impl<E: fmt::Display> fmt::Display for Matrix2<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries().map(|e| e.to_string()).collect();
        let w0 = cells[0].len().max(cells[2].len());
        let w1 = cells[1].len().max(cells[3].len());
        writeln!(f, "| {:<w0$} | {:<w1$} |", cells[0], cells[1])?;
        write!(f, "| {:<w0$} | {:<w1$} |", cells[2], cells[3])
    }
}

/// A commutative ring with a homomorphism from `Z[x^±1, y^±1, t^±1]`.
pub trait CoeffRing: Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit, `None` when the element is not recognized as one.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an element of `Z[x^±1, y^±1, t^±1]`.
    fn embed(&self, f: &LaurentPoly) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn identity(&self) -> Matrix2<Self::Elem> {
        Matrix2::new(self.one(), self.zero(), self.zero(), self.one())
    }

    fn embed_matrix(&self, m: &Matrix2<LaurentPoly>) -> Matrix2<Self::Elem> {
        m.map(|e| self.embed(e))
    }

    fn mat_mul(&self, a: &Matrix2<Self::Elem>, b: &Matrix2<Self::Elem>) -> Matrix2<Self::Elem> {
        let dot = |i: usize, j: usize| {
            let l = self.mul(&a.m[i][0], &b.m[0][j]);
            let r = self.mul(&a.m[i][1], &b.m[1][j]);
            self.add(&l, &r)
        };
        Matrix2::new(dot(0, 0), dot(0, 1), dot(1, 0), dot(1, 1))
    }

    fn mat_sub(&self, a: &Matrix2<Self::Elem>, b: &Matrix2<Self::Elem>) -> Matrix2<Self::Elem> {
        let s = |i: usize, j: usize| self.sub(&a.m[i][j], &b.m[i][j]);
        Matrix2::new(s(0, 0), s(0, 1), s(1, 0), s(1, 1))
    }

    fn mat_scale(&self, k: &Self::Elem, a: &Matrix2<Self::Elem>) -> Matrix2<Self::Elem> {
        a.map(|e| self.mul(k, e))
    }

    fn det(&self, a: &Matrix2<Self::Elem>) -> Self::Elem {
        let l = self.mul(&a.m[0][0], &a.m[1][1]);
        let r = self.mul(&a.m[0][1], &a.m[1][0]);
        self.sub(&l, &r)
    }

    /// Adjugate divided by the determinant; `None` unless the determinant is a unit.
    fn mat_inverse(&self, a: &Matrix2<Self::Elem>) -> Option<Matrix2<Self::Elem>> {
        let inv = self.unit_inverse(&self.det(a))?;
        let adj = Matrix2::new(
            a.m[1][1].clone(),
            self.neg(&a.m[0][1]),
            self.neg(&a.m[1][0]),
            a.m[0][0].clone(),
        );
        Some(self.mat_scale(&inv, &adj))
    }

    fn is_identity(&self, a: &Matrix2<Self::Elem>) -> bool {
        *a == self.identity()
    }

    fn mat_pow(&self, a: &Matrix2<Self::Elem>, n: u64) -> Matrix2<Self::Elem> {
        let mut acc = self.identity();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mat_mul(&base, &base);
            }
        }
        acc
    }

    fn render_matrix(&self, a: &Matrix2<Self::Elem>) -> String {
        let cells = a.map(|e| self.render(e));
        cells.to_string()
    }
}

/// `Z[x^±1, y^±1, t^±1]`, optionally composed with a specialization.
///
/// The default assignment keeps every variable (the ring `R[t^±1]`);
/// [`LaurentRing::metabelian`] sets `t = 1` (the ring `R`).
#[derive(Clone, Copy, Debug, Default)]
pub struct LaurentRing {
    pub assignment: Assignment,
}

impl LaurentRing {
    pub fn free() -> Self {
        LaurentRing::default()
    }

    pub fn metabelian() -> Self {
        LaurentRing {
            assignment: Assignment::T_TO_ONE,
        }
    }

    pub fn specialized(assignment: Assignment) -> Self {
        LaurentRing { assignment }
    }
}

impl CoeffRing for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn sub(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a - b
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &LaurentPoly) -> Option<LaurentPoly> {
        a.as_unit().map(|u| u.inverse().to_poly())
    }
    fn embed(&self, f: &LaurentPoly) -> LaurentPoly {
        f.specialize(&self.assignment)
    }
    fn render(&self, a: &LaurentPoly) -> String {
        a.to_string()
    }
}

/// `R / Sigma^degree` with `t = 1`.
#[derive(Clone, Copy, Debug)]
pub struct TruncRing {
    pub degree: usize,
}

impl CoeffRing for TruncRing {
    type Elem = TruncatedPoly;

    fn zero(&self) -> TruncatedPoly {
        TruncatedPoly::zero(self.degree)
    }
    fn one(&self) -> TruncatedPoly {
        TruncatedPoly::one(self.degree)
    }
    fn add(&self, a: &TruncatedPoly, b: &TruncatedPoly) -> TruncatedPoly {
        a.add(b).expect("same degree")
    }
    fn sub(&self, a: &TruncatedPoly, b: &TruncatedPoly) -> TruncatedPoly {
        a.sub(b).expect("same degree")
    }
    fn mul(&self, a: &TruncatedPoly, b: &TruncatedPoly) -> TruncatedPoly {
        a.mul(b).expect("same degree")
    }
    fn neg(&self, a: &TruncatedPoly) -> TruncatedPoly {
        a.neg()
    }
    fn is_zero(&self, a: &TruncatedPoly) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &TruncatedPoly) -> Option<TruncatedPoly> {
        // ±(1 + n) with n nilpotent
        let c = a.augmentation().clone();
        let sign = if c == BigInt::from(1) {
            BigInt::from(1)
        } else if c == BigInt::from(-1) {
            BigInt::from(-1)
        } else {
            return None;
        };
        let n = a.scale(&sign).sub(&self.one()).expect("same degree");
        let mut term = self.one();
        let mut acc = self.one();
        for _ in 1..self.degree {
            term = term.mul(&n).expect("same degree").neg();
            acc = acc.add(&term).expect("same degree");
        }
        Some(acc.scale(&sign))
    }
    fn embed(&self, f: &LaurentPoly) -> TruncatedPoly {
        f.specialize(&Assignment::T_TO_ONE)
            .to_truncated(self.degree)
            .expect("t removed")
    }
    fn render(&self, a: &TruncatedPoly) -> String {
        a.to_string()
    }
}

/// `S(q)` with `t = 1`: the ring of the Burnside quotient `F(S)`.
#[derive(Clone, Debug)]
pub struct SRing {
    pub ctx: Arc<SContext>,
}

impl SRing {
    pub fn new(ctx: Arc<SContext>) -> Self {
        SRing { ctx }
    }
}

impl CoeffRing for SRing {
    type Elem = SElement;

    fn zero(&self) -> SElement {
        self.ctx.zero()
    }
    fn one(&self) -> SElement {
        self.ctx.one()
    }
    fn add(&self, a: &SElement, b: &SElement) -> SElement {
        self.ctx.add(a, b).expect("same context")
    }
    fn sub(&self, a: &SElement, b: &SElement) -> SElement {
        self.ctx.sub(a, b).expect("same context")
    }
    fn mul(&self, a: &SElement, b: &SElement) -> SElement {
        self.ctx.mul(a, b).expect("same context")
    }
    fn is_zero(&self, a: &SElement) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &SElement) -> Option<SElement> {
        self.ctx.inverse(a)
    }
    fn embed(&self, f: &LaurentPoly) -> SElement {
        self.ctx
            .from_laurent(&f.specialize(&Assignment::T_TO_ONE))
            .expect("t removed")
    }
    fn render(&self, a: &SElement) -> String {
        a.to_string()
    }
}

/// Laurent polynomial in `t` over `S(q)`, stored densely from `t^lo`.
///
/// Canonical: the first and last stored coefficients are nonzero, and zero
/// is `lo = 0` with no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct STPoly {
    q: u64,
    dim: usize,
    lo: i32,
    data: Vec<i64>,
}

impl STPoly {
    fn zero(q: u64, dim: usize) -> Self {
        STPoly {
            q,
            dim,
            lo: 0,
            data: Vec::new(),
        }
    }

    fn span(&self) -> usize {
        self.data.len() / self.dim
    }

    fn coeff(&self, i: usize) -> &[i64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    fn trim(mut self) -> Self {
        let d = self.dim;
        let nonzero = |c: &[i64]| c.iter().any(|&v| v != 0);
        let span = self.span();
        let first = (0..span).find(|&i| nonzero(&self.data[i * d..(i + 1) * d]));
        let Some(first) = first else {
            return STPoly::zero(self.q, d);
        };
        let last = (0..span).rev().find(|&i| nonzero(&self.data[i * d..(i + 1) * d])).expect("has a nonzero");
        self.data.truncate((last + 1) * d);
        self.data.drain(..first * d);
        self.lo += first as i32;
        self
    }

    /// Lowest and highest `t` exponents, `None` for zero.
    pub fn t_range(&self) -> Option<(i32, i32)> {
        (!self.data.is_empty()).then(|| (self.lo, self.lo + self.span() as i32 - 1))
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.span() == 1 && self.data[0] == 1 && self.data[1..].iter().all(|&v| v == 0)
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i32, SElement)> + '_ {
        (0..self.span()).filter_map(move |i| {
            let c = self.coeff(i);
            c.iter().any(|&v| v != 0).then(|| {
                (
                    self.lo + i as i32,
                    SElement {
                        q: self.q,
                        coeffs: c.to_vec(),
                    },
                )
            })
        })
    }
}

impl fmt::Display for STPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `S(q)[t^±1]`: the ring of `G(q)`.
#[derive(Clone, Debug)]
pub struct STRing {
    pub ctx: Arc<SContext>,
}

impl STRing {
    pub fn new(ctx: Arc<SContext>) -> Self {
        STRing { ctx }
    }

    pub fn monomial(&self, c: &SElement, k: i32) -> STPoly {
        STPoly {
            q: self.ctx.q(),
            dim: self.ctx.dimension(),
            lo: k,
            data: c.coeffs.clone(),
        }
        .trim()
    }

    /// Sets `t = 1`.
    pub fn at_t_one(&self, a: &STPoly) -> SElement {
        let mut acc = vec![0; self.ctx.dimension()];
        for i in 0..a.span() {
            acc.iter_mut().zip(a.coeff(i)).for_each(|(x, y)| *x += y);
        }
        self.ctx.reduce_in_place(&mut acc);
        SElement { q: a.q, coeffs: acc }
    }

    /// Applies `x, y -> 1` (the augmentation of `S(q)`), giving integer
    /// coefficients indexed by the power of `t`.
    pub fn augment(&self, a: &STPoly) -> Vec<(i32, i64)> {
        (0..a.span())
            .map(|i| (a.lo + i as i32, a.coeff(i)[0]))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    fn combine(&self, a: &STPoly, b: &STPoly, sign: i64) -> STPoly {
        let d = self.ctx.dimension();
        let (Some((alo, ahi)), Some((blo, bhi))) = (a.t_range(), b.t_range()) else {
            if a.data.is_empty() {
                let mut out = b.clone();
                out.data.iter_mut().for_each(|v| *v *= sign);
                if sign < 0 {
                    for i in 0..out.span() {
                        self.ctx.reduce_in_place(&mut out.data[i * d..(i + 1) * d]);
                    }
                }
                return out;
            }
            return a.clone();
        };
        let lo = alo.min(blo);
        let hi = ahi.max(bhi);
        let span = (hi - lo + 1) as usize;
        let mut data = vec![0; span * d];
        for i in 0..a.span() {
            let off = (a.lo - lo) as usize + i;
            data[off * d..(off + 1) * d].copy_from_slice(a.coeff(i));
        }
        for i in 0..b.span() {
            let off = (b.lo - lo) as usize + i;
            data[off * d..(off + 1) * d]
                .iter_mut()
                .zip(b.coeff(i))
                .for_each(|(x, y)| *x += sign * y);
        }
        for i in 0..span {
            self.ctx.reduce_in_place(&mut data[i * d..(i + 1) * d]);
        }
        STPoly {
            q: a.q,
            dim: d,
            lo,
            data,
        }
        .trim()
    }
}

impl CoeffRing for STRing {
    type Elem = STPoly;

    fn zero(&self) -> STPoly {
        STPoly::zero(self.ctx.q(), self.ctx.dimension())
    }
    fn one(&self) -> STPoly {
        self.monomial(&self.ctx.one(), 0)
    }
    fn add(&self, a: &STPoly, b: &STPoly) -> STPoly {
        self.combine(a, b, 1)
    }
    fn sub(&self, a: &STPoly, b: &STPoly) -> STPoly {
        self.combine(a, b, -1)
    }
    fn mul(&self, a: &STPoly, b: &STPoly) -> STPoly {
        if a.data.is_empty() || b.data.is_empty() {
            return self.zero();
        }
        let d = self.ctx.dimension();
        let span = a.span() + b.span() - 1;
        let mut data = vec![0; span * d];
        for i in 0..a.span() {
            let ai = a.coeff(i);
            if ai.iter().all(|&v| v == 0) {
                continue;
            }
            for j in 0..b.span() {
                let bj = b.coeff(j);
                if bj.iter().all(|&v| v == 0) {
                    continue;
                }
                self.ctx.mul_acc(&mut data[(i + j) * d..(i + j + 1) * d], ai, bj);
            }
        }
        for k in 0..span {
            self.ctx.reduce_in_place(&mut data[k * d..(k + 1) * d]);
        }
        STPoly {
            q: a.q,
            dim: d,
            lo: a.lo + b.lo,
            data,
        }
        .trim()
    }
    fn is_zero(&self, a: &STPoly) -> bool {
        a.data.is_empty()
    }
    fn unit_inverse(&self, a: &STPoly) -> Option<STPoly> {
        let (lo, hi) = a.t_range()?;
        if lo != hi {
            return None;
        }
        let c = SElement {
            q: a.q,
            coeffs: a.coeff(0).to_vec(),
        };
        Some(self.monomial(&self.ctx.inverse(&c)?, -lo))
    }
    fn embed(&self, f: &LaurentPoly) -> STPoly {
        let mut acc = self.zero();
        for (k, coeff) in f.t_coefficients() {
            let c = self.ctx.from_laurent(&coeff).expect("t-free coefficient");
            acc = self.add(&acc, &self.monomial(&c, k));
        }
        acc
    }
    fn render(&self, a: &STPoly) -> String {
        a.to_string()
    }
}

/// Laurent polynomials in `t` over a base ring, stored sparsely.
///
/// With `B = TruncRing { degree: c }` this is `(R/Sigma^c)[t^±1]`.
#[derive(Clone, Debug)]
pub struct TPolyRing<B> {
    pub base: B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPoly<E> {
    terms: BTreeMap<i32, E>,
}

impl<E> TPoly<E> {
    pub fn terms(&self) -> impl Iterator<Item = (i32, &E)> {
        self.terms.iter().map(|(k, e)| (*k, e))
    }
}

impl<B: CoeffRing> TPolyRing<B> {
    pub fn new(base: B) -> Self {
        TPolyRing { base }
    }

    fn insert(&self, out: &mut BTreeMap<i32, B::Elem>, k: i32, e: B::Elem) {
        let sum = match out.remove(&k) {
            Some(prev) => self.base.add(&prev, &e),
            None => e,
        };
        if !self.base.is_zero(&sum) {
            out.insert(k, sum);
        }
    }
}

impl<B: CoeffRing> CoeffRing for TPolyRing<B> {
    type Elem = TPoly<B::Elem>;

    fn zero(&self) -> Self::Elem {
        TPoly { terms: BTreeMap::new() }
    }
    fn one(&self) -> Self::Elem {
        TPoly {
            terms: BTreeMap::from([(0, self.base.one())]),
        }
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.terms.clone();
        for (k, e) in &b.terms {
            self.insert(&mut out, *k, e.clone());
        }
        TPoly { terms: out }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.terms.clone();
        for (k, e) in &b.terms {
            self.insert(&mut out, *k, self.base.neg(e));
        }
        TPoly { terms: out }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                self.insert(&mut out, i + j, self.base.mul(x, y));
            }
        }
        TPoly { terms: out }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let mut it = a.terms.iter();
        let (k, c) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(TPoly {
            terms: BTreeMap::from([(-k, self.base.unit_inverse(c)?)]),
        })
    }
    fn embed(&self, f: &LaurentPoly) -> Self::Elem {
        let mut out = BTreeMap::new();
        for (k, c) in f.t_coefficients() {
            let e = self.base.embed(&c);
            if !self.base.is_zero(&e) {
                out.insert(k, e);
            }
        }
        TPoly { terms: out }
    }
    fn render(&self, a: &Self::Elem) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(k, c)| format!("({})*t^{k}", self.base.render(c)))
            .collect();
        parts.join(" + ")
    }
}

/// Truncated power series in `s = t - 1` over a base ring: the image of
/// `R[t^±1]` in `B[s]/(s^order)`, with `t^-1 = 1 - s + s^2 - ...`.
///
/// A matrix is the identity here exactly when `(t-1)^order` divides its
/// difference from the identity.
#[derive(Clone, Debug)]
pub struct SeriesRing<B> {
    pub base: B,
    pub order: usize,
}

impl<B: CoeffRing> SeriesRing<B> {
    pub fn new(base: B, order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        SeriesRing { base, order }
    }
}

impl<B: CoeffRing> CoeffRing for SeriesRing<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.order]
    }
    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.base.one();
        v
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.order - i) {
                if !self.base.is_zero(y) {
                    out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
                }
            }
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let inv0 = self.base.unit_inverse(&a[0])?;
        let scaled: Self::Elem = a.iter().map(|x| self.base.mul(&inv0, x)).collect();
        // scaled = 1 + n with n divisible by s
        let mut n = scaled;
        n[0] = self.base.zero();
        let neg_n: Self::Elem = n.iter().map(|x| self.base.neg(x)).collect();
        let mut term = self.one();
        let mut acc = self.one();
        for _ in 1..self.order {
            term = self.mul(&term, &neg_n);
            acc = self.add(&acc, &term);
        }
        Some(acc.iter().map(|x| self.base.mul(&inv0, x)).collect())
    }
    fn embed(&self, f: &LaurentPoly) -> Self::Elem {
        let mut out = self.zero();
        for (k, c) in f.t_coefficients() {
            let c = self.base.embed(&c);
            // t^k = (1 + s)^k = sum_i C(k, i) s^i
            for (i, slot) in out.iter_mut().enumerate() {
                let binom = generalized_binomial(k as i64, i);
                if binom != 0 {
                    let term = self.base.mul(&c, &self.base.embed(&LaurentPoly::constant(binom)));
                    *slot = self.base.add(slot, &term);
                }
            }
        }
        out
    }
    fn render(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(i, c)| format!("({})*s^{i}", self.base.render(c)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `C(n, k)` for any integer `n`.
fn generalized_binomial(n: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i64 {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    i64::try_from(num / den).expect("binomial fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn laurent_inverse_and_det() {
        let r = LaurentRing::free();
        let m = Matrix2::new(p("y*t"), p("0"), p("1-x*t"), p("1"));
        assert_eq!(r.det(&m), p("y*t"));
        let inv = r.mat_inverse(&m).unwrap();
        assert!(r.is_identity(&r.mat_mul(&m, &inv)));
        assert!(r.mat_inverse(&Matrix2::new(p("2"), p("0"), p("0"), p("1"))).is_none());
    }

    #[test]
    fn st_ring_roundtrip() {
        let ctx = SContext::new(3).unwrap();
        let st = STRing::new(ctx.clone());
        let f = p("1 - x*t + y^2*t^-2");
        let e = st.embed(&f);
        assert_eq!(e.t_range(), Some((-2, 1)));
        let g = st.embed(&p("t^3 - 1"));
        let prod = st.mul(&e, &g);
        assert_eq!(prod, st.embed(&(f.clone() * p("t^3 - 1"))));
        assert_eq!(st.sub(&prod, &prod), st.zero());
        let s = SRing::new(ctx);
        assert_eq!(st.at_t_one(&e), s.embed(&f));
        let u = st.embed(&p("x*y*t^2"));
        let ui = st.unit_inverse(&u).unwrap();
        assert_eq!(st.mul(&u, &ui), st.one());
        assert_eq!(st.augment(&e), vec![(-2, 1), (0, 1), (1, -1)]);
    }

    #[test]
    fn trunc_ring_unit_inverse() {
        let r = TruncRing { degree: 4 };
        let u = r.embed(&p("-x^2*y^-1"));
        let inv = r.unit_inverse(&u).unwrap();
        assert_eq!(r.mul(&u, &inv), r.one());
        assert_eq!(inv, r.embed(&p("-x^-2*y")));
    }

    #[test]
    fn series_ring_detects_t_minus_one_powers() {
        let base = LaurentRing::metabelian();
        let r = SeriesRing::new(base, 3);
        let f = p("(t-1)^2*x + 1");
        let e = r.embed(&f);
        assert_eq!(e, vec![p("1"), p("0"), p("x")]);
        let tinv = r.embed(&p("t^-1"));
        assert_eq!(tinv, vec![p("1"), p("-1"), p("1")]);
        assert_eq!(r.mul(&tinv, &r.embed(&p("t"))), r.one());
        let u = r.embed(&p("x*y^-1*t^3"));
        assert_eq!(r.mul(&u, &r.unit_inverse(&u).unwrap()), r.one());
    }

    #[test]
    fn tpoly_over_truncation() {
        let r = TPolyRing::new(TruncRing { degree: 2 });
        let e = r.embed(&p("(1-x)^2*t + (1-y)*t^-1 + 1"));
        assert_eq!(e.terms().map(|(k, _)| k).collect::<Vec<_>>(), vec![-1, 0]);
        let u = r.embed(&p("x*t^2"));
        assert_eq!(r.mul(&u, &r.unit_inverse(&u).unwrap()), r.one());
        assert!(r.unit_inverse(&r.embed(&p("1 + t"))).is_none());
    }
}
