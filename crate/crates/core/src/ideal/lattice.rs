//! Ideals of `R/Sigma^D` as integer lattices in the truncated `(a, b)` basis.
//!
//! For an ideal `J` containing `Sigma^D`, an element of `R` lies in `J`
//! exactly when its truncation lies in the lattice of `J/Sigma^D`.
//!
//! Inclusions `Sigma^k ⊆ I(q)` checked this way (with `D > k`) are sound
//! for `R` itself. The check shows `Sigma^k ⊆ I(q) + Sigma^(k+1)`, hence
//! `Sigma^k ⊆ I(q) + Sigma^m` for every `m`. Since `q` and `x^q - 1`,
//! `y^q - 1` lie in `I(q)`, the ring `R/I(q)` is a quotient of
//! `(Z/q)[C_q x C_q]`, whose augmentation ideal is nilpotent for a prime
//! power `q`. So `Sigma^m ⊆ I(q)` for large `m`.
//!
//! The cyclotomic ideal is generated by `1 + u + ... + u^(q-1)` over all
//! positive units `u = x^i y^j`. The truncated coordinates of that generator
//! are integer-valued polynomials in `(i, j)` of degree `< D` in each
//! variable, so their values on the grid `0 <= i, j < D` span the same
//! lattice as all `(i, j)` in `Z^2` (expand in the binomial basis
//! `C(i, r) C(j, s)`; its coefficients are integer finite differences of the
//! grid values). The build also recomputes on the `(D+1) x (D+1)` grid and
//! insists the result is unchanged.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::hnf::HermiteBasis;
use crate::ring::{dimension, index, LaurentPoly, TruncatedPoly};

use super::params::BurnsideParams;
use super::IdealError;

/// Which ideal a lattice represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealLabel {
    /// `Sigma^k`.
    SigmaPower(usize),
    /// `I(q)`.
    Cyclotomic,
    /// `I(q) Sigma`.
    CyclotomicTimesSigma,
}

impl fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealLabel::SigmaPower(k) => write!(f, "sigma^{k}"),
            IdealLabel::Cyclotomic => f.write_str("cyclotomic"),
            IdealLabel::CyclotomicTimesSigma => f.write_str("cyclotomic_sigma"),
        }
    }
}

impl FromStr for IdealLabel {
    type Err = IdealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclotomic" => Ok(IdealLabel::Cyclotomic),
            "cyclotomic_sigma" => Ok(IdealLabel::CyclotomicTimesSigma),
            _ => s
                .strip_prefix("sigma^")
                .and_then(|k| k.parse().ok())
                .map(IdealLabel::SigmaPower)
                .ok_or_else(|| IdealError::BadLabel(s.to_string())),
        }
    }
}

/// An ideal of `Z[a, b]/(a, b)^degree`, stored as the Hermite normal form of
/// its coordinate lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    pub label: IdealLabel,
    /// Exponent `q` for cyclotomic labels, 0 for powers of sigma.
    pub q: u64,
    pub degree: usize,
    basis: HermiteBasis,
}

impl IdealLattice {
    pub fn from_basis(label: IdealLabel, q: u64, degree: usize, basis: HermiteBasis) -> Self {
        IdealLattice {
            label,
            q,
            degree,
            basis,
        }
    }

    /// `Sigma^k` modulo `Sigma^degree`: the coordinates of degree `>= k`.
    pub fn sigma_power(k: usize, degree: usize) -> Self {
        let n = dimension(degree);
        let rows = (dimension(k.min(degree))..n).map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(1);
            v
        });
        let basis = HermiteBasis::from_generators(n, rows).expect("unit rows have the right length");
        IdealLattice::from_basis(IdealLabel::SigmaPower(k), 0, degree, basis)
    }

    /// `I(q)` modulo `Sigma^degree`, with the grid-stabilization check.
    pub fn cyclotomic(params: &BurnsideParams, degree: usize) -> Result<Self, IdealError> {
        let small = build_ideal_lattice(&cyclotomic_generators(params.q, degree, degree), degree)?;
        let large = build_ideal_lattice(&cyclotomic_generators(params.q, degree, degree + 1), degree)?;
        if small != large {
            return Err(IdealError::Unstable {
                q: params.q,
                degree,
            });
        }
        Ok(IdealLattice::from_basis(IdealLabel::Cyclotomic, params.q, degree, small))
    }

    /// `I(q) Sigma` from an already built `I(q)`: the span of `a*r` and `b*r`
    /// over the rows `r`, closed under multiplication by `a` and `b`.
    pub fn times_sigma(&self) -> Result<Self, IdealError> {
        let gens: Vec<TruncatedPoly> = self
            .rows_as_polys()
            .flat_map(|r| [r.mul_a(), r.mul_b()])
            .collect();
        let basis = build_ideal_lattice(&gens, self.degree)?;
        let label = match self.label {
            IdealLabel::Cyclotomic => IdealLabel::CyclotomicTimesSigma,
            IdealLabel::SigmaPower(k) => IdealLabel::SigmaPower(k + 1),
            IdealLabel::CyclotomicTimesSigma => return Err(IdealError::BadLabel("I(q)Sigma^2".into())),
        };
        Ok(IdealLattice::from_basis(label, self.q, self.degree, basis))
    }

    pub fn basis(&self) -> &HermiteBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        dimension(self.degree)
    }

    pub fn rows_as_polys(&self) -> impl Iterator<Item = TruncatedPoly> + '_ {
        self.basis
            .rows()
            .map(move |r| TruncatedPoly::from_coeffs(self.degree, r.clone()).expect("row length"))
    }

    pub fn contains_truncated(&self, v: &TruncatedPoly) -> Result<bool, IdealError> {
        if v.degree() != self.degree {
            return Err(IdealError::DegreeMismatch {
                lattice: self.degree,
                element: v.degree(),
            });
        }
        Ok(self.basis.contains(v.coeffs()))
    }

    /// Membership of an element of `R`, decided on its truncation.
    pub fn contains(&self, f: &LaurentPoly) -> Result<bool, IdealError> {
        let v = f.to_truncated(self.degree)?;
        self.contains_truncated(&v)
    }

    /// Ideal property on the basis: `a*r` and `b*r` are members for every row `r`.
    pub fn is_closed(&self) -> bool {
        self.rows_as_polys()
            .all(|r| self.basis.contains(r.mul_a().coeffs()) && self.basis.contains(r.mul_b().coeffs()))
    }

    /// Whether `other` (same degree) is a subset of this ideal.
    pub fn contains_ideal(&self, other: &IdealLattice) -> bool {
        self.degree == other.degree && self.basis.contains_lattice(&other.basis)
    }

    /// The sublattice of elements with zero augmentation (constant coordinate 0).
    pub fn intersect_sigma(&self) -> HermiteBasis {
        let rows = self.basis.rows().filter(|r| r[0].is_zero()).cloned();
        HermiteBasis::from_generators(self.dimension(), rows).expect("same dimension")
    }
}

/// Images of `1 + u + ... + u^(q-1)` for `u = x^i y^j`, `0 <= i, j < grid`,
/// in `Z[a, b]/(a, b)^degree`.
pub fn cyclotomic_generators(q: u64, degree: usize, grid: usize) -> Vec<TruncatedPoly> {
    let x = LaurentPoly::x().to_truncated(degree).expect("t-free");
    let y = LaurentPoly::y().to_truncated(degree).expect("t-free");
    let mut xpow = vec![TruncatedPoly::one(degree)];
    let mut ypow = vec![TruncatedPoly::one(degree)];
    for k in 1..grid {
        xpow.push(xpow[k - 1].mul(&x).expect("same degree"));
        ypow.push(ypow[k - 1].mul(&y).expect("same degree"));
    }
    let mut out = Vec::with_capacity(grid * grid);
    for xi in &xpow {
        for yj in &ypow {
            let u = xi.mul(yj).expect("same degree");
            let mut acc = TruncatedPoly::one(degree);
            let mut power = TruncatedPoly::one(degree);
            for _ in 1..q {
                power = power.mul(&u).expect("same degree");
                acc = acc.add(&power).expect("same degree");
            }
            out.push(acc);
        }
    }
    out
}

/// HNF of the ideal generated by `gens` in `Z[a, b]/(a, b)^degree`, i.e. of the
/// integer span of all `a^r b^s g`.
///
/// Computed as the span of `gens`, then repeatedly adding `a*r`, `b*r` for the
/// current basis rows until nothing changes.
pub fn build_ideal_lattice(gens: &[TruncatedPoly], degree: usize) -> Result<HermiteBasis, IdealError> {
    let n = dimension(degree);
    let mut basis = HermiteBasis::new(n);
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(IdealError::DegreeMismatch {
            lattice: degree,
            element: g.degree(),
        });
    }
    // A constant generator c contributes c times every monomial. Inserting
    // those first makes the basis full rank at once, which bounds every later
    // entry by the pivots instead of letting it grow through gcd steps.
    for g in gens.iter().filter(|g| g.coeffs()[1..].iter().all(Zero::is_zero)) {
        for i in 0..n {
            let mut v = vec![BigInt::zero(); n];
            v[i] = g.coeffs()[0].clone();
            basis.insert(v)?;
        }
    }
    for g in gens {
        basis.insert(g.coeffs().to_vec())?;
    }
    basis.normalize();
    loop {
        let rows: Vec<TruncatedPoly> = basis
            .rows()
            .map(|r| TruncatedPoly::from_coeffs(degree, r.clone()).expect("row length"))
            .collect();
        let mut grew = false;
        for r in &rows {
            grew |= basis.insert(r.mul_a().into_coeffs())?;
            grew |= basis.insert(r.mul_b().into_coeffs())?;
        }
        basis.normalize();
        if !grew {
            return Ok(basis);
        }
    }
}

/// Truncation degree for querying `I(q)` about elements of `Sigma^k`.
pub fn query_degree(params: &BurnsideParams, k: usize) -> usize {
    params.degree.max(k + 1)
}

/// `p^j` times every degree-`k` monomial lies in `I(q)`.
///
/// Requires `e >= 2`, `0 <= j <= e-1` and `k >= e*phi - j*(p^(e-1) - p^(e-2))`.
pub fn p_power_sigma_check(params: &BurnsideParams, j: u32, k: usize) -> Result<bool, IdealError> {
    let min_k = params
        .refined_sigma_power(j)
        .ok_or(IdealError::Precondition(format!(
            "refined inclusion needs e >= 2 and j < e (q={}, j={j})",
            params.q
        )))?;
    if (k as u64) < min_k {
        return Err(IdealError::Precondition(format!("k={k} is below the admissible minimum {min_k}")));
    }
    let degree = query_degree(params, k);
    let ideal = IdealLattice::cyclotomic(params, degree)?;
    let scale = BigInt::from(params.p.pow(j));
    Ok((0..=k).all(|r| {
        let m = TruncatedPoly::monomial(degree, r, k - r).scale(&scale);
        ideal.basis.contains(m.coeffs())
    }))
}

/// The coordinate vector of `a^r b^s` at the given degree.
pub fn monomial_vector(degree: usize, r: usize, s: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dimension(degree)];
    v[index(r, s)] = BigInt::from(1);
    v
}
