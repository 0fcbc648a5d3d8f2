//! `Z[a, b] / (a, b)^D`, the image of `Z[x^±1, y^±1]` modulo the `D`-th power
//! of the augmentation ideal, written in the basis `a = 1 - x`, `b = 1 - y`.
//!
//! Coordinates are graded: degree `d` occupies positions `d(d+1)/2 ..= d(d+1)/2 + d`,
//! and within a degree `a^r b^s` sits at offset `s` (so `a^d` comes first).

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::binomial::generalized;
use super::laurent::Valuation;
use super::RingError;

/// Number of monomials `a^r b^s` with `r + s < degree`.
pub const fn dimension(degree: usize) -> usize {
    degree * (degree + 1) / 2
}

/// Coordinate of `a^r b^s`.
pub const fn index(r: usize, s: usize) -> usize {
    let d = r + s;
    d * (d + 1) / 2 + s
}

/// Inverse of [`index`].
pub fn monomial_at(idx: usize) -> (usize, usize) {
    let mut d = 0;
    while dimension(d + 1) <= idx {
        d += 1;
    }
    let s = idx - dimension(d);
    (d - s, s)
}

/// Total degree of the monomial at a coordinate.
pub fn degree_at(idx: usize) -> usize {
    let (r, s) = monomial_at(idx);
    r + s
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPoly {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedPoly {
    pub fn zero(degree: usize) -> Self {
        TruncatedPoly {
            degree,
            coeffs: vec![BigInt::zero(); dimension(degree)],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, 0, 0)
    }

    /// `a^r b^s`, or zero when `r + s >= degree`.
    pub fn monomial(degree: usize, r: usize, s: usize) -> Self {
        let mut out = Self::zero(degree);
        if r + s < degree {
            out.coeffs[index(r, s)] = BigInt::one();
        }
        out
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<BigInt>) -> Result<Self, RingError> {
        if coeffs.len() != dimension(degree) {
            return Err(RingError::Dimension {
                expected: dimension(degree),
                found: coeffs.len(),
            });
        }
        Ok(TruncatedPoly { degree, coeffs })
    }

    pub(crate) fn from_laurent_terms<'a, I>(degree: usize, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (i32, i32, &'a BigInt)>,
    {
        if degree == 0 {
            return Err(RingError::ZeroDegree);
        }
        // x^i = (1 - a)^i = sum_r C(i, r) (-a)^r, valid for negative i as a
        // power series, which truncation makes finite.
        let mut cache: HashMap<i32, Vec<BigInt>> = HashMap::new();
        let mut series = |i: i32| -> Vec<BigInt> {
            cache
                .entry(i)
                .or_insert_with(|| {
                    (0..degree)
                        .map(|r| {
                            let c = generalized(i as i64, r);
                            if r % 2 == 1 {
                                -c
                            } else {
                                c
                            }
                        })
                        .collect()
                })
                .clone()
        };
        let mut out = Self::zero(degree);
        for (i, j, c) in terms {
            let xs = series(i);
            let ys = series(j);
            for (r, xr) in xs.iter().enumerate() {
                if xr.is_zero() {
                    continue;
                }
                let cx = c * xr;
                for (s, ys_s) in ys.iter().enumerate().take(degree - r) {
                    if !ys_s.is_zero() {
                        out.coeffs[index(r, s)] += &cx * ys_s;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn get(&self, r: usize, s: usize) -> BigInt {
        if r + s < self.degree {
            self.coeffs[index(r, s)].clone()
        } else {
            BigInt::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Constant coordinate; every `a^r b^s` with `r + s > 0` augments to zero.
    pub fn augmentation(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Lowest degree carrying a nonzero coefficient (`Infinite` if zero).
    pub fn valuation(&self) -> Valuation {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(Valuation::Infinite, |i| Valuation::Finite(degree_at(i) as u32))
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.degree != other.degree {
            return Err(RingError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        Ok(TruncatedPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        Ok(TruncatedPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncatedPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Product, dropping everything of total degree `>= degree`.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let d = self.degree;
        let mut out = Self::zero(d);
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let (r1, s1) = monomial_at(i);
            for (j, cj) in other.coeffs.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let (r2, s2) = monomial_at(j);
                if r1 + s1 + r2 + s2 < d {
                    out.coeffs[index(r1 + r2, s1 + s2)] += ci * cj;
                }
            }
        }
        Ok(out)
    }

    /// Multiplication by the monomial `a^r b^s`.
    pub fn shift(&self, r: usize, s: usize) -> Self {
        let d = self.degree;
        let mut out = Self::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            let (r1, s1) = monomial_at(i);
            if r1 + s1 + r + s < d {
                out.coeffs[index(r1 + r, s1 + s)] = c.clone();
            }
        }
        out
    }

    pub fn mul_a(&self) -> Self {
        self.shift(1, 0)
    }

    pub fn mul_b(&self) -> Self {
        self.shift(0, 1)
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (r, s) = monomial_at(i);
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if r + s == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let mut parts = Vec::new();
            for (name, p) in [("a", r), ("b", s)] {
                match p {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{p}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LaurentPoly;

    fn tp(d: usize, pairs: &[((usize, usize), i64)]) -> TruncatedPoly {
        let mut out = TruncatedPoly::zero(d);
        for ((r, s), c) in pairs {
            out.coeffs[index(*r, *s)] = BigInt::from(*c);
        }
        out
    }

    #[test]
    fn indexing_is_graded_and_invertible() {
        assert_eq!(index(0, 0), 0);
        assert_eq!(index(1, 0), 1);
        assert_eq!(index(0, 1), 2);
        assert_eq!(index(2, 0), 3);
        for i in 0..dimension(9) {
            let (r, s) = monomial_at(i);
            assert_eq!(index(r, s), i);
        }
        assert_eq!(dimension(13), 91);
    }

    #[test]
    fn constant_one() {
        let one = LaurentPoly::one().to_truncated(4).unwrap();
        assert_eq!(one, TruncatedPoly::one(4));
    }

    #[test]
    fn inverse_of_x_is_geometric_series() {
        let xinv = LaurentPoly::xyt(-1, 0, 0).to_truncated(3).unwrap();
        assert_eq!(xinv, tp(3, &[((0, 0), 1), ((1, 0), 1), ((2, 0), 1)]));
    }

    #[test]
    fn one_plus_x_plus_x2_at_degree_two() {
        let f = LaurentPoly::one() + LaurentPoly::x() + LaurentPoly::x().pow(2);
        assert_eq!(f.to_truncated(2).unwrap(), tp(2, &[((0, 0), 3), ((1, 0), -3)]));
    }

    #[test]
    fn x_times_xinv_is_one() {
        for d in 1..7 {
            let x = LaurentPoly::x().to_truncated(d).unwrap();
            let xi = LaurentPoly::xyt(-1, 0, 0).to_truncated(d).unwrap();
            assert_eq!(x.mul(&xi).unwrap(), TruncatedPoly::one(d));
        }
    }

    #[test]
    fn mismatched_degrees_are_rejected() {
        let a = TruncatedPoly::one(2);
        let b = TruncatedPoly::one(3);
        assert!(matches!(a.mul(&b), Err(RingError::DegreeMismatch(2, 3))));
    }

    #[test]
    fn render() {
        assert_eq!(tp(3, &[((0, 0), 3), ((0, 1), -3), ((0, 2), 1)]).to_string(), "3 - 3*b + b^2");
        assert_eq!(TruncatedPoly::zero(3).to_string(), "0");
    }
}
