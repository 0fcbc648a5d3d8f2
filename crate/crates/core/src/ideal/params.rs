use std::fmt;

use super::IdealError;

/// Prime-power exponent `q = p^e` and the truncation data derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideParams {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    /// Euler phi of `q`: `p^e - p^(e-1)`.
    pub phi: u64,
    /// `e * phi`: the augmentation ideal to this power lies in the cyclotomic ideal.
    pub bound: u64,
    /// Truncation degree `e * phi + 1`.
    pub degree: usize,
}

impl BurnsideParams {
    pub fn new(q: u64) -> Result<Self, IdealError> {
        let (p, e) = prime_power(q).ok_or(IdealError::NotPrimePower(q))?;
        let phi = q - q / p;
        let bound = e as u64 * phi;
        Ok(BurnsideParams {
            q,
            p,
            e,
            phi,
            bound,
            degree: bound as usize + 1,
        })
    }

    /// Smallest `k` with `2^(k-1) >= e * phi + 1`: the derived-length bound
    /// for the group over `S(q)[t^±1]`.
    pub fn derived_length_bound(&self) -> u32 {
        let target = self.bound + 1;
        let mut k = 1;
        while (1u64 << (k - 1)) < target {
            k += 1;
        }
        k
    }

    /// Smallest `k` admitted by the refined inclusion `p^j Sigma^k ⊆ I(q)`
    /// for `e >= 2`: `e*phi - j*(p^(e-1) - p^(e-2))`.
    pub fn refined_sigma_power(&self, j: u32) -> Option<u64> {
        if self.e < 2 || j >= self.e {
            return None;
        }
        let pe1 = self.p.pow(self.e - 1);
        let pe2 = self.p.pow(self.e - 2);
        Some(self.bound - j as u64 * (pe1 - pe2))
    }

    /// Divisors of `q` in increasing order: `1, p, p^2, ..., q`.
    pub fn divisors(&self) -> Vec<u64> {
        (0..=self.e).map(|i| self.p.pow(i)).collect()
    }
}

impl fmt::Display for BurnsideParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} (p={}, e={}, phi={}, e*phi={}, D={})",
            self.q, self.p, self.e, self.phi, self.bound, self.degree
        )
    }
}

/// `Some((p, e))` when `n = p^e` with `p` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        let cases = [
            (2, 2, 1, 1, 2),
            (3, 3, 1, 2, 3),
            (4, 2, 2, 2, 5),
            (5, 5, 1, 4, 5),
            (7, 7, 1, 6, 7),
            (8, 2, 3, 4, 13),
            (9, 3, 2, 6, 13),
        ];
        for (q, p, e, phi, d) in cases {
            let bp = BurnsideParams::new(q).unwrap();
            assert_eq!((bp.p, bp.e, bp.phi, bp.degree), (p, e, phi, d), "q={q}");
            assert_eq!(bp.bound, e as u64 * phi);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        for n in [0, 1, 6, 10, 12, 36] {
            assert_eq!(BurnsideParams::new(n), Err(IdealError::NotPrimePower(n)));
        }
    }

    #[test]
    fn derived_length_bounds() {
        let k = |q| BurnsideParams::new(q).unwrap().derived_length_bound();
        assert_eq!(k(2), 2);
        assert_eq!(k(3), 3);
        assert_eq!(k(4), 4);
        assert_eq!(k(5), 4);
        assert_eq!(k(7), 4);
        assert_eq!(k(9), 5);
    }

    #[test]
    fn refined_powers() {
        let q4 = BurnsideParams::new(4).unwrap();
        assert_eq!(q4.refined_sigma_power(0), Some(4));
        assert_eq!(q4.refined_sigma_power(1), Some(3));
        assert_eq!(q4.refined_sigma_power(2), None);
        let q9 = BurnsideParams::new(9).unwrap();
        assert_eq!(q9.refined_sigma_power(1), Some(10));
        assert_eq!(BurnsideParams::new(5).unwrap().refined_sigma_power(0), None);
    }
}
