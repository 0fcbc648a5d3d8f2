use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Pascal triangle `C(n, k)` for `0 <= k <= n <= max`.
pub(crate) struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub(crate) fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub(crate) fn get(&self, n: usize, k: usize) -> &BigInt {
        &self.rows[n][k]
    }
}

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!` for any integer `n`.
pub(crate) fn generalized(n: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= n - i;
        den *= i + 1;
        if num.is_zero() {
            return num;
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_matches_pascal_for_nonnegative() {
        let t = BinomialTable::new(12);
        for n in 0..=12usize {
            for k in 0..=n {
                assert_eq!(&generalized(n as i64, k), t.get(n, k));
            }
            assert_eq!(generalized(n as i64, n + 1), BigInt::zero());
        }
    }

    #[test]
    fn generalized_negative_upper_index() {
        // C(-1, k) = (-1)^k and C(-2, k) = (-1)^k (k + 1)
        for k in 0..8usize {
            let s = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(generalized(-1, k), BigInt::from(s));
            assert_eq!(generalized(-2, k), BigInt::from(s * (k as i64 + 1)));
        }
    }
}
