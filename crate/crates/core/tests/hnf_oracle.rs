//! The incremental Hermite basis against a textbook row reduction on i128.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use solvmat::hnf::HermiteBasis;

/// Row-style HNF: pivots strictly increasing, positive, entries above a pivot in `[0, pivot)`.
fn naive_hnf(mut m: Vec<Vec<i128>>, dim: usize) -> Vec<Vec<i128>> {
    let mut top = 0;
    for col in 0..dim {
        loop {
            // smallest nonzero entry at or below `top`
            let Some(best) = (top..m.len()).filter(|&r| m[r][col] != 0).min_by_key(|&r| m[r][col].abs()) else {
                break;
            };
            m.swap(top, best);
            let mut done = true;
            for r in top + 1..m.len() {
                if m[r][col] != 0 {
                    let f = m[r][col].div_euclid(m[top][col]);
                    for c in 0..dim {
                        m[r][c] -= f * m[top][c];
                    }
                    if m[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if m[top][col] < 0 {
                    m[top].iter_mut().for_each(|v| *v = -*v);
                }
                for r in 0..top {
                    let f = m[r][col].div_euclid(m[top][col]);
                    for c in 0..dim {
                        m[r][c] -= f * m[top][c];
                    }
                }
                top += 1;
                break;
            }
        }
    }
    m.truncate(top);
    m
}

fn to_big(rows: &[Vec<i128>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i128>>)> {
    (1usize..=5).prop_flat_map(|dim| (Just(dim), prop::collection::vec(prop::collection::vec(-9i128..=9, dim), 0..7)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_textbook_reduction((dim, rows) in matrix()) {
        let h = HermiteBasis::from_generators(dim, to_big(&rows)).unwrap();
        let got: Vec<Vec<i128>> = h.rows().map(|r| r.iter().map(|v| v.to_i128().unwrap()).collect()).collect();
        prop_assert_eq!(got, naive_hnf(rows, dim));
    }

    #[test]
    fn membership_agrees((dim, rows) in matrix(), v in prop::collection::vec(-20i128..=20, 5)) {
        let v: Vec<i128> = v[..dim].to_vec();
        let h = HermiteBasis::from_generators(dim, to_big(&rows)).unwrap();
        let mut extended = rows.clone();
        extended.push(v.clone());
        let oracle = naive_hnf(extended, dim) == naive_hnf(rows, dim);
        prop_assert_eq!(h.contains(&to_big(&[v])[0]), oracle);
    }

    #[test]
    fn generator_order_is_irrelevant((dim, rows) in matrix()) {
        let mut rev = rows.clone();
        rev.reverse();
        prop_assert_eq!(
            HermiteBasis::from_generators(dim, to_big(&rows)).unwrap(),
            HermiteBasis::from_generators(dim, to_big(&rev)).unwrap()
        );
    }
}
