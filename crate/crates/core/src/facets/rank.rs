//! Exact matrix rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Result, TuranError};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: Vec<Vec<i128>>) -> Result<usize> {
    Ok(echelon_basis(rows)?.len())
}

/// The nonzero rows of a fraction-free echelon form of `rows`, each divided
/// by the gcd of its entries. They span the same row space as the input.
///
/// Each Bareiss step replaces the trailing rows with
/// `(p * row - row[k] * pivot_row) / prev`, which divides exactly, so every
/// intermediate entry is a minor of the input. The pivot is the entry of
/// largest magnitude in its column; arithmetic is checked.
pub fn echelon_basis(mut rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i128>>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(TuranError::invalid("ragged matrix"));
    }
    let overflow = || TuranError::Overflow("fraction-free elimination");
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(best) = (rank..rows.len())
            .filter(|&i| rows[i][col] != 0)
            .max_by_key(|&i| (rows[i][col].unsigned_abs(), std::cmp::Reverse(i)))
        else {
            continue;
        };
        rows.swap(rank, best);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let p = pivot_row[col];
        for row in tail.iter_mut() {
            let f = row[col];
            for j in col..cols {
                let a = p.checked_mul(row[j]).ok_or_else(overflow)?;
                let b = f.checked_mul(pivot_row[j]).ok_or_else(overflow)?;
                row[j] = a.checked_sub(b).ok_or_else(overflow)? / prev;
            }
        }
        prev = p;
        rank += 1;
    }
    rows.truncate(rank);
    for row in &mut rows {
        let g = row.iter().fold(0u128, |g, &x| gcd(g, x.unsigned_abs()));
        if g > 1 {
            for x in row.iter_mut() {
                *x /= g as i128;
            }
        }
    }
    Ok(rows)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(TuranError::invalid("ragged matrix"));
        }
        Ok(RationalMatrix { rows })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Rank by Gaussian elimination over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let (head, tail) = m.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] / &pivot_row[col];
                for j in col..cols {
                    let d = &f * &pivot_row[j];
                    row[j] -= d;
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_ranks() {
        assert_eq!(integer_rank(vec![]).unwrap(), 0);
        assert_eq!(integer_rank(vec![vec![0, 0], vec![0, 0]]).unwrap(), 0);
        assert_eq!(integer_rank(vec![vec![1, 2], vec![2, 4]]).unwrap(), 1);
        assert_eq!(integer_rank(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap(), 2);
        assert_eq!(
            integer_rank(vec![vec![0, 1, 1], vec![0, 1, 1], vec![0, 0, 3]]).unwrap(),
            2
        );
        assert!(integer_rank(vec![vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX / 2;
        assert!(matches!(
            integer_rank(vec![vec![big, 1], vec![big - 1, big]]),
            Err(TuranError::Overflow(_))
        ));
    }

    #[test]
    fn bareiss_agrees_with_rational_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let rows = rng.gen_range(1..9);
            let cols = rng.gen_range(1..9);
            let density = rng.gen_range(0.1..0.9);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| {
                            if rng.gen_bool(density) {
                                rng.gen_range(-3..=3)
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            let ints = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
            let q = RationalMatrix::from_integers(&m).unwrap();
            assert_eq!(integer_rank(ints).unwrap(), q.rank(), "{m:?}");
        }
    }
}
