//! Turán numbers.
//!
//! For graphs (`r = 2`) the extremal number follows the floor recurrence
//! `t_a^a = C(a, 2) - 1`, `t_a^{i+1} = floor((i + 1) t_a^i / (i - 1))`.
//! For anything else the exact value comes from [`ex_oracle`], a
//! branch-and-bound over minimum-weight hitting sets of the clique edge sets.

mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combinat::{choose, CompleteHypergraph, EdgeSet};
use crate::error::{Result, TuranError};

pub use oracle::{ex_oracle, ex_oracle_value, OracleResult, Weights};

/// Rows `(i, t_a^i)` for `i = a..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalTable {
    pub a: usize,
    pub rows: Vec<(usize, u64)>,
}

impl ExtremalTable {
    pub fn get(&self, n: usize) -> Option<u64> {
        n.checked_sub(self.a).and_then(|i| self.rows.get(i)).map(|&(_, t)| t)
    }
}

fn check_graph_params(n: usize, a: usize) -> Result<()> {
    if a < 3 || n < a {
        return Err(TuranError::invalid(format!("need 3 <= a <= n, got n = {n}, a = {a}")));
    }
    Ok(())
}

/// The `t`-recurrence up to `n_max`, overflow-checked.
pub fn t_table(a: usize, n_max: usize) -> Result<ExtremalTable> {
    check_graph_params(n_max, a)?;
    let mut t = (choose(a, 2) - 1) as u64;
    let mut rows = Vec::with_capacity(n_max - a + 1);
    rows.push((a, t));
    for i in a..n_max {
        t = t_step(i, t)?;
        rows.push((i + 1, t));
    }
    Ok(ExtremalTable { a, rows })
}

/// `t^{i+1} = floor((i + 1) t^i / (i - 1))`.
fn t_step(i: usize, t: u64) -> Result<u64> {
    let next = (i as u128 + 1) * u128::from(t) / (i as u128 - 1);
    u64::try_from(next).map_err(|_| TuranError::Overflow("t-recurrence"))
}

/// `ex(n, a, 2)`, the maximum edge count of an `a`-clique-free graph on `n`
/// vertices.
pub fn ex_exact(n: usize, a: usize) -> Result<u64> {
    Ok(t_table(a, n)?.rows.last().expect("table has at least one row").1)
}

/// The part sizes of the balanced complete `(a-1)`-partite graph on `n`
/// vertices: `p_2` parts of size `ceil(n / (a-1))` first, then `p_1` of size
/// `floor(n / (a-1))`.
pub fn turan_parts(n: usize, a: usize) -> Result<Vec<Vec<usize>>> {
    check_graph_params(n, a)?;
    let k = a - 1;
    let (small, big_count) = (n / k, n % k);
    let mut parts = Vec::with_capacity(k);
    let mut next = 1;
    for p in 0..k {
        let size = if p < big_count { small + 1 } else { small };
        parts.push((next..next + size).collect());
        next += size;
    }
    Ok(parts)
}

/// The Turán graph: complete `(a-1)`-partite with parts as equal as possible.
pub fn turan_graph(n: usize, a: usize) -> Result<EdgeSet> {
    let parts = turan_parts(n, a)?;
    let mut part_of = vec![0; n + 1];
    for (p, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = p;
        }
    }
    let ambient = CompleteHypergraph::new(n, 2)?;
    let mut set = EdgeSet::empty(ambient);
    for e in ambient.edges() {
        let [u, w] = e.vertices() else { unreachable!() };
        if part_of[*u] != part_of[*w] {
            set.insert(e.rank());
        }
    }
    Ok(set)
}

/// `(1 - 1/(a-1)) n^2 / 2` as an exact rational.
pub fn turan_bound(n: usize, a: usize) -> Result<BigRational> {
    check_graph_params(n, a)?;
    let n2 = BigInt::from(n) * BigInt::from(n);
    Ok(BigRational::new(BigInt::from(a - 2) * n2, BigInt::from(2 * (a - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::is_clique_free;
    use num_traits::ToPrimitive;

    /// Independent evaluation of the nested floor expression, innermost first,
    /// using exact rationals rather than the integer recurrence.
    fn nested_floor(n: usize, a: usize) -> u64 {
        let mut value = BigRational::from_integer(BigInt::from(choose(a, 2) - 1));
        for top in a + 1..=n {
            let factor = BigRational::new(BigInt::from(top), BigInt::from(top - 2));
            value = (value * factor).floor();
        }
        value.to_integer().to_u64().unwrap()
    }

    #[test]
    fn mantel_values() {
        let table = t_table(3, 8).unwrap();
        let values: Vec<u64> = table.rows.iter().map(|&(_, t)| t).collect();
        assert_eq!(values, vec![2, 4, 6, 9, 12, 16]);
        for n in 3..=40u64 {
            assert_eq!(ex_exact(n as usize, 3).unwrap(), n * n / 4);
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(t_table(4, 4).unwrap().rows, vec![(4, 5)]);
        assert_eq!(ex_exact(8, 4).unwrap(), 21);
        assert_eq!(ex_exact(7, 3).unwrap(), 12);
        for a in 3..10 {
            assert_eq!(ex_exact(a, a).unwrap() as usize, choose(a, 2) - 1);
        }
        assert_eq!(t_table(4, 8).unwrap().get(8), Some(21));
        assert_eq!(t_table(4, 8).unwrap().get(3), None);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(t_table(2, 5).is_err());
        assert!(ex_exact(3, 4).is_err());
        assert!(turan_graph(2, 3).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(t_step(3, u64::MAX / 2 + 1), Err(TuranError::Overflow("t-recurrence")));
        assert_eq!(t_step(3, 10), Ok(20));
    }

    #[test]
    fn recurrence_matches_nested_floor() {
        for a in 3..=7 {
            for n in a..=60 {
                assert_eq!(ex_exact(n, a).unwrap(), nested_floor(n, a), "n = {n}, a = {a}");
            }
        }
    }

    #[test]
    fn turan_graph_shapes() {
        let c4 = turan_graph(4, 3).unwrap();
        assert_eq!(c4.len(), 4);
        assert!(is_clique_free(&c4, 3));
        let g = turan_graph(8, 4).unwrap();
        assert_eq!(
            turan_parts(8, 4).unwrap(),
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8]]
        );
        assert_eq!(g.len(), 21);
        assert!(is_clique_free(&g, 4));
        assert!(!is_clique_free(&g, 3));
        let k33 = turan_graph(6, 3).unwrap();
        assert_eq!(k33.len(), 9);
    }

    #[test]
    fn turan_graph_matches_recurrence() {
        for a in 3..=7 {
            for n in a..=30 {
                let g = turan_graph(n, a).unwrap();
                assert_eq!(g.len() as u64, ex_exact(n, a).unwrap(), "n = {n}, a = {a}");
                let parts = turan_parts(n, a).unwrap();
                let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
                assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
                assert_eq!(sizes.len(), a - 1);
            }
        }
    }

    #[test]
    fn turan_bound_values() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(turan_bound(6, 3).unwrap(), r(9, 1));
        assert_eq!(turan_bound(7, 3).unwrap(), r(49, 4));
        assert_eq!(turan_bound(8, 4).unwrap(), r(64, 3));
    }

    #[test]
    fn bound_is_attained_exactly_when_divisible() {
        for a in 3..=6 {
            for n in a..=30 {
                let ex = BigRational::from_integer(BigInt::from(ex_exact(n, a).unwrap()));
                let bound = turan_bound(n, a).unwrap();
                assert!(ex <= bound);
                assert_eq!(ex == bound, n % (a - 1) == 0, "n = {n}, a = {a}");
            }
        }
    }

    #[test]
    fn recurrence_chain_inequalities() {
        for a in 3..=6 {
            for n in a..=30 {
                let cur = ex_exact(n, a).unwrap() as u128;
                let next = ex_exact(n + 1, a).unwrap() as u128;
                if n >= 3 {
                    assert_eq!(next, (n as u128 + 1) * cur / (n as u128 - 1));
                }
                assert_eq!(cur, n as u128 * next / (n as u128 + 2));
            }
        }
    }
}
