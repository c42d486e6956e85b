//! Dense two-phase tableau simplex over exact rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TuranError};

/// Optimal basic solution of `max c x` subject to `A x <= b`, `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSolution {
    pub value: BigRational,
    pub point: Vec<BigRational>,
    pub pivots: usize,
}

struct Tableau {
    /// `rows[i]` holds the constraint coefficients followed by the right-hand side.
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    /// Reduced costs of the current objective, then minus its value.
    obj: Vec<BigRational>,
    cols: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vec<BigRational>| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for (x, p) in target.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        };
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.obj);
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Sets the objective row for maximizing `c` (indexed like the columns)
    /// and prices out the basic columns.
    fn set_objective(&mut self, c: &[BigRational]) {
        self.obj = c.iter().cloned().chain(std::iter::once(BigRational::zero())).collect();
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            let f = self.obj[b].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in self.obj.iter_mut().zip(&self.rows[i]) {
                *x -= &f * r;
            }
        }
    }

    /// Bland's rule: entering column is the lowest index with positive reduced
    /// cost among `allowed`, leaving row minimizes the ratio with ties broken
    /// by the lowest basic index.
    fn optimize(&mut self, allowed: usize) -> Result<()> {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return Ok(());
            };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            let Some((_, row, _)) = best else {
                return Err(TuranError::Unbounded);
            };
            self.pivot(row, col);
        }
    }
}

/// Maximizes `c x` over `A x <= b`, `x >= 0` exactly.
///
/// Rows with a negative right-hand side get an artificial variable and a
/// first phase that minimizes their sum.
pub fn simplex_max(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Result<SimplexSolution> {
    let n = c.len();
    let m = b.len();
    if a.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(TuranError::invalid("constraint matrix shape does not match"));
    }
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let cols = n + m + negative.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![BigRational::zero(); cols + 1];
        let sign = if b[i].is_negative() {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
        }
        row[n + i] = sign.clone();
        row[cols] = &b[i] * &sign;
        match negative.iter().position(|&k| k == i) {
            Some(k) => {
                row[n + m + k] = BigRational::one();
                basis.push(n + m + k);
            }
            None => basis.push(n + i),
        }
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis,
        obj: Vec::new(),
        cols,
        pivots: 0,
    };

    if !negative.is_empty() {
        let mut phase1 = vec![BigRational::zero(); cols];
        for x in &mut phase1[n + m..] {
            *x = -BigRational::one();
        }
        t.set_objective(&phase1);
        t.optimize(cols)?;
        if !t.obj[cols].is_zero() {
            return Err(TuranError::Infeasible);
        }
        // drive the remaining (zero-valued) artificials out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + m {
                match (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        // redundant row
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in &mut t.rows {
            row.drain(n + m..cols);
        }
        t.cols = n + m;
    }

    let mut objective = c.to_vec();
    objective.resize(t.cols, BigRational::zero());
    t.set_objective(&objective);
    t.optimize(t.cols)?;

    let mut point = vec![BigRational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            point[bv] = t.rhs(i).clone();
        }
    }
    let value = -t.obj[t.cols].clone();
    Ok(SimplexSolution {
        value,
        point,
        pivots: t.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    #[test]
    fn single_variable() {
        let s = simplex_max(&ints(&[&[1]]), &[q(1, 1)], &[q(1, 1)]).unwrap();
        assert_eq!(s.value, q(1, 1));
        assert_eq!(s.point, vec![q(1, 1)]);
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let a = ints(&[&[1, 0], &[0, 2], &[3, 2]]);
        let s = simplex_max(&a, &[q(4, 1), q(12, 1), q(18, 1)], &[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(s.value, q(36, 1));
        assert_eq!(s.point, vec![q(2, 1), q(6, 1)]);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y, 2x + y <= 1, x + 2y <= 1 -> 2/3
        let a = ints(&[&[2, 1], &[1, 2]]);
        let s = simplex_max(&a, &[q(1, 1), q(1, 1)], &[q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(s.value, q(2, 3));
    }

    #[test]
    fn phase_one() {
        // x + y >= 2 written as -x - y <= -2, x <= 3, y <= 1; max -x -> -1
        let a = ints(&[&[-1, -1], &[1, 0], &[0, 1]]);
        let s = simplex_max(&a, &[q(-2, 1), q(3, 1), q(1, 1)], &[q(-1, 1), q(0, 1)]).unwrap();
        assert_eq!(s.value, q(-1, 1));
        assert_eq!(s.point, vec![q(1, 1), q(1, 1)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = ints(&[&[1], &[-1]]);
        assert_eq!(
            simplex_max(&a, &[q(1, 1), q(-2, 1)], &[q(1, 1)]),
            Err(TuranError::Infeasible)
        );
        let a = ints(&[&[1, -1]]);
        assert_eq!(
            simplex_max(&a, &[q(1, 1)], &[q(1, 1), q(0, 1)]),
            Err(TuranError::Unbounded)
        );
    }

    #[test]
    fn degenerate_problem_terminates() {
        // a classic cycling example under the largest-coefficient rule
        let a = vec![
            vec![q(1, 4), q(-8, 1), q(-1, 1), q(9, 1)],
            vec![q(1, 2), q(-12, 1), q(-1, 2), q(3, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)],
        ];
        let b = [q(0, 1), q(0, 1), q(1, 1)];
        let c = [q(3, 4), q(-20, 1), q(1, 2), q(-6, 1)];
        let s = simplex_max(&a, &b, &c).unwrap();
        assert_eq!(s.value, q(5, 4));
    }
}
