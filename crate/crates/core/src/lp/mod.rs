//! The clique relaxation `Q(n, a, r)`: one row `sum_{E[S]} x_e <= ex(|S|, a, r)`
//! for every vertex set `S` with `a <= |S| <= n - 1`, and `0 <= x <= 1`.

mod simplex;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinat::{binomial, clique_ranks, ColexSubsets, CompleteHypergraph};
use crate::error::{Result, TuranError};
use crate::extremal::ex_exact;
use crate::inequalities::extremal_number;
use crate::Limits;

pub use simplex::{simplex_max, SimplexSolution};

pub type Rational = BigRational;

/// `sum coeffs x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    /// `(variable, coefficient)` with increasing variable index.
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
    pub label: String,
}

/// Linear constraints over the edge variables of `K^r_n`, indexed by colex
/// rank, with box bounds per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub ambient: CompleteHypergraph,
    pub rows: Vec<Row>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
}

impl ConstraintSystem {
    pub fn variables(&self) -> usize {
        self.ambient.edge_count()
    }

    /// Lower and upper bound constraints, counted as rows.
    pub fn bound_rows(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    /// Whether `point` satisfies every row and bound exactly.
    pub fn satisfies(&self, point: &[Rational]) -> bool {
        point.len() == self.variables()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
            && self.rows.iter().all(|row| {
                let lhs: Rational = row.coeffs.iter().map(|(j, c)| c * &point[*j]).sum();
                lhs <= row.rhs
            })
    }

    /// Writes the system in CPLEX LP format, maximizing `objective`.
    pub fn to_lp_format(&self, objective: &[Rational], name: &str) -> Result<String> {
        let var = |rank: usize| -> String {
            let e = self.ambient.unrank(rank).expect("variable in range");
            let labels: Vec<String> = e.vertices().iter().map(usize::to_string).collect();
            format!("x_{}", labels.join("_"))
        };
        let num = |q: &Rational| -> Result<String> {
            if q.is_integer() {
                Ok(q.to_integer().to_string())
            } else {
                Err(TuranError::invalid(format!("LP export needs integer data, found {q}")))
            }
        };
        let terms = |coeffs: &mut dyn Iterator<Item = (usize, &Rational)>| -> Result<String> {
            let mut s = String::new();
            for (j, c) in coeffs {
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() { "-" } else { "+" };
                let mag = num(&c.abs())?;
                if s.is_empty() && sign == "+" {
                    s.push_str(&format!("{mag} {}", var(j)));
                } else {
                    s.push_str(&format!(" {sign} {mag} {}", var(j)));
                }
            }
            Ok(if s.is_empty() { "0".into() } else { s })
        };
        let mut out = String::new();
        writeln!(out, "\\ {name}").unwrap();
        writeln!(out, "Maximize").unwrap();
        writeln!(out, " obj: {}", terms(&mut objective.iter().enumerate())?).unwrap();
        writeln!(out, "Subject To").unwrap();
        for (i, row) in self.rows.iter().enumerate() {
            let lhs = terms(&mut row.coeffs.iter().map(|(j, c)| (*j, c)))?;
            writeln!(out, " c{}: {lhs} <= {}", i + 1, num(&row.rhs)?).unwrap();
        }
        writeln!(out, "Bounds").unwrap();
        for j in 0..self.variables() {
            writeln!(
                out,
                " {} <= {} <= {}",
                num(&self.lower[j])?,
                var(j),
                num(&self.upper[j])?
            )
            .unwrap();
        }
        writeln!(out, "End").unwrap();
        Ok(out)
    }
}

fn int(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Builds `Q(n, a, r)`. With `include_full_clique`, the row for `S = [n]`
/// is added as well.
pub fn build_q(n: usize, a: usize, r: usize, include_full_clique: bool, limits: &Limits) -> Result<ConstraintSystem> {
    if r < 2 || a <= r || n < a {
        return Err(TuranError::invalid(format!(
            "Q(n, a, r) needs 2 <= r < a <= n, got n = {n}, a = {a}, r = {r}"
        )));
    }
    let ambient = CompleteHypergraph::new(n, r)?;
    limits.check_edges(ambient)?;
    let top = if include_full_clique { n } else { n - 1 };
    let row_count: u64 = (a..=top)
        .map(|i| binomial(n as u64, i as u64).unwrap_or(u64::MAX))
        .fold(0u64, u64::saturating_add);
    if row_count > limits.max_lp_rows as u64 {
        return Err(TuranError::CapExceeded {
            what: "clique rows of Q(n, a, r)",
            size: row_count as usize,
            cap: limits.max_lp_rows,
        });
    }
    let mut rows = Vec::with_capacity(row_count as usize);
    for i in a..=top {
        let rhs = int(extremal_number(i, a, r, limits)?);
        for s in ColexSubsets::new(n, i) {
            let mut coeffs: Vec<(usize, Rational)> =
                clique_ranks(&s, r).into_iter().map(|e| (e, Rational::one())).collect();
            coeffs.sort_by_key(|(e, _)| *e);
            rows.push(Row {
                coeffs,
                rhs: rhs.clone(),
                label: format!("Q{s:?}"),
            });
        }
    }
    let vars = ambient.edge_count();
    Ok(ConstraintSystem {
        ambient,
        rows,
        lower: vec![Rational::zero(); vars],
        upper: vec![Rational::one(); vars],
    })
}

/// Exact maximum of `objective` over the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
    pub pivots: usize,
}

impl LpSolution {
    /// `floor(value)`, for nonnegative optima.
    pub fn floor(&self) -> Result<u64> {
        u64::try_from(self.value.floor().to_integer()).map_err(|_| TuranError::Overflow("LP optimum"))
    }
}

/// Maximizes `objective` over `system` with the exact simplex. Lower bounds
/// must be zero; upper bounds become rows.
pub fn lp_max(system: &ConstraintSystem, objective: &[Rational]) -> Result<LpSolution> {
    let n = system.variables();
    if objective.len() != n {
        return Err(TuranError::invalid("objective length differs from the variable count"));
    }
    if system.lower.iter().any(|lo| !lo.is_zero()) {
        return Err(TuranError::invalid("lower bounds other than zero are not supported"));
    }
    let mut a = Vec::with_capacity(system.rows.len() + n);
    let mut b = Vec::with_capacity(system.rows.len() + n);
    for row in &system.rows {
        let mut dense = vec![Rational::zero(); n];
        for (j, c) in &row.coeffs {
            dense[*j] += c;
        }
        a.push(dense);
        b.push(row.rhs.clone());
    }
    for (j, hi) in system.upper.iter().enumerate() {
        let mut dense = vec![Rational::zero(); n];
        dense[j] = Rational::one();
        a.push(dense);
        b.push(hi.clone());
    }
    let s = simplex_max(&a, &b, objective)?;
    Ok(LpSolution {
        value: s.value,
        point: s.point,
        pivots: s.pivots,
    })
}

/// `floor(max 1x over Q(n, a, 2))` against `ex(n, a, 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapCheck {
    pub n: usize,
    pub a: usize,
    /// The exact optimum as `p/q`.
    pub lp_value: String,
    pub lp_floor: u64,
    pub ex: u64,
    pub pivots: usize,
    pub holds: bool,
}

pub fn integrality_gap_check(n: usize, a: usize, limits: &Limits) -> Result<GapCheck> {
    let system = build_q(n, a, 2, false, limits)?;
    let ones = vec![Rational::one(); system.variables()];
    let sol = lp_max(&system, &ones)?;
    let lp_floor = sol.floor()?;
    let ex = ex_exact(n, a)?;
    Ok(GapCheck {
        n,
        a,
        lp_value: format!("{}/{}", sol.value.numer(), sol.value.denom()),
        lp_floor,
        ex,
        pivots: sol.pivots,
        holds: lp_floor == ex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    fn ones(s: &ConstraintSystem) -> Vec<Rational> {
        vec![Rational::one(); s.variables()]
    }

    #[test]
    fn q_shapes() {
        let l = Limits::default();
        let s = build_q(4, 3, 2, false, &l).unwrap();
        assert_eq!(s.rows.len(), 4);
        assert!(s.rows.iter().all(|r| r.rhs == q(2, 1) && r.coeffs.len() == 3));
        assert_eq!(s.bound_rows(), 12);
        assert_eq!(s.variables(), 6);
        let s = build_q(5, 3, 2, false, &l).unwrap();
        assert_eq!(s.rows.iter().filter(|r| r.rhs == q(2, 1)).count(), 10);
        assert_eq!(s.rows.iter().filter(|r| r.rhs == q(4, 1)).count(), 5);
        assert_eq!(s.rows.len(), 15);
        let s = build_q(5, 4, 2, false, &l).unwrap();
        assert_eq!(s.rows.len(), 5);
        assert!(s.rows.iter().all(|r| r.rhs == q(5, 1)));
        assert_eq!(build_q(5, 4, 2, true, &l).unwrap().rows.len(), 6);
    }

    #[test]
    fn row_cap() {
        let l = Limits {
            max_lp_rows: 14,
            ..Limits::default()
        };
        assert!(matches!(
            build_q(5, 3, 2, false, &l),
            Err(TuranError::CapExceeded { .. })
        ));
        assert!(build_q(3, 4, 2, false, &Limits::default()).is_err());
    }

    #[test]
    fn small_optima() {
        let l = Limits::default();
        let s = build_q(4, 3, 2, false, &l).unwrap();
        let sol = lp_max(&s, &ones(&s)).unwrap();
        assert_eq!(sol.value, q(4, 1));
        assert!(s.satisfies(&sol.point));

        let s = build_q(5, 3, 2, false, &l).unwrap();
        let sol = lp_max(&s, &ones(&s)).unwrap();
        assert!(sol.value >= q(6, 1) && sol.value <= q(20, 3), "{}", sol.value);
        assert!(s.satisfies(&sol.point));
    }

    #[test]
    fn gap_checks() {
        let l = Limits::default();
        for (n, a) in [(5, 3), (6, 3), (7, 4)] {
            let g = integrality_gap_check(n, a, &l).unwrap();
            assert!(g.holds, "{g:?}");
        }
    }

    #[test]
    fn lp_export() {
        let s = build_q(4, 3, 2, false, &Limits::default()).unwrap();
        let text = s.to_lp_format(&ones(&s), "Q(4,3,2)").unwrap();
        assert!(text.starts_with("\\ Q(4,3,2)\nMaximize\n obj: 1 x_1_2 + 1 x_1_3"));
        assert!(text.contains(" c1: 1 x_1_2 + 1 x_1_3 + 1 x_2_3 <= 2\n"));
        assert!(text.contains(" 0 <= x_3_4 <= 1\n"));
        assert!(text.ends_with("End\n"));
        assert!(s.to_lp_format(&vec![q(1, 2); 6], "x").is_err());
    }
}
