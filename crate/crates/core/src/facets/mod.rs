//! Facet verification by tight-point enumeration and exact affine rank, and
//! the two sufficient conditions for lifting a facet into a larger ambient.
//!
//! `T(G, a, r)` is full-dimensional (it contains `0` and every unit vector),
//! so a valid inequality defines a facet exactly when its tight points span
//! an affine space of dimension `|E(G)| - 1`.

mod rank;

use serde::Serialize;

use crate::combinat::{CliqueIndex, Edge, EdgeSet};
use crate::error::{Result, TuranError};
use crate::extremal::{ex_oracle, ex_oracle_value, Weights};
use crate::inequalities::LinearInequality;
use crate::Limits;

pub use rank::{echelon_basis, integer_rank, RationalMatrix};

/// Tight points of an inequality inside an ambient edge set.
#[derive(Debug, Clone)]
pub struct TightPoints {
    /// Maximum of the left-hand side over clique-free subsets of the support.
    pub max_lhs: u64,
    /// Clique-free subsets of the ambient attaining the right-hand side; empty
    /// unless `max_lhs` equals it.
    pub points: Vec<EdgeSet>,
    pub truncated: bool,
}

fn check_ambient(ineq: &LinearInequality, ambient: &EdgeSet) -> Result<()> {
    let (want, found) = (ineq.ambient(), ambient.ambient());
    if want != found {
        return Err(TuranError::AmbientMismatch {
            expected_n: want.n,
            expected_r: want.r,
            found_n: found.n,
            found_r: found.r,
        });
    }
    if !ineq.support().is_subset(ambient) {
        return Err(TuranError::invalid(
            "ambient edge set must contain the inequality's support",
        ));
    }
    Ok(())
}

/// Every `a`-clique-free subset of `ambient` on which the left-hand side of
/// `ineq` equals its right-hand side.
///
/// The optima on the support come from the exact oracle; each is then
/// extended by every subset of `ambient \ support` that keeps it clique-free.
/// Extension runs only when `ambient` has at most
/// `limits.max_extension_edges` edges.
pub fn tight_points(ineq: &LinearInequality, a: usize, ambient: &EdgeSet, limits: &Limits) -> Result<TightPoints> {
    check_ambient(ineq, ambient)?;
    limits.check_edges(ambient.ambient())?;
    let support = ineq.support();
    let outside: Vec<usize> = ambient.difference(&support)?.iter().collect();
    if !outside.is_empty() && ambient.len() > limits.max_extension_edges {
        return Err(TuranError::CapExceeded {
            what: "ambient edges for tight-point extension",
            size: ambient.len(),
            cap: limits.max_extension_edges,
        });
    }
    let res = ex_oracle(&support, a, ineq.weights(), limits)?;
    let mut out = TightPoints {
        max_lhs: res.value,
        points: Vec::new(),
        truncated: false,
    };
    if res.value != ineq.rhs() {
        return Ok(out);
    }
    out.truncated = res.truncated;
    if outside.is_empty() {
        out.points = res.optima;
        return Ok(out);
    }
    let ext = Extender::new(ambient, &outside, a)?;
    for base in &res.optima {
        if ext.extend(base.clone(), 0, &mut out.points, limits.max_optima) {
            out.truncated = true;
            break;
        }
    }
    Ok(out)
}

/// Enumerates clique-free supersets of a base set using edges from `outside`.
struct Extender<'a> {
    outside: &'a [usize],
    /// For each outside edge, the edge ranks of the ambient cliques containing it.
    cliques_at: Vec<Vec<Vec<usize>>>,
}

impl<'a> Extender<'a> {
    fn new(ambient: &EdgeSet, outside: &'a [usize], a: usize) -> Result<Extender<'a>> {
        let index = CliqueIndex::within(ambient, a)?;
        let cliques_at = outside
            .iter()
            .map(|e| index.masks().iter().filter(|m| m.contains(e)).cloned().collect())
            .collect();
        Ok(Extender { outside, cliques_at })
    }

    /// Pushes every extension of `set` by edges `outside[i..]`; true once
    /// `cap` points have been collected.
    fn extend(&self, mut set: EdgeSet, i: usize, out: &mut Vec<EdgeSet>, cap: usize) -> bool {
        if i == self.outside.len() {
            out.push(set);
            return out.len() >= cap;
        }
        if self.extend(set.clone(), i + 1, out, cap) {
            return true;
        }
        let e = self.outside[i];
        set.insert(e);
        let closes_clique = self.cliques_at[i].iter().any(|m| m.iter().all(|&f| set.contains(f)));
        !closes_clique && self.extend(set, i + 1, out, cap)
    }
}

/// Dimension of the affine hull of `points`: the rank of the differences
/// `p_i - p_0`. Zero for fewer than two points.
pub fn affine_rank(points: &[EdgeSet]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let coords: Vec<usize> = points
        .iter()
        .try_fold(first.clone(), |acc, p| acc.union(p))?
        .iter()
        .collect();
    let diff = |p: &EdgeSet| -> Vec<i128> {
        coords
            .iter()
            .map(|&e| i128::from(p.contains(e)) - i128::from(first.contains(e)))
            .collect()
    };
    // chunked so the working matrix stays small; the basis carries over
    const CHUNK: usize = 2048;
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for chunk in points[1..].chunks(CHUNK) {
        if basis.len() == coords.len() {
            break;
        }
        basis.extend(chunk.iter().map(diff));
        basis = echelon_basis(basis)?;
    }
    Ok(basis.len())
}

/// Outcome of a facet check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetVerdict {
    pub valid: bool,
    pub max_lhs: u64,
    pub rhs: u64,
    pub tight_count: usize,
    pub affine_rank: usize,
    /// `|E(ambient)|`, the dimension of `T(ambient, a, r)`.
    pub ambient_dim: usize,
    pub is_facet: bool,
    pub truncated: bool,
}

/// Decides whether `ineq` defines a facet of `T(ambient, a, r)`.
pub fn is_facet(ineq: &LinearInequality, a: usize, ambient: &EdgeSet, limits: &Limits) -> Result<FacetVerdict> {
    let tight = tight_points(ineq, a, ambient, limits)?;
    let affine_rank = affine_rank(&tight.points)?;
    let ambient_dim = ambient.len();
    let valid = tight.max_lhs <= ineq.rhs();
    Ok(FacetVerdict {
        valid,
        max_lhs: tight.max_lhs,
        rhs: ineq.rhs(),
        tight_count: tight.points.len(),
        affine_rank,
        ambient_dim,
        is_facet: valid && tight.max_lhs == ineq.rhs() && affine_rank + 1 == ambient_dim && !tight.truncated,
        truncated: tight.truncated,
    })
}

/// Outcome of a lifting-condition check: `holds` is false as soon as one
/// added edge fails, and that edge is reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftCheck {
    pub holds: bool,
    pub edges_checked: usize,
    pub failing_edge: Option<Edge>,
    /// Set when the tight points were truncated and a failure may be spurious.
    pub truncated: bool,
}

fn lift_edges(h: &EdgeSet, g: &EdgeSet) -> Result<Vec<usize>> {
    if !h.is_subset(g) {
        return Err(TuranError::invalid("H must be a subset of G"));
    }
    Ok(g.difference(h)?.iter().collect())
}

/// `ex(H + e, a, r) = ex(H, a, r) + 1` for every edge `e` of `G \ H`.
pub fn check_lift_rank_form(h: &EdgeSet, g: &EdgeSet, a: usize, limits: &Limits) -> Result<LiftCheck> {
    limits.check_edges(g.ambient())?;
    let added = lift_edges(h, g)?;
    let base = ex_oracle_value(h, a, Weights::Unit, limits)?.value;
    for (i, &e) in added.iter().enumerate() {
        let mut he = h.clone();
        he.insert(e);
        if ex_oracle_value(&he, a, Weights::Unit, limits)?.value != base + 1 {
            return Ok(LiftCheck {
                holds: false,
                edges_checked: i + 1,
                failing_edge: Some(g.ambient().unrank(e)?),
                truncated: false,
            });
        }
    }
    Ok(LiftCheck {
        holds: true,
        edges_checked: added.len(),
        failing_edge: None,
        truncated: false,
    })
}

/// For every edge `e'` of `G \ support`, some tight point of `ineq` stays
/// `a`-clique-free in `G` after adding `e'`.
pub fn check_lift_general_form(ineq: &LinearInequality, g: &EdgeSet, a: usize, limits: &Limits) -> Result<LiftCheck> {
    check_ambient(ineq, g)?;
    limits.check_edges(g.ambient())?;
    let support = ineq.support();
    let added = lift_edges(&support, g)?;
    let tight = tight_points(ineq, a, &support, limits)?;
    let index = CliqueIndex::within(g, a)?;
    for (i, &e) in added.iter().enumerate() {
        let through_e: Vec<&Vec<usize>> = index.masks().iter().filter(|m| m.contains(&e)).collect();
        let survives = tight
            .points
            .iter()
            .any(|p| through_e.iter().all(|m| m.iter().any(|&f| f != e && !p.contains(f))));
        if !survives {
            return Ok(LiftCheck {
                holds: false,
                edges_checked: i + 1,
                failing_edge: Some(g.ambient().unrank(e)?),
                truncated: tight.truncated,
            });
        }
    }
    Ok(LiftCheck {
        holds: true,
        edges_checked: added.len(),
        failing_edge: None,
        truncated: tight.truncated,
    })
}
