//! Chvátal-Gomory rounds: a nonnegative rational combination of valid
//! inequalities with integral coefficients, right-hand side rounded down.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::{clique_inequality, clique_size, doubling_inequality, edge_bound, LinearInequality};
use crate::combinat::{CompleteHypergraph, WheelSpec};
use crate::error::{Result, TuranError};
use crate::Limits;

#[derive(Debug, Clone, PartialEq)]
pub struct CgDerivation {
    pub sources: Vec<(LinearInequality, BigRational)>,
    pub target: LinearInequality,
}

fn ratio(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn mismatch(msg: impl Into<String>) -> TuranError {
    TuranError::DerivationMismatch(msg.into())
}

impl CgDerivation {
    /// Combines `sources` and rounds: the target carries the combined
    /// coefficients, which must be integral, and the floored right-hand side.
    pub fn from_sources(sources: Vec<(LinearInequality, BigRational)>, label: impl Into<String>) -> Result<Self> {
        let ambient = sources
            .first()
            .map(|(ineq, _)| ineq.ambient())
            .ok_or_else(|| mismatch("no sources"))?;
        let (coeffs, rhs) = combine(&sources, ambient)?;
        let mut target_coeffs = BTreeMap::new();
        for (rank, c) in coeffs {
            if !c.is_integer() {
                return Err(mismatch(format!("coefficient {c} on edge rank {rank} is not integral")));
            }
            let c = c
                .to_integer()
                .to_u64()
                .ok_or(TuranError::Overflow("combined coefficient"))?;
            target_coeffs.insert(rank, c);
        }
        let rhs = rhs
            .floor()
            .to_integer()
            .to_u64()
            .ok_or(TuranError::Overflow("combined right-hand side"))?;
        let target = LinearInequality::new(ambient, target_coeffs, rhs, label)?;
        let derivation = CgDerivation { sources, target };
        derivation.verify()?;
        Ok(derivation)
    }

    /// `sum_w w * rhs_w` before rounding.
    pub fn combined_rhs(&self) -> Result<BigRational> {
        Ok(combine(&self.sources, self.target.ambient())?.1)
    }

    /// Checks the combination against the target exactly: equal coefficients
    /// on every edge and `floor(sum w * rhs) = target rhs`.
    pub fn verify(&self) -> Result<()> {
        let (coeffs, rhs) = combine(&self.sources, self.target.ambient())?;
        let ranks: std::collections::BTreeSet<usize> =
            coeffs.keys().chain(self.target.coeffs().keys()).copied().collect();
        for rank in ranks {
            let combined = coeffs.get(&rank).cloned().unwrap_or_else(BigRational::zero);
            let want = BigRational::from_integer(BigInt::from(self.target.coefficient(rank)));
            if combined != want {
                return Err(mismatch(format!(
                    "edge rank {rank}: combination gives {combined}, target has {want}"
                )));
            }
        }
        let floored = rhs.floor().to_integer();
        if floored != BigInt::from(self.target.rhs()) {
            return Err(mismatch(format!(
                "floor of combined right-hand side {rhs} is {floored}, target has {}",
                self.target.rhs()
            )));
        }
        Ok(())
    }
}

fn combine(
    sources: &[(LinearInequality, BigRational)],
    ambient: CompleteHypergraph,
) -> Result<(BTreeMap<usize, BigRational>, BigRational)> {
    let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
    let mut rhs = BigRational::zero();
    for (ineq, w) in sources {
        if ineq.ambient() != ambient {
            let found = ineq.ambient();
            return Err(TuranError::AmbientMismatch {
                expected_n: ambient.n,
                expected_r: ambient.r,
                found_n: found.n,
                found_r: found.r,
            });
        }
        if *w < BigRational::zero() {
            return Err(mismatch(format!("negative weight {w} on {}", ineq.label())));
        }
        for (&rank, &c) in ineq.coeffs() {
            *coeffs.entry(rank).or_insert_with(BigRational::zero) += w * BigInt::from(c);
        }
        rhs += w * BigInt::from(ineq.rhs());
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok((coeffs, rhs))
}

impl Serialize for CgDerivation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Source<'a> {
            weight: String,
            inequality: &'a LinearInequality,
        }
        let sources: Vec<Source> = self
            .sources
            .iter()
            .map(|(inequality, w)| Source {
                weight: format!("{}/{}", w.numer(), w.denom()),
                inequality,
            })
            .collect();
        let rhs = self.combined_rhs().map_err(serde::ser::Error::custom)?;
        let mut s = serializer.serialize_struct("CgDerivation", 3)?;
        s.serialize_field("sources", &sources)?;
        s.serialize_field("combined_rhs", &format!("{}/{}", rhs.numer(), rhs.denom()))?;
        s.serialize_field("target", &self.target)?;
        s.end()
    }
}

/// From the `|S|` clique inequalities on `S` minus one vertex, each at weight
/// `1/(|S| - 2)`, to the clique inequality on `S`, for graphs inside
/// `K_{max S}`.
pub fn cg_subset_step(s: &[usize], a: usize) -> Result<CgDerivation> {
    let n = s.iter().copied().max().unwrap_or(0);
    if s.len() <= a {
        return Err(TuranError::invalid(format!(
            "subset step needs |S| > a, got |S| = {}, a = {a}",
            s.len()
        )));
    }
    let ambient = CompleteHypergraph::new(n, 2)?;
    let limits = Limits::default();
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let j = sorted.len() - 1;
    let weight = ratio(1, j - 1);
    let sources = (0..sorted.len())
        .map(|skip| {
            let t: Vec<usize> = sorted
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            Ok((clique_inequality(ambient, &t, a, &limits)?, weight.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let label = clique_inequality(ambient, &sorted, a, &limits)?.label().to_string();
    CgDerivation::from_sources(sources, format!("cg:{label}"))
}

/// Subset steps for `S = [a+1], ..., [n]`, each starting from the right-hand
/// side the previous step derived.
pub fn cg_subset_chain(a: usize, n: usize) -> Result<Vec<CgDerivation>> {
    if a < 3 || n <= a {
        return Err(TuranError::invalid(format!(
            "chain needs 3 <= a < n, got a = {a}, n = {n}"
        )));
    }
    let limits = Limits::default();
    let mut steps: Vec<CgDerivation> = Vec::with_capacity(n - a);
    for size in a + 1..=n {
        let s: Vec<usize> = (1..=size).collect();
        let ambient = CompleteHypergraph::new(size, 2)?;
        let source_rhs = match steps.last() {
            Some(prev) => prev.target.rhs(),
            None => clique_size(a, 2) - 1,
        };
        let weight = ratio(1, size - 2);
        let sources = (1..=size)
            .map(|skip| {
                let t: Vec<usize> = s.iter().copied().filter(|&v| v != skip).collect();
                let ineq = clique_inequality(ambient, &t, a, &limits)?;
                Ok((ineq.with_rhs(source_rhs)?, weight.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        steps.push(CgDerivation::from_sources(
            sources,
            format!("cg:chain(S=[{size}],a={a})"),
        )?);
    }
    Ok(steps)
}

/// The `n` doubling inequalities on `K_n`, each at weight `1/(n + 2)`, give
/// `sum x_e <= floor(n ex(n+1, a, 2) / (n + 2))`.
pub fn cg_doubling_aggregate(n: usize, a: usize) -> Result<CgDerivation> {
    let sources = (1..=n)
        .map(|v| Ok((doubling_inequality(n, a, v)?, ratio(1, n + 2))))
        .collect::<Result<Vec<_>>>()?;
    CgDerivation::from_sources(sources, format!("cg:doubling_aggregate(n={n},a={a})"))
}

/// Wheel cliques at weight `1/(a - r + 1)` plus `x_e <= 1` at weight
/// `(span(e) - r + 1)/(a - r + 1)` for every wheel edge with positive weight.
pub fn cg_wheel_derivation(spec: &WheelSpec) -> Result<CgDerivation> {
    let ambient = spec.ambient();
    let limits = Limits::default();
    let stride = spec.stride();
    let mut sources = Vec::new();
    for q in spec.cliques() {
        sources.push((clique_inequality(ambient, &q, spec.a, &limits)?, ratio(1, stride)));
    }
    for e in spec.edge_set().edges() {
        let extra = spec.span(&e) + 1 - spec.r;
        if extra > 0 {
            sources.push((edge_bound(ambient, e.rank())?, ratio(extra, stride)));
        }
    }
    CgDerivation::from_sources(sources, format!("cg:wheel(l={},a={},r={})", spec.l, spec.a, spec.r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::ex_exact;
    use crate::inequalities::wheel_inequality;

    #[test]
    fn subset_steps() {
        let d = cg_subset_step(&[1, 2, 3, 4], 3).unwrap();
        assert_eq!(d.sources.len(), 4);
        assert!(d.sources.iter().all(|(_, w)| *w == ratio(1, 2)));
        assert_eq!(d.target.rhs(), 4);
        assert_eq!(d.target.coeffs().len(), 6);
        let d = cg_subset_step(&[1, 2, 3, 4, 5], 3).unwrap();
        assert!(d.sources.iter().all(|(_, w)| *w == ratio(1, 3)));
        assert_eq!(d.target.rhs(), 6);
        assert_eq!(cg_subset_step(&[1, 2, 3, 4, 5], 4).unwrap().target.rhs(), 8);
        assert!(cg_subset_step(&[1, 2, 3], 3).is_err());
    }

    #[test]
    fn subset_step_target_is_the_clique_inequality() {
        let l = Limits::default();
        for a in 3..=5 {
            for size in a + 1..=9 {
                let s: Vec<usize> = (1..=size).collect();
                let d = cg_subset_step(&s, a).unwrap();
                let c = clique_inequality(d.target.ambient(), &s, a, &l).unwrap();
                assert_eq!(d.target.coeffs(), c.coeffs());
                assert_eq!(d.target.rhs(), c.rhs());
            }
        }
    }

    #[test]
    fn chains_reproduce_recurrence() {
        for (a, n) in [(3, 8), (4, 8), (5, 12)] {
            let steps = cg_subset_chain(a, n).unwrap();
            assert_eq!(steps.len(), n - a);
            assert_eq!(steps.last().unwrap().target.rhs(), ex_exact(n, a).unwrap());
        }
    }

    #[test]
    fn doubling_aggregates() {
        for (n, a, rhs) in [(6, 3, 9), (4, 3, 4), (7, 4, 16)] {
            let d = cg_doubling_aggregate(n, a).unwrap();
            assert_eq!(d.target.rhs(), rhs);
            assert_eq!(d.target.rhs(), ex_exact(n, a).unwrap());
            assert!(d.target.coeffs().values().all(|&c| c == 1));
            assert_eq!(d.target.coeffs().len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn wheel_derivations() {
        let d = cg_wheel_derivation(&WheelSpec::new(6, 3, 2).unwrap()).unwrap();
        let clique_sources = d
            .sources
            .iter()
            .filter(|(i, _)| i.label().starts_with("clique"))
            .count();
        assert_eq!(clique_sources, 5);
        // five cycle edges at weight 1/2, spokes omitted
        assert_eq!(d.sources.len(), 10);
        assert_eq!(d.target.rhs(), 7);
        for (l, a, r) in [(8, 4, 3), (7, 3, 2), (8, 3, 2), (8, 4, 2), (9, 5, 3), (11, 5, 4)] {
            let spec = WheelSpec::new(l, a, r).unwrap();
            let d = cg_wheel_derivation(&spec).unwrap();
            let w = wheel_inequality(&spec).unwrap();
            assert_eq!(d.target.coeffs(), w.coeffs(), "{spec:?}");
            assert_eq!(d.target.rhs(), w.rhs(), "{spec:?}");
        }
    }

    #[test]
    fn verify_rejects_tampering() {
        let mut d = cg_doubling_aggregate(6, 3).unwrap();
        d.target = d.target.with_rhs(8).unwrap();
        assert!(matches!(d.verify(), Err(TuranError::DerivationMismatch(_))));
        let mut d = cg_doubling_aggregate(6, 3).unwrap();
        d.sources[0].1 = ratio(1, 7);
        assert!(d.verify().is_err());
        let mut d = cg_doubling_aggregate(6, 3).unwrap();
        d.sources[0].1 = -ratio(1, 8);
        assert!(d.verify().is_err());
    }

    #[test]
    fn weights_serialize_as_fractions() {
        let d = cg_subset_step(&[1, 2, 3, 4], 3).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["sources"][0]["weight"], "1/2");
        assert_eq!(v["combined_rhs"], "4/1");
        assert_eq!(v["target"]["rhs"], 4);
    }
}
