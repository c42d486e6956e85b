//! Valid inequalities for the Turán polytope, their tight constructions, and
//! Chvátal-Gomory derivations.

mod cg;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::{choose, clique_ranks, CompleteHypergraph, EdgeSet, WebSpec, WheelSpec};
use crate::error::{Result, TuranError};
use crate::extremal::{ex_exact, ex_oracle_value, Weights};
use crate::Limits;

pub use cg::{cg_doubling_aggregate, cg_subset_chain, cg_subset_step, cg_wheel_derivation, CgDerivation};
pub use witness::{web_witness, wheel_type_ii_witnesses, wheel_witness, WitnessKind};

/// `sum_e coeffs[e] x_e <= rhs` over the edges of `K^r_n`.
///
/// Coefficients are stored sparsely by colex rank and are strictly positive;
/// the right-hand side is positive.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearInequality {
    ambient: CompleteHypergraph,
    coeffs: BTreeMap<usize, u64>,
    rhs: u64,
    label: String,
}

impl fmt::Debug for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.label)?;
        for (i, (rank, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let e = self.ambient.unrank(*rank).map_err(|_| fmt::Error)?;
            write!(f, "{c}x{e}")?;
        }
        write!(f, " <= {}]", self.rhs)
    }
}

impl LinearInequality {
    pub fn new(
        ambient: CompleteHypergraph,
        coeffs: BTreeMap<usize, u64>,
        rhs: u64,
        label: impl Into<String>,
    ) -> Result<Self> {
        if rhs == 0 {
            return Err(TuranError::invalid("right-hand side must be positive"));
        }
        let len = ambient.edge_count();
        if let Some((&rank, _)) = coeffs.iter().find(|(&rank, _)| rank >= len) {
            return Err(TuranError::RankOutOfRange {
                rank,
                n: ambient.n,
                r: ambient.r,
                len,
            });
        }
        let coeffs = coeffs.into_iter().filter(|&(_, c)| c > 0).collect();
        Ok(LinearInequality {
            ambient,
            coeffs,
            rhs,
            label: label.into(),
        })
    }

    /// Coefficient one on every edge of `support`.
    pub fn rank_inequality(support: &EdgeSet, rhs: u64, label: impl Into<String>) -> Result<Self> {
        Self::new(support.ambient(), support.iter().map(|e| (e, 1)).collect(), rhs, label)
    }

    pub fn ambient(&self) -> CompleteHypergraph {
        self.ambient
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, u64> {
        &self.coeffs
    }

    pub fn coefficient(&self, rank: usize) -> u64 {
        self.coeffs.get(&rank).copied().unwrap_or(0)
    }

    pub fn rhs(&self) -> u64 {
        self.rhs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_rhs(&self, rhs: u64) -> Result<Self> {
        Self::new(self.ambient, self.coeffs.clone(), rhs, self.label.clone())
    }

    pub fn weights(&self) -> Weights<'_> {
        Weights::Sparse(&self.coeffs)
    }

    /// Edges with a positive coefficient.
    pub fn support(&self) -> EdgeSet {
        EdgeSet::from_ranks(self.ambient, self.coeffs.keys().copied()).expect("ranks validated on construction")
    }

    /// Left-hand side at the characteristic vector of `set`.
    pub fn lhs(&self, set: &EdgeSet) -> u64 {
        self.coeffs
            .iter()
            .filter(|(&rank, _)| set.contains(rank))
            .map(|(_, &c)| c)
            .sum()
    }

    /// The same inequality read inside `K^r_m`, `m >= n`.
    pub fn embed(&self, m: usize) -> Result<Self> {
        let ambient = self.support().embed(m)?.ambient();
        Self::new(ambient, self.coeffs.clone(), self.rhs, self.label.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffDoc {
    edge: Vec<usize>,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct InequalityDoc {
    n: usize,
    r: usize,
    coeffs: Vec<CoeffDoc>,
    rhs: u64,
    label: String,
}

impl Serialize for LinearInequality {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut coeffs: Vec<CoeffDoc> = self
            .coeffs
            .iter()
            .map(|(&rank, &c)| CoeffDoc {
                edge: self.ambient.unrank(rank).expect("rank in range").vertices().to_vec(),
                c,
            })
            .collect();
        coeffs.sort_by(|x, y| x.edge.cmp(&y.edge));
        InequalityDoc {
            n: self.ambient.n,
            r: self.ambient.r,
            coeffs,
            rhs: self.rhs,
            label: self.label.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearInequality {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = InequalityDoc::deserialize(deserializer)?;
        let ambient = CompleteHypergraph::new(doc.n, doc.r).map_err(D::Error::custom)?;
        let mut coeffs = BTreeMap::new();
        for entry in doc.coeffs {
            let rank = ambient.rank(&entry.edge).map_err(D::Error::custom)?;
            if coeffs.insert(rank, entry.c).is_some() {
                return Err(D::Error::custom(format!("duplicate edge {:?}", entry.edge)));
            }
        }
        LinearInequality::new(ambient, coeffs, doc.rhs, doc.label).map_err(D::Error::custom)
    }
}

fn sorted_distinct(vertices: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut s = vertices.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != vertices.len() || s.first() == Some(&0) || s.last().is_some_and(|&v| v > n) {
        return Err(TuranError::invalid(format!(
            "vertex set {vertices:?} is not a set of distinct labels in [{n}]"
        )));
    }
    Ok(s)
}

/// `ex(i, a, r)`: the floor recurrence for graphs, the oracle otherwise.
pub fn extremal_number(i: usize, a: usize, r: usize, limits: &Limits) -> Result<u64> {
    if r == 2 {
        ex_exact(i, a)
    } else {
        let full = EdgeSet::full(CompleteHypergraph::new(i, r)?);
        Ok(ex_oracle_value(&full, a, Weights::Unit, limits)?.value)
    }
}

/// `sum_{e in E[S]} x_e <= ex(|S|, a, r)` inside `ambient`.
pub fn clique_inequality(
    ambient: CompleteHypergraph,
    vertices: &[usize],
    a: usize,
    limits: &Limits,
) -> Result<LinearInequality> {
    let s = sorted_distinct(vertices, ambient.n)?;
    if s.len() < a || a <= ambient.r {
        return Err(TuranError::invalid(format!(
            "clique inequality needs r < a <= |S|, got |S| = {}, a = {a}, r = {}",
            s.len(),
            ambient.r
        )));
    }
    let rhs = extremal_number(s.len(), a, ambient.r, limits)?;
    let coeffs = clique_ranks(&s, ambient.r).into_iter().map(|e| (e, 1)).collect();
    LinearInequality::new(ambient, coeffs, rhs, format!("clique(S={s:?},a={a})"))
}

/// Weight two on the edges at `v`, one elsewhere, bounded by `ex(n+1, a, 2)`.
pub fn doubling_inequality(n: usize, a: usize, v: usize) -> Result<LinearInequality> {
    let mut multiplicities = BTreeMap::new();
    multiplicities.insert(v, 2);
    let ineq = blowup_inequality(&BlowupSpec::new(n, a, multiplicities)?)?;
    let label = format!("doubling(v={v},a={a})");
    LinearInequality::new(ineq.ambient, ineq.coeffs, ineq.rhs, label)
}

/// Vertex multiplicities for a blow-up of a graph on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSpec {
    pub n: usize,
    pub a: usize,
    pub multiplicities: BTreeMap<usize, u64>,
}

impl BlowupSpec {
    pub fn new(n: usize, a: usize, multiplicities: BTreeMap<usize, u64>) -> Result<Self> {
        if a < 3 || a > n {
            return Err(TuranError::invalid(format!(
                "blow-up needs 3 <= a <= n, got n = {n}, a = {a}"
            )));
        }
        if let Some((&v, &m)) = multiplicities.iter().find(|(&v, &m)| v == 0 || v > n || m == 0) {
            return Err(TuranError::invalid(format!(
                "multiplicity {m} for vertex {v} is not a positive count on a vertex of [{n}]"
            )));
        }
        let spec = BlowupSpec { n, a, multiplicities };
        if spec.extra_vertices() == 0 {
            return Err(TuranError::invalid("blow-up must copy at least one vertex"));
        }
        Ok(spec)
    }

    pub fn multiplicity(&self, v: usize) -> u64 {
        self.multiplicities.get(&v).copied().unwrap_or(1)
    }

    /// `sum_v (m_v - 1)`.
    pub fn extra_vertices(&self) -> usize {
        self.multiplicities.values().map(|&m| (m - 1) as usize).sum()
    }

    /// The copies of each vertex in the blown-up graph on
    /// `[n + extra_vertices()]`: vertex `v` keeps its label, further copies
    /// are numbered from `n + 1` upward in vertex order.
    pub fn copies(&self) -> Vec<Vec<usize>> {
        let mut next = self.n + 1;
        let mut out = vec![Vec::new(); self.n + 1];
        for (v, slot) in out.iter_mut().enumerate().skip(1) {
            slot.push(v);
            for _ in 1..self.multiplicity(v) {
                slot.push(next);
                next += 1;
            }
        }
        out
    }

    /// Blow-up of a graph on `[n]`: copies of adjacent vertices are adjacent,
    /// copies of one vertex are not.
    pub fn blow_up(&self, graph: &EdgeSet) -> Result<EdgeSet> {
        if graph.ambient() != CompleteHypergraph::new(self.n, 2)? {
            return Err(TuranError::invalid("blow-up expects a graph on [n]"));
        }
        let copies = self.copies();
        let ambient = CompleteHypergraph::new(self.n + self.extra_vertices(), 2)?;
        let mut out = EdgeSet::empty(ambient);
        for e in graph.edges() {
            let [u, w] = e.vertices() else { unreachable!() };
            for &cu in &copies[*u] {
                for &cw in &copies[*w] {
                    out.insert(ambient.rank(&[cu, cw])?);
                }
            }
        }
        Ok(out)
    }
}

/// Coefficient `m_u m_w` on edge `(u, w)`, bounded by `ex(n + sum(m - 1), a, 2)`.
pub fn blowup_inequality(spec: &BlowupSpec) -> Result<LinearInequality> {
    let ambient = CompleteHypergraph::new(spec.n, 2)?;
    let coeffs = ambient
        .edges()
        .map(|e| {
            let [u, w] = e.vertices() else { unreachable!() };
            (e.rank(), spec.multiplicity(*u) * spec.multiplicity(*w))
        })
        .collect();
    let rhs = ex_exact(spec.n + spec.extra_vertices(), spec.a)?;
    let mults: Vec<String> = spec
        .multiplicities
        .iter()
        .filter(|(_, &m)| m > 1)
        .map(|(v, m)| format!("{v}:{m}"))
        .collect();
    LinearInequality::new(
        ambient,
        coeffs,
        rhs,
        format!("blowup(m={{{}}},a={})", mults.join(","), spec.a),
    )
}

/// `sum_{e in W} x_e <= C(a-1, r-1)(l-1) - ceil((l-1)/(a-r+1))`.
pub fn wheel_inequality(spec: &WheelSpec) -> Result<LinearInequality> {
    let rhs = spec.edge_count() - spec.cycle_len().div_ceil(spec.stride());
    LinearInequality::rank_inequality(
        &spec.edge_set(),
        rhs as u64,
        format!("wheel(l={},a={},r={})", spec.l, spec.a, spec.r),
    )
}

/// `sum_{e in W} x_e <= C(a-1, r-1) l - ceil(l/(a-r+1))`.
pub fn web_inequality(spec: &WebSpec) -> Result<LinearInequality> {
    let rhs = spec.edge_count() - spec.l.div_ceil(spec.stride());
    LinearInequality::rank_inequality(
        &spec.edge_set(),
        rhs as u64,
        format!("web(l={},a={},r={})", spec.l, spec.a, spec.r),
    )
}

/// The edge upper bound `x_e <= 1`.
pub fn edge_bound(ambient: CompleteHypergraph, rank: usize) -> Result<LinearInequality> {
    let e = ambient.unrank(rank)?;
    LinearInequality::new(ambient, BTreeMap::from([(rank, 1)]), 1, format!("edge{e}"))
}

/// Result of a validity check.
#[derive(Debug, Clone, Serialize)]
pub struct Validity {
    pub valid: bool,
    pub max_lhs: u64,
    pub rhs: u64,
    /// A clique-free edge set violating the inequality, when invalid.
    pub certificate: Option<EdgeSet>,
}

/// Decides whether `ineq` holds on `T(K^r_n, a, r)` by maximizing its
/// left-hand side with the exact oracle.
pub fn check_validity(ineq: &LinearInequality, a: usize, limits: &Limits) -> Result<Validity> {
    let res = ex_oracle_value(&ineq.support(), a, ineq.weights(), limits)?;
    let valid = res.value <= ineq.rhs;
    Ok(Validity {
        valid,
        max_lhs: res.value,
        rhs: ineq.rhs,
        certificate: (!valid).then(|| res.optima[0].clone()),
    })
}

/// Number of `r`-edges in a wheel clique: `C(a, r)`.
pub(crate) fn clique_size(a: usize, r: usize) -> u64 {
    choose(a, r) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::is_clique_free;

    fn k(n: usize, r: usize) -> CompleteHypergraph {
        CompleteHypergraph::new(n, r).unwrap()
    }

    #[test]
    fn clique_inequalities() {
        let l = Limits::default();
        let c = clique_inequality(k(5, 2), &[1, 2, 3, 4, 5], 3, &l).unwrap();
        assert_eq!(c.rhs(), 6);
        assert_eq!(c.coeffs().len(), 10);
        for a in 3..=6 {
            let s: Vec<usize> = (1..=a).collect();
            let c = clique_inequality(k(8, 2), &s, a, &l).unwrap();
            assert_eq!(c.rhs() as usize, a * (a - 1) / 2 - 1);
        }
        assert!(clique_inequality(k(5, 2), &[1, 2], 3, &l).is_err());
        assert!(clique_inequality(k(5, 2), &[1, 1, 2], 3, &l).is_err());
        assert!(clique_inequality(k(5, 2), &[1, 2, 6], 3, &l).is_err());
    }

    #[test]
    fn hypergraph_clique_inequality_uses_oracle() {
        let l = Limits::default();
        let c = clique_inequality(k(5, 3), &[1, 2, 3, 4, 5], 4, &l).unwrap();
        let brute = {
            // independent: smallest set of triples meeting every 4-subset of [5]
            let triples: Vec<Vec<usize>> = k(5, 3).edges().map(|e| e.vertices().to_vec()).collect();
            let quads: Vec<Vec<usize>> = crate::combinat::ColexSubsets::new(5, 4).collect();
            let mut best = usize::MAX;
            for mask in 0u32..(1 << 10) {
                let hits_all = quads.iter().all(|q| {
                    triples
                        .iter()
                        .enumerate()
                        .any(|(i, t)| mask & (1 << i) != 0 && t.iter().all(|v| q.contains(v)))
                });
                if hits_all {
                    best = best.min(mask.count_ones() as usize);
                }
            }
            10 - best
        };
        assert_eq!(c.rhs() as usize, brute);
        assert_eq!(c.coeffs().len(), 10);
    }

    #[test]
    fn doubling_inequalities() {
        let d = doubling_inequality(6, 3, 1).unwrap();
        assert_eq!(d.rhs(), 12);
        let twos = d.coeffs().values().filter(|&&c| c == 2).count();
        assert_eq!(twos, 5);
        assert_eq!(d.coeffs().len(), 15);
        assert_eq!(doubling_inequality(7, 4, 3).unwrap().rhs(), 21);
        // K_{3,3} with v = 1 in a part of size three: 9 edges, 3 of them doubled
        let k33 = crate::extremal::turan_graph(6, 3).unwrap();
        assert_eq!(d.lhs(&k33), 12);
        assert!(doubling_inequality(6, 3, 7).is_err());
    }

    #[test]
    fn blowup_inequalities() {
        let spec = BlowupSpec::new(5, 3, BTreeMap::from([(1, 2), (2, 2)])).unwrap();
        let b = blowup_inequality(&spec).unwrap();
        let amb = k(5, 2);
        assert_eq!(b.coefficient(amb.rank(&[1, 2]).unwrap()), 4);
        assert_eq!(b.coefficient(amb.rank(&[1, 3]).unwrap()), 2);
        assert_eq!(b.coefficient(amb.rank(&[2, 5]).unwrap()), 2);
        assert_eq!(b.coefficient(amb.rank(&[3, 4]).unwrap()), 1);
        assert_eq!(b.rhs(), 12);
        assert!(BlowupSpec::new(5, 3, BTreeMap::from([(1, 1)])).is_err());
        assert!(BlowupSpec::new(5, 3, BTreeMap::new()).is_err());
        assert!(BlowupSpec::new(5, 3, BTreeMap::from([(1, 0), (2, 2)])).is_err());
        let single = blowup_inequality(&BlowupSpec::new(4, 3, BTreeMap::from([(1, 2)])).unwrap()).unwrap();
        let doubling = doubling_inequality(4, 3, 1).unwrap();
        assert_eq!(single.coeffs(), doubling.coeffs());
        assert_eq!(single.rhs(), 6);
        assert_eq!(doubling.rhs(), 6);
    }

    #[test]
    fn blow_up_graph() {
        let spec = BlowupSpec::new(4, 3, BTreeMap::from([(1, 3)])).unwrap();
        assert_eq!(spec.copies()[1], vec![1, 5, 6]);
        let g = EdgeSet::from_edges(k(4, 2), [[1, 2], [2, 3], [1, 4]]).unwrap();
        let big = spec.blow_up(&g).unwrap();
        assert_eq!(big.ambient().n, 6);
        assert_eq!(big.len() as u64, blowup_inequality(&spec).unwrap().lhs(&g));
        assert!(is_clique_free(&big, 3));
    }

    #[test]
    fn wheel_and_web_right_hand_sides() {
        let cases = [((6, 3, 2), 10, 7), ((8, 4, 3), 21, 17), ((8, 3, 2), 14, 10)];
        for ((l, a, r), size, rhs) in cases {
            let w = wheel_inequality(&WheelSpec::new(l, a, r).unwrap()).unwrap();
            assert_eq!(w.coeffs().len(), size);
            assert_eq!(w.rhs(), rhs);
        }
        let cases = [((7, 3, 2), 14, 10), ((9, 4, 3), 27, 22), ((6, 3, 2), 12, 9)];
        for ((l, a, r), size, rhs) in cases {
            let w = web_inequality(&WebSpec::new(l, a, r).unwrap()).unwrap();
            assert_eq!(w.coeffs().len(), size);
            assert_eq!(w.rhs(), rhs);
        }
    }

    #[test]
    fn validity_checks() {
        let l = Limits::default();
        let wheel = wheel_inequality(&WheelSpec::new(6, 3, 2).unwrap()).unwrap();
        let v = check_validity(&wheel, 3, &l).unwrap();
        assert!(v.valid);
        assert_eq!(v.max_lhs, 7);

        let clique = clique_inequality(k(5, 2), &[1, 2, 3, 4, 5], 3, &l).unwrap();
        let lowered = clique.with_rhs(5).unwrap();
        let v = check_validity(&lowered, 3, &l).unwrap();
        assert!(!v.valid);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.len(), 6);
        assert!(is_clique_free(&cert, 3));
        // a K_{2,3}: two vertices of degree three, three of degree two
        let mut degrees = [0usize; 6];
        for e in cert.edges() {
            for &x in e.vertices() {
                degrees[x] += 1;
            }
        }
        let mut d: Vec<usize> = degrees[1..].to_vec();
        d.sort();
        assert_eq!(d, vec![2, 2, 2, 3, 3]);

        assert!(
            check_validity(&doubling_inequality(6, 3, 1).unwrap(), 3, &l)
                .unwrap()
                .valid
        );
    }

    #[test]
    fn json_round_trip_and_shape() {
        let d = doubling_inequality(3, 3, 1).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"r":2,"coeffs":[{"edge":[1,2],"c":2},{"edge":[1,3],"c":2},{"edge":[2,3],"c":1}],"rhs":4,"label":"doubling(v=1,a=3)"}"#
        );
        let back: LinearInequality = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        let bad = r#"{"n":3,"r":2,"coeffs":[{"edge":[1,2],"c":1}],"rhs":0,"label":"x"}"#;
        assert!(serde_json::from_str::<LinearInequality>(bad).is_err());
    }
}
