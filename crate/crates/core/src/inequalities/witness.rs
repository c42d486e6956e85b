//! Tight clique-free subsets of wheels and webs.
//!
//! Both families place one `a`-clique on each cyclic window of the cycle, so
//! the constructions are shared. An edge made of `m` consecutive cycle
//! vertices (plus the hub, for a wheel) lies in exactly `stride = a - r + 1`
//! cliques. Type I removes `ceil(L / stride)` such edges at positions
//! `stride, 2 stride, ..., L`. Type II removes `floor(L / stride)` of them at
//! the multiples of `stride`, then one edge shared by the `L mod stride`
//! cliques that are still complete.

use serde::{Deserialize, Serialize};

use crate::combinat::{clique_ranks, cyclic_window, is_clique_free, CompleteHypergraph, EdgeSet, WebSpec, WheelSpec};
use crate::error::{Result, TuranError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

struct CyclicFamily {
    ambient: CompleteHypergraph,
    a: usize,
    cycle_len: usize,
    /// Cycle vertices in a removed edge.
    m: usize,
    hub: Option<usize>,
    stride: usize,
    cliques: Vec<Vec<usize>>,
    edges: EdgeSet,
    rhs: usize,
}

impl CyclicFamily {
    fn wheel(spec: &WheelSpec) -> Self {
        let rhs = spec.edge_count() - spec.cycle_len().div_ceil(spec.stride());
        CyclicFamily {
            ambient: spec.ambient(),
            a: spec.a,
            cycle_len: spec.cycle_len(),
            m: spec.r - 1,
            hub: Some(spec.hub()),
            stride: spec.stride(),
            cliques: spec.cliques(),
            edges: spec.edge_set(),
            rhs,
        }
    }

    fn web(spec: &WebSpec) -> Self {
        let rhs = spec.edge_count() - spec.l.div_ceil(spec.stride());
        CyclicFamily {
            ambient: spec.ambient(),
            a: spec.a,
            cycle_len: spec.l,
            m: spec.r,
            hub: None,
            stride: spec.stride(),
            cliques: spec.cliques(),
            edges: spec.edge_set(),
            rhs,
        }
    }

    fn edge_at(&self, start: usize) -> usize {
        let mut e = cyclic_window(start, self.m, self.cycle_len);
        e.extend(self.hub);
        e.sort_unstable();
        self.ambient.rank(&e).expect("window edge lies in the ambient")
    }

    fn remove_at(&self, starts: impl IntoIterator<Item = usize>) -> EdgeSet {
        let mut set = self.edges.clone();
        for p in starts {
            set.remove(self.edge_at(p));
        }
        set
    }

    fn check(&self, set: EdgeSet) -> Result<EdgeSet> {
        if set.len() != self.rhs || !is_clique_free(&set, self.a) {
            return Err(TuranError::WitnessInvalid(format!(
                "construction has {} edges (expected {}), clique-free: {}",
                set.len(),
                self.rhs,
                is_clique_free(&set, self.a)
            )));
        }
        Ok(set)
    }

    fn type_i(&self) -> Result<EdgeSet> {
        let count = self.cycle_len.div_ceil(self.stride);
        let starts = (1..=count).map(|k| (k * self.stride).min(self.cycle_len));
        self.check(self.remove_at(starts))
    }

    /// The partial type II construction and the ranks of the edges common to
    /// every clique it leaves complete, in increasing rank order.
    fn type_ii_candidates(&self) -> Result<(EdgeSet, Vec<usize>)> {
        let rho = self.cycle_len % self.stride;
        if rho == 0 {
            return Err(TuranError::WitnessUnavailable(format!(
                "cycle length {} is divisible by a - r + 1 = {}",
                self.cycle_len, self.stride
            )));
        }
        let base = self.remove_at((1..=self.cycle_len / self.stride).map(|k| k * self.stride));
        let mut common: Option<Vec<usize>> = None;
        for q in &self.cliques {
            let ranks = clique_ranks(q, self.ambient.r);
            if !ranks.iter().all(|&e| base.contains(e)) {
                continue;
            }
            common = Some(match common {
                None => ranks,
                Some(c) => c.into_iter().filter(|e| ranks.contains(e)).collect(),
            });
        }
        let mut common = common.unwrap_or_default();
        common.sort_unstable();
        if common.is_empty() {
            return Err(TuranError::WitnessUnavailable(
                "the complete cliques left after the periodic removals share no edge".into(),
            ));
        }
        Ok((base, common))
    }

    fn type_ii(&self) -> Result<EdgeSet> {
        let (mut set, common) = self.type_ii_candidates()?;
        set.remove(common[0]);
        self.check(set)
    }

    fn type_ii_all(&self) -> Result<Vec<EdgeSet>> {
        let (base, common) = self.type_ii_candidates()?;
        common
            .into_iter()
            .map(|e| {
                let mut set = base.clone();
                set.remove(e);
                self.check(set)
            })
            .collect()
    }

    fn build(&self, kind: WitnessKind) -> Result<EdgeSet> {
        match kind {
            WitnessKind::TypeI => self.type_i(),
            WitnessKind::TypeII => self.type_ii(),
        }
    }
}

/// An `a`-clique-free subset of the wheel attaining its inequality with
/// equality. Type II uses the lowest-rank shared edge.
pub fn wheel_witness(spec: &WheelSpec, kind: WitnessKind) -> Result<EdgeSet> {
    CyclicFamily::wheel(spec).build(kind)
}

/// Every type II wheel witness, one per choice of shared edge.
pub fn wheel_type_ii_witnesses(spec: &WheelSpec) -> Result<Vec<EdgeSet>> {
    CyclicFamily::wheel(spec).type_ii_all()
}

/// An `a`-clique-free subset of the web attaining its inequality with
/// equality.
pub fn web_witness(spec: &WebSpec, kind: WitnessKind) -> Result<EdgeSet> {
    CyclicFamily::web(spec).build(kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::CliqueIndex;
    use crate::inequalities::{check_validity, web_inequality, wheel_inequality};
    use crate::Limits;

    #[test]
    fn wheel_type_i_example() {
        let spec = WheelSpec::new(6, 3, 2).unwrap();
        let w = wheel_witness(&spec, WitnessKind::TypeI).unwrap();
        let removed = spec.edge_set().difference(&w).unwrap();
        assert_eq!(removed.sorted_vertex_lists(), vec![vec![2, 6], vec![4, 6], vec![5, 6]]);
        assert_eq!(w.len(), 7);
    }

    #[test]
    fn wheel_type_ii_example() {
        let spec = WheelSpec::new(6, 3, 2).unwrap();
        let w = wheel_witness(&spec, WitnessKind::TypeII).unwrap();
        assert_eq!(w.len(), 7);
        assert!(is_clique_free(&w, 3));
        // the one remaining clique {1,5,6} loses its lowest-rank edge (1,5)
        let removed = spec.edge_set().difference(&w).unwrap();
        assert_eq!(removed.sorted_vertex_lists(), vec![vec![1, 5], vec![2, 6], vec![4, 6]]);
        assert_eq!(wheel_type_ii_witnesses(&spec).unwrap().len(), 3);
    }

    #[test]
    fn type_ii_needs_a_remainder() {
        let spec = WheelSpec::new(7, 3, 2).unwrap();
        assert!(matches!(
            wheel_witness(&spec, WitnessKind::TypeII),
            Err(TuranError::WitnessUnavailable(_))
        ));
        let web = WebSpec::new(6, 3, 2).unwrap();
        assert!(matches!(
            web_witness(&web, WitnessKind::TypeII),
            Err(TuranError::WitnessUnavailable(_))
        ));
    }

    #[test]
    fn witnesses_are_tight_across_parameters() {
        for a in 3..=5 {
            for r in 2..a {
                for l in 2 * a - 1..=2 * a + 4 {
                    let spec = WheelSpec::new(l, a, r).unwrap();
                    let rhs = wheel_inequality(&spec).unwrap().rhs() as usize;
                    let w = wheel_witness(&spec, WitnessKind::TypeI).unwrap();
                    assert_eq!(w.len(), rhs);
                    assert!(w.is_subset(&spec.edge_set()));
                    if (l - 1) % spec.stride() != 0 {
                        for w in wheel_type_ii_witnesses(&spec).unwrap() {
                            assert_eq!(w.len(), rhs);
                        }
                    }
                    let Ok(web) = WebSpec::new(l, a, r) else { continue };
                    // only the window cliques: the periodic removal argument applies
                    if CliqueIndex::within(&web.edge_set(), a).unwrap().len() != l {
                        continue;
                    }
                    let rhs = web_inequality(&web).unwrap().rhs() as usize;
                    assert_eq!(web_witness(&web, WitnessKind::TypeI).unwrap().len(), rhs);
                    if l % web.stride() != 0 {
                        assert_eq!(web_witness(&web, WitnessKind::TypeII).unwrap().len(), rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn small_web_with_extra_triangles_has_no_tight_witness() {
        // l = 2a: the chords (1,3), (3,5), (5,1) close a triangle outside the windows
        let web = WebSpec::new(6, 3, 2).unwrap();
        assert_eq!(CliqueIndex::within(&web.edge_set(), 3).unwrap().len(), 8);
        assert!(matches!(
            web_witness(&web, WitnessKind::TypeI),
            Err(TuranError::WitnessInvalid(_))
        ));
        let v = check_validity(&web_inequality(&web).unwrap(), 3, &Limits::default()).unwrap();
        assert!(v.valid);
        assert_eq!(v.max_lhs, 8);
    }
}
