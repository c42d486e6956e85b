//! Exact computations on the Turán polytope `T(G, a, r)`: the convex hull of
//! the characteristic vectors of `a`-clique-free edge sets of an `r`-uniform
//! hypergraph `G`.
//!
//! The crate covers
//! - edge indexing and the wheel/web hypergraphs ([`combinat`]),
//! - Turán numbers from the floor recurrence and an exact hitting-set oracle
//!   ([`extremal`]),
//! - the clique, doubling, blow-up, hyperwheel and hyperweb inequalities,
//!   their tight constructions and Chvátal-Gomory derivations
//!   ([`inequalities`]),
//! - facet verification by tight-point enumeration and exact affine rank,
//!   plus the sequential-lifting conditions ([`facets`]),
//! - an exact rational simplex over the clique relaxation `Q(n, a, r)`
//!   ([`lp`]).
//!
//! All arithmetic is exact: integers are overflow-checked and fractions are
//! arbitrary-precision rationals.

pub mod combinat;
pub mod error;
pub mod extremal;
pub mod facets;
pub mod inequalities;
pub mod lp;

pub use combinat::{CompleteHypergraph, Edge, EdgeSet, WebSpec, WheelSpec};
pub use error::{Result, TuranError};
pub use extremal::{ex_exact, ex_oracle, OracleResult, Weights};
pub use facets::FacetVerdict;
pub use inequalities::{CgDerivation, LinearInequality};

/// Size caps shared by the enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible `C(n, r)` for an ambient hypergraph.
    pub max_edges: usize,
    /// Cap on enumerated optima / tight points before reporting truncation.
    pub max_optima: usize,
    /// Largest ambient edge count for which tight points are extended
    /// beyond the support of an inequality.
    pub max_extension_edges: usize,
    /// Cap on the number of clique rows of `Q(n, a, r)`.
    pub max_lp_rows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: 4096,
            max_optima: 100_000,
            max_extension_edges: 28,
            max_lp_rows: 10_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_edges(&self, ambient: CompleteHypergraph) -> Result<()> {
        let size = ambient.edge_count();
        if size > self.max_edges {
            return Err(TuranError::CapExceeded {
                what: "ambient edge count C(n, r)",
                size,
                cap: self.max_edges,
            });
        }
        Ok(())
    }
}
