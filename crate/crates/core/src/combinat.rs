//! Complete r-uniform hypergraphs and their edge indexing.
//!
//! Vertices are labelled `1..=n`. An edge is a strictly increasing list of
//! `r` labels and is addressed by its colexicographic rank
//! `sum_i C(v_i - 1, i)`, so the edges of `K^r_m` keep their ranks inside
//! `K^r_n` for every `m <= n`. Edge sets are dense bit-vectors over those
//! ranks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TuranError};

/// Binomial coefficient, `None` on `u64` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Binomial coefficient for the small arguments used in indexing.
///
/// Panics on overflow; every caller works with `n` well below 64.
pub(crate) fn choose(n: usize, k: usize) -> usize {
    let value = binomial(n as u64, k as u64).expect("binomial coefficient overflows u64");
    usize::try_from(value).expect("binomial coefficient overflows usize")
}

/// Colexicographic rank of a strictly increasing vertex list.
pub fn rank_edge(vertices: &[usize]) -> usize {
    vertices.iter().enumerate().map(|(i, &v)| choose(v - 1, i + 1)).sum()
}

/// Inverse of [`rank_edge`] on `K^r_n`.
pub fn unrank_edge(rank: usize, n: usize, r: usize) -> Result<Edge> {
    let len = choose(n, r);
    if rank >= len {
        return Err(TuranError::RankOutOfRange { rank, n, r, len });
    }
    let mut rest = rank;
    let mut vertices = vec![0; r];
    let mut upper = n;
    for i in (1..=r).rev() {
        // largest v <= upper with C(v - 1, i) <= rest
        let mut v = upper;
        while choose(v - 1, i) > rest {
            v -= 1;
        }
        rest -= choose(v - 1, i);
        vertices[i - 1] = v;
        upper = v - 1;
    }
    Ok(Edge(vertices))
}

/// Iterator over the `k`-subsets of `{1..=n}` in colexicographic order.
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((1..=k).collect()) } else { None };
        ColexSubsets { n, current }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut advanced = false;
        for i in 0..k {
            let limit = if i + 1 < k { next[i + 1] } else { self.n + 1 };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j + 1;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// The `k`-subsets of a sorted vertex list, in colex order of positions.
pub fn sub_subsets(items: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    ColexSubsets::new(items.len(), k).map(move |idx| idx.iter().map(|&i| items[i - 1]).collect())
}

/// A single r-edge: a strictly increasing list of 1-based vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<usize>);

impl Edge {
    /// Builds an edge of `K^r_n`; the labels may be given in any order.
    pub fn new(mut vertices: Vec<usize>, n: usize, r: usize) -> Result<Edge> {
        vertices.sort_unstable();
        let malformed = vertices.len() != r
            || vertices.first().is_some_and(|&v| v == 0)
            || vertices.last().is_some_and(|&v| v > n)
            || vertices.windows(2).any(|w| w[0] == w[1]);
        if malformed {
            return Err(TuranError::MalformedEdge { vertices, n, r });
        }
        Ok(Edge(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        rank_edge(&self.0)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `K^r_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompleteHypergraph {
    pub n: usize,
    pub r: usize,
}

impl CompleteHypergraph {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r < 2 || r > n {
            return Err(TuranError::invalid(format!(
                "complete hypergraph needs 2 <= r <= n, got n = {n}, r = {r}"
            )));
        }
        if binomial(n as u64, r as u64).is_none_or(|c| c > (1 << 32)) {
            return Err(TuranError::Overflow("C(n, r)"));
        }
        Ok(CompleteHypergraph { n, r })
    }

    pub fn edge_count(&self) -> usize {
        choose(self.n, self.r)
    }

    pub fn edge(&self, vertices: &[usize]) -> Result<Edge> {
        Edge::new(vertices.to_vec(), self.n, self.r)
    }

    pub fn rank(&self, vertices: &[usize]) -> Result<usize> {
        Ok(self.edge(vertices)?.rank())
    }

    pub fn unrank(&self, rank: usize) -> Result<Edge> {
        unrank_edge(rank, self.n, self.r)
    }

    /// All edges in colex (rank) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> {
        ColexSubsets::new(self.n, self.r).map(Edge)
    }
}

/// A subset of `E(K^r_n)` as a dense bit-vector indexed by colex rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    ambient: CompleteHypergraph,
    bits: Vec<u64>,
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet(n={}, r={}, {{", self.ambient.n, self.ambient.r)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}})")
    }
}

impl EdgeSet {
    pub fn empty(ambient: CompleteHypergraph) -> Self {
        let words = ambient.edge_count().div_ceil(64);
        EdgeSet {
            ambient,
            bits: vec![0; words],
        }
    }

    pub fn full(ambient: CompleteHypergraph) -> Self {
        let mut set = Self::empty(ambient);
        for rank in 0..ambient.edge_count() {
            set.insert(rank);
        }
        set
    }

    pub fn from_ranks(ambient: CompleteHypergraph, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(ambient);
        let len = ambient.edge_count();
        for rank in ranks {
            if rank >= len {
                return Err(TuranError::RankOutOfRange {
                    rank,
                    n: ambient.n,
                    r: ambient.r,
                    len,
                });
            }
            set.insert(rank);
        }
        Ok(set)
    }

    pub fn from_edges<I, V>(ambient: CompleteHypergraph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[usize]>,
    {
        let mut set = Self::empty(ambient);
        for e in edges {
            set.insert(ambient.rank(e.as_ref())?);
        }
        Ok(set)
    }

    pub fn ambient(&self) -> CompleteHypergraph {
        self.ambient
    }

    pub fn insert(&mut self, rank: usize) -> bool {
        debug_assert!(rank < self.ambient.edge_count());
        let (w, b) = (rank / 64, rank % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, rank: usize) -> bool {
        let (w, b) = (rank / 64, rank % 64);
        let present = self.bits.get(w).is_some_and(|word| word & (1 << b) != 0);
        if present {
            self.bits[w] &= !(1 << b);
        }
        present
    }

    pub fn contains(&self, rank: usize) -> bool {
        let (w, b) = (rank / 64, rank % 64);
        self.bits.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn contains_edge(&self, vertices: &[usize]) -> bool {
        self.ambient
            .rank(vertices)
            .map(|rank| self.contains(rank))
            .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Ranks in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Edges in colex order.
    pub fn edges(&self) -> Vec<Edge> {
        self.iter()
            .map(|rank| self.ambient.unrank(rank).expect("stored rank is in range"))
            .collect()
    }

    /// Edges as vertex lists in lexicographic order (the serialized form).
    pub fn sorted_vertex_lists(&self) -> Vec<Vec<usize>> {
        let mut lists: Vec<Vec<usize>> = self.edges().into_iter().map(|e| e.0).collect();
        lists.sort();
        lists
    }

    fn check_same(&self, other: &EdgeSet) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(TuranError::AmbientMismatch {
                expected_n: self.ambient.n,
                expected_r: self.ambient.r,
                found_n: other.ambient.n,
                found_r: other.ambient.r,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &EdgeSet) -> Result<EdgeSet> {
        self.check_same(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Ok(EdgeSet {
            ambient: self.ambient,
            bits,
        })
    }

    pub fn intersection(&self, other: &EdgeSet) -> Result<EdgeSet> {
        self.check_same(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        Ok(EdgeSet {
            ambient: self.ambient,
            bits,
        })
    }

    pub fn difference(&self, other: &EdgeSet) -> Result<EdgeSet> {
        self.check_same(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect();
        Ok(EdgeSet {
            ambient: self.ambient,
            bits,
        })
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.ambient == other.ambient && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Re-homes the set into `K^r_m`, `m >= n`. Ranks are unchanged.
    pub fn embed(&self, m: usize) -> Result<EdgeSet> {
        if m < self.ambient.n {
            return Err(TuranError::invalid(format!(
                "cannot embed K^{}_{} into K^{}_{}",
                self.ambient.r, self.ambient.n, self.ambient.r, m
            )));
        }
        let ambient = CompleteHypergraph::new(m, self.ambient.r)?;
        let mut out = EdgeSet::empty(ambient);
        out.bits[..self.bits.len()].copy_from_slice(&self.bits);
        Ok(out)
    }

    /// 0/1 characteristic vector of length `C(n, r)`.
    pub fn characteristic_vector(&self) -> Vec<u8> {
        (0..self.ambient.edge_count())
            .map(|r| u8::from(self.contains(r)))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeSetDoc {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for EdgeSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EdgeSetDoc {
            n: self.ambient.n,
            r: self.ambient.r,
            edges: self.sorted_vertex_lists(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EdgeSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = EdgeSetDoc::deserialize(deserializer)?;
        let ambient = CompleteHypergraph::new(doc.n, doc.r).map_err(serde::de::Error::custom)?;
        EdgeSet::from_edges(ambient, &doc.edges).map_err(serde::de::Error::custom)
    }
}

/// All `a`-subsets of `[n]` in colex order. `a > n` yields an empty list.
pub fn enumerate_cliques(n: usize, r: usize, a: usize) -> Result<Vec<Vec<usize>>> {
    if a <= r {
        return Err(TuranError::invalid(format!("clique size a = {a} must exceed r = {r}")));
    }
    if a > n {
        return Ok(Vec::new());
    }
    let count = binomial(n as u64, a as u64).ok_or(TuranError::Overflow("C(n, a)"))?;
    if count > 1_000_000 {
        return Err(TuranError::CapExceeded {
            what: "number of candidate cliques",
            size: count as usize,
            cap: 1_000_000,
        });
    }
    Ok(ColexSubsets::new(n, a).collect())
}

/// Edge ranks of the `r`-subsets of a sorted vertex list.
pub(crate) fn clique_ranks(clique: &[usize], r: usize) -> Vec<usize> {
    sub_subsets(clique, r).map(|e| rank_edge(&e)).collect()
}

/// The `C(|clique|, r)` edges spanned by a vertex set, inside `ambient`.
pub fn clique_edge_set(clique: &[usize], ambient: CompleteHypergraph) -> Result<EdgeSet> {
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != clique.len() || sorted.len() <= ambient.r {
        return Err(TuranError::invalid(format!(
            "clique {clique:?} must consist of more than r = {} distinct vertices",
            ambient.r
        )));
    }
    if sorted[0] == 0 || *sorted.last().unwrap() > ambient.n {
        return Err(TuranError::invalid(format!(
            "clique {clique:?} does not fit in [{}]",
            ambient.n
        )));
    }
    EdgeSet::from_ranks(ambient, clique_ranks(&sorted, ambient.r))
}

/// True iff no `a`-subset of `[n]` has all of its `r`-subsets in `edges`.
pub fn is_clique_free(edges: &EdgeSet, a: usize) -> bool {
    let CompleteHypergraph { n, r } = edges.ambient();
    if a <= r {
        // every r-edge would be a clique of its own; treat non-empty as not free
        return a < r || edges.is_empty();
    }
    ColexSubsets::new(n, a).all(|q| sub_subsets(&q, r).any(|e| !edges.contains(rank_edge(&e))))
}

/// The candidate `a`-cliques of an ambient hypergraph with their edge ranks
/// precomputed, optionally restricted to cliques fully inside a support.
#[derive(Debug, Clone)]
pub struct CliqueIndex {
    ambient: CompleteHypergraph,
    a: usize,
    cliques: Vec<Vec<usize>>,
    masks: Vec<Vec<usize>>,
}

impl CliqueIndex {
    /// Every `a`-subset of `[n]`.
    pub fn new(ambient: CompleteHypergraph, a: usize) -> Result<Self> {
        let cliques = enumerate_cliques(ambient.n, ambient.r, a)?;
        let masks = cliques.iter().map(|q| clique_ranks(q, ambient.r)).collect();
        Ok(CliqueIndex {
            ambient,
            a,
            cliques,
            masks,
        })
    }

    /// Only the `a`-cliques whose edges all lie in `support`.
    pub fn within(support: &EdgeSet, a: usize) -> Result<Self> {
        let ambient = support.ambient();
        let mut index = Self::new(ambient, a)?;
        let keep: Vec<bool> = index
            .masks
            .iter()
            .map(|m| m.iter().all(|&e| support.contains(e)))
            .collect();
        let mut it = keep.iter();
        index.cliques.retain(|_| *it.next().unwrap());
        let mut it = keep.iter();
        index.masks.retain(|_| *it.next().unwrap());
        Ok(index)
    }

    pub fn ambient(&self) -> CompleteHypergraph {
        self.ambient
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn masks(&self) -> &[Vec<usize>] {
        &self.masks
    }

    pub fn is_clique_free(&self, set: &EdgeSet) -> bool {
        self.first_full_clique(set).is_none()
    }

    pub fn first_full_clique(&self, set: &EdgeSet) -> Option<&[usize]> {
        self.masks
            .iter()
            .position(|m| m.iter().all(|&e| set.contains(e)))
            .map(|i| self.cliques[i].as_slice())
    }
}

/// Maps any integer position onto the cycle labels `1..=len` (0 maps to `len`).
pub fn cyclic(i: usize, len: usize) -> usize {
    (i + len - 1) % len + 1
}

/// The `size` consecutive cycle labels starting at `start`.
pub fn cyclic_window(start: usize, size: usize, len: usize) -> Vec<usize> {
    (0..size).map(|k| cyclic(start + k, len)).collect()
}

/// Length of the shortest cyclic window of `1..=len` containing `vertices`.
pub fn cyclic_span(vertices: &[usize], len: usize) -> usize {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    match sorted.len() {
        0 => 0,
        1 => 1,
        k => {
            let wrap_gap = sorted[0] + len - sorted[k - 1];
            let max_gap = sorted
                .windows(2)
                .map(|w| w[1] - w[0])
                .chain(std::iter::once(wrap_gap))
                .max()
                .unwrap();
            len - max_gap + 1
        }
    }
}

/// Union of the `r`-subsets of every cyclic window of `window` consecutive
/// labels on a cycle `1..=cycle_len`, each window optionally joined by `hub`.
pub fn cyclic_window_edge_set(
    cycle_len: usize,
    window: usize,
    r: usize,
    hub: Option<usize>,
    ambient: CompleteHypergraph,
) -> Result<EdgeSet> {
    let mut set = EdgeSet::empty(ambient);
    for start in 1..=cycle_len {
        let mut q = cyclic_window(start, window, cycle_len);
        q.extend(hub);
        q.sort_unstable();
        for e in sub_subsets(&q, r) {
            set.insert(ambient.rank(&e)?);
        }
    }
    Ok(set)
}

/// A hyperwheel `^rW_l^a`: hub `l`, cycle `1..=l-1`, and every `a - 1`
/// consecutive cycle vertices together with the hub form an `a`-clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WheelSpec {
    pub l: usize,
    pub a: usize,
    pub r: usize,
}

impl WheelSpec {
    pub fn new(l: usize, a: usize, r: usize) -> Result<Self> {
        if r < 2 || r >= a {
            return Err(TuranError::invalid(format!(
                "wheel needs 2 <= r < a, got r = {r}, a = {a}"
            )));
        }
        if l + 1 < 2 * a {
            return Err(TuranError::invalid(format!(
                "wheel needs l >= 2a - 1 = {}, got l = {l}",
                2 * a - 1
            )));
        }
        Ok(WheelSpec { l, a, r })
    }

    pub fn hub(&self) -> usize {
        self.l
    }

    pub fn cycle_len(&self) -> usize {
        self.l - 1
    }

    /// `a - r + 1`: how many wheel cliques contain an `(r-1)`-spanning spoke.
    pub fn stride(&self) -> usize {
        self.a - self.r + 1
    }

    pub fn ambient(&self) -> CompleteHypergraph {
        CompleteHypergraph { n: self.l, r: self.r }
    }

    /// `(l - 1) * C(a - 1, r - 1)`.
    pub fn edge_count(&self) -> usize {
        self.cycle_len() * choose(self.a - 1, self.r - 1)
    }

    /// Wheel clique `i`: cycle vertices `i..i+a-2` (cyclic) plus the hub, sorted.
    pub fn clique(&self, i: usize) -> Result<Vec<usize>> {
        if i == 0 || i > self.cycle_len() {
            return Err(TuranError::invalid(format!(
                "wheel clique index {i} outside 1..={}",
                self.cycle_len()
            )));
        }
        let mut q = cyclic_window(i, self.a - 1, self.cycle_len());
        q.push(self.hub());
        q.sort_unstable();
        Ok(q)
    }

    pub fn cliques(&self) -> Vec<Vec<usize>> {
        (1..=self.cycle_len()).map(|i| self.clique(i).unwrap()).collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        cyclic_window_edge_set(self.cycle_len(), self.a - 1, self.r, Some(self.hub()), self.ambient())
            .expect("wheel edges fit in K^r_l")
    }

    pub fn is_spoke(&self, edge: &Edge) -> bool {
        edge.contains(self.hub())
    }

    /// Number of cycle vertices spanned by a wheel edge.
    pub fn span(&self, edge: &Edge) -> usize {
        let cycle: Vec<usize> = edge.vertices().iter().copied().filter(|&v| v != self.hub()).collect();
        cyclic_span(&cycle, self.cycle_len())
    }
}

/// A hyperweb `^r\bar W_l^{a-1}`: cycle `1..=l` where every `a` consecutive
/// vertices form an `a`-clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WebSpec {
    pub l: usize,
    pub a: usize,
    pub r: usize,
}

impl WebSpec {
    pub fn new(l: usize, a: usize, r: usize) -> Result<Self> {
        if r < 2 || r >= a {
            return Err(TuranError::invalid(format!(
                "web needs 2 <= r < a, got r = {r}, a = {a}"
            )));
        }
        if l < 2 * a {
            return Err(TuranError::invalid(format!(
                "web needs l >= 2a = {}, got l = {l}",
                2 * a
            )));
        }
        Ok(WebSpec { l, a, r })
    }

    pub fn stride(&self) -> usize {
        self.a - self.r + 1
    }

    pub fn ambient(&self) -> CompleteHypergraph {
        CompleteHypergraph { n: self.l, r: self.r }
    }

    /// `l * C(a - 1, r - 1)`.
    pub fn edge_count(&self) -> usize {
        self.l * choose(self.a - 1, self.r - 1)
    }

    /// Web clique `i`: vertices `i..i+a-1` (cyclic), sorted.
    pub fn clique(&self, i: usize) -> Result<Vec<usize>> {
        if i == 0 || i > self.l {
            return Err(TuranError::invalid(format!(
                "web clique index {i} outside 1..={}",
                self.l
            )));
        }
        let mut q = cyclic_window(i, self.a, self.l);
        q.sort_unstable();
        Ok(q)
    }

    pub fn cliques(&self) -> Vec<Vec<usize>> {
        (1..=self.l).map(|i| self.clique(i).unwrap()).collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        cyclic_window_edge_set(self.l, self.a, self.r, None, self.ambient()).expect("web edges fit in K^r_l")
    }

    pub fn span(&self, edge: &Edge) -> usize {
        cyclic_span(edge.vertices(), self.l)
    }
}
