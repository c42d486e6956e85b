use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinat::{CliqueIndex, EdgeSet};
use crate::error::{Result, TuranError};
use crate::Limits;

/// Edge weights for the oracle objective.
#[derive(Debug, Clone, Copy)]
pub enum Weights<'a> {
    /// Every edge weighs one: the plain Turán number.
    Unit,
    /// Weight per edge rank; ranks not present weigh zero.
    Sparse(&'a BTreeMap<usize, u64>),
}

impl Weights<'_> {
    pub fn get(&self, rank: usize) -> u64 {
        match self {
            Weights::Unit => 1,
            Weights::Sparse(map) => map.get(&rank).copied().unwrap_or(0),
        }
    }
}

/// Outcome of an exact weighted Turán computation.
///
/// Edges of weight zero are always dropped from the optima: they never
/// change the objective, so only the positive-weight part is reported.
#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    pub value: u64,
    pub optima: Vec<EdgeSet>,
    pub truncated: bool,
    pub node_count: u64,
}

/// Maximum total weight of an `a`-clique-free subset of `support`, with every
/// subset attaining it (sorted by rank vector, capped at
/// `limits.max_optima`).
pub fn ex_oracle(support: &EdgeSet, a: usize, weights: Weights<'_>, limits: &Limits) -> Result<OracleResult> {
    solve(support, a, weights, limits, Mode::AllOptima)
}

/// Same value as [`ex_oracle`] but stops at a single optimum; much cheaper
/// when the optimum is highly degenerate.
pub fn ex_oracle_value(support: &EdgeSet, a: usize, weights: Weights<'_>, limits: &Limits) -> Result<OracleResult> {
    solve(support, a, weights, limits, Mode::ValueOnly)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    ValueOnly,
    AllOptima,
}

fn solve(support: &EdgeSet, a: usize, weights: Weights<'_>, limits: &Limits, mode: Mode) -> Result<OracleResult> {
    let ambient = support.ambient();
    limits.check_edges(ambient)?;
    if a <= ambient.r {
        return Err(TuranError::invalid(format!(
            "clique size a = {a} must exceed r = {}",
            ambient.r
        )));
    }

    // Zero-weight edges are removed up front; removing them is free and
    // hits every clique through them.
    let mut positive = support.clone();
    for rank in support.iter() {
        if weights.get(rank) == 0 {
            positive.remove(rank);
        }
    }
    let elements: Vec<usize> = positive.iter().collect();
    let local: BTreeMap<usize, u32> = elements.iter().enumerate().map(|(i, &rank)| (rank, i as u32)).collect();
    let index = CliqueIndex::within(&positive, a)?;
    let sets: Vec<Vec<u32>> = index
        .masks()
        .iter()
        .map(|m| m.iter().map(|rank| local[rank]).collect())
        .collect();
    let w: Vec<u64> = elements.iter().map(|&rank| weights.get(rank)).collect();
    let total: u64 = w
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or(TuranError::Overflow("total support weight"))?;

    let cap = match mode {
        Mode::ValueOnly => 1,
        Mode::AllOptima => limits.max_optima,
    };
    let mut search = HittingSearch::new(w, sets, mode, cap);
    search.run();

    let value = total - search.best;
    let mut optima: Vec<EdgeSet> = search
        .solutions
        .iter()
        .map(|removed| {
            let mut kept = positive.clone();
            for &i in removed {
                kept.remove(elements[i as usize]);
            }
            kept
        })
        .collect();
    optima.sort_by_key(|s| s.iter().collect::<Vec<_>>());
    Ok(OracleResult {
        value,
        optima,
        truncated: search.truncated,
        node_count: search.nodes,
    })
}

const FREE: u8 = 0;
const REMOVED: u8 = 1;
const KEPT: u8 = 2;

/// Exact minimum-weight hitting set by branch and bound.
///
/// Branching picks the uncovered set with the fewest removable elements
/// (lowest index on ties) and tries each removable element `e_i` in turn,
/// marking `e_1..e_{i-1}` as kept, so every hitting set is reached exactly
/// once. The bound is a greedy dual packing: each uncovered set claims the
/// smallest residual weight among its removable elements.
struct HittingSearch {
    weights: Vec<u64>,
    sets: Vec<Vec<u32>>,
    sets_of: Vec<Vec<u32>>,
    status: Vec<u8>,
    hits: Vec<u32>,
    current: u64,
    best: u64,
    removed: Vec<u32>,
    solutions: Vec<Vec<u32>>,
    mode: Mode,
    cap: usize,
    truncated: bool,
    nodes: u64,
    residual: Vec<u64>,
}

impl HittingSearch {
    fn new(weights: Vec<u64>, sets: Vec<Vec<u32>>, mode: Mode, cap: usize) -> Self {
        let m = weights.len();
        let mut sets_of = vec![Vec::new(); m];
        for (s, set) in sets.iter().enumerate() {
            for &e in set {
                sets_of[e as usize].push(s as u32);
            }
        }
        let hits = vec![0; sets.len()];
        HittingSearch {
            residual: vec![0; m],
            status: vec![FREE; m],
            weights,
            sets,
            sets_of,
            hits,
            current: 0,
            best: u64::MAX,
            removed: Vec::new(),
            solutions: Vec::new(),
            mode,
            cap,
            truncated: false,
            nodes: 0,
        }
    }

    fn run(&mut self) {
        let greedy = self.greedy_upper_bound();
        // Value-only search prunes ties, so start just above the greedy value
        // to make sure a solution gets recorded.
        self.best = match self.mode {
            Mode::ValueOnly => greedy + 1,
            Mode::AllOptima => greedy,
        };
        self.dfs();
    }

    fn greedy_upper_bound(&self) -> u64 {
        let mut covered = vec![false; self.sets.len()];
        let mut total = 0;
        loop {
            let mut best: Option<(u32, u64, usize)> = None;
            for e in 0..self.weights.len() {
                let gain = self.sets_of[e].iter().filter(|&&s| !covered[s as usize]).count();
                if gain == 0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((_, w, g)) => (gain as u128) * (w as u128) > (g as u128) * (self.weights[e] as u128),
                };
                if better {
                    best = Some((e as u32, self.weights[e], gain));
                }
            }
            let Some((e, w, _)) = best else { break };
            total += w;
            for &s in &self.sets_of[e as usize] {
                covered[s as usize] = true;
            }
        }
        total
    }

    fn remove(&mut self, e: u32) {
        self.status[e as usize] = REMOVED;
        self.current += self.weights[e as usize];
        for &s in &self.sets_of[e as usize] {
            self.hits[s as usize] += 1;
        }
        self.removed.push(e);
    }

    fn unremove(&mut self, e: u32) {
        self.status[e as usize] = FREE;
        self.current -= self.weights[e as usize];
        for &s in &self.sets_of[e as usize] {
            self.hits[s as usize] -= 1;
        }
        self.removed.pop();
    }

    /// Lower bound on the extra weight still needed, and the set to branch
    /// on. `None` means some uncovered set can no longer be hit.
    fn bound(&mut self) -> Option<(u64, Option<usize>)> {
        for (e, r) in self.residual.iter_mut().enumerate() {
            *r = if self.status[e] == FREE { self.weights[e] } else { 0 };
        }
        let mut lb = 0u64;
        let mut branch: Option<(usize, usize)> = None;
        for (s, set) in self.sets.iter().enumerate() {
            if self.hits[s] > 0 {
                continue;
            }
            let mut free = 0usize;
            let mut least = u64::MAX;
            for &e in set {
                if self.status[e as usize] == FREE {
                    free += 1;
                    least = least.min(self.residual[e as usize]);
                }
            }
            if free == 0 {
                return None;
            }
            if branch.is_none_or(|(_, f)| free < f) {
                branch = Some((s, free));
            }
            if least > 0 {
                lb += least;
                for &e in set {
                    if self.status[e as usize] == FREE {
                        self.residual[e as usize] -= least;
                    }
                }
            }
        }
        Some((lb, branch.map(|(s, _)| s)))
    }

    fn prune(&self, total: u64) -> bool {
        match self.mode {
            Mode::ValueOnly => total >= self.best,
            Mode::AllOptima => total > self.best,
        }
    }

    fn record(&mut self) {
        if self.current < self.best {
            self.best = self.current;
            self.solutions.clear();
            self.truncated = false;
        }
        if self.solutions.len() < self.cap {
            let mut sol = self.removed.clone();
            sol.sort_unstable();
            self.solutions.push(sol);
        } else {
            self.truncated = true;
        }
    }

    fn dfs(&mut self) {
        self.nodes += 1;
        let Some((lb, branch)) = self.bound() else { return };
        if self.prune(self.current + lb) {
            return;
        }
        let Some(s) = branch else {
            self.record();
            return;
        };

        let mut candidates: Vec<u32> = self.sets[s]
            .iter()
            .copied()
            .filter(|&e| self.status[e as usize] == FREE)
            .collect();
        // most uncovered sets first; cheaper first on ties
        let uncovered = |e: u32, this: &Self| {
            this.sets_of[e as usize]
                .iter()
                .filter(|&&t| this.hits[t as usize] == 0)
                .count()
        };
        let keys: Vec<(usize, u64)> = candidates
            .iter()
            .map(|&e| (uncovered(e, self), self.weights[e as usize]))
            .collect();
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by(|&i, &j| {
            keys[j]
                .0
                .cmp(&keys[i].0)
                .then(keys[i].1.cmp(&keys[j].1))
                .then(i.cmp(&j))
        });
        candidates = order.into_iter().map(|i| candidates[i]).collect();

        let mut kept = Vec::with_capacity(candidates.len());
        for &e in &candidates {
            if self.prune(self.current + self.weights[e as usize]) {
                self.status[e as usize] = KEPT;
                kept.push(e);
                continue;
            }
            self.remove(e);
            self.dfs();
            self.unremove(e);
            self.status[e as usize] = KEPT;
            kept.push(e);
        }
        for e in kept {
            self.status[e as usize] = FREE;
        }
    }
}
