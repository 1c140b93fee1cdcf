//! Exact 2-uniform pair-cover search shared by the MAG and MEG solvers.
//!
//! Items (arcs or edges) are covered by unordered vertex pairs; a vertex set
//! covers an item when it contains both endpoints of one admissible pair.
//! Coverage is tracked as flat `u64` word bitsets over item indices.

use serde::Serialize;

use crate::digraph::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Sweep residual sets by increasing cardinality.
    CardinalitySweep,
    /// Include/exclude branching on vertices with a pair-based lower bound.
    BranchAndBound,
    /// Sweep when at most `AUTO_SWEEP_LIMIT` vertices remain free.
    Auto,
}

pub const AUTO_SWEEP_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_nodes: u64,
    pub strategy: Strategy,
    pub use_forcing: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_nodes: 2_000_000_000,
            strategy: Strategy::Auto,
            use_forcing: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.pruned += other.pruned;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub set: Vec<Vertex>,
    pub optimal: bool,
    pub stats: SearchStats,
}

/// Pair-cover instance: `pair_items(x, y)` is the set of items `{x, y}`
/// covers.
#[derive(Debug, Clone)]
pub struct PairCover {
    n: usize,
    items: usize,
    words: usize,
    masks: Vec<u64>,
    item_pairs: Vec<Vec<(Vertex, Vertex)>>,
}

impl PairCover {
    /// `pairs_per_item[i]` lists the pairs (with `x < y`) covering item `i`.
    /// Every item needs at least one pair.
    pub fn new(n: usize, pairs_per_item: Vec<Vec<(Vertex, Vertex)>>) -> Self {
        assert!(
            pairs_per_item.iter().all(|p| !p.is_empty()),
            "every item must be coverable by some pair"
        );
        let items = pairs_per_item.len();
        let words = items.div_ceil(64).max(1);
        let mut masks = vec![0u64; n * n * words];
        for (i, pairs) in pairs_per_item.iter().enumerate() {
            for &(x, y) in pairs {
                for (a, b) in [(x, y), (y, x)] {
                    masks[(a * n + b) * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        PairCover {
            n,
            items,
            words,
            masks,
            item_pairs: pairs_per_item,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> usize {
        self.items
    }

    fn mask(&self, x: Vertex, y: Vertex) -> &[u64] {
        let base = (x * self.n + y) * self.words;
        &self.masks[base..base + self.words]
    }

    fn full(&self) -> Vec<u64> {
        let mut f = vec![u64::MAX; self.words];
        let rem = self.items % 64;
        if rem != 0 {
            f[self.words - 1] = (1u64 << rem) - 1;
        } else if self.items == 0 {
            f[0] = 0;
        }
        f
    }

    fn coverage_of(&self, set: &[Vertex]) -> Vec<u64> {
        let mut cov = vec![0u64; self.words];
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[..i] {
                for (c, m) in cov.iter_mut().zip(self.mask(x, y)) {
                    *c |= m;
                }
            }
        }
        cov
    }

    /// Items not covered by `set`.
    pub fn uncovered(&self, set: &[Vertex]) -> Vec<usize> {
        let cov = self.coverage_of(set);
        (0..self.items)
            .filter(|&i| cov[i / 64] & (1 << (i % 64)) == 0)
            .collect()
    }

    pub fn covers(&self, set: &[Vertex]) -> bool {
        self.coverage_of(set) == self.full()
    }

    pub fn pairs_of(&self, item: usize) -> &[(Vertex, Vertex)] {
        &self.item_pairs[item]
    }

    /// Greedy cover seeded with `seed`: add the vertex covering the most new
    /// items, falling back to the best pair when no single vertex helps.
    /// Ties go to the lowest index.
    pub fn greedy(&self, seed: &[Vertex]) -> Vec<Vertex> {
        let mut set: Vec<Vertex> = seed.to_vec();
        let mut inside = vec![false; self.n];
        for &v in seed {
            inside[v] = true;
        }
        let full = self.full();
        let mut cov = self.coverage_of(&set);
        let gain = |cov: &[u64], add: &[u64]| -> u32 {
            cov.iter()
                .zip(add)
                .map(|(c, a)| (a & !c).count_ones())
                .sum()
        };
        while cov != full {
            let mut best: Option<(u32, Vertex)> = None;
            for v in (0..self.n).filter(|&v| !inside[v]) {
                let mut add = vec![0u64; self.words];
                for &s in &set {
                    for (a, m) in add.iter_mut().zip(self.mask(v, s)) {
                        *a |= m;
                    }
                }
                let g = gain(&cov, &add);
                if g > 0 && best.is_none_or(|(bg, _)| g > bg) {
                    best = Some((g, v));
                }
            }
            let chosen: Vec<Vertex> = match best {
                Some((_, v)) => vec![v],
                None => {
                    let mut best_pair: Option<(u32, Vertex, Vertex)> = None;
                    for x in (0..self.n).filter(|&x| !inside[x]) {
                        for y in (x + 1..self.n).filter(|&y| !inside[y]) {
                            let g = gain(&cov, self.mask(x, y));
                            if g > 0 && best_pair.is_none_or(|(bg, _, _)| g > bg) {
                                best_pair = Some((g, x, y));
                            }
                        }
                    }
                    let (_, x, y) = best_pair.expect("the full vertex set covers every item");
                    vec![x, y]
                }
            };
            for v in chosen {
                for &s in &set {
                    for (c, m) in cov.iter_mut().zip(self.mask(v, s)) {
                        *c |= m;
                    }
                }
                set.push(v);
                inside[v] = true;
            }
        }
        set.sort_unstable();
        set
    }

    /// Minimum cover containing `forced`.
    pub fn solve(&self, forced: &[Vertex], cfg: &SolverConfig) -> CoverSolution {
        let mut forced = forced.to_vec();
        forced.sort_unstable();
        forced.dedup();
        let residual = self.n - forced.len();
        let sweep = match cfg.strategy {
            Strategy::CardinalitySweep => true,
            Strategy::BranchAndBound => false,
            Strategy::Auto => residual <= AUTO_SWEEP_LIMIT,
        };
        if sweep {
            self.sweep(&forced, cfg.max_nodes)
        } else {
            self.branch_and_bound(&forced, cfg.max_nodes)
        }
    }

    fn sweep(&self, forced: &[Vertex], budget: u64) -> CoverSolution {
        let mut in_forced = vec![false; self.n];
        for &v in forced {
            in_forced[v] = true;
        }
        let free: Vec<Vertex> = (0..self.n).filter(|&v| !in_forced[v]).collect();
        let full = self.full();
        let base = self.coverage_of(forced);
        let mut sweeper = Sweeper {
            pc: self,
            free: &free,
            full: &full,
            set: forced.to_vec(),
            stats: SearchStats::default(),
            budget,
        };
        for k in 0..=free.len() {
            match sweeper.dfs(0, k, &base) {
                Some(true) => {
                    let mut set = sweeper.set.clone();
                    set.sort_unstable();
                    return CoverSolution {
                        set,
                        optimal: true,
                        stats: sweeper.stats,
                    };
                }
                Some(false) => {}
                None => {
                    return CoverSolution {
                        set: self.greedy(forced),
                        optimal: false,
                        stats: sweeper.stats,
                    }
                }
            }
        }
        unreachable!("the full vertex set covers every item")
    }

    fn branch_and_bound(&self, forced: &[Vertex], budget: u64) -> CoverSolution {
        let incumbent = self.greedy(forced);
        let mut state = vec![Decision::Open; self.n];
        for &v in forced {
            state[v] = Decision::In;
        }
        let mut bb = BranchAndBound {
            pc: self,
            best: incumbent,
            stats: SearchStats::default(),
            budget,
            aborted: false,
        };
        let cov = self.coverage_of(forced);
        bb.recurse(&mut state, forced.len(), cov);
        let mut set = bb.best;
        set.sort_unstable();
        CoverSolution {
            set,
            optimal: !bb.aborted,
            stats: bb.stats,
        }
    }
}

struct Sweeper<'a> {
    pc: &'a PairCover,
    free: &'a [Vertex],
    full: &'a [u64],
    set: Vec<Vertex>,
    stats: SearchStats,
    budget: u64,
}

impl Sweeper<'_> {
    /// Choose `left` more vertices from `free[start..]`. `None` on budget
    /// exhaustion, `Some(found)` otherwise; on success `set` holds the cover.
    fn dfs(&mut self, start: usize, left: usize, cov: &[u64]) -> Option<bool> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return None;
        }
        if left == 0 {
            return Some(cov == self.full);
        }
        if self.free.len() - start < left {
            return Some(false);
        }
        let mut next = vec![0u64; cov.len()];
        for i in start..=self.free.len() - left {
            let v = self.free[i];
            next.copy_from_slice(cov);
            for &s in &self.set {
                for (c, m) in next.iter_mut().zip(self.pc.mask(v, s)) {
                    *c |= m;
                }
            }
            self.set.push(v);
            let r = self.dfs(i + 1, left - 1, &next);
            if r != Some(false) {
                return r;
            }
            self.set.pop();
        }
        Some(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

struct BranchAndBound<'a> {
    pc: &'a PairCover,
    best: Vec<Vertex>,
    stats: SearchStats,
    budget: u64,
    aborted: bool,
}

impl BranchAndBound<'_> {
    fn recurse(&mut self, state: &mut [Decision], size: usize, cov: Vec<u64>) {
        if self.aborted {
            return;
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            self.aborted = true;
            return;
        }
        // Uncovered item with the fewest usable pairs, plus the bound.
        let mut extra_needed = 0usize;
        let mut pick: Option<(usize, usize)> = None;
        for item in 0..self.pc.items {
            if cov[item / 64] & (1 << (item % 64)) != 0 {
                continue;
            }
            let mut usable = 0usize;
            let mut need = usize::MAX;
            for &(x, y) in &self.pc.item_pairs[item] {
                if state[x] == Decision::Out || state[y] == Decision::Out {
                    continue;
                }
                usable += 1;
                need = need.min(
                    usize::from(state[x] != Decision::In) + usize::from(state[y] != Decision::In),
                );
            }
            if usable == 0 {
                self.stats.pruned += 1;
                return;
            }
            extra_needed = extra_needed.max(need);
            if pick.is_none_or(|(_, u)| usable < u) {
                pick = Some((item, usable));
            }
        }
        let Some((item, _)) = pick else {
            if size < self.best.len() {
                self.best = (0..state.len())
                    .filter(|&v| state[v] == Decision::In)
                    .collect();
            }
            return;
        };
        if size + extra_needed >= self.best.len() {
            self.stats.pruned += 1;
            return;
        }
        let v = self.pc.item_pairs[item]
            .iter()
            .filter(|&&(x, y)| state[x] != Decision::Out && state[y] != Decision::Out)
            .flat_map(|&(x, y)| [x, y])
            .filter(|&x| state[x] == Decision::Open)
            .min()
            .expect("an uncovered item has an open endpoint in some usable pair");

        let mut next = cov.clone();
        for u in (0..state.len()).filter(|&u| state[u] == Decision::In) {
            for (c, m) in next.iter_mut().zip(self.pc.mask(v, u)) {
                *c |= m;
            }
        }
        state[v] = Decision::In;
        self.recurse(state, size + 1, next);
        state[v] = Decision::Out;
        self.recurse(state, size, cov);
        state[v] = Decision::Open;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Items: 0 covered by {0,1}; 1 covered by {1,2} or {0,3}; 2 by {2,3}.
    fn small() -> PairCover {
        PairCover::new(4, vec![vec![(0, 1)], vec![(1, 2), (0, 3)], vec![(2, 3)]])
    }

    #[test]
    fn strategies_agree() {
        let pc = small();
        for strategy in [Strategy::CardinalitySweep, Strategy::BranchAndBound] {
            let cfg = SolverConfig {
                strategy,
                ..SolverConfig::default()
            };
            let sol = pc.solve(&[], &cfg);
            assert!(sol.optimal);
            assert_eq!(sol.set, vec![0, 1, 2, 3]);
        }
        let pc = PairCover::new(3, vec![vec![(0, 2)], vec![(0, 2), (1, 2)]]);
        let sol = pc.solve(&[], &SolverConfig::default());
        assert_eq!(sol.set, vec![0, 2]);
        assert!(pc.covers(&sol.set));
        assert_eq!(pc.uncovered(&[0, 1]), vec![0, 1]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let pc = small();
        let cfg = SolverConfig {
            max_nodes: 2,
            strategy: Strategy::CardinalitySweep,
            use_forcing: false,
        };
        let sol = pc.solve(&[], &cfg);
        assert!(!sol.optimal);
        assert!(pc.covers(&sol.set));
    }

    #[test]
    fn greedy_falls_back_to_pairs() {
        let pc = small();
        let g = pc.greedy(&[]);
        assert!(pc.covers(&g));
        let empty = PairCover::new(3, vec![]);
        assert_eq!(empty.greedy(&[]), Vec::<Vertex>::new());
        assert!(empty.covers(&[]));
    }
}
