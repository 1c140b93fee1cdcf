//! Exact minimum MAG-sets.
//!
//! Each weakly connected component is solved on its own and the optimal sets
//! are unioned. Inside a component the problem is a pair cover: every arc
//! must have one of its monitoring pairs fully inside the chosen set. Forced
//! vertices seed the search.

use serde::Serialize;

use crate::cover::{PairCover, SearchStats, SolverConfig};
use crate::digraph::{OrientedGraph, Vertex};
use crate::error::{Error, Result};
use crate::monitoring::{forced_vertices, MonitorMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagResult {
    pub size: usize,
    pub witness: Vec<Vertex>,
    pub forced: Vec<Vertex>,
    /// For every arc index, a pair inside `witness` monitoring it.
    pub coverage: Vec<(Vertex, Vertex)>,
    pub optimal: bool,
    #[serde(skip)]
    pub stats: SearchStats,
}

struct ComponentSolution {
    set: Vec<Vertex>,
    forced: Vec<Vertex>,
    optimal: bool,
    stats: SearchStats,
}

fn solve_component(g: &OrientedGraph, cfg: &SolverConfig) -> ComponentSolution {
    let mm = MonitorMatrix::new(g);
    let forced = if cfg.use_forcing {
        forced_vertices(g).vertices
    } else {
        Vec::new()
    };
    let sol = mm.to_pair_cover().solve(&forced, cfg);
    ComponentSolution {
        set: sol.set,
        forced,
        optimal: sol.optimal,
        stats: sol.stats,
    }
}

/// Runs `per_component` on each component that has at least one arc and
/// lifts the returned vertex lists back to `g`'s labels.
fn for_each_component<T>(
    g: &OrientedGraph,
    mut per_component: impl FnMut(&OrientedGraph) -> T,
    mut lift: impl FnMut(T, &[Vertex]),
) {
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced_subgraph(&comp);
        let r = per_component(&sub);
        lift(r, &comp);
    }
}

/// Exact minimum MAG-set with a per-arc coverage certificate.
///
/// On budget exhaustion returns [`Error::BudgetExceeded`] carrying the best
/// valid MAG-set found.
pub fn min_mag_set(g: &OrientedGraph, cfg: &SolverConfig) -> Result<MagResult> {
    let mut witness = Vec::new();
    let mut forced = Vec::new();
    let mut optimal = true;
    let mut stats = SearchStats::default();
    let mut remaining = *cfg;
    for_each_component(
        g,
        |sub| {
            let sol = solve_component(sub, &remaining);
            remaining.max_nodes = remaining.max_nodes.saturating_sub(sol.stats.nodes).max(1);
            sol
        },
        |sol, labels| {
            witness.extend(sol.set.iter().map(|&v| labels[v]));
            forced.extend(sol.forced.iter().map(|&v| labels[v]));
            optimal &= sol.optimal;
            stats.merge(sol.stats);
        },
    );
    witness.sort_unstable();
    forced.sort_unstable();

    let mm = MonitorMatrix::new(g);
    let mut inside = vec![false; g.n()];
    for &v in &witness {
        inside[v] = true;
    }
    let coverage = (0..g.m())
        .map(|a| {
            *mm.pairs_monitoring(a)
                .iter()
                .find(|&&(x, y)| inside[x] && inside[y])
                .expect("solver output covers every arc")
        })
        .collect();

    if !optimal {
        return Err(Error::BudgetExceeded {
            nodes: stats.nodes,
            best_size: witness.len(),
            best: witness,
        });
    }
    Ok(MagResult {
        size: witness.len(),
        witness,
        forced,
        coverage,
        optimal,
        stats,
    })
}

/// Size of a minimum MAG-set.
pub fn mag(g: &OrientedGraph, cfg: &SolverConfig) -> Result<usize> {
    min_mag_set(g, cfg).map(|r| r.size)
}

/// A valid, not necessarily minimum, MAG-set grown greedily from the forced
/// vertices of every component.
pub fn greedy_mag_set(g: &OrientedGraph) -> Vec<Vertex> {
    let mut out = Vec::new();
    for_each_component(
        g,
        |sub| {
            let pc: PairCover = MonitorMatrix::new(sub).to_pair_cover();
            pc.greedy(&forced_vertices(sub).vertices)
        },
        |set, labels| out.extend(set.iter().map(|&v| labels[v])),
    );
    out.sort_unstable();
    out
}

/// A lower bound on `mag(g)`: forced vertices, at least two per component
/// with an arc, and `n - 1` for tournaments.
pub fn mag_lower_bound(g: &OrientedGraph) -> usize {
    let mut bound = 0;
    for_each_component(
        g,
        |sub| {
            let mut b = forced_vertices(sub).vertices.len().max(2);
            if sub.underlying().is_complete() {
                b = b.max(sub.n() - 1);
            }
            b
        },
        |b, _| bound += b,
    );
    bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Strategy;
    use crate::monitoring::is_mag_set;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn cycle_c1(n: usize) -> OrientedGraph {
        // v1 -> ... -> v_{n/2+1} <- ... <- v_n, plus v1 -> v_n
        let h = n / 2;
        let mut arcs: Vec<(usize, usize)> = (0..h).map(|i| (i, i + 1)).collect();
        arcs.extend((h + 1..n).map(|i| (i, i - 1)));
        arcs.push((0, n - 1));
        OrientedGraph::new(n, arcs).unwrap()
    }

    #[test]
    fn cycle_with_antipodal_source_sink() {
        let r = min_mag_set(&cycle_c1(6), &cfg()).unwrap();
        assert_eq!(r.size, 4);
        assert!(is_mag_set(&cycle_c1(6), &r.witness).unwrap().is_mag_set);
    }

    #[test]
    fn empty_and_single_arc() {
        let r = min_mag_set(&OrientedGraph::new(3, []).unwrap(), &cfg()).unwrap();
        assert_eq!((r.size, r.witness.clone()), (0, vec![]));
        let r = min_mag_set(&OrientedGraph::new(2, [(1, 0)]).unwrap(), &cfg()).unwrap();
        assert_eq!(r.witness, vec![0, 1]);
        assert_eq!(r.coverage, vec![(0, 1)]);
    }

    #[test]
    fn components_are_solved_separately() {
        // path 0->1->2 plus the directed triangle 3->4->5->3
        let g = OrientedGraph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        let r = min_mag_set(&g, &cfg()).unwrap();
        assert_eq!(r.size, 4);
        assert_eq!(&r.witness[..2], &[0, 2]);
    }

    #[test]
    fn strategies_agree_on_tree_orientation() {
        let g = OrientedGraph::new(6, [(0, 1), (2, 1), (1, 3), (3, 4), (5, 3)]).unwrap();
        for strategy in [Strategy::CardinalitySweep, Strategy::BranchAndBound] {
            for use_forcing in [true, false] {
                let c = SolverConfig {
                    strategy,
                    use_forcing,
                    ..cfg()
                };
                assert_eq!(min_mag_set(&g, &c).unwrap().witness, vec![0, 2, 4, 5]);
            }
        }
    }

    #[test]
    fn budget_exceeded_reports_valid_upper_bound() {
        let g = OrientedGraph::new(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        let c = SolverConfig {
            max_nodes: 3,
            strategy: Strategy::CardinalitySweep,
            use_forcing: true,
        };
        match min_mag_set(&g, &c) {
            Err(Error::BudgetExceeded {
                best, best_size, ..
            }) => {
                assert_eq!(best.len(), best_size);
                assert!(is_mag_set(&g, &best).unwrap().is_mag_set);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn greedy_examples() {
        let p = OrientedGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(greedy_mag_set(&p), vec![0, 3]);
        let c5 = OrientedGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let gset = greedy_mag_set(&c5);
        assert!(gset.len() >= 2 && is_mag_set(&c5, &gset).unwrap().is_mag_set);
        let k4 = OrientedGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(greedy_mag_set(&k4), vec![0, 1, 2, 3]);
    }

    #[test]
    fn lower_bounds() {
        // any tournament on 6 vertices
        let t =
            OrientedGraph::new(6, (0..6).flat_map(|i| (i + 1..6).map(move |j| (j, i)))).unwrap();
        assert!(mag_lower_bound(&t) >= 5);
        let c8 = OrientedGraph::new(8, (0..8).map(|i| (i, (i + 1) % 8))).unwrap();
        assert_eq!(mag_lower_bound(&c8), 2);
        // path 0-1-2 rooted at leaf 0 with two extra leaves hanging off 1 and 2
        let tree = OrientedGraph::new(6, [(0, 1), (1, 2), (1, 3), (2, 4), (2, 5)]).unwrap();
        assert!(mag_lower_bound(&tree) >= 4);
        assert_eq!(mag_lower_bound(&OrientedGraph::new(2, []).unwrap()), 0);
    }
}
