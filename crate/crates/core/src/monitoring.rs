//! The monitoring relation between vertex pairs and arcs, forced vertices,
//! the extremal characterization, and the undirected edge analogue.
//!
//! A pair `{x, y}` monitors arc `a` when `a` lies on every shortest `x -> y`
//! path or on every shortest `y -> x` path. The canonical single-query test
//! deletes `a` and checks that the distance grows. [`MonitorMatrix::new`]
//! tabulates the relation for all pairs at once with an equivalent layered
//! test: an arc lies on every shortest `x -> y` path iff it is the only arc of
//! the shortest-path DAG leaving its BFS layer.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::cover::{PairCover, SolverConfig};
use crate::digraph::{ArcIndex, Distance, EdgeIndex, OrientedGraph, UndirectedGraph, Vertex};
use crate::error::{Error, Result};

fn check_pair(n: usize, x: Vertex, y: Vertex) -> Result<()> {
    for v in [x, y] {
        if v >= n {
            return Err(Error::OutOfRange { vertex: v, n });
        }
    }
    if x == y {
        return Err(Error::EqualVertices(x));
    }
    Ok(())
}

/// Whether arc `a` lies on every shortest `x -> y` path (deletion test).
pub fn monitors_directed(g: &OrientedGraph, x: Vertex, y: Vertex, a: ArcIndex) -> Result<bool> {
    check_pair(g.n(), x, y)?;
    let d = g.distance(x, y)?;
    if !d.is_finite() {
        // still validate the arc index
        g.distance_avoiding_arc(x, y, a)?;
        return Ok(false);
    }
    Ok(g.distance_avoiding_arc(x, y, a)? > d)
}

pub fn pair_monitors(g: &OrientedGraph, x: Vertex, y: Vertex, a: ArcIndex) -> Result<bool> {
    Ok(monitors_directed(g, x, y, a)? || monitors_directed(g, y, x, a)?)
}

/// Index of the unordered pair `{x, y}` (`x != y`) among the `n(n-1)/2`
/// pairs in lexicographic order.
pub fn pair_index(n: usize, x: Vertex, y: Vertex) -> usize {
    let (x, y) = (x.min(y), x.max(y));
    x * n - x * (x + 1) / 2 + (y - x - 1)
}

/// The monitoring relation tabulated over all vertex pairs and arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorMatrix {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    arc_to_pairs: Vec<Vec<(Vertex, Vertex)>>,
    pair_to_arcs: Vec<FixedBitSet>,
}

impl MonitorMatrix {
    pub fn new(g: &OrientedGraph) -> Self {
        Self::build(g, |x, y, out| monitored_by_layers(g, x, y, out))
    }

    /// Same relation via one BFS per (pair, arc) deletion.
    pub fn by_deletion(g: &OrientedGraph) -> Self {
        Self::build(g, |x, y, out| {
            let Distance::Finite(d) = g.distance_table()[x * g.n() + y] else {
                return;
            };
            for a in 0..g.m() {
                if g.distance_avoiding_arc(x, y, a).unwrap() > Distance::Finite(d) {
                    out.insert(a);
                }
            }
        })
    }

    fn build(g: &OrientedGraph, directed: impl Fn(Vertex, Vertex, &mut FixedBitSet)) -> Self {
        let n = g.n();
        let m = g.m();
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        let mut pair_to_arcs = Vec::with_capacity(pairs.capacity());
        let mut arc_to_pairs = vec![Vec::new(); m];
        for x in 0..n {
            for y in x + 1..n {
                let mut set = FixedBitSet::with_capacity(m);
                directed(x, y, &mut set);
                directed(y, x, &mut set);
                for a in set.ones() {
                    arc_to_pairs[a].push((x, y));
                }
                pairs.push((x, y));
                pair_to_arcs.push(set);
            }
        }
        MonitorMatrix {
            n,
            pairs,
            arc_to_pairs,
            pair_to_arcs,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arc_to_pairs.len()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    /// Pairs `(x, y)`, `x < y`, monitoring arc `a`.
    pub fn pairs_monitoring(&self, a: ArcIndex) -> &[(Vertex, Vertex)] {
        &self.arc_to_pairs[a]
    }

    /// Arcs monitored by `{x, y}`.
    pub fn arcs_monitored_by(&self, x: Vertex, y: Vertex) -> &FixedBitSet {
        &self.pair_to_arcs[pair_index(self.n, x, y)]
    }

    pub fn monitors(&self, x: Vertex, y: Vertex, a: ArcIndex) -> bool {
        x != y && self.arcs_monitored_by(x, y).contains(a)
    }

    pub fn to_pair_cover(&self) -> PairCover {
        PairCover::new(self.n, self.arc_to_pairs.clone())
    }
}

/// Layered monitoring test for the ordered pair `(x, y)`: marks arcs lying on
/// every shortest `x -> y` path.
fn monitored_by_layers(g: &OrientedGraph, x: Vertex, y: Vertex, out: &mut FixedBitSet) {
    let n = g.n();
    let table = g.distance_table();
    let Distance::Finite(d) = table[x * n + y] else {
        return;
    };
    let d = d as usize;
    let mut layer_arc: Vec<Option<ArcIndex>> = vec![None; d];
    let mut layer_count = vec![0u32; d];
    for (a, &(u, v)) in g.arcs().iter().enumerate() {
        let (Distance::Finite(du), Distance::Finite(dv)) = (table[x * n + u], table[v * n + y])
        else {
            continue;
        };
        let (du, dv) = (du as usize, dv as usize);
        if du + 1 + dv == d {
            layer_count[du] += 1;
            layer_arc[du] = Some(a);
        }
    }
    for (cnt, arc) in layer_count.iter().zip(&layer_arc) {
        if *cnt == 1 {
            out.insert(arc.unwrap());
        }
    }
}

/// Result of a MAG-set check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagCheck {
    pub is_mag_set: bool,
    pub unmonitored: Vec<ArcIndex>,
}

pub fn is_mag_set(g: &OrientedGraph, set: &[Vertex]) -> Result<MagCheck> {
    is_mag_set_with(&MonitorMatrix::new(g), set)
}

pub fn is_mag_set_with(mm: &MonitorMatrix, set: &[Vertex]) -> Result<MagCheck> {
    let mut inside = vec![false; mm.n()];
    for &v in set {
        if v >= mm.n() {
            return Err(Error::OutOfRange {
                vertex: v,
                n: mm.n(),
            });
        }
        inside[v] = true;
    }
    let unmonitored: Vec<ArcIndex> = (0..mm.m())
        .filter(|&a| {
            !mm.pairs_monitoring(a)
                .iter()
                .any(|&(x, y)| inside[x] && inside[y])
        })
        .collect();
    Ok(MagCheck {
        is_mag_set: unmonitored.is_empty(),
        unmonitored,
    })
}

/// Why a vertex belongs to every MAG-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ForceReason {
    Source,
    Sink,
    Twin {
        partner: Vertex,
    },
    /// In-neighbour reaching every out-neighbour within two hops avoiding the
    /// vertex.
    CondIi {
        in_neighbor: Vertex,
    },
    /// Out-neighbour reachable from every in-neighbour within two hops
    /// avoiding the vertex.
    CondIii {
        out_neighbor: Vertex,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedReport {
    pub vertices: Vec<Vertex>,
    pub reasons: BTreeMap<Vertex, ForceReason>,
}

/// Directed path of length 1 or 2 from `u` to `w` that avoids `v`.
fn short_path_avoiding(g: &OrientedGraph, u: Vertex, w: Vertex, v: Vertex) -> bool {
    g.has_arc(u, w)
        || g.out_neighbors(u)
            .any(|z| z != v && z != w && g.has_arc(z, w))
}

/// Witness in-neighbour for the two-hop condition on `v`'s in-side.
pub fn cond_ii_witness(g: &OrientedGraph, v: Vertex) -> Option<Vertex> {
    if g.in_degree(v) == 0 || g.out_degree(v) == 0 {
        return None;
    }
    g.in_neighbors(v)
        .filter(|&u| g.out_neighbors(v).all(|w| short_path_avoiding(g, u, w, v)))
        .min()
}

/// Witness out-neighbour for the two-hop condition on `v`'s out-side.
pub fn cond_iii_witness(g: &OrientedGraph, v: Vertex) -> Option<Vertex> {
    if g.in_degree(v) == 0 || g.out_degree(v) == 0 {
        return None;
    }
    g.out_neighbors(v)
        .filter(|&w| g.in_neighbors(v).all(|u| short_path_avoiding(g, u, w, v)))
        .min()
}

fn twin_partner(g: &OrientedGraph, v: Vertex) -> Option<Vertex> {
    let mut outs: Vec<Vertex> = g.out_neighbors(v).collect();
    let mut ins: Vec<Vertex> = g.in_neighbors(v).collect();
    outs.sort_unstable();
    ins.sort_unstable();
    // a twin shares every neighbour, so it is a second-neighbour of v
    let candidates: Vec<Vertex> = match (outs.first(), ins.first()) {
        (Some(&w), _) => g.in_neighbors(w).collect(),
        (None, Some(&u)) => g.out_neighbors(u).collect(),
        (None, None) => return None,
    };
    candidates
        .into_iter()
        .filter(|&t| t != v)
        .filter(|&t| {
            let mut o: Vec<Vertex> = g.out_neighbors(t).collect();
            let mut i: Vec<Vertex> = g.in_neighbors(t).collect();
            o.sort_unstable();
            i.sort_unstable();
            o == outs && i == ins
        })
        .min()
}

/// Vertices that lie in every MAG-set: sources, sinks, twins, and vertices
/// meeting either two-hop condition. Isolated vertices are never reported.
pub fn forced_vertices(g: &OrientedGraph) -> ForcedReport {
    let mut reasons = BTreeMap::new();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            continue;
        }
        let reason = if g.in_degree(v) == 0 {
            Some(ForceReason::Source)
        } else if g.out_degree(v) == 0 {
            Some(ForceReason::Sink)
        } else if let Some(partner) = twin_partner(g, v) {
            Some(ForceReason::Twin { partner })
        } else if let Some(u) = cond_ii_witness(g, v) {
            Some(ForceReason::CondIi { in_neighbor: u })
        } else {
            cond_iii_witness(g, v).map(|w| ForceReason::CondIii { out_neighbor: w })
        };
        if let Some(r) = reason {
            reasons.insert(v, r);
        }
    }
    ForcedReport {
        vertices: reasons.keys().copied().collect(),
        reasons,
    }
}

/// Whether `v` is a source, a sink, or satisfies one of the two-hop
/// conditions.
pub fn satisfies_extremal_condition(g: &OrientedGraph, v: Vertex) -> bool {
    g.in_degree(v) == 0
        || g.out_degree(v) == 0
        || cond_ii_witness(g, v).is_some()
        || cond_iii_witness(g, v).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalCheck {
    pub extremal: bool,
    pub counterexample: Option<Vertex>,
}

/// Whether every MAG-set of the connected graph `g` is all of `V`, decided
/// vertex by vertex. A lone vertex has no arcs and hence `mag = 0`, so it is
/// not extremal.
pub fn is_extremal(g: &OrientedGraph) -> Result<ExtremalCheck> {
    if !g.is_weakly_connected() {
        return Err(Error::DisconnectedInput);
    }
    if g.n() == 1 {
        return Ok(ExtremalCheck {
            extremal: false,
            counterexample: Some(0),
        });
    }
    let bad = (0..g.n()).find(|&v| !satisfies_extremal_condition(g, v));
    Ok(ExtremalCheck {
        extremal: bad.is_none(),
        counterexample: bad,
    })
}

/// Whether edge `e` lies on every shortest `x - y` path.
pub fn edge_monitors_undirected(
    g: &UndirectedGraph,
    x: Vertex,
    y: Vertex,
    e: EdgeIndex,
) -> Result<bool> {
    check_pair(g.n(), x, y)?;
    let d = g.distance(x, y)?;
    let without = g.distance_avoiding_edge(x, y, e)?;
    Ok(d.is_finite() && without > d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MegResult {
    pub size: usize,
    pub witness: Vec<Vertex>,
    pub forced: Vec<Vertex>,
    pub optimal: bool,
}

/// Exact minimum MEG-set of a connected graph, seeded with its degree-1
/// vertices.
pub fn min_meg_set(g: &UndirectedGraph, cfg: &SolverConfig) -> Result<MegResult> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    if g.m() == 0 {
        return Ok(MegResult {
            size: 0,
            witness: vec![],
            forced: vec![],
            optimal: true,
        });
    }
    let n = g.n();
    let mut per_edge = vec![Vec::new(); g.m()];
    for x in 0..n {
        for y in x + 1..n {
            for (e, pairs) in per_edge.iter_mut().enumerate() {
                if edge_monitors_undirected(g, x, y, e)? {
                    pairs.push((x, y));
                }
            }
        }
    }
    let forced: Vec<Vertex> = if cfg.use_forcing {
        (0..n).filter(|&v| g.degree(v) == 1).collect()
    } else {
        vec![]
    };
    let sol = PairCover::new(n, per_edge).solve(&forced, cfg);
    Ok(MegResult {
        size: sol.set.len(),
        witness: sol.set,
        forced,
        optimal: sol.optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transitive(n: usize) -> OrientedGraph {
        OrientedGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn c0(n: usize) -> OrientedGraph {
        OrientedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    // C_4^1: source v1, sink v3 (0-based 0 and 2)
    fn c4_1() -> OrientedGraph {
        OrientedGraph::new(4, [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap()
    }

    #[test]
    fn directed_monitoring_examples() {
        let t = transitive(3);
        let a01 = t.arc_index(0, 1).unwrap();
        let a12 = t.arc_index(1, 2).unwrap();
        assert!(monitors_directed(&t, 0, 1, a01).unwrap());
        assert!(!monitors_directed(&t, 0, 2, a12).unwrap());
        let c = c4_1();
        assert!(!monitors_directed(&c, 0, 2, c.arc_index(0, 1).unwrap()).unwrap());
        assert_eq!(monitors_directed(&t, 1, 1, 0), Err(Error::EqualVertices(1)));
        assert!(monitors_directed(&t, 0, 7, 0).is_err());
    }

    #[test]
    fn pair_monitoring_examples() {
        let c5 = c0(5);
        assert!(pair_monitors(&c5, 0, 2, c5.arc_index(0, 1).unwrap()).unwrap());
        assert!(pair_monitors(&c5, 0, 2, c5.arc_index(2, 3).unwrap()).unwrap());
        let g = OrientedGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!pair_monitors(&g, 0, 2, g.arc_index(0, 1).unwrap()).unwrap());
    }

    #[test]
    fn matrix_examples() {
        let g = OrientedGraph::new(2, [(0, 1)]).unwrap();
        let mm = MonitorMatrix::new(&g);
        assert_eq!(mm.pairs_monitoring(0), &[(0, 1)]);
        // every pair of C_4^0 monitors every arc through one of its two
        // directions
        let c4 = c0(4);
        let mm = MonitorMatrix::new(&c4);
        for &(x, y) in mm.pairs() {
            assert_eq!(mm.arcs_monitored_by(x, y).count_ones(..), 4);
        }
        assert_eq!(mm, MonitorMatrix::by_deletion(&c4));
    }

    #[test]
    fn transitive_k4_pair_sizes() {
        // Every pair is joined by its own arc, which is the unique shortest
        // path; the reverse direction is unreachable.
        let t = transitive(4);
        let by_del = MonitorMatrix::by_deletion(&t);
        let sizes: Vec<usize> = by_del
            .pairs()
            .iter()
            .map(|&(x, y)| by_del.arcs_monitored_by(x, y).count_ones(..))
            .collect();
        assert_eq!(sizes, vec![1, 1, 1, 1, 1, 1]);
        assert_eq!(MonitorMatrix::new(&t), by_del);
    }

    #[test]
    fn mag_set_checks() {
        let c7 = c0(7);
        assert_eq!(
            is_mag_set(&c7, &[0, 3]).unwrap(),
            MagCheck {
                is_mag_set: true,
                unmonitored: vec![]
            }
        );
        let single = is_mag_set(&c7, &[2]).unwrap();
        assert_eq!(single.unmonitored, (0..7).collect::<Vec<_>>());
        let k4 = transitive(4);
        let r = is_mag_set(&k4, &[0, 2, 3]).unwrap();
        assert!(!r.is_mag_set && !r.unmonitored.is_empty());
    }

    #[test]
    fn forced_examples() {
        let p = OrientedGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let f = forced_vertices(&p);
        assert_eq!(f.vertices, vec![0, 2]);
        assert_eq!(f.reasons[&0], ForceReason::Source);
        assert_eq!(f.reasons[&2], ForceReason::Sink);

        let k22 = OrientedGraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(forced_vertices(&k22).vertices, vec![0, 1, 2, 3]);
        assert_eq!(twin_partner(&k22, 0), Some(1));
        assert_eq!(twin_partner(&k22, 2), Some(3));

        let f = forced_vertices(&transitive(4));
        assert_eq!(f.vertices, vec![0, 1, 2, 3]);
        assert_eq!(f.reasons[&1], ForceReason::CondIi { in_neighbor: 0 });

        assert!(forced_vertices(&c0(5)).vertices.is_empty());
        let iso = OrientedGraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(forced_vertices(&iso).vertices, vec![0, 1]);
    }

    #[test]
    fn twins_that_are_neither_source_nor_sink() {
        // 0 -> {1,2} -> 3: vertices 1 and 2 are twins
        let g = OrientedGraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let f = forced_vertices(&g);
        assert_eq!(f.reasons[&1], ForceReason::Twin { partner: 2 });
        assert_eq!(f.reasons[&2], ForceReason::Twin { partner: 1 });
    }

    #[test]
    fn extremal_examples() {
        assert!(is_extremal(&transitive(5)).unwrap().extremal);
        let r = is_extremal(&c0(6)).unwrap();
        assert!(!r.extremal);
        assert_eq!(r.counterexample, Some(0));
        assert!(
            is_extremal(&OrientedGraph::new(2, [(0, 1)]).unwrap())
                .unwrap()
                .extremal
        );
        assert_eq!(
            is_extremal(&OrientedGraph::new(4, [(0, 1), (2, 3)]).unwrap()),
            Err(Error::DisconnectedInput)
        );
        assert!(
            !is_extremal(&OrientedGraph::new(1, []).unwrap())
                .unwrap()
                .extremal
        );
    }

    fn ucycle(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn undirected_monitoring() {
        let p = UndirectedGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(edge_monitors_undirected(&p, 0, 2, p.edge_index(0, 1).unwrap()).unwrap());
        let c4 = ucycle(4);
        for e in 0..4 {
            assert!(!edge_monitors_undirected(&c4, 0, 2, e).unwrap());
        }
        let c5 = ucycle(5);
        let e = c5.edge_index(0, 1).unwrap();
        assert_eq!(c5.distance(0, 2).unwrap(), Distance::Finite(2));
        assert_eq!(
            c5.distance_avoiding_edge(0, 2, e).unwrap(),
            Distance::Finite(3)
        );
        assert!(edge_monitors_undirected(&c5, 0, 2, e).unwrap());
    }

    #[test]
    fn meg_of_cycles() {
        let cfg = SolverConfig::default();
        assert_eq!(min_meg_set(&ucycle(4), &cfg).unwrap().size, 4);
        assert_eq!(min_meg_set(&ucycle(5), &cfg).unwrap().size, 3);
        assert_eq!(min_meg_set(&ucycle(3), &cfg).unwrap().size, 3);
        let two = UndirectedGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(min_meg_set(&two, &cfg), Err(Error::DisconnectedInput));
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 6;
        let mut k = 0;
        for x in 0..n {
            for y in x + 1..n {
                assert_eq!(pair_index(n, x, y), k);
                assert_eq!(pair_index(n, y, x), k);
                k += 1;
            }
        }
    }
}
