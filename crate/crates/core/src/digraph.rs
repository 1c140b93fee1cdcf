//! Oriented and undirected simple graphs with BFS distance queries.
//!
//! Vertices are dense integers `0..n`. Arcs (and edges) are kept in a
//! canonical order, lexicographic by `(min(u, v), max(u, v))`, so that arc
//! index `i` of an orientation lines up with edge index `i` of its underlying
//! graph. Both graph types are immutable once built.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Add;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ArcIndex = usize;
pub type EdgeIndex = usize;

/// Hop count of a shortest path, or `Unreachable`.
///
/// `Unreachable` orders after every finite value and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn value(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Unreachable,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

fn check_vertex(v: Vertex, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::OutOfRange { vertex: v, n })
    }
}

fn pair_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// A simple digraph with at most one arc per unordered vertex pair.
#[derive(Debug, Clone)]
pub struct OrientedGraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    out_adj: Vec<Vec<(Vertex, ArcIndex)>>,
    in_adj: Vec<Vec<(Vertex, ArcIndex)>>,
    dist: OnceLock<Vec<Distance>>,
}

impl PartialEq for OrientedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for OrientedGraph {}

impl OrientedGraph {
    /// Builds an oriented graph, sorting arcs into canonical order.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut arcs: Vec<(Vertex, Vertex)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        arcs.sort_by_key(|&(u, v)| (pair_key(u, v), u > v));
        for w in arcs.windows(2) {
            if pair_key(w[0].0, w[0].1) == pair_key(w[1].0, w[1].1) {
                let (a, b) = pair_key(w[0].0, w[0].1);
                return Err(Error::DuplicatePair(a, b));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, &(u, v)) in arcs.iter().enumerate() {
            out_adj[u].push((v, i));
            in_adj[v].push((u, i));
        }
        Ok(OrientedGraph {
            n,
            arcs,
            out_adj,
            in_adj,
            dist: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcIndex) -> (Vertex, Vertex) {
        self.arcs[a]
    }

    /// Index of arc `u -> v`, if present. O(log m).
    pub fn arc_index(&self, u: Vertex, v: Vertex) -> Option<ArcIndex> {
        let key = pair_key(u, v);
        self.arcs
            .binary_search_by_key(&key, |&(a, b)| pair_key(a, b))
            .ok()
            .filter(|&i| self.arcs[i] == (u, v))
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arc_index(u, v).is_some()
    }

    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out_adj[v].iter().map(|&(w, _)| w)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.in_adj[v].iter().map(|&(w, _)| w)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    fn bfs(&self, src: Vertex, forward: bool, skip: Option<ArcIndex>) -> Vec<Distance> {
        let adj = if forward { &self.out_adj } else { &self.in_adj };
        let mut dist = vec![Distance::Unreachable; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Distance::Finite(0);
        queue.push_back((src, 0u32));
        while let Some((u, d)) = queue.pop_front() {
            for &(w, a) in &adj[u] {
                if Some(a) == skip || dist[w].is_finite() {
                    continue;
                }
                dist[w] = Distance::Finite(d + 1);
                queue.push_back((w, d + 1));
            }
        }
        dist
    }

    /// Distances from `src` to every vertex.
    pub fn distances_from(&self, src: Vertex) -> Vec<Distance> {
        self.bfs(src, true, None)
    }

    /// Distances from every vertex to `dst`.
    pub fn distances_to(&self, dst: Vertex) -> Vec<Distance> {
        self.bfs(dst, false, None)
    }

    /// Row-major `n * n` table of all-pairs distances, computed once.
    pub fn distance_table(&self) -> &[Distance] {
        self.dist.get_or_init(|| {
            let mut table = Vec::with_capacity(self.n * self.n);
            for s in 0..self.n {
                table.extend(self.distances_from(s));
            }
            table
        })
    }

    pub fn distance(&self, x: Vertex, y: Vertex) -> Result<Distance> {
        check_vertex(x, self.n)?;
        check_vertex(y, self.n)?;
        Ok(self.distance_table()[x * self.n + y])
    }

    /// Shortest `x -> y` distance once arc `a` is deleted.
    pub fn distance_avoiding_arc(&self, x: Vertex, y: Vertex, a: ArcIndex) -> Result<Distance> {
        check_vertex(x, self.n)?;
        check_vertex(y, self.n)?;
        if a >= self.m() {
            return Err(Error::IndexOutOfRange {
                index: a,
                count: self.m(),
            });
        }
        Ok(self.bfs(x, true, Some(a))[y])
    }

    /// `(sources, sinks)`; isolated vertices appear in both.
    pub fn sources_and_sinks(&self) -> (Vec<Vertex>, Vec<Vertex>) {
        let sources = (0..self.n).filter(|&v| self.in_adj[v].is_empty()).collect();
        let sinks = (0..self.n)
            .filter(|&v| self.out_adj[v].is_empty())
            .collect();
        (sources, sinks)
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.underlying().components()
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph::from_sorted_unchecked(
            self.n,
            self.arcs.iter().map(|&(u, v)| pair_key(u, v)).collect(),
        )
    }

    /// Orientation of edge `i` of the underlying graph: `false` means
    /// `min -> max`.
    pub fn orientation_bits(&self) -> Vec<bool> {
        self.arcs.iter().map(|&(u, v)| u > v).collect()
    }

    /// Same graph with every arc reversed.
    pub fn reversed(&self) -> OrientedGraph {
        OrientedGraph::new(self.n, self.arcs.iter().map(|&(u, v)| (v, u)))
            .expect("reversal preserves validity")
    }

    /// Subgraph induced by `vertices` (relabelled `0..k` in the given order).
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> OrientedGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        OrientedGraph::new(vertices.len(), arcs).expect("induced subgraph of a valid graph")
    }

    /// A topological order, or `None` when a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut queue: VecDeque<Vertex> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in self.out_neighbors(u) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeIndex)>>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        for e in edges.iter_mut() {
            *e = pair_key(e.0, e.1);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePair(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unchecked(n, edges))
    }

    fn from_sorted_unchecked(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        UndirectedGraph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIndex) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<EdgeIndex> {
        self.edges.binary_search(&pair_key(u, v)).ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeIndex)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    fn bfs(&self, src: Vertex, skip: Option<EdgeIndex>) -> (Vec<Distance>, Vec<Option<Vertex>>) {
        let mut dist = vec![Distance::Unreachable; self.n];
        let mut parent = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Distance::Finite(0);
        queue.push_back((src, 0u32));
        while let Some((u, d)) = queue.pop_front() {
            for &(w, e) in &self.adj[u] {
                if Some(e) == skip || dist[w].is_finite() {
                    continue;
                }
                dist[w] = Distance::Finite(d + 1);
                parent[w] = Some(u);
                queue.push_back((w, d + 1));
            }
        }
        (dist, parent)
    }

    pub fn distances_from(&self, src: Vertex) -> Vec<Distance> {
        self.bfs(src, None).0
    }

    pub fn distance(&self, x: Vertex, y: Vertex) -> Result<Distance> {
        check_vertex(x, self.n)?;
        check_vertex(y, self.n)?;
        Ok(self.bfs(x, None).0[y])
    }

    pub fn distance_avoiding_edge(&self, x: Vertex, y: Vertex, e: EdgeIndex) -> Result<Distance> {
        check_vertex(x, self.n)?;
        check_vertex(y, self.n)?;
        if e >= self.m() {
            return Err(Error::IndexOutOfRange {
                index: e,
                count: self.m(),
            });
        }
        Ok(self.bfs(x, Some(e)).0[y])
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() == self.n - 1 && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Two-colouring with the smallest vertex of every component on side
    /// `false`, or `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// One shortest cycle, listed in cyclic order. Such a cycle is always
    /// induced.
    pub fn find_shortest_cycle(&self) -> Option<Vec<Vertex>> {
        let mut best: Option<Vec<Vertex>> = None;
        for root in 0..self.n {
            let (dist, parent) = self.bfs(root, None);
            for &(u, v) in &self.edges {
                if parent[u] == Some(v) || parent[v] == Some(u) {
                    continue;
                }
                let (Some(du), Some(dv)) = (dist[u].value(), dist[v].value()) else {
                    continue;
                };
                let len = (du + dv + 1) as usize;
                if best.as_ref().is_some_and(|b| b.len() <= len) {
                    continue;
                }
                let path_to = |mut x: Vertex| {
                    let mut p = vec![x];
                    while let Some(q) = parent[x] {
                        p.push(q);
                        x = q;
                    }
                    p.reverse();
                    p
                };
                let pu = path_to(u);
                let pv = path_to(v);
                // both paths start at root; reject if they share anything else
                if pu[1..].iter().any(|x| pv[1..].contains(x)) {
                    continue;
                }
                let mut cycle = pu;
                cycle.extend(pv[1..].iter().rev());
                best = Some(cycle);
            }
        }
        best
    }

    /// The orientation with every edge pointing `min -> max`.
    pub fn orient_low_to_high(&self) -> OrientedGraph {
        OrientedGraph::new(self.n, self.edges.iter().copied()).expect("edges are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> OrientedGraph {
        OrientedGraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn c0(n: usize) -> OrientedGraph {
        OrientedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(path3().m(), 2);
        assert_eq!(
            OrientedGraph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicatePair(0, 1))
        );
        assert_eq!(
            OrientedGraph::new(2, [(0, 1), (0, 1)]),
            Err(Error::DuplicatePair(0, 1))
        );
        assert_eq!(OrientedGraph::new(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            OrientedGraph::new(2, [(0, 2)]),
            Err(Error::OutOfRange { vertex: 2, n: 2 })
        );
        let c4 = c0(4);
        assert_eq!(c4.m(), 4);
        // canonical order is by unordered pair
        assert_eq!(c4.arcs(), &[(0, 1), (3, 0), (1, 2), (2, 3)]);
        assert_eq!(c4.arc_index(3, 0), Some(1));
        assert_eq!(c4.arc_index(0, 3), None);
    }

    #[test]
    fn distances() {
        let p = path3();
        assert_eq!(p.distance(0, 2).unwrap(), Distance::Finite(2));
        assert_eq!(p.distance(2, 0).unwrap(), Distance::Unreachable);
        assert_eq!(p.distance(1, 1).unwrap(), Distance::Finite(0));
        assert_eq!(c0(5).distance(0, 3).unwrap(), Distance::Finite(3));
        assert!(p.distance(0, 5).is_err());
        assert!(Distance::Finite(1_000_000) < Distance::Unreachable);
        assert_eq!(
            Distance::Finite(2) + Distance::Unreachable,
            Distance::Unreachable
        );
    }

    #[test]
    fn distances_avoiding_arc() {
        let p = path3();
        let a = p.arc_index(1, 2).unwrap();
        assert_eq!(
            p.distance_avoiding_arc(0, 2, a).unwrap(),
            Distance::Unreachable
        );
        let t = OrientedGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let a = t.arc_index(0, 2).unwrap();
        assert_eq!(
            t.distance_avoiding_arc(0, 2, a).unwrap(),
            Distance::Finite(2)
        );
        let c4 = c0(4);
        let a = c4.arc_index(1, 2).unwrap();
        assert_eq!(
            c4.distance_avoiding_arc(0, 2, a).unwrap(),
            Distance::Unreachable
        );
        assert!(c4.distance_avoiding_arc(0, 2, 9).is_err());
    }

    #[test]
    fn sources_sinks() {
        assert_eq!(path3().sources_and_sinks(), (vec![0], vec![2]));
        assert_eq!(c0(5).sources_and_sinks(), (vec![], vec![]));
        let star = OrientedGraph::new(5, (1..5).map(|i| (0, i))).unwrap();
        assert_eq!(star.sources_and_sinks(), (vec![0], vec![1, 2, 3, 4]));
        let iso = OrientedGraph::new(2, []).unwrap();
        assert_eq!(iso.sources_and_sinks(), (vec![0, 1], vec![0, 1]));
    }

    #[test]
    fn components_and_underlying() {
        let g = OrientedGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(c0(6).components().len(), 1);
        let g = OrientedGraph::new(5, [(0, 1)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3], vec![4]]);

        let t = OrientedGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(t.underlying().edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(t.underlying().is_complete());
        let e = OrientedGraph::new(4, []).unwrap().underlying();
        assert_eq!((e.n(), e.m()), (4, 0));
    }

    #[test]
    fn shortest_cycle() {
        let tree = UndirectedGraph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree.find_shortest_cycle(), None);
        let c5 = UndirectedGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let cyc = c5.find_shortest_cycle().unwrap();
        assert_eq!(cyc.len(), 5);
        let k4 = UndirectedGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.find_shortest_cycle().unwrap().len(), 3);
    }

    #[test]
    fn topological_and_reverse() {
        assert_eq!(path3().topological_order(), Some(vec![0, 1, 2]));
        assert_eq!(c0(3).topological_order(), None);
        assert_eq!(path3().reversed().arcs(), &[(1, 0), (2, 1)]);
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        let c4 = UndirectedGraph::new(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        assert_eq!(c4.bipartition(), Some(vec![false, true, false, true]));
        let c5 = UndirectedGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(c5.bipartition(), None);
    }
}
