//! Generators for the standard orientation families.
//!
//! Numbering: path, cycle and tournament vertices `0..n` stand for
//! `v1..vn`. For `G_j` the vertices are `x' = 0`, `x = 1`, `y = 2`,
//! `y' = 3`, then `z_i = 4 + 2(i-1)` and `z_i' = 5 + 2(i-1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::digraph::{OrientedGraph, UndirectedGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CycleClass {
    /// Directed cycle.
    C0,
    /// One source and one sink at distance `n/2`.
    C1,
    /// One source and one sink at any other distance.
    C2,
    /// At least two sources and two sinks.
    C3,
}

impl FromStr for CycleClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C0" => Ok(CycleClass::C0),
            "C1" => Ok(CycleClass::C1),
            "C2" => Ok(CycleClass::C2),
            "C3" => Ok(CycleClass::C3),
            _ => Err(Error::BadParam(format!("unknown cycle class `{s}`"))),
        }
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `v1 -> v2 -> ... -> vn`.
pub fn directed_path(n: usize) -> Result<OrientedGraph> {
    if n == 0 {
        return Err(Error::BadParam("path needs n >= 1".into()));
    }
    OrientedGraph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// An orientation of `C_n` in the requested class.
///
/// `C1` and `C2` take the sink position `d` (the source is `v1`, the sink
/// `v_{d+1}`); `C1` defaults to `d = n/2`. `C3` takes `pattern`, the sorted
/// 0-based positions where the direction turns, alternating source, sink,
/// source, ... starting with a source. Arcs run from each source turning
/// point towards its neighbouring sinks.
pub fn cycle_orientation(
    n: usize,
    class: CycleClass,
    d: Option<usize>,
    pattern: Option<&[usize]>,
) -> Result<OrientedGraph> {
    if n < 3 {
        return Err(Error::BadParam("cycle needs n >= 3".into()));
    }
    let arcs: Vec<(Vertex, Vertex)> = match class {
        CycleClass::C0 => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        CycleClass::C1 | CycleClass::C2 => {
            let d = match (class, d) {
                (CycleClass::C1, None) if n.is_multiple_of(2) => n / 2,
                (CycleClass::C1, Some(d)) if n.is_multiple_of(2) && d == n / 2 => d,
                (CycleClass::C1, _) => {
                    return Err(Error::BadParam("C1 needs n even and d = n/2".into()))
                }
                (_, Some(d)) if (1..n).contains(&d) && 2 * d != n => d,
                _ => {
                    return Err(Error::BadParam(
                        "C2 needs 1 <= d <= n-1 and d != n/2".into(),
                    ))
                }
            };
            let mut arcs: Vec<_> = (0..d).map(|i| (i, i + 1)).collect();
            arcs.extend((d + 1..n).map(|i| (i, i - 1)));
            arcs.push((0, n - 1));
            arcs
        }
        CycleClass::C3 => {
            let p = pattern.ok_or_else(|| Error::BadParam("C3 needs a pattern".into()))?;
            if p.len() < 4 || p.len() % 2 == 1 {
                return Err(Error::BadParam(
                    "C3 pattern needs an even number (>= 4) of turning points".into(),
                ));
            }
            if p.windows(2).any(|w| w[0] >= w[1]) || p[p.len() - 1] >= n {
                return Err(Error::BadParam(
                    "C3 pattern must be strictly increasing positions below n".into(),
                ));
            }
            let mut arcs = Vec::with_capacity(n);
            for k in 0..p.len() {
                let from = p[k];
                let to = p[(k + 1) % p.len()];
                let len = (to + n - from) % n;
                for s in 0..len {
                    let a = (from + s) % n;
                    let b = (from + s + 1) % n;
                    // even k: walking away from a source
                    arcs.push(if k % 2 == 0 { (a, b) } else { (b, a) });
                }
            }
            arcs
        }
    };
    OrientedGraph::new(n, arcs)
}

/// Orients every edge of a tree away from `root`.
pub fn rooted_tree_orientation(t: &UndirectedGraph, root: Vertex) -> Result<OrientedGraph> {
    if root >= t.n() {
        return Err(Error::OutOfRange {
            vertex: root,
            n: t.n(),
        });
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let mut parent = vec![usize::MAX; t.n()];
    parent[root] = root;
    let mut stack = vec![root];
    let mut arcs = Vec::with_capacity(t.m());
    while let Some(u) = stack.pop() {
        for w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                arcs.push((u, w));
                stack.push(w);
            }
        }
    }
    OrientedGraph::new(t.n(), arcs)
}

/// Arcs `(i, j)` for all `i < j`.
pub fn transitive_tournament(n: usize) -> Result<OrientedGraph> {
    if n == 0 {
        return Err(Error::BadParam("tournament needs n >= 1".into()));
    }
    OrientedGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// The transitive tournament with `v_i -> v_n` turned into `v_n -> v_i` for
/// every `i <= n - 2`.
pub fn flipped_tournament(n: usize) -> Result<OrientedGraph> {
    if n < 3 {
        return Err(Error::BadParam("flipped tournament needs n >= 3".into()));
    }
    let last = n - 1;
    let arcs = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            if j == last && i + 2 < n {
                (j, i)
            } else {
                (i, j)
            }
        });
    OrientedGraph::new(n, arcs)
}

/// The path `x' x y y'` with `j` extra vertices `z_i` adjacent to both `x`
/// and `y`, each carrying a pendant `z_i'`.
pub fn construction_gj(j: usize) -> Result<UndirectedGraph> {
    if j == 0 {
        return Err(Error::BadParam("G_j needs j >= 1".into()));
    }
    let mut edges = vec![(0, 1), (1, 2), (2, 3)];
    for i in 0..j {
        let z = 4 + 2 * i;
        edges.extend([(1, z), (2, z), (z, z + 1)]);
    }
    UndirectedGraph::new(4 + 2 * j, edges)
}

/// Role label of vertex `v` in `construction_gj`.
pub fn gj_label(v: Vertex) -> String {
    match v {
        0 => "x'".into(),
        1 => "x".into(),
        2 => "y".into(),
        3 => "y'".into(),
        _ if v.is_multiple_of(2) => format!("z{}", (v - 4) / 2 + 1),
        _ => format!("z{}'", (v - 5) / 2 + 1),
    }
}

/// Orients every edge from the `false` side to the `true` side.
pub fn bipartite_extremal_orientation(g: &UndirectedGraph, side: &[bool]) -> Result<OrientedGraph> {
    if side.len() != g.n() {
        return Err(Error::BadParam(format!(
            "bipartition has {} entries for {} vertices",
            side.len(),
            g.n()
        )));
    }
    let mut arcs = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        match (side[u], side[v]) {
            (false, true) => arcs.push((u, v)),
            (true, false) => arcs.push((v, u)),
            _ => return Err(Error::NotBipartite),
        }
    }
    OrientedGraph::new(g.n(), arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Source,
    Sink,
}

/// Makes the vertices of a shortest cycle alternate between sources and
/// sinks. With odd girth the last cycle vertex gets no role. Edges not
/// touching a role vertex go from lower to higher index.
pub fn girth_alternating_orientation(g: &UndirectedGraph) -> Result<OrientedGraph> {
    let cycle = g.find_shortest_cycle().ok_or(Error::Acyclic)?;
    let mut role = vec![None; g.n()];
    let len = cycle.len();
    for (i, &v) in cycle.iter().enumerate() {
        if len % 2 == 1 && i == len - 1 {
            break;
        }
        role[v] = Some(if i % 2 == 0 { Role::Source } else { Role::Sink });
    }
    let arcs = g.edges().iter().map(|&(u, v)| match (role[u], role[v]) {
        (Some(Role::Source), _) | (_, Some(Role::Sink)) => (u, v),
        (Some(Role::Sink), _) | (_, Some(Role::Source)) => (v, u),
        _ => (u, v),
    });
    OrientedGraph::new(g.n(), arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyKind {
    DirectedPath,
    CycleC0,
    CycleC1,
    CycleC2,
    CycleC3,
    RootedTree,
    TransitiveTournament,
    FlippedTournament,
    Gj,
    BipartiteExtremal,
    GirthAlternating,
}

/// A family member described by its parameters. Kinds that orient a given
/// graph (`RootedTree`, `BipartiteExtremal`, `GirthAlternating`) carry it in
/// `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub d: Option<usize>,
    pub j: usize,
    pub pattern: Vec<usize>,
    pub root: Vertex,
    pub base: Option<UndirectedGraph>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec {
            kind,
            n: 0,
            d: None,
            j: 0,
            pattern: Vec::new(),
            root: 0,
            base: None,
        }
    }

    fn base(&self) -> Result<&UndirectedGraph> {
        self.base
            .as_ref()
            .ok_or_else(|| Error::BadParam(format!("{:?} needs an input graph", self.kind)))
    }

    /// Builds the oriented member. `Gj` is undirected; use
    /// [`construction_gj`] for it.
    pub fn build(&self) -> Result<OrientedGraph> {
        match self.kind {
            FamilyKind::DirectedPath => directed_path(self.n),
            FamilyKind::CycleC0 => cycle_orientation(self.n, CycleClass::C0, None, None),
            FamilyKind::CycleC1 => cycle_orientation(self.n, CycleClass::C1, self.d, None),
            FamilyKind::CycleC2 => cycle_orientation(self.n, CycleClass::C2, self.d, None),
            FamilyKind::CycleC3 => {
                cycle_orientation(self.n, CycleClass::C3, None, Some(&self.pattern))
            }
            FamilyKind::RootedTree => rooted_tree_orientation(self.base()?, self.root),
            FamilyKind::TransitiveTournament => transitive_tournament(self.n),
            FamilyKind::FlippedTournament => flipped_tournament(self.n),
            FamilyKind::Gj => Err(Error::BadParam("G_j is an undirected graph".into())),
            FamilyKind::BipartiteExtremal => {
                let g = self.base()?;
                let side = g.bipartition().ok_or(Error::NotBipartite)?;
                bipartite_extremal_orientation(g, &side)
            }
            FamilyKind::GirthAlternating => girth_alternating_orientation(self.base()?),
        }
    }

    /// Known value of `mag` for the built orientation, where one exists.
    /// For `Gj` this is `mag⁻` of the undirected graph.
    pub fn closed_form_mag(&self) -> Option<usize> {
        match self.kind {
            FamilyKind::DirectedPath => Some(if self.n >= 2 { 2 } else { 0 }),
            FamilyKind::TransitiveTournament => Some(if self.n >= 2 { self.n } else { 0 }),
            FamilyKind::CycleC0 => Some(2),
            FamilyKind::CycleC1 => Some(4),
            FamilyKind::CycleC2 => Some(3),
            FamilyKind::CycleC3 => Some(self.pattern.len()),
            FamilyKind::FlippedTournament => Some(self.n - 1),
            FamilyKind::Gj => Some(self.j + 3),
            FamilyKind::RootedTree => {
                let o = self.build().ok()?;
                let (so, si) = o.sources_and_sinks();
                Some(so.len() + si.len())
            }
            FamilyKind::BipartiteExtremal => self.base.as_ref().map(|g| g.n()),
            FamilyKind::GirthAlternating => None,
        }
    }
}
