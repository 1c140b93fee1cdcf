//! Hardness gadgets: monotone NAE-3SAT to extremal orientability, and vertex
//! cover to minimum MAG-set, each with a brute-force oracle for the source
//! problem.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cover::SolverConfig;
use crate::digraph::{OrientedGraph, UndirectedGraph, Vertex};
use crate::error::{Error, Result};
use crate::io::Graph;
use crate::monitoring::MonitorMatrix;
use crate::solver::min_mag_set;
use crate::spectrum::{extremal_orientation, OrientationMask};

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Monotone NAE-3SAT: every clause is three distinct positive variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nae3SatInstance {
    pub num_vars: usize,
    pub clauses: Vec<[usize; 3]>,
}

impl Nae3SatInstance {
    /// Variables are 0-based. Every variable must occur in some clause,
    /// since an unused variable becomes an isolated vertex of the gadget.
    pub fn new(num_vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::InvalidInstance("no clauses".into()));
        }
        let mut used = vec![false; num_vars];
        for (j, c) in clauses.iter().enumerate() {
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(Error::InvalidInstance(format!(
                    "clause {} repeats a variable",
                    j + 1
                )));
            }
            for &x in c {
                if x >= num_vars {
                    return Err(Error::InvalidInstance(format!(
                        "clause {} uses variable {} of {num_vars}",
                        j + 1,
                        x + 1
                    )));
                }
                used[x] = true;
            }
        }
        if let Some(x) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidInstance(format!(
                "variable {} occurs in no clause",
                x + 1
            )));
        }
        Ok(Nae3SatInstance { num_vars, clauses })
    }

    /// Parses `p nae3 <n> <m>` followed by `m` lines of three 1-based
    /// variable ids ending in `0`. Lines starting with `c` or `#` are
    /// comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let err = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if toks.len() != 4 || toks[0] != "p" || toks[1] != "nae3" {
                        return Err(err(line_no, "expected `p nae3 <n> <m>`"));
                    }
                    let n = toks[2]
                        .parse()
                        .map_err(|_| err(line_no, "bad variable count"))?;
                    let m = toks[3]
                        .parse()
                        .map_err(|_| err(line_no, "bad clause count"))?;
                    header = Some((n, m, line_no));
                }
                Some((n, _, _)) => {
                    if toks.len() != 4 || toks[3] != "0" {
                        return Err(err(line_no, "expected three variable ids and a trailing 0"));
                    }
                    let mut c = [0usize; 3];
                    for k in 0..3 {
                        let id: usize = toks[k]
                            .parse()
                            .map_err(|_| err(line_no, "variable ids must be positive integers"))?;
                        if id == 0 || id > n {
                            return Err(err(line_no, "variable id out of range"));
                        }
                        c[k] = id - 1;
                    }
                    clauses.push(c);
                }
            }
        }
        let (n, m, hline) = header.ok_or_else(|| err(1, "missing `p nae3` header"))?;
        if clauses.len() != m {
            return Err(err(
                hline,
                &format!("header announces {m} clauses, found {}", clauses.len()),
            ));
        }
        Nae3SatInstance::new(n, clauses).map_err(|e| err(hline, &e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("p nae3 {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(s, "{} {} {} 0", c[0] + 1, c[1] + 1, c[2] + 1);
        }
        s
    }

    pub fn is_nae_satisfied(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            let t = c.iter().filter(|&&x| assignment[x]).count();
            t == 1 || t == 2
        })
    }
}

/// A VertexCover question on a connected graph with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCoverInstance {
    pub graph: UndirectedGraph,
    pub k: usize,
}

impl VertexCoverInstance {
    pub fn new(graph: UndirectedGraph, k: usize) -> Result<Self> {
        if graph.m() == 0 {
            return Err(Error::InvalidInstance("graph has no edges".into()));
        }
        if k > graph.n() {
            return Err(Error::InvalidInstance(format!(
                "k = {k} exceeds n = {}",
                graph.n()
            )));
        }
        if !graph.is_connected() {
            return Err(Error::DisconnectedInput);
        }
        Ok(VertexCoverInstance { graph, k })
    }
}

/// A gadget graph with a role label per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub graph: Graph,
    pub labels: Vec<String>,
    /// Vertices every MAG-set must contain (vertex-cover gadget only).
    pub role_set: Vec<Vertex>,
    /// `k + 2n + 2m` for the vertex-cover gadget.
    pub target: Option<usize>,
}

impl ReductionArtifact {
    pub fn undirected(&self) -> Option<&UndirectedGraph> {
        match &self.graph {
            Graph::Undirected(g) => Some(g),
            Graph::Directed(_) => None,
        }
    }

    pub fn directed(&self) -> Option<&OrientedGraph> {
        match &self.graph {
            Graph::Directed(g) => Some(g),
            Graph::Undirected(_) => None,
        }
    }

    /// Edge list followed by one `# role <v> <label>` line per vertex.
    pub fn to_edge_list(&self) -> String {
        let mut s = self.graph.to_edge_list();
        for (v, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "# role {v} {l}");
        }
        s
    }

    pub fn vertices_labelled(&self, prefix: char) -> Vec<Vertex> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.starts_with(prefix))
            .map(|(v, _)| v)
            .collect()
    }
}

/// Literal vertices `x_1..x_n` come first, then the clause triangles
/// `c_{1,1}, c_{1,2}, c_{1,3}, c_{2,1}, ...`. The `k`-th triangle vertex of
/// a clause is joined to the clause's `k`-th variable.
pub fn nae3sat_to_graph(phi: &Nae3SatInstance) -> ReductionArtifact {
    let n = phi.num_vars;
    let m = phi.clauses.len();
    let mut edges = Vec::with_capacity(6 * m);
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    for (j, c) in phi.clauses.iter().enumerate() {
        let base = n + 3 * j;
        edges.extend([(base, base + 1), (base, base + 2), (base + 1, base + 2)]);
        for (k, &x) in c.iter().enumerate() {
            edges.push((x, base + k));
            labels.push(format!("c{},{}", j + 1, k + 1));
        }
    }
    let g = UndirectedGraph::new(n + 3 * m, edges).expect("gadget is simple");
    ReductionArtifact {
        graph: Graph::Undirected(g),
        labels,
        role_set: Vec::new(),
        target: None,
    }
}

/// Exhaustive NAE check; returns a satisfying assignment if one exists.
pub fn brute_nae3sat_witness(phi: &Nae3SatInstance) -> Result<Option<Vec<bool>>> {
    let n = phi.num_vars;
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!(
            "{n} variables exceed the brute-force limit {BRUTE_FORCE_LIMIT}"
        )));
    }
    let clause_masks: Vec<u32> = phi
        .clauses
        .iter()
        .map(|c| c.iter().fold(0u32, |acc, &x| acc | 1 << x))
        .collect();
    // complementing an assignment preserves NAE, so fix variable 0 to false
    let found = (0u32..1 << n.saturating_sub(1)).map(|b| b << 1).find(|&a| {
        clause_masks.iter().all(|&cm| {
            let t = a & cm;
            t != 0 && t != cm
        })
    });
    Ok(found.map(|a| (0..n).map(|i| a >> i & 1 == 1).collect()))
}

pub fn brute_nae3sat(phi: &Nae3SatInstance) -> Result<bool> {
    Ok(brute_nae3sat_witness(phi)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaeVerification {
    pub satisfiable: bool,
    pub extremal_orientation: Option<OrientationMask>,
    pub agree: bool,
}

/// Compares NAE satisfiability with the existence of an orientation of the
/// gadget whose `mag` equals its order.
pub fn verify_nae_reduction_report(phi: &Nae3SatInstance) -> Result<NaeVerification> {
    let art = nae3sat_to_graph(phi);
    let g = art.undirected().expect("undirected gadget");
    let (sat, orientation) = rayon::join(|| brute_nae3sat(phi), || extremal_orientation(g));
    let sat = sat?;
    let orientation = orientation?;
    Ok(NaeVerification {
        satisfiable: sat,
        agree: sat == orientation.is_some(),
        extremal_orientation: orientation,
    })
}

pub fn verify_nae_reduction(phi: &Nae3SatInstance) -> Result<bool> {
    Ok(verify_nae_reduction_report(phi)?.agree)
}

/// Reads an assignment off an orientation of the NAE gadget: a variable is
/// true when its literal vertex is a sink.
pub fn assignment_from_orientation(phi: &Nae3SatInstance, o: &OrientedGraph) -> Vec<bool> {
    (0..phi.num_vars).map(|x| o.out_degree(x) == 0).collect()
}

/// Whether `v` lies on a cycle of length 3 or 4.
pub fn on_short_cycle(g: &UndirectedGraph, v: Vertex) -> bool {
    let nb: Vec<Vertex> = g.neighbors(v).collect();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if g.has_edge(a, b) || g.neighbors(a).any(|w| w != v && g.has_edge(w, b)) {
                return true;
            }
        }
    }
    false
}

/// Vertex blocks in order `v` (n), `e` (m), `f` (m), `g` (m), `a` (n),
/// `b` (n), `c` (n).
#[derive(Debug, Clone, Copy)]
pub struct VcLayout {
    pub n: usize,
    pub m: usize,
}

impl VcLayout {
    pub fn v(&self, i: usize) -> Vertex {
        i
    }
    pub fn e(&self, j: usize) -> Vertex {
        self.n + j
    }
    pub fn f(&self, j: usize) -> Vertex {
        self.n + self.m + j
    }
    pub fn g(&self, j: usize) -> Vertex {
        self.n + 2 * self.m + j
    }
    pub fn a(&self, i: usize) -> Vertex {
        self.n + 3 * self.m + i
    }
    pub fn b(&self, i: usize) -> Vertex {
        2 * self.n + 3 * self.m + i
    }
    pub fn c(&self, i: usize) -> Vertex {
        3 * self.n + 3 * self.m + i
    }
    pub fn order(&self) -> usize {
        4 * self.n + 3 * self.m
    }
}

/// Oriented gadget whose minimum MAG-sets have size at most
/// `k + 2n + 2m` exactly when the input has a vertex cover of size `k`.
pub fn vc_to_mag_instance(inst: &VertexCoverInstance) -> ReductionArtifact {
    let g = &inst.graph;
    let lay = VcLayout { n: g.n(), m: g.m() };
    let mut arcs = Vec::with_capacity(6 * lay.m + 3 * lay.n);
    for (j, &(x, y)) in g.edges().iter().enumerate() {
        arcs.extend([
            (lay.v(x), lay.e(j)),
            (lay.v(y), lay.e(j)),
            (lay.e(j), lay.f(j)),
            (lay.e(j), lay.g(j)),
            (lay.a(x), lay.g(j)),
            (lay.a(y), lay.g(j)),
        ]);
    }
    for i in 0..lay.n {
        arcs.extend([
            (lay.a(i), lay.c(i)),
            (lay.c(i), lay.b(i)),
            (lay.c(i), lay.v(i)),
        ]);
    }
    let h = OrientedGraph::new(lay.order(), arcs).expect("gadget is simple");
    let mut labels = Vec::with_capacity(lay.order());
    for (prefix, count) in [
        ('v', lay.n),
        ('e', lay.m),
        ('f', lay.m),
        ('g', lay.m),
        ('a', lay.n),
        ('b', lay.n),
        ('c', lay.n),
    ] {
        labels.extend((1..=count).map(|i| format!("{prefix}{i}")));
    }
    let mut role_set: Vec<Vertex> = (0..lay.m)
        .flat_map(|j| [lay.f(j), lay.g(j)])
        .chain((0..lay.n).flat_map(|i| [lay.a(i), lay.b(i)]))
        .collect();
    role_set.sort_unstable();
    ReductionArtifact {
        graph: Graph::Directed(h),
        labels,
        role_set,
        target: Some(inst.k + 2 * lay.n + 2 * lay.m),
    }
}

/// A minimum vertex cover if one of size at most `k` exists.
pub fn brute_vertex_cover(inst: &VertexCoverInstance) -> Result<Option<Vec<Vertex>>> {
    let g = &inst.graph;
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceed the brute-force limit {BRUTE_FORCE_LIMIT}"
        )));
    }
    let best = (0u32..1 << n)
        .filter(|&s| (s.count_ones() as usize) <= inst.k)
        .filter(|&s| {
            g.edges()
                .iter()
                .all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)
        })
        .min_by_key(|&s| (s.count_ones(), s));
    Ok(best.map(|s| (0..n).filter(|&v| s >> v & 1 == 1).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VcVerification {
    pub cover: Option<Vec<Vertex>>,
    pub mag: usize,
    pub target: usize,
    pub mag_witness: Vec<Vertex>,
    pub agree: bool,
}

/// Compares the vertex-cover oracle with the exact MAG solver on the gadget.
pub fn verify_vc_reduction_report(
    inst: &VertexCoverInstance,
    cfg: &SolverConfig,
) -> Result<VcVerification> {
    let art = vc_to_mag_instance(inst);
    let h = art.directed().expect("directed gadget");
    let target = art.target.expect("target size");
    let (cover, sol) = rayon::join(|| brute_vertex_cover(inst), || min_mag_set(h, cfg));
    let cover = cover?;
    let sol = sol?;
    Ok(VcVerification {
        agree: cover.is_some() == (sol.size <= target),
        cover,
        mag: sol.size,
        target,
        mag_witness: sol.witness,
    })
}

pub fn verify_vc_reduction(inst: &VertexCoverInstance, cfg: &SolverConfig) -> Result<bool> {
    Ok(verify_vc_reduction_report(inst, cfg)?.agree)
}

/// Turns a MAG-set of the vertex-cover gadget into a vertex cover of the
/// input with at most `|mag_set| - 2n - 2m` vertices.
///
/// Arc `e_j -> g_j` is monitored only by pairs `{w, g_j}` with `w` one of
/// `e_j`, `v_i` or `c_i` for an endpoint `i` of edge `j`; each such `w` is
/// mapped to an endpoint.
pub fn extract_vertex_cover(inst: &VertexCoverInstance, mag_set: &[Vertex]) -> Result<Vec<Vertex>> {
    let g = &inst.graph;
    let lay = VcLayout { n: g.n(), m: g.m() };
    let art = vc_to_mag_instance(inst);
    let h = art.directed().expect("directed gadget");
    let mm = MonitorMatrix::new(h);
    let mut inside = vec![false; h.n()];
    for &v in mag_set {
        if v >= h.n() {
            return Err(Error::OutOfRange {
                vertex: v,
                n: h.n(),
            });
        }
        inside[v] = true;
    }
    let mut cover = Vec::new();
    for (j, &(x, _)) in g.edges().iter().enumerate() {
        let arc = h.arc_index(lay.e(j), lay.g(j)).expect("gadget arc");
        let w = mm
            .pairs_monitoring(arc)
            .iter()
            .filter(|&&(p, q)| inside[p] && inside[q])
            .map(|&(p, q)| if p == lay.g(j) { q } else { p })
            .next()
            .ok_or_else(|| {
                Error::InvalidInstance(format!("set does not monitor arc e{} -> g{}", j + 1, j + 1))
            })?;
        let endpoint = if w == lay.e(j) {
            x
        } else if w < lay.n {
            w
        } else if (lay.c(0)..lay.c(0) + lay.n).contains(&w) {
            w - lay.c(0)
        } else {
            return Err(Error::InvalidInstance(format!(
                "unexpected monitor {} for arc e{} -> g{}",
                art.labels[w],
                j + 1,
                j + 1
            )));
        };
        cover.push(endpoint);
    }
    cover.sort_unstable();
    cover.dedup();
    Ok(cover)
}
