//! Orientation spectra: `mag` over all `2^m` orientations of an undirected
//! graph.
//!
//! Orientations are encoded as masks over edge indices: bit `i` clear means
//! edge `i = {u, v}` (`u < v`) becomes the arc `u -> v`, set means `v -> u`.
//! Reversing every arc preserves `mag`, so only masks with bit 0 clear are
//! solved and each result also stands for the complement mask.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cover::SolverConfig;
use crate::digraph::{OrientedGraph, UndirectedGraph, Vertex};
use crate::error::{Error, Result};
use crate::monitoring::satisfies_extremal_condition;
use crate::solver::mag;

pub const DEFAULT_MAX_EDGES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientationMask {
    pub bits: u64,
    pub width: usize,
}

impl OrientationMask {
    pub fn new(bits: u64, width: usize) -> Result<Self> {
        if width > 64 || (width < 64 && bits >> width != 0) {
            return Err(Error::BadParam(format!(
                "mask {bits:#b} does not fit in {width} bits"
            )));
        }
        Ok(OrientationMask { bits, width })
    }

    pub fn is_reversed(&self, edge: usize) -> bool {
        self.bits >> edge & 1 == 1
    }

    pub fn complement(&self) -> Self {
        let all = if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        };
        OrientationMask {
            bits: !self.bits & all,
            width: self.width,
        }
    }

    /// Edge 0 first.
    pub fn to_bitstring(&self) -> String {
        (0..self.width)
            .map(|i| if self.is_reversed(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => return Err(Error::BadParam(format!("bad orientation bitstring `{s}`"))),
            }
        }
        OrientationMask::new(bits, s.len())
    }

    /// Mask describing an existing orientation of its underlying graph.
    pub fn of(g: &OrientedGraph) -> Result<Self> {
        let bits = g.orientation_bits();
        if bits.len() > 64 {
            return Err(Error::TooManyEdges {
                m: bits.len(),
                cap: 64,
            });
        }
        let v = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        OrientationMask::new(v, bits.len())
    }
}

impl fmt::Display for OrientationMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl Serialize for OrientationMask {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

/// The orientation of `g` encoded by `mask`; arc `i` comes from edge `i`.
pub fn orient(g: &UndirectedGraph, mask: OrientationMask) -> Result<OrientedGraph> {
    if mask.width != g.m() {
        return Err(Error::WidthMismatch {
            expected: g.m(),
            got: mask.width,
        });
    }
    let arcs = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| if mask.is_reversed(i) { (v, u) } else { (u, v) });
    Ok(OrientedGraph::new(g.n(), arcs).expect("orientation of a simple graph"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumOptions {
    pub solver: SolverConfig,
    pub max_edges: usize,
    /// Stop once an orientation with `mag = n` is seen.
    pub stop_at_n: bool,
    /// Stop once an orientation with `mag = 2` is seen.
    pub stop_at_two: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            solver: SolverConfig::default(),
            max_edges: DEFAULT_MAX_EDGES,
            stop_at_n: false,
            stop_at_two: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumResult {
    pub mag_minus: usize,
    pub mag_plus: usize,
    pub spectrum: Vec<usize>,
    pub gap: usize,
    /// Smallest mask over all `2^m` orientations attaining `mag_minus`.
    pub witness_min: OrientationMask,
    pub witness_max: OrientationMask,
    /// False when an early-exit flag cut the enumeration short.
    #[serde(skip)]
    pub complete: bool,
    #[serde(skip)]
    pub orientations_solved: u64,
}

#[derive(Debug, Clone)]
struct Acc {
    min: (usize, u64),
    max: (usize, u64),
    values: BTreeSet<usize>,
    solved: u64,
}

impl Acc {
    fn empty() -> Self {
        Acc {
            min: (usize::MAX, u64::MAX),
            max: (0, u64::MAX),
            values: BTreeSet::new(),
            solved: 0,
        }
    }

    fn push(mut self, value: usize, mask: u64) -> Self {
        self.min = self.min.min((value, mask));
        if value > self.max.0 || (value == self.max.0 && mask < self.max.1) {
            self.max = (value, mask);
        }
        self.values.insert(value);
        self.solved += 1;
        self
    }

    fn merge(mut self, other: Acc) -> Self {
        self.min = self.min.min(other.min);
        if other.max.0 > self.max.0 || (other.max.0 == self.max.0 && other.max.1 < self.max.1) {
            self.max = other.max;
        }
        self.values.extend(other.values);
        self.solved += other.solved;
        self
    }
}

/// Exact spectrum of a connected graph with at most `opts.max_edges` edges.
pub fn spectrum(g: &UndirectedGraph, opts: &SpectrumOptions) -> Result<SpectrumResult> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let m = g.m();
    if m > opts.max_edges.min(63) {
        return Err(Error::TooManyEdges {
            m,
            cap: opts.max_edges.min(63),
        });
    }
    let eval = |bits: u64| -> Result<usize> {
        let o = orient(g, OrientationMask { bits, width: m })?;
        mag(&o, &opts.solver)
    };
    let all: u64 = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    // a mask and its complement share a value; report the smaller of the two
    let rep = |bits: u64| bits.min(!bits & all);
    // masks with bit 0 clear
    let half: u64 = if m == 0 { 1 } else { 1 << (m - 1) };
    let early = opts.stop_at_n || opts.stop_at_two;
    let (acc, complete) = if early {
        let mut acc = Acc::empty();
        let mut complete = true;
        for k in 0..half {
            acc = acc.push(eval(k << 1)?, rep(k << 1));
            let hit_n = !opts.stop_at_n || acc.max.0 == g.n();
            let hit_two = !opts.stop_at_two || acc.min.0 == 2;
            if hit_n && hit_two && k + 1 < half {
                complete = false;
                break;
            }
        }
        (acc, complete)
    } else {
        let acc = (0..half)
            .into_par_iter()
            .try_fold(Acc::empty, |acc, k| {
                Ok::<_, Error>(acc.push(eval(k << 1)?, rep(k << 1)))
            })
            .try_reduce(Acc::empty, |a, b| Ok(a.merge(b)))?;
        (acc, true)
    };
    Ok(SpectrumResult {
        mag_minus: acc.min.0,
        mag_plus: acc.max.0,
        gap: acc.max.0 - acc.min.0,
        spectrum: acc.values.into_iter().collect(),
        witness_min: OrientationMask {
            bits: acc.min.1,
            width: m,
        },
        witness_max: OrientationMask {
            bits: acc.max.1,
            width: m,
        },
        complete,
        orientations_solved: acc.solved,
    })
}

/// Whether some orientation of `g` has `mag = |V(g)|`.
pub fn mag_plus_at_least_n(g: &UndirectedGraph) -> Result<bool> {
    Ok(extremal_orientation(g)?.is_some())
}

/// An orientation whose only MAG-set is the whole vertex set, if one exists.
///
/// Bipartite graphs are oriented from one side to the other. Otherwise a
/// backtracking search assigns edge directions and abandons a branch as soon
/// as some vertex can no longer be a source, a sink, or meet a two-hop
/// condition under any completion. Disconnected inputs are handled component
/// by component; an isolated vertex (its `mag` is 0) makes the answer `None`.
pub fn extremal_orientation(g: &UndirectedGraph) -> Result<Option<OrientationMask>> {
    if g.m() > 64 {
        return Err(Error::TooManyEdges { m: g.m(), cap: 64 });
    }
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return Ok(None);
    }
    if let Some(side) = g.bipartition() {
        let bits = g
            .edges()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &(u, _))| acc | (u64::from(side[u]) << i));
        return Ok(Some(OrientationMask { bits, width: g.m() }));
    }
    let mut search = ExtremalSearch::new(g);
    Ok(search.run())
}

/// Reference implementation: tries every mask with bit 0 clear in increasing
/// order.
pub fn extremal_orientation_by_enumeration(
    g: &UndirectedGraph,
    max_edges: usize,
) -> Result<Option<OrientationMask>> {
    let m = g.m();
    if m > max_edges.min(63) {
        return Err(Error::TooManyEdges {
            m,
            cap: max_edges.min(63),
        });
    }
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return Ok(None);
    }
    let half: u64 = if m == 0 { 1 } else { 1 << (m - 1) };
    for k in 0..half {
        let mask = OrientationMask {
            bits: k << 1,
            width: m,
        };
        let o = orient(g, mask)?;
        if (0..o.n()).all(|v| satisfies_extremal_condition(&o, v)) {
            return Ok(Some(mask));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Arc {
    Yes,
    No,
    Maybe,
}

struct ExtremalSearch<'a> {
    g: &'a UndirectedGraph,
    /// `Some(false)`: edge points `min -> max`.
    dir: Vec<Option<bool>>,
    order: Vec<usize>,
}

impl<'a> ExtremalSearch<'a> {
    fn new(g: &'a UndirectedGraph) -> Self {
        // visit vertices breadth-first and take edges as soon as both ends
        // have been seen, so neighbourhoods complete early
        let mut pos = vec![usize::MAX; g.n()];
        let mut seq = Vec::with_capacity(g.n());
        for s in 0..g.n() {
            if pos[s] != usize::MAX {
                continue;
            }
            pos[s] = seq.len();
            seq.push(s);
            let mut i = seq.len() - 1;
            while i < seq.len() {
                let u = seq[i];
                i += 1;
                for w in g.neighbors(u) {
                    if pos[w] == usize::MAX {
                        pos[w] = seq.len();
                        seq.push(w);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..g.m()).collect();
        order.sort_by_key(|&e| {
            let (u, v) = g.edge(e);
            (pos[u].max(pos[v]), pos[u].min(pos[v]))
        });
        ExtremalSearch {
            g,
            dir: vec![None; g.m()],
            order,
        }
    }

    fn arc(&self, u: Vertex, w: Vertex) -> Arc {
        match self.g.edge_index(u, w) {
            None => Arc::No,
            Some(e) => match self.dir[e] {
                None => Arc::Maybe,
                Some(rev) => {
                    let (a, _) = self.g.edge(e);
                    if (a == u) != rev {
                        Arc::Yes
                    } else {
                        Arc::No
                    }
                }
            },
        }
    }

    fn may_reach(&self, u: Vertex, w: Vertex, avoid: Vertex) -> bool {
        self.arc(u, w) != Arc::No
            || self.g.neighbors(u).any(|z| {
                z != avoid && z != w && self.arc(u, z) != Arc::No && self.arc(z, w) != Arc::No
            })
    }

    /// Whether some completion of the current partial orientation could let
    /// `v` be a source, a sink, or meet a two-hop condition. Exact once every
    /// edge touching `v` or a neighbour of `v` is oriented.
    fn vertex_may_pass(&self, v: Vertex) -> bool {
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        let mut open = Vec::new();
        for w in self.g.neighbors(v) {
            match self.arc(w, v) {
                Arc::Yes => ins.push(w),
                Arc::No => outs.push(w),
                Arc::Maybe => open.push(w),
            }
        }
        if ins.is_empty() || outs.is_empty() {
            return true;
        }
        let cond_ii = ins
            .iter()
            .chain(&open)
            .any(|&u| outs.iter().all(|&w| self.may_reach(u, w, v)));
        cond_ii
            || outs
                .iter()
                .chain(&open)
                .any(|&w| ins.iter().all(|&u| self.may_reach(u, w, v)))
    }

    fn run(&mut self) -> Option<OrientationMask> {
        if self.g.m() == 0 {
            return Some(OrientationMask { bits: 0, width: 0 });
        }
        if self.recurse(0) {
            let bits = self
                .dir
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, d)| acc | (u64::from(d.unwrap()) << i));
            Some(OrientationMask {
                bits,
                width: self.g.m(),
            })
        } else {
            None
        }
    }

    fn recurse(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        let (a, b) = self.g.edge(e);
        // reversing everything preserves extremality, so fix edge 0
        let choices: &[bool] = if e == 0 { &[false] } else { &[false, true] };
        for &rev in choices {
            self.dir[e] = Some(rev);
            let touched = std::iter::once(a)
                .chain(std::iter::once(b))
                .chain(self.g.neighbors(a))
                .chain(self.g.neighbors(b));
            let ok = touched
                .collect::<Vec<_>>()
                .into_iter()
                .all(|v| self.vertex_may_pass(v));
            if ok && self.recurse(depth + 1) {
                return true;
            }
        }
        self.dir[e] = None;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monitoring::is_extremal;

    fn cycle(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn complete(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn orient_examples() {
        let p3 = path(3);
        let o = orient(&p3, OrientationMask::new(0b00, 2).unwrap()).unwrap();
        assert_eq!(o.arcs(), &[(0, 1), (1, 2)]);
        let o = orient(&p3, OrientationMask::new(0b11, 2).unwrap()).unwrap();
        assert_eq!(o.arcs(), &[(1, 0), (2, 1)]);
        assert_eq!(
            orient(&p3, OrientationMask::new(0, 3).unwrap()),
            Err(Error::WidthMismatch {
                expected: 2,
                got: 3
            })
        );
        let c4 = cycle(4);
        let fwd = orient(&c4, OrientationMask::new(0b0000, 4).unwrap()).unwrap();
        let bwd = orient(&c4, OrientationMask::new(0b1111, 4).unwrap()).unwrap();
        assert_eq!(fwd.reversed(), bwd);
        assert_eq!(fwd.sources_and_sinks(), (vec![0], vec![3]));
    }

    #[test]
    fn bitstrings() {
        let m = OrientationMask::from_bitstring("0110").unwrap();
        assert_eq!(m.bits, 0b0110);
        assert_eq!(m.to_bitstring(), "0110");
        assert_eq!(m.complement().to_bitstring(), "1001");
        assert!(OrientationMask::from_bitstring("012").is_err());
    }

    #[test]
    fn small_spectra() {
        let opts = SpectrumOptions::default();
        let s = spectrum(&cycle(5), &opts).unwrap();
        assert_eq!(s.spectrum, vec![2, 3, 4]);
        assert_eq!((s.mag_minus, s.mag_plus, s.gap), (2, 4, 2));
        let s = spectrum(&path(4), &opts).unwrap();
        assert_eq!((s.mag_minus, s.mag_plus), (2, 4));
        let s = spectrum(&complete(4), &opts).unwrap();
        assert_eq!((s.mag_minus, s.mag_plus), (3, 4));
        let k23 =
            UndirectedGraph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(spectrum(&k23, &opts).unwrap().mag_plus, 5);
    }

    #[test]
    fn spectrum_errors_and_early_exit() {
        let two = UndirectedGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            spectrum(&two, &SpectrumOptions::default()),
            Err(Error::DisconnectedInput)
        );
        let opts = SpectrumOptions {
            max_edges: 4,
            ..SpectrumOptions::default()
        };
        assert!(matches!(
            spectrum(&cycle(5), &opts),
            Err(Error::TooManyEdges { m: 5, cap: 4 })
        ));
        let opts = SpectrumOptions {
            stop_at_two: true,
            ..SpectrumOptions::default()
        };
        let s = spectrum(&cycle(6), &opts).unwrap();
        assert_eq!(s.mag_minus, 2);
        assert!(!s.complete);
        assert!(s.orientations_solved < 32);
    }

    #[test]
    fn extremal_orientations() {
        let star = UndirectedGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(mag_plus_at_least_n(&star).unwrap());
        assert!(!mag_plus_at_least_n(&cycle(5)).unwrap());
        assert!(mag_plus_at_least_n(&complete(4)).unwrap());
        let mask = extremal_orientation(&complete(4)).unwrap().unwrap();
        assert!(
            is_extremal(&orient(&complete(4), mask).unwrap())
                .unwrap()
                .extremal
        );
        assert!(!mag_plus_at_least_n(&UndirectedGraph::new(1, []).unwrap()).unwrap());
        for g in [cycle(3), cycle(5), cycle(7), complete(5), star] {
            assert_eq!(
                extremal_orientation(&g).unwrap().is_some(),
                extremal_orientation_by_enumeration(&g, 20)
                    .unwrap()
                    .is_some()
            );
        }
    }
}
