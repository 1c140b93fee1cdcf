#![allow(dead_code)]

//! Brute-force oracles and random generators shared by the integration tests.
//! Nothing here calls into the library's monitoring or solver code.

use magset::{OrientedGraph, UndirectedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub const INF: usize = usize::MAX;

/// BFS over an explicit arc list, optionally ignoring one arc.
pub fn bfs(n: usize, arcs: &[(usize, usize)], src: usize, skip: Option<usize>) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in arcs.iter().enumerate() {
        if Some(i) != skip {
            adj[u].push(v);
        }
    }
    let mut d = vec![INF; n];
    d[src] = 0;
    let mut q = std::collections::VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if d[v] == INF {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

/// Number of shortest paths from `src` to every vertex.
pub fn path_counts(n: usize, arcs: &[(usize, usize)], src: usize) -> (Vec<usize>, Vec<u128>) {
    let d = bfs(n, arcs, src, None);
    let mut order: Vec<usize> = (0..n).filter(|&v| d[v] != INF).collect();
    order.sort_by_key(|&v| d[v]);
    let mut sigma = vec![0u128; n];
    sigma[src] = 1;
    for &u in &order {
        for &(a, b) in arcs {
            if a == u && d[b] == d[u] + 1 {
                sigma[b] += sigma[u];
            }
        }
    }
    (d, sigma)
}

/// Deletion test in one direction.
pub fn on_all_shortest_by_deletion(
    n: usize,
    arcs: &[(usize, usize)],
    x: usize,
    y: usize,
    a: usize,
) -> bool {
    let d = bfs(n, arcs, x, None)[y];
    d != INF && bfs(n, arcs, x, Some(a))[y] > d
}

/// Path-counting test in one direction.
pub fn on_all_shortest_by_counting(
    n: usize,
    arcs: &[(usize, usize)],
    x: usize,
    y: usize,
    a: usize,
) -> bool {
    let (dx, sx) = path_counts(n, arcs, x);
    if dx[y] == INF {
        return false;
    }
    let (u, v) = arcs[a];
    let (dv, sv) = path_counts(n, arcs, v);
    dx[u] != INF && dv[y] != INF && dx[u] + 1 + dv[y] == dx[y] && sx[u] * sv[y] == sx[y]
}

pub fn pair_monitors(n: usize, arcs: &[(usize, usize)], x: usize, y: usize, a: usize) -> bool {
    on_all_shortest_by_deletion(n, arcs, x, y, a) || on_all_shortest_by_deletion(n, arcs, y, x, a)
}

/// `table[a]` lists the pairs `x < y` monitoring arc `a`.
pub fn monitor_table(g: &OrientedGraph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let arcs = g.arcs();
    (0..arcs.len())
        .map(|a| {
            let mut ps = Vec::new();
            for x in 0..n {
                for y in x + 1..n {
                    if pair_monitors(n, arcs, x, y, a) {
                        ps.push((x, y));
                    }
                }
            }
            ps
        })
        .collect()
}

pub fn is_mag_set_brute(table: &[Vec<(usize, usize)>], set: u32) -> bool {
    table.iter().all(|ps| {
        ps.iter()
            .any(|&(x, y)| set >> x & 1 == 1 && set >> y & 1 == 1)
    })
}

/// Every minimum MAG-set as a bitmask, by exhaustive subset search.
pub fn all_minimum_mag_sets(g: &OrientedGraph) -> (usize, Vec<u32>) {
    let n = g.n();
    assert!(n <= 20);
    let table = monitor_table(g);
    for k in 0..=n {
        let sets: Vec<u32> = (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k && is_mag_set_brute(&table, *s))
            .collect();
        if !sets.is_empty() {
            return (k, sets);
        }
    }
    unreachable!("the full vertex set always works")
}

pub fn brute_mag(g: &OrientedGraph) -> usize {
    all_minimum_mag_sets(g).0
}

pub fn bits_to_vec(s: u32) -> Vec<usize> {
    (0..32).filter(|&i| s >> i & 1 == 1).collect()
}

pub fn sources_and_sinks(g: &OrientedGraph) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| g.degree(v) > 0 && (g.in_degree(v) == 0 || g.out_degree(v) == 0))
        .collect()
}

pub fn random_oriented<R: Rng>(rng: &mut R, n: usize, p: f64) -> OrientedGraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen() { (i, j) } else { (j, i) });
            }
        }
    }
    OrientedGraph::new(n, arcs).unwrap()
}

/// Random spanning tree on shuffled labels plus extra edges with
/// probability `p`, each edge oriented at random.
pub fn random_weakly_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> OrientedGraph {
    let g = random_connected(rng, n, p);
    random_orientation(rng, &g)
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> UndirectedGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (perm[i], perm[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.insert((i, j));
            }
        }
    }
    UndirectedGraph::new(n, edges).unwrap()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> UndirectedGraph {
    random_connected(rng, n, 0.0)
}

pub fn random_orientation<R: Rng>(rng: &mut R, g: &UndirectedGraph) -> OrientedGraph {
    OrientedGraph::new(
        g.n(),
        g.edges()
            .iter()
            .map(|&(u, v)| if rng.gen() { (u, v) } else { (v, u) }),
    )
    .unwrap()
}

pub fn random_tournament<R: Rng>(rng: &mut R, n: usize) -> OrientedGraph {
    random_oriented(rng, n, 1.0)
}

/// Connected bipartite graph with parts of random sizes and at most
/// `max_edges` edges.
pub fn random_connected_bipartite<R: Rng>(rng: &mut R, max_edges: usize) -> UndirectedGraph {
    loop {
        let a = rng.gen_range(1..=5);
        let b = rng.gen_range(1..=5);
        let n = a + b;
        if n - 1 > max_edges {
            continue;
        }
        // vertices 0..a on one side, a..n on the other, then shuffled
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut edges = std::collections::BTreeSet::new();
        let mut seen = vec![0usize];
        let mut rest: Vec<usize> = (1..n).collect();
        rest.shuffle(rng);
        while !rest.is_empty() {
            let pos = rest
                .iter()
                .position(|&v| seen.iter().any(|&s| (s < a) != (v < a)))
                .unwrap();
            let v = rest.remove(pos);
            let cands: Vec<usize> = seen
                .iter()
                .copied()
                .filter(|&s| (s < a) != (v < a))
                .collect();
            let s = *cands.choose(rng).unwrap();
            edges.insert((s.min(v), s.max(v)));
            seen.push(v);
        }
        let target = rng.gen_range(edges.len()..=max_edges.min(a * b));
        let mut all: Vec<(usize, usize)> =
            (0..a).flat_map(|x| (a..n).map(move |y| (x, y))).collect();
        all.shuffle(rng);
        for e in all {
            if edges.len() >= target {
                break;
            }
            edges.insert(e);
        }
        let relabelled = edges.iter().map(|&(x, y)| (perm[x], perm[y]));
        return UndirectedGraph::new(n, relabelled).unwrap();
    }
}

/// Every labelled simple graph on `n` vertices, as edge lists.
pub fn all_graphs(n: usize) -> impl Iterator<Item = UndirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let m = pairs.len();
    (0u64..1 << m).map(move |mask| {
        UndirectedGraph::new(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .unwrap()
    })
}

/// Every orientation of `g`.
pub fn all_orientations(g: &UndirectedGraph) -> impl Iterator<Item = OrientedGraph> + '_ {
    let m = g.m();
    (0u64..1 << m).map(move |mask| {
        OrientedGraph::new(
            g.n(),
            g.edges().iter().enumerate().map(
                |(i, &(u, v))| {
                    if mask >> i & 1 == 1 {
                        (v, u)
                    } else {
                        (u, v)
                    }
                },
            ),
        )
        .unwrap()
    })
}
