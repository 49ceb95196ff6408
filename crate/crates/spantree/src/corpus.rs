//! Graph corpora and seeded random samplers shared by the property sweeps,
//! the conjecture search, and the self-test suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::families::{FerrersDiagram, Permutation};
use crate::graph::Graph;
use crate::poly::Point;

/// Every connected labeled graph on exactly `n` vertices (ids `0..n`),
/// by exhaustive edge-mask enumeration. Practical for `n <= 6`.
pub fn connected_graphs_exact(n: u32) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive enumeration is exponential in n^2");
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Every connected labeled graph on `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: u32) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs_exact).collect()
}

/// Random connected graph on `n` vertices: each edge kept with probability
/// `num/den`, resampling until connected.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: u32, num: u32, den: u32) -> Graph {
    assert!(n >= 1 && num <= den && den > 0);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_range(0..den) < num {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Random connected bipartite graph: part sizes are drawn first, then each
/// cross edge is kept with probability `num/den`, resampling until
/// connected. Also returns the construction's bipartition.
pub fn random_connected_bipartite<R: Rng>(
    rng: &mut R,
    n: u32,
    num: u32,
    den: u32,
) -> (Graph, crate::graph::BipartitionCert) {
    assert!(n >= 2 && num <= den && den > 0);
    loop {
        let a = rng.gen_range(1..n);
        let b = n - a;
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                if rng.gen_range(0..den) < num {
                    edges.push((u, a + v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            let part1 = (0..a).map(crate::graph::VertexId::new).collect();
            let part2 = (a..n).map(crate::graph::VertexId::new).collect();
            return (g, crate::graph::BipartitionCert::new(part1, part2));
        }
    }
}

/// Random point with positive rational coordinates on the graph's vertices.
pub fn random_positive_point<R: Rng>(rng: &mut R, g: &Graph, max_num: i64) -> Point {
    Point::from_pairs(g.vertices().map(|v| {
        let num = rng.gen_range(1..=max_num);
        let den = rng.gen_range(1..=4i64);
        (v, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }))
}

/// Random point with nonnegative rational coordinates (zeros included).
pub fn random_nonnegative_point<R: Rng>(rng: &mut R, g: &Graph, max_num: i64) -> Point {
    Point::from_pairs(g.vertices().map(|v| {
        let num = rng.gen_range(0..=max_num);
        let den = rng.gen_range(1..=4i64);
        (v, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }))
}

/// All Ferrers diagrams whose graph has at most `max_vertices` vertices
/// (rows + columns).
pub fn ferrers_diagrams_up_to(max_vertices: u32) -> Vec<FerrersDiagram> {
    fn extend(
        parts: &mut Vec<u32>,
        cols: u32,
        max_vertices: u32,
        out: &mut Vec<FerrersDiagram>,
    ) {
        if parts.len() as u32 + cols > max_vertices {
            return; // more rows only grow the count
        }
        out.push(FerrersDiagram::new(parts.clone()).unwrap());
        let cap = *parts.last().unwrap();
        for next in 1..=cap {
            parts.push(next);
            extend(parts, cols, max_vertices, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    for first in 1..max_vertices {
        let mut parts = vec![first];
        extend(&mut parts, first, max_vertices, &mut out);
    }
    out
}

/// All separable permutations of length `n`, by brute-force filtering.
pub fn separable_permutations(n: u32) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut values: Vec<u32> = (1..=n).collect();
    permute(&mut values, 0, &mut |vals| {
        let w = Permutation::from_one_line(vals).unwrap();
        if crate::families::is_separable(&w) {
            out.push(w);
        }
    });
    out
}

fn permute(vals: &mut Vec<u32>, k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == vals.len() {
        visit(vals);
        return;
    }
    for i in k..vals.len() {
        vals.swap(k, i);
        permute(vals, k + 1, visit);
        vals.swap(k, i);
    }
}
