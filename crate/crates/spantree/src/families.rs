//! Generators for the named graph families: cycles, paths, complete and
//! complete multipartite graphs, superprisms, Ferrers-Young graphs,
//! threshold graphs, and permutation inversion graphs.
//!
//! All generators produce contiguous 0-based vertex ids.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::{BipartitionCert, Graph, VertexId};
use crate::Result;

pub fn cycle(n: u32) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("cycle needs at least 3 vertices"));
    }
    let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: u32) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("path needs at least 1 vertex"));
    }
    let edges: Vec<(u32, u32)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: u32) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs at least 1 vertex"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn complete_bipartite(a: u32, b: u32) -> Result<Graph> {
    complete_multipartite(&[a, b])
}

/// Complete multipartite graph; parts keep the given order (ids are assigned
/// part by part) and are not normalized.
pub fn complete_multipartite(sizes: &[u32]) -> Result<Graph> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::invalid("part sizes must be positive"));
    }
    let n: u32 = sizes.iter().sum();
    let mut part = Vec::with_capacity(n as usize);
    for (p, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, s as usize));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part[u as usize] != part[v as usize] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Superprism on pairs `{u_i, v_i}`, i = 0..n-1: consecutive pairs are
/// completely joined (indices cyclic), with no edge inside a pair. Vertex
/// layout: `u_i -> 2i`, `v_i -> 2i + 1`, so the pair structure is
/// recoverable from ids.
pub fn superprism(n: u32) -> Result<Graph> {
    if n < 4 {
        return Err(Error::invalid("superprism needs at least 4 pairs"));
    }
    let mut edges = Vec::with_capacity(4 * n as usize);
    for i in 0..n {
        let j = (i + 1) % n;
        for a in [2 * i, 2 * i + 1] {
            for b in [2 * j, 2 * j + 1] {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(2 * n, &edges)
}

/// Ferrers diagram: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FerrersDiagram {
    parts: Vec<u32>,
}

impl FerrersDiagram {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("diagram needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("diagram parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("diagram parts must be weakly decreasing"));
        }
        Ok(FerrersDiagram { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn rows(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn cols(&self) -> u32 {
        self.parts[0]
    }
}

/// Bipartite graph of a Ferrers diagram: row `i` is adjacent to column `j`
/// iff cell `(i, j)` is in the diagram. Rows get ids `0..k`, columns
/// `k..k+cols`. Always connected.
pub fn ferrers_young(d: &FerrersDiagram) -> (Graph, BipartitionCert) {
    let k = d.rows();
    let mut edges = Vec::new();
    for (i, &len) in d.parts().iter().enumerate() {
        for j in 0..len {
            edges.push((i as u32, k + j));
        }
    }
    let g = Graph::from_edges(k + d.cols(), &edges).unwrap();
    let part1: BTreeSet<VertexId> = (0..k).map(VertexId::new).collect();
    let part2: BTreeSet<VertexId> = (k..k + d.cols()).map(VertexId::new).collect();
    (g, BipartitionCert::new(part1, part2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdStep {
    Isolated,
    Dominating,
}

/// Build a threshold graph from its creation sequence. Vertex `k` is the
/// k-th added vertex; a dominating step connects it to everything before.
pub fn threshold_graph(creation: &[ThresholdStep]) -> Result<Graph> {
    if creation.is_empty() {
        return Err(Error::invalid("creation sequence must be nonempty"));
    }
    let mut edges = Vec::new();
    for (k, step) in creation.iter().enumerate() {
        if *step == ThresholdStep::Dominating {
            for j in 0..k {
                edges.push((j as u32, k as u32));
            }
        }
    }
    Graph::from_edges(creation.len() as u32, &edges)
}

/// Permutation in one-line notation: a bijection on 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn from_one_line(values: &[u32]) -> Result<Self> {
        let n = values.len() as u32;
        let seen: BTreeSet<u32> = values.iter().copied().collect();
        if seen.len() != values.len() || values.iter().any(|&v| v < 1 || v > n) {
            return Err(Error::invalid("not a permutation of 1..=n"));
        }
        Ok(Permutation { values: values.to_vec() })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    pub fn one_line(&self) -> &[u32] {
        &self.values
    }
}

/// Inversion graph of a permutation: vertices are positions 1..=n (vertex id
/// `i - 1`), with an edge between positions i < j iff `w(i) > w(j)`.
pub fn inversion_graph(w: &Permutation) -> Graph {
    let n = w.len();
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if w.at(i) > w.at(j) {
                edges.push((i as u32 - 1, j as u32 - 1));
            }
        }
    }
    Graph::from_edges(n as u32, &edges).unwrap()
}

/// A permutation is separable iff it avoids the patterns 2413 and 3142.
/// Brute force over all 4-subsequences; exact and cheap at desk scale.
pub fn is_separable(w: &Permutation) -> bool {
    let v = w.one_line();
    let n = v.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [v[a], v[b], v[c], v[d]];
                    if matches_pattern(&q, &[2, 4, 1, 3]) || matches_pattern(&q, &[3, 1, 4, 2]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn matches_pattern(q: &[u32; 4], pattern: &[u32; 4]) -> bool {
    for i in 0..4 {
        for j in 0..4 {
            if i != j && (q[i] < q[j]) != (pattern[i] < pattern[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_families() {
        let c4 = cycle(4).unwrap();
        assert_eq!(c4.vertex_count(), 4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v).unwrap() == 2));
        assert!(cycle(2).is_err());

        let kb = complete_bipartite(2, 3).unwrap();
        let mut degs: Vec<usize> =
            kb.vertices().map(|v| kb.degree(v).unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![2, 2, 2, 3, 3]);

        assert_eq!(
            complete_multipartite(&[1, 1, 1]).unwrap(),
            complete(3).unwrap()
        );
        assert!(complete_multipartite(&[]).is_err());
        assert!(complete_multipartite(&[2, 0]).is_err());
    }

    #[test]
    fn superprism_shape() {
        let s4 = superprism(4).unwrap();
        assert_eq!(s4.vertex_count(), 8);
        assert_eq!(s4.edge_count(), 16);
        assert!(s4.vertices().all(|v| s4.degree(v).unwrap() == 4));
        // no edge inside a pair
        assert!(!s4.has_edge(VertexId::new(0), VertexId::new(1)));

        let s5 = superprism(5).unwrap();
        assert_eq!(s5.vertex_count(), 10);
        assert_eq!(s5.edge_count(), 20);

        for n in 4..=12 {
            let s = superprism(n).unwrap();
            assert!(s.vertices().all(|v| s.degree(v).unwrap() == 4));
        }
        assert!(superprism(3).is_err());
    }

    #[test]
    fn ferrers_young_graphs() {
        let (p4, cert) = ferrers_young(&FerrersDiagram::new(vec![2, 1]).unwrap());
        cert.validate(&p4).unwrap();
        assert_eq!(p4.vertex_count(), 4);
        assert_eq!(p4.edge_count(), 3);
        let mut degs: Vec<usize> =
            p4.vertices().map(|v| p4.degree(v).unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2]); // it is a path

        let (c4, _) = ferrers_young(&FerrersDiagram::new(vec![2, 2]).unwrap());
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v).unwrap() == 2));

        let (k2, _) = ferrers_young(&FerrersDiagram::new(vec![1]).unwrap());
        assert_eq!(k2.edge_count(), 1);

        assert!(FerrersDiagram::new(vec![]).is_err());
        assert!(FerrersDiagram::new(vec![1, 2]).is_err());
        assert!(FerrersDiagram::new(vec![2, 0]).is_err());
    }

    #[test]
    fn ferrers_young_connected_bipartite() {
        for parts in [vec![3], vec![3, 3, 3], vec![4, 2, 1], vec![2, 2, 2, 1]] {
            let (g, cert) = ferrers_young(&FerrersDiagram::new(parts).unwrap());
            assert!(g.is_connected());
            cert.validate(&g).unwrap();
        }
    }

    #[test]
    fn threshold_examples() {
        use ThresholdStep::*;
        let k2 = threshold_graph(&[Isolated, Dominating]).unwrap();
        assert_eq!(k2.edge_count(), 1);

        let star = threshold_graph(&[Isolated, Isolated, Dominating]).unwrap();
        assert_eq!(star.edge_count(), 2);
        assert_eq!(star.degree(VertexId::new(2)).unwrap(), 2);

        let k3 = threshold_graph(&[Isolated, Dominating, Dominating]).unwrap();
        assert_eq!(k3, complete(3).unwrap());

        assert!(threshold_graph(&[]).is_err());
    }

    #[test]
    fn inversion_graphs() {
        let w = Permutation::from_one_line(&[2, 1]).unwrap();
        assert_eq!(inversion_graph(&w).edge_count(), 1);

        let id = Permutation::identity(4);
        assert_eq!(inversion_graph(&id).edge_count(), 0);

        let rev = Permutation::from_one_line(&[3, 2, 1]).unwrap();
        assert_eq!(inversion_graph(&rev), complete(3).unwrap());

        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
    }

    #[test]
    fn separability() {
        assert!(!is_separable(&Permutation::from_one_line(&[2, 4, 1, 3]).unwrap()));
        assert!(!is_separable(&Permutation::from_one_line(&[3, 1, 4, 2]).unwrap()));
        assert!(is_separable(&Permutation::from_one_line(&[3, 2, 1]).unwrap()));
        assert!(is_separable(&Permutation::from_one_line(&[2, 1, 4, 3]).unwrap()));
        // contains 2413 as a subsequence: 2 5 1 3 -> pattern 2413
        assert!(!is_separable(&Permutation::from_one_line(&[2, 5, 1, 3, 4]).unwrap()));
    }
}
