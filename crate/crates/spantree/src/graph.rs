//! Immutable labeled graphs and the surgery operations (pendant, twins,
//! cone, blow-up, composition) the enumerator theory is stated through.
//!
//! Vertex ids are stable: surgery mints fresh ids and never reuses an id
//! within one derivation history, so enumerator variables stay aligned with
//! the vertices they came from across any sequence of operations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Opaque stable vertex label, unique within a graph.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(id: u32) -> Self {
        VertexId(id)
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite simple undirected graph: no loops, no parallel edges.
///
/// Values are immutable; every surgery operation returns a new graph.
/// Equality compares vertex sets and adjacency only, not derivation history.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    next_id: u32,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// The empty graph (no vertices).
    pub fn empty() -> Self {
        Graph { adj: BTreeMap::new(), next_id: 0 }
    }

    /// A single vertex with id 0.
    pub fn single() -> Self {
        Graph::single_with_id(VertexId(0))
    }

    /// A single vertex with a chosen id (certificate replay starts here).
    pub fn single_with_id(v: VertexId) -> Self {
        let mut adj = BTreeMap::new();
        adj.insert(v, BTreeSet::new());
        Graph { adj, next_id: v.0 + 1 }
    }

    /// Graph on vertices `0..n` with the given edges.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            (0..n).map(|i| (VertexId(i), BTreeSet::new())).collect();
        let mut g = Graph { adj: BTreeMap::new(), next_id: n };
        std::mem::swap(&mut g.adj, &mut adj);
        for &(u, v) in edges {
            g.insert_edge_checked(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Graph with an explicit (possibly non-contiguous) vertex id set.
    pub fn from_vertices_and_edges(
        vertices: &[u32],
        edges: &[(u32, u32)],
    ) -> Result<Self> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for &v in vertices {
            if adj.insert(VertexId(v), BTreeSet::new()).is_some() {
                return Err(Error::invalid(format!("duplicate vertex id {v}")));
            }
        }
        let next_id = vertices.iter().max().map_or(0, |m| m + 1);
        let mut g = Graph { adj, next_id };
        for &(u, v) in edges {
            g.insert_edge_checked(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    fn insert_edge_checked(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        if !self.adj.contains_key(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.adj.contains_key(&v) {
            return Err(Error::UnknownVertex(v));
        }
        if !self.adj.get_mut(&u).unwrap().insert(v) {
            return Err(Error::invalid(format!("duplicate edge {u} {v}")));
        }
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|ns| ns.len()).sum::<usize>() / 2
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, ns) in &self.adj {
            for &v in ns.range(u..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    /// Open neighborhood `N(v)`.
    pub fn neighborhood(&self, v: VertexId) -> Result<&BTreeSet<VertexId>> {
        self.adj.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.neighborhood(v)?.len())
    }

    /// Next id that would be minted; ids below this are reserved by the
    /// derivation history even if the vertices were deleted.
    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    // ----- surgery -----

    /// Add a fresh degree-1 vertex adjacent only to `attach`.
    pub fn add_pendant(&self, attach: VertexId) -> Result<(Graph, VertexId)> {
        let id = VertexId(self.next_id);
        let g = self.add_pendant_as(attach, id)?;
        Ok((g, id))
    }

    /// Pendant addition with a caller-chosen fresh id (certificate replay).
    pub fn add_pendant_as(&self, attach: VertexId, new_id: VertexId) -> Result<Graph> {
        if !self.contains(attach) {
            return Err(Error::UnknownVertex(attach));
        }
        if self.contains(new_id) {
            return Err(Error::invalid(format!("vertex id {new_id} already in use")));
        }
        let mut g = self.clone();
        g.adj.insert(new_id, BTreeSet::from([attach]));
        g.adj.get_mut(&attach).unwrap().insert(new_id);
        g.next_id = g.next_id.max(new_id.0 + 1);
        Ok(g)
    }

    /// Duplicate `v`: the new vertex gets `N(v)` as its neighborhood, plus
    /// the edge `v v'` when `with_edge` is set (true twin vs false twin).
    pub fn duplicate(&self, v: VertexId, with_edge: bool) -> Result<(Graph, VertexId)> {
        let id = VertexId(self.next_id);
        let g = self.duplicate_as(v, with_edge, id)?;
        Ok((g, id))
    }

    /// Duplication with a caller-chosen fresh id (certificate replay).
    pub fn duplicate_as(
        &self,
        v: VertexId,
        with_edge: bool,
        new_id: VertexId,
    ) -> Result<Graph> {
        let neighbors = self.neighborhood(v)?.clone();
        if self.contains(new_id) {
            return Err(Error::invalid(format!("vertex id {new_id} already in use")));
        }
        let mut g = self.clone();
        g.adj.insert(new_id, neighbors.clone());
        for u in &neighbors {
            g.adj.get_mut(u).unwrap().insert(new_id);
        }
        if with_edge {
            g.adj.get_mut(&v).unwrap().insert(new_id);
            g.adj.get_mut(&new_id).unwrap().insert(v);
        }
        g.next_id = g.next_id.max(new_id.0 + 1);
        Ok(g)
    }

    /// Extension: add an apex adjacent to every existing vertex.
    pub fn cone(&self) -> (Graph, VertexId) {
        let apex = VertexId(self.next_id);
        let mut g = self.clone();
        let all: BTreeSet<VertexId> = g.adj.keys().copied().collect();
        for v in &all {
            g.adj.get_mut(v).unwrap().insert(apex);
        }
        g.adj.insert(apex, all);
        g.next_id += 1;
        (g, apex)
    }

    /// Two-graph composition: delete the marked vertices from the disjoint
    /// union and join `N(v1)` to `N(v2)` completely. The second operand's
    /// ids are shifted past this graph's id range; the shift map (defined on
    /// all of `other`'s vertices, including `v2`) is returned.
    pub fn compose(
        &self,
        v1: VertexId,
        other: &Graph,
        v2: VertexId,
    ) -> Result<(Graph, BTreeMap<VertexId, VertexId>)> {
        let n1 = self.neighborhood(v1)?.clone();
        let n2 = other.neighborhood(v2)?.clone();
        let offset = self.next_id;
        let relabel: BTreeMap<VertexId, VertexId> = other
            .vertices()
            .map(|w| (w, VertexId(offset + w.0)))
            .collect();

        let mut g = self.remove_vertex(v1)?;
        for (w, ns) in &other.adj {
            if *w == v2 {
                continue;
            }
            let mapped: BTreeSet<VertexId> = ns
                .iter()
                .filter(|u| **u != v2)
                .map(|u| relabel[u])
                .collect();
            g.adj.insert(relabel[w], mapped);
        }
        g.next_id = offset + other.next_id;
        for a in &n1 {
            for b in &n2 {
                let bb = relabel[b];
                g.adj.get_mut(a).unwrap().insert(bb);
                g.adj.get_mut(&bb).unwrap().insert(*a);
            }
        }
        Ok((g, relabel))
    }

    /// Replace each vertex `v` by `z[v]` pairwise non-adjacent copies, with
    /// copies of adjacent vertices completely joined. Returns the new graph
    /// and the map from new vertices back to the originals. The original id
    /// is kept as the first copy of each vertex.
    pub fn blow_up(
        &self,
        z: &BTreeMap<VertexId, u32>,
    ) -> Result<(Graph, BTreeMap<VertexId, VertexId>)> {
        for v in self.vertices() {
            match z.get(&v) {
                None => {
                    return Err(Error::invalid(format!("no multiplicity for vertex {v}")))
                }
                Some(0) => {
                    return Err(Error::invalid(format!(
                        "multiplicity of vertex {v} must be positive"
                    )))
                }
                Some(_) => {}
            }
        }
        let mut g = self.clone();
        let mut origin: BTreeMap<VertexId, VertexId> =
            self.vertices().map(|v| (v, v)).collect();
        for v in self.vertex_set() {
            for _ in 1..z[&v] {
                let (next, copy) = g.duplicate(v, false)?;
                g = next;
                origin.insert(copy, v);
            }
        }
        Ok((g, origin))
    }

    /// Graph with `v` and its incident edges removed. Ids are not renumbered.
    pub fn remove_vertex(&self, v: VertexId) -> Result<Graph> {
        let neighbors = self.neighborhood(v)?.clone();
        let mut g = self.clone();
        g.adj.remove(&v);
        for u in &neighbors {
            g.adj.get_mut(u).unwrap().remove(&v);
        }
        Ok(g)
    }

    /// Induced subgraph on `keep`, ids preserved.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let adj = keep
            .iter()
            .filter_map(|v| self.adj.get(v).map(|ns| (*v, ns & keep)))
            .collect();
        Graph { adj, next_id: self.next_id }
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let all = self.vertex_set();
        let adj = all
            .iter()
            .map(|&v| {
                let mut others = all.clone();
                others.remove(&v);
                (v, &others - &self.adj[&v])
            })
            .collect();
        Graph { adj, next_id: self.next_id }
    }

    // ----- connectivity and distances -----

    pub fn is_connected(&self) -> bool {
        match self.adj.keys().next() {
            None => false,
            Some(&start) => self.bfs_reach(start).len() == self.vertex_count(),
        }
    }

    fn bfs_reach(&self, start: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[&v] {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut remaining = self.vertex_set();
        let mut out = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let comp = self.bfs_reach(start);
            remaining = &remaining - &comp;
            out.push(comp);
        }
        out
    }

    /// BFS distances from `v` to every reachable vertex.
    pub fn distances_from(&self, v: VertexId) -> Result<BTreeMap<VertexId, u32>> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut dist = BTreeMap::from([(v, 0)]);
        let mut queue = VecDeque::from([v]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for &u in &self.adj[&w] {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(u) {
                    e.insert(d + 1);
                    queue.push_back(u);
                }
            }
        }
        Ok(dist)
    }

    /// Two-color the graph if it is bipartite. Works per component.
    pub fn bipartition(&self) -> Option<BipartitionCert> {
        let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
        for comp in self.components() {
            let start = *comp.iter().next().unwrap();
            color.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[&v];
                for &u in &self.adj[&v] {
                    match color.get(&u) {
                        None => {
                            color.insert(u, !cv);
                            queue.push_back(u);
                        }
                        Some(&cu) if cu == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let part1 = color.iter().filter(|(_, &c)| !c).map(|(&v, _)| v).collect();
        let part2 = color.iter().filter(|(_, &c)| c).map(|(&v, _)| v).collect();
        Some(BipartitionCert { part1, part2 })
    }

    // ----- serialization -----

    /// Canonical text format: first line `n m`, then `m` lines `u v` with
    /// 0-based indices. Vertices are renumbered positionally (sorted by id),
    /// so non-contiguous ids are not preserved; use the structured format
    /// when they matter.
    pub fn to_text(&self) -> String {
        let ids: Vec<VertexId> = self.vertices().collect();
        let pos: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut s = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", pos[&u], pos[&v]));
        }
        s
    }

    /// Parse the canonical text format. Blank lines and `#` comments are
    /// ignored.
    pub fn parse_text(input: &str) -> Result<Graph> {
        let mut lines = input
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::invalid("empty graph input"))?;
        let mut it = header.split_whitespace();
        let n: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::invalid("bad header: expected `n m`"))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::invalid("bad header: expected `n m`"))?;
        if it.next().is_some() {
            return Err(Error::invalid("bad header: expected `n m`"));
        }
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::invalid(format!("bad edge line `{line}`")))?;
            let v: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::invalid(format!("bad edge line `{line}`")))?;
            if it.next().is_some() {
                return Err(Error::invalid(format!("bad edge line `{line}`")));
            }
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge {u} {v} out of range for {n} vertices"
                )));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::invalid(format!(
                "header announced {m} edges, found {}",
                edges.len()
            )));
        }
        Graph::from_edges(n, &edges)
    }

    /// Structured form preserving explicit vertex ids.
    pub fn to_structured(&self) -> GraphData {
        GraphData {
            vertices: self.vertices().map(|v| v.0).collect(),
            edges: self.edges().iter().map(|&(u, v)| (u.0, v.0)).collect(),
        }
    }

    pub fn from_structured(data: &GraphData) -> Result<Graph> {
        Graph::from_vertices_and_edges(&data.vertices, &data.edges)
    }

    /// Stable content hash (FNV-1a over sorted vertices and edges).
    pub fn content_hash(&self) -> u64 {
        const OFFSET: u64 = 0xcbf29ce484222325;
        const PRIME: u64 = 0x100000001b3;
        let mut h = OFFSET;
        let mut eat = |x: u32| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        for v in self.vertices() {
            eat(v.0);
        }
        eat(u32::MAX);
        for (u, v) in self.edges() {
            eat(u.0);
            eat(v.0);
        }
        h
    }
}

/// Structured graph serialization with explicit vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

/// Certified bipartition: disjoint parts covering all vertices with no
/// internal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionCert {
    pub part1: BTreeSet<VertexId>,
    pub part2: BTreeSet<VertexId>,
}

impl BipartitionCert {
    pub fn new(part1: BTreeSet<VertexId>, part2: BTreeSet<VertexId>) -> Self {
        BipartitionCert { part1, part2 }
    }

    /// Check the certificate against a graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if !self.part1.is_disjoint(&self.part2) {
            return Err(Error::invalid("bipartition parts overlap"));
        }
        let union: BTreeSet<VertexId> = &self.part1 | &self.part2;
        if union != g.vertex_set() {
            return Err(Error::invalid("bipartition does not cover the vertex set"));
        }
        for (u, v) in g.edges() {
            if self.part1.contains(&u) == self.part1.contains(&v) {
                return Err(Error::invalid(format!("edge {u} {v} inside one part")));
            }
        }
        Ok(())
    }
}
