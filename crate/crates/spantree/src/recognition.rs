//! Distance-hereditary, cograph, and threshold recognition.
//!
//! Distance-heredity is decided three mutually independent ways, and the
//! test suite cross-validates them on shared corpora:
//!
//! 1. [`recognize_dh`]: greedy pendant/twin elimination, producing a
//!    replayable construction certificate ([`ConstructionSequence`]);
//! 2. [`find_forbidden`]: exhaustive search for an induced long cycle, gem,
//!    house, or domino;
//! 3. [`four_point_check`]: the four-point distance condition.
//!
//! Certificates are verified objects: a construction sequence replays to the
//! exact input graph (same ids, same edges), and a forbidden witness lists
//! its vertices in pattern order so the induced subgraph can be checked
//! against the pattern's adjacency matrix.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::Result;

/// One step of a pendant/twin construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Seed,
    Pendant { attach: VertexId },
    FalseTwin { of: VertexId },
    TrueTwin { of: VertexId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionStep {
    pub kind: StepKind,
    pub new_vertex: VertexId,
}

/// Ordered construction of a graph from a single vertex by pendant
/// additions and twin duplications. Replaying the steps reproduces the
/// certified graph exactly, ids included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSequence {
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionSequence {
    /// Rebuild the graph this certificate describes.
    pub fn replay(&self) -> Result<Graph> {
        let mut steps = self.steps.iter();
        let seed = match steps.next() {
            Some(ConstructionStep { kind: StepKind::Seed, new_vertex }) => *new_vertex,
            _ => return Err(Error::invalid("construction must start with a seed step")),
        };
        let mut g = Graph::single_with_id(seed);
        for step in steps {
            let id = step.new_vertex;
            g = match step.kind {
                StepKind::Seed => {
                    return Err(Error::invalid("seed step after the first"))
                }
                StepKind::Pendant { attach } => g.add_pendant_as(attach, id)?,
                StepKind::FalseTwin { of } => g.duplicate_as(of, false, id)?,
                StepKind::TrueTwin { of } => g.duplicate_as(of, true, id)?,
            };
        }
        Ok(g)
    }

    /// Line-oriented text form: `seed v`, `pendant v attach`, `ftwin v of`,
    /// `ttwin v of`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for step in &self.steps {
            let v = step.new_vertex;
            match step.kind {
                StepKind::Seed => s.push_str(&format!("seed {v}\n")),
                StepKind::Pendant { attach } => {
                    s.push_str(&format!("pendant {v} {attach}\n"))
                }
                StepKind::FalseTwin { of } => s.push_str(&format!("ftwin {v} {of}\n")),
                StepKind::TrueTwin { of } => s.push_str(&format!("ttwin {v} {of}\n")),
            }
        }
        s
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for line in input.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let arg = |i: usize| -> Result<VertexId> {
                toks.get(i)
                    .and_then(|t| t.parse::<u32>().ok())
                    .map(VertexId::new)
                    .ok_or_else(|| Error::invalid(format!("bad step line `{line}`")))
            };
            let step = match toks[0] {
                "seed" if toks.len() == 2 => {
                    ConstructionStep { kind: StepKind::Seed, new_vertex: arg(1)? }
                }
                "pendant" if toks.len() == 3 => ConstructionStep {
                    kind: StepKind::Pendant { attach: arg(2)? },
                    new_vertex: arg(1)?,
                },
                "ftwin" if toks.len() == 3 => ConstructionStep {
                    kind: StepKind::FalseTwin { of: arg(2)? },
                    new_vertex: arg(1)?,
                },
                "ttwin" if toks.len() == 3 => ConstructionStep {
                    kind: StepKind::TrueTwin { of: arg(2)? },
                    new_vertex: arg(1)?,
                },
                _ => return Err(Error::invalid(format!("bad step line `{line}`"))),
            };
            steps.push(step);
        }
        if steps.is_empty() {
            return Err(Error::invalid("empty construction"));
        }
        Ok(ConstructionSequence { steps })
    }
}

/// Result of pendant/twin elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DhOutcome {
    DistanceHereditary(ConstructionSequence),
    /// The irreducible rest: no pendant vertex and no twin pair left.
    NotDistanceHereditary { reduced: Graph },
}

impl DhOutcome {
    pub fn is_dh(&self) -> bool {
        matches!(self, DhOutcome::DistanceHereditary(_))
    }

    pub fn certificate(&self) -> Option<&ConstructionSequence> {
        match self {
            DhOutcome::DistanceHereditary(c) => Some(c),
            DhOutcome::NotDistanceHereditary { .. } => None,
        }
    }
}

/// Decide distance-heredity by greedy elimination: repeatedly remove a
/// pendant vertex, else one of a false-twin pair, else one of a true-twin
/// pair, always the lowest-id candidate. A connected graph reduces to a
/// single vertex iff it is distance-hereditary; the recorded elimination,
/// reversed, is the construction certificate.
pub fn recognize_dh(g: &Graph) -> Result<DhOutcome> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut work = g.clone();
    let mut reversed: Vec<ConstructionStep> = Vec::new();
    while work.vertex_count() > 1 {
        match elimination_step(&work) {
            Some(step) => {
                work = work.remove_vertex(step.new_vertex)?;
                reversed.push(step);
            }
            None => return Ok(DhOutcome::NotDistanceHereditary { reduced: work }),
        }
    }
    let seed = work.vertices().next().expect("one vertex left");
    let mut steps = vec![ConstructionStep { kind: StepKind::Seed, new_vertex: seed }];
    steps.extend(reversed.into_iter().rev());
    let cert = ConstructionSequence { steps };
    debug_assert_eq!(cert.replay().as_ref(), Ok(g));
    Ok(DhOutcome::DistanceHereditary(cert))
}

fn elimination_step(g: &Graph) -> Option<ConstructionStep> {
    // pendant first
    for v in g.vertices() {
        let ns = g.neighborhood(v).unwrap();
        if ns.len() == 1 {
            let attach = *ns.iter().next().unwrap();
            return Some(ConstructionStep {
                kind: StepKind::Pendant { attach },
                new_vertex: v,
            });
        }
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    // false twins: equal open neighborhoods
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if g.neighborhood(u).unwrap() == g.neighborhood(v).unwrap() {
                return Some(ConstructionStep {
                    kind: StepKind::FalseTwin { of: u },
                    new_vertex: v,
                });
            }
        }
    }
    // true twins: adjacent with equal closed neighborhoods
    for (i, &u) in vs.iter().enumerate() {
        let nu = g.neighborhood(u).unwrap();
        for &v in &vs[i + 1..] {
            if !nu.contains(&v) {
                continue;
            }
            let nv = g.neighborhood(v).unwrap();
            let mut nu2 = nu.clone();
            nu2.remove(&v);
            let mut nv2 = nv.clone();
            nv2.remove(&u);
            if nu2 == nv2 {
                return Some(ConstructionStep {
                    kind: StepKind::TrueTwin { of: u },
                    new_vertex: v,
                });
            }
        }
    }
    None
}

/// Kinds of forbidden induced subgraph for distance-heredity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenKind {
    /// Chordless cycle of length five or more.
    LongCycle,
    Gem,
    House,
    Domino,
}

/// Witness vertices ordered so the induced subgraph matches the pattern's
/// adjacency matrix position for position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub vertices: Vec<VertexId>,
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ForbiddenKind::LongCycle => "cycle",
            ForbiddenKind::Gem => "gem",
            ForbiddenKind::House => "house",
            ForbiddenKind::Domino => "domino",
        };
        write!(f, "{name}(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Gem: path 0-1-2-3 plus an apex 4 adjacent to all of it.
const GEM_EDGES: [(usize, usize); 7] =
    [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)];
/// House: square 0-1-2-3 with a roof vertex 4 over the edge 0-1.
const HOUSE_EDGES: [(usize, usize); 6] =
    [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)];
/// Domino: 2x3 grid, rows 0-1-2 and 3-4-5 with rungs 03, 14, 25.
const DOMINO_EDGES: [(usize, usize); 7] =
    [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)];

/// Exhaustive search for a forbidden induced subgraph. Capped at 12
/// vertices; larger inputs are rejected rather than silently subsampled.
pub fn find_forbidden(g: &Graph) -> Result<Option<ForbiddenWitness>> {
    let n = g.vertex_count();
    if n > 12 {
        return Err(Error::envelope(format!(
            "forbidden-subgraph search is exhaustive and capped at 12 vertices, got {n}"
        )));
    }
    if let Some(cycle) = find_long_induced_cycle(g) {
        let w = ForbiddenWitness { kind: ForbiddenKind::LongCycle, vertices: cycle };
        debug_assert!(verify_witness(g, &w));
        return Ok(Some(w));
    }
    for (kind, edges) in [
        (ForbiddenKind::Gem, &GEM_EDGES[..]),
        (ForbiddenKind::House, &HOUSE_EDGES[..]),
        (ForbiddenKind::Domino, &DOMINO_EDGES[..]),
    ] {
        let k = match kind {
            ForbiddenKind::Domino => 6,
            _ => 5,
        };
        if let Some(vertices) = find_induced_pattern(g, k, edges) {
            let w = ForbiddenWitness { kind, vertices };
            debug_assert!(verify_witness(g, &w));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Check a witness against its pattern: the induced subgraph on the ordered
/// vertices must match the pattern edge for edge.
pub fn verify_witness(g: &Graph, w: &ForbiddenWitness) -> bool {
    let vs = &w.vertices;
    if vs.iter().collect::<BTreeSet<_>>().len() != vs.len() {
        return false;
    }
    if vs.iter().any(|&v| !g.contains(v)) {
        return false;
    }
    match w.kind {
        ForbiddenKind::LongCycle => {
            let k = vs.len();
            if k < 5 {
                return false;
            }
            for i in 0..k {
                for j in i + 1..k {
                    let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                    if g.has_edge(vs[i], vs[j]) != consecutive {
                        return false;
                    }
                }
            }
            true
        }
        ForbiddenKind::Gem => matches_edge_list(g, vs, 5, &GEM_EDGES),
        ForbiddenKind::House => matches_edge_list(g, vs, 5, &HOUSE_EDGES),
        ForbiddenKind::Domino => matches_edge_list(g, vs, 6, &DOMINO_EDGES),
    }
}

fn matches_edge_list(
    g: &Graph,
    vs: &[VertexId],
    k: usize,
    edges: &[(usize, usize)],
) -> bool {
    if vs.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let expect = edges.contains(&(i, j)) || edges.contains(&(j, i));
            if g.has_edge(vs[i], vs[j]) != expect {
                return false;
            }
        }
    }
    true
}

/// First chordless cycle of length at least five, as an ordered vertex list.
fn find_long_induced_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let vs: Vec<VertexId> = g.vertices().collect();
    for &start in &vs {
        let mut path = vec![start];
        if let Some(cycle) = extend_induced_path(g, start, &mut path) {
            return Some(cycle);
        }
    }
    None
}

/// DFS over induced paths whose minimum vertex is the start; a neighbor of
/// the start closing a path of length >= 5 yields a chordless cycle.
fn extend_induced_path(
    g: &Graph,
    start: VertexId,
    path: &mut Vec<VertexId>,
) -> Option<Vec<VertexId>> {
    let last = *path.last().unwrap();
    let candidates: Vec<VertexId> = g
        .neighborhood(last)
        .unwrap()
        .iter()
        .copied()
        .filter(|&w| w > start && !path.contains(&w))
        .collect();
    for w in candidates {
        // chordless: w may touch only the path's last vertex (and possibly
        // the start, which closes the cycle)
        let interior = if path.len() >= 2 { &path[1..path.len() - 1] } else { &[][..] };
        if interior.iter().any(|&p| g.has_edge(w, p)) {
            continue;
        }
        if path.len() >= 2 && g.has_edge(w, start) {
            if path.len() + 1 >= 5 {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            continue; // a chord to the start blocks any longer induced path
        }
        path.push(w);
        if let Some(c) = extend_induced_path(g, start, path) {
            return Some(c);
        }
        path.pop();
    }
    None
}

/// Search for an induced copy of a fixed pattern over all k-subsets,
/// returning witness vertices in pattern order.
fn find_induced_pattern(
    g: &Graph,
    k: usize,
    edges: &[(usize, usize)],
) -> Option<Vec<VertexId>> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    if n < k {
        return None;
    }
    let mut pattern_deg = vec![0usize; k];
    for &(i, j) in edges {
        pattern_deg[i] += 1;
        pattern_deg[j] += 1;
    }
    let mut subset = vec![0usize; k];
    subsets(n, k, &mut subset, 0, 0, &mut |subset| {
        let chosen: Vec<VertexId> = subset.iter().map(|&i| vs[i]).collect();
        // degree multiset filter inside the induced subgraph
        let mut degs: Vec<usize> = chosen
            .iter()
            .map(|&v| chosen.iter().filter(|&&u| g.has_edge(v, u)).count())
            .collect();
        let mut want = pattern_deg.clone();
        degs.sort();
        want.sort();
        if degs != want {
            return None;
        }
        assign_pattern(g, &chosen, &pattern_deg, edges, &mut Vec::new())
    })
}

fn subsets(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    from: usize,
    visit: &mut impl FnMut(&[usize]) -> Option<Vec<VertexId>>,
) -> Option<Vec<VertexId>> {
    if depth == k {
        return visit(buf);
    }
    for i in from..=n - (k - depth) {
        buf[depth] = i;
        if let Some(found) = subsets(n, k, buf, depth + 1, i + 1, visit) {
            return Some(found);
        }
    }
    None
}

/// Try to order `chosen` so its induced subgraph equals the pattern.
fn assign_pattern(
    g: &Graph,
    chosen: &[VertexId],
    pattern_deg: &[usize],
    edges: &[(usize, usize)],
    assigned: &mut Vec<VertexId>,
) -> Option<Vec<VertexId>> {
    let slot = assigned.len();
    if slot == pattern_deg.len() {
        return Some(assigned.clone());
    }
    'candidates: for &v in chosen {
        if assigned.contains(&v) {
            continue;
        }
        let deg_in_subset = chosen.iter().filter(|&&u| g.has_edge(v, u)).count();
        if deg_in_subset != pattern_deg[slot] {
            continue;
        }
        for (earlier, &u) in assigned.iter().enumerate() {
            let expect = edges.contains(&(earlier, slot)) || edges.contains(&(slot, earlier));
            if g.has_edge(u, v) != expect {
                continue 'candidates;
            }
        }
        assigned.push(v);
        if let Some(found) = assign_pattern(g, chosen, pattern_deg, edges, assigned) {
            return Some(found);
        }
        assigned.pop();
    }
    None
}

/// Four-point condition: for every four vertices, at least two of the three
/// distance sums `d(u,v)+d(w,x)`, `d(u,w)+d(v,x)`, `d(u,x)+d(v,w)` agree.
pub fn four_point_check(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    let dist: Vec<Vec<u32>> = vs
        .iter()
        .map(|&v| {
            let d = g.distances_from(v).unwrap();
            vs.iter().map(|u| d[u]).collect()
        })
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let s1 = dist[a][b] + dist[c][d];
                    let s2 = dist[a][c] + dist[b][d];
                    let s3 = dist[a][d] + dist[b][c];
                    if s1 != s2 && s1 != s3 && s2 != s3 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Cotree certificate of a cograph: single vertices combined by disjoint
/// unions and complete joins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoTree {
    Leaf(VertexId),
    Union(Vec<CoTree>),
    Join(Vec<CoTree>),
}

impl CoTree {
    pub fn leaves(&self) -> BTreeSet<VertexId> {
        match self {
            CoTree::Leaf(v) => BTreeSet::from([*v]),
            CoTree::Union(children) | CoTree::Join(children) => {
                children.iter().flat_map(|c| c.leaves()).collect()
            }
        }
    }

    /// Check the certificate against a graph: leaves cover the vertex set,
    /// union children see no cross edges, join children see all of them.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.leaves() != g.vertex_set() {
            return Err(Error::invalid("cotree leaves do not match the vertex set"));
        }
        self.validate_inner(g)
    }

    fn validate_inner(&self, g: &Graph) -> Result<()> {
        let children = match self {
            CoTree::Leaf(_) => return Ok(()),
            CoTree::Union(c) | CoTree::Join(c) => c,
        };
        let join = matches!(self, CoTree::Join(_));
        if children.len() < 2 {
            return Err(Error::invalid("internal cotree node needs two children"));
        }
        let parts: Vec<BTreeSet<VertexId>> = children.iter().map(|c| c.leaves()).collect();
        for (i, p) in parts.iter().enumerate() {
            for q in &parts[i + 1..] {
                for &u in p {
                    for &v in q {
                        if g.has_edge(u, v) != join {
                            return Err(Error::invalid(format!(
                                "cross edge {u} {v} contradicts cotree node"
                            )));
                        }
                    }
                }
            }
        }
        for (child, part) in children.iter().zip(&parts) {
            child.validate_inner(&g.induced(part))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CographOutcome {
    Cograph(CoTree),
    /// Vertices of an induced path on four vertices, in path order.
    NotCograph { p4: [VertexId; 4] },
}

impl CographOutcome {
    pub fn is_cograph(&self) -> bool {
        matches!(self, CographOutcome::Cograph(_))
    }
}

/// Cograph recognition by recursive union/join decomposition; failure
/// produces a verified induced P4.
pub fn is_cograph(g: &Graph) -> CographOutcome {
    match decompose(g) {
        Ok(tree) => {
            debug_assert!(tree.validate(g).is_ok());
            CographOutcome::Cograph(tree)
        }
        Err(p4) => {
            debug_assert!(is_induced_p4(g, &p4));
            CographOutcome::NotCograph { p4 }
        }
    }
}

fn decompose(g: &Graph) -> std::result::Result<CoTree, [VertexId; 4]> {
    let n = g.vertex_count();
    if n == 0 {
        // only reachable on direct empty input; treat as an empty union
        return Ok(CoTree::Union(Vec::new()));
    }
    if n == 1 {
        return Ok(CoTree::Leaf(g.vertices().next().unwrap()));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let children = comps
            .iter()
            .map(|c| decompose(&g.induced(c)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return Ok(CoTree::Union(children));
    }
    let co_comps = g.complement().components();
    if co_comps.len() > 1 {
        let children = co_comps
            .iter()
            .map(|c| decompose(&g.induced(c)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return Ok(CoTree::Join(children));
    }
    // connected and co-connected on >= 2 vertices: an induced P4 exists
    Err(find_p4(g).expect("connected co-connected graph contains an induced P4"))
}

fn is_induced_p4(g: &Graph, p: &[VertexId; 4]) -> bool {
    g.has_edge(p[0], p[1])
        && g.has_edge(p[1], p[2])
        && g.has_edge(p[2], p[3])
        && !g.has_edge(p[0], p[2])
        && !g.has_edge(p[0], p[3])
        && !g.has_edge(p[1], p[3])
}

fn find_p4(g: &Graph) -> Option<[VertexId; 4]> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    for a in 0..n {
        for b in 0..n {
            if b == a || !g.has_edge(vs[a], vs[b]) {
                continue;
            }
            for c in 0..n {
                if c == a || c == b {
                    continue;
                }
                for d in 0..n {
                    if d == a || d == b || d == c || vs[a] > vs[d] {
                        continue; // canonical direction, halves the work
                    }
                    let p = [vs[a], vs[b], vs[c], vs[d]];
                    if is_induced_p4(g, &p) {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

/// Threshold recognition: iterated removal of an isolated or dominating
/// vertex must empty the graph.
pub fn is_threshold(g: &Graph) -> bool {
    let mut work = g.clone();
    while work.vertex_count() > 0 {
        let n = work.vertex_count();
        let candidate = work.vertices().find(|&v| {
            let d = work.degree(v).unwrap();
            d == 0 || d == n - 1
        });
        match candidate {
            Some(v) => work = work.remove_vertex(v).unwrap(),
            None => return false,
        }
    }
    true
}
