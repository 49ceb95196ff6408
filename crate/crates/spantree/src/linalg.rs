//! Exact integer and rational linear algebra: Laplacians, fraction-free
//! determinants, matrix-tree counting, the weighted-Laplacian evaluation
//! oracle, the rank-one perturbation identity, and the brute-force
//! deletion-contraction enumerator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::graph::{Graph, VertexId};
use crate::poly::{Monomial, Point, SparsePoly};
use crate::Result;

/// Dense square matrix over exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl SquareMatrix {
    pub fn zero(n: usize) -> Self {
        SquareMatrix { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
        }
        Ok(SquareMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    /// Matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> SquareMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == i {
                continue;
            }
            for c in 0..n {
                if c == j {
                    continue;
                }
                data.push(self.get(r, c).clone());
            }
        }
        SquareMatrix { n: n - 1, data }
    }

    /// Determinant by exact Gaussian elimination with column pivoting.
    pub fn determinant(&self) -> BigRational {
        let n = self.n;
        if n == 0 {
            return BigRational::one();
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<BigRational>, i: usize, j: usize| m[i * n + j].clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let pivot_row = match (k..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => r,
                None => return BigRational::zero(),
            };
            if pivot_row != k {
                for j in 0..n {
                    m.swap(k * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = at(&m, k, k);
            det *= &pivot;
            for r in k + 1..n {
                if m[r * n + k].is_zero() {
                    continue;
                }
                let factor = &at(&m, r, k) / &pivot;
                for c in k..n {
                    let sub = &factor * &at(&m, k, c);
                    m[r * n + c] -= sub;
                }
            }
        }
        det
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Fraction-free (Bareiss) determinant of an integer matrix. Every
/// intermediate value stays an integer; the result is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = m.len();
    for r in &m {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign * m[n - 1][n - 1].clone())
}

/// Laplacian of a graph, optionally vertex-weighted. Rows/columns follow
/// sorted vertex order. In the weighted form the edge `uv` carries weight
/// `x_u * x_v` and the diagonal compensates so that every row sums to zero.
pub fn laplacian(g: &Graph, weights: Option<&Point>) -> Result<SquareMatrix> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let pos: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();
    let mut m = SquareMatrix::zero(n);
    for (i, &v) in ids.iter().enumerate() {
        let mut diag = BigRational::zero();
        for &u in g.neighborhood(v)? {
            let w = match weights {
                None => BigRational::one(),
                Some(p) => p.get(v)? * p.get(u)?,
            };
            diag += &w;
            m.set(i, pos[&u], -w);
        }
        m.set(i, i, diag);
    }
    Ok(m)
}

fn integer_laplacian(g: &Graph) -> Vec<Vec<BigInt>> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let pos: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, &v) in ids.iter().enumerate() {
        let ns = g.neighborhood(v).unwrap();
        m[i][i] = BigInt::from(ns.len());
        for &u in ns {
            m[i][pos[&u]] = BigInt::from(-1);
        }
    }
    m
}

/// Number of spanning trees via the matrix-tree theorem: the determinant of
/// any principal `(n-1) x (n-1)` minor of the Laplacian (the last row and
/// column are deleted here), computed fraction-free. Returns 0 for
/// disconnected graphs and for the empty graph, 1 for a single vertex.
pub fn tree_count(g: &Graph) -> BigInt {
    let n = g.vertex_count();
    if n == 0 {
        return BigInt::zero();
    }
    let mut lap = integer_laplacian(g);
    lap.pop();
    for row in &mut lap {
        row.pop();
    }
    bareiss_determinant(lap).expect("square by construction")
}

/// Spanning-tree sum with vertex weights: `sum over trees T of
/// prod_v x_v^deg_T(v)`, computed as a cofactor of the weighted Laplacian.
/// Dividing by `prod_v x_v` recovers the enumerator value at `x`.
pub fn weighted_tree_sum(g: &Graph, x: &Point) -> Result<BigRational> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(BigRational::zero());
    }
    let lap = laplacian(g, Some(x))?;
    Ok(lap.minor(n - 1, n - 1).determinant())
}

/// Outcome of the rank-one perturbation identity
/// `det(L + a b^T) = (sum a)(sum b) tau(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

/// Evaluate both sides of the rank-one perturbation identity exactly.
pub fn det_rank_one_check(
    g: &Graph,
    a: &[BigRational],
    b: &[BigRational],
) -> Result<RankOneCheck> {
    let n = g.vertex_count();
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.len() });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    let mut m = laplacian(g, None)?;
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let v = m.get(i, j) + ai * bj;
            m.set(i, j, v);
        }
    }
    let lhs = m.determinant();
    let sum = |v: &[BigRational]| v.iter().fold(BigRational::zero(), |acc, x| acc + x);
    let rhs = sum(a) * sum(b) * BigRational::from(tree_count(g));
    let equal = lhs == rhs;
    Ok(RankOneCheck { lhs, rhs, equal })
}

/// Safety envelope for the brute-force enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_vertices: usize,
    pub max_trees: u64,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits { max_vertices: 9, max_trees: 1_000_000 }
    }
}

/// Brute-force vertex-degree spanning enumerator: the sum over every
/// spanning tree of `prod_v x_v^(deg_T(v) - 1)`, via deletion-contraction
/// that visits each tree exactly once. A single vertex yields the constant
/// 1 (the convention used throughout this crate); disconnected graphs yield
/// the zero polynomial.
pub fn brute_force_enumerator(g: &Graph) -> Result<SparsePoly> {
    brute_force_enumerator_with(g, BruteForceLimits::default())
}

pub fn brute_force_enumerator_with(
    g: &Graph,
    limits: BruteForceLimits,
) -> Result<SparsePoly> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(SparsePoly::zero());
    }
    if n == 1 {
        return Ok(SparsePoly::one());
    }
    if n > 16 {
        return Err(Error::envelope(format!(
            "brute force supports at most 16 vertices, got {n}"
        )));
    }
    if n > limits.max_vertices {
        let tau = tree_count(g);
        if tau > BigInt::from(limits.max_trees) {
            return Err(Error::envelope(format!(
                "{n} vertices and {tau} spanning trees exceed the brute-force limits"
            )));
        }
    }

    let ids: Vec<VertexId> = g.vertices().collect();
    let pos: BTreeMap<VertexId, u8> = ids
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u8))
        .collect();
    // edge = (current endpoint, current endpoint, original u, original v)
    let edges: Vec<(u8, u8, u8, u8)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (pos[&u], pos[&v], pos[&u], pos[&v]))
        .collect();

    let mut walker = DcWalker {
        degrees: [0u8; 16],
        n,
        counts: BTreeMap::new(),
        emitted: 0,
        max_trees: limits.max_trees,
    };
    walker.recurse(&edges, n)?;

    let mut out = SparsePoly::zero();
    for (key, count) in walker.counts {
        let mono = Monomial::from_exponents((0..n).map(|i| {
            let deg = (key >> (4 * i) & 0xf) as u32;
            (ids[i], deg - 1)
        }));
        out.add_term(mono, BigInt::from(count));
    }
    Ok(out)
}

struct DcWalker {
    // tree degrees in original vertex slots; n <= 16 keeps each in a nibble
    degrees: [u8; 16],
    n: usize,
    counts: BTreeMap<u64, u64>,
    emitted: u64,
    max_trees: u64,
}

impl DcWalker {
    fn degree_key(&self) -> u64 {
        let mut key = 0u64;
        for i in 0..self.n {
            key |= (self.degrees[i] as u64) << (4 * i);
        }
        key
    }

    fn recurse(&mut self, edges: &[(u8, u8, u8, u8)], vertices_left: usize) -> Result<()> {
        if vertices_left == 1 {
            self.emitted += 1;
            if self.emitted > self.max_trees {
                return Err(Error::envelope(format!(
                    "more than {} spanning trees",
                    self.max_trees
                )));
            }
            *self.counts.entry(self.degree_key()).or_insert(0) += 1;
            return Ok(());
        }
        if edges.len() < vertices_left - 1 {
            return Ok(()); // cannot span: prune
        }
        let (a, b, ou, ov) = edges[0];

        // contract: the tree keeps this edge; merge b into a, drop loops
        let contracted: Vec<_> = edges[1..]
            .iter()
            .map(|&(x, y, u, v)| {
                let x = if x == b { a } else { x };
                let y = if y == b { a } else { y };
                (x, y, u, v)
            })
            .filter(|&(x, y, _, _)| x != y)
            .collect();
        self.degrees[ou as usize] += 1;
        self.degrees[ov as usize] += 1;
        self.recurse(&contracted, vertices_left - 1)?;
        self.degrees[ou as usize] -= 1;
        self.degrees[ov as usize] -= 1;

        // delete: only worth exploring if the rest still spans
        if spans(&edges[1..], vertices_left) {
            self.recurse(&edges[1..], vertices_left)?;
        }
        Ok(())
    }
}

/// Do the given edges connect all `vertices_left` endpoint classes?
fn spans(edges: &[(u8, u8, u8, u8)], vertices_left: usize) -> bool {
    const UNSEEN: u8 = u8::MAX;
    let mut parent = [UNSEEN; 16];
    fn find(parent: &mut [u8; 16], mut x: u8) -> u8 {
        while parent[x as usize] != x {
            let up = parent[x as usize];
            parent[x as usize] = parent[up as usize];
            x = up;
        }
        x
    }
    let mut classes = 0usize;
    let mut merges = 0usize;
    for &(a, b, _, _) in edges {
        for x in [a, b] {
            if parent[x as usize] == UNSEEN {
                parent[x as usize] = x;
                classes += 1;
            }
        }
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra as usize] = rb;
            merges += 1;
        }
    }
    // all active vertices must appear and form one component
    classes == vertices_left && merges == classes - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::poly::LinearForm;

    fn v(i: u32) -> VertexId {
        VertexId::new(i)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn laplacian_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let l = laplacian(&k2, None).unwrap();
        assert_eq!(*l.get(0, 0), rat(1));
        assert_eq!(*l.get(0, 1), rat(-1));
        assert_eq!(*l.get(1, 0), rat(-1));
        assert_eq!(*l.get(1, 1), rat(1));

        let w = Point::from_pairs([(v(0), rat(2)), (v(1), rat(3))]);
        let lw = laplacian(&k2, Some(&w)).unwrap();
        assert_eq!(*lw.get(0, 0), rat(6));
        assert_eq!(*lw.get(0, 1), rat(-6));

        let c3 = families::cycle(3).unwrap();
        let l3 = laplacian(&c3, None).unwrap();
        for i in 0..3 {
            assert_eq!(*l3.get(i, i), rat(2));
        }
    }

    #[test]
    fn tree_counts() {
        assert_eq!(tree_count(&families::cycle(4).unwrap()), BigInt::from(4));
        assert_eq!(
            tree_count(&families::superprism(4).unwrap()),
            BigInt::from(4096)
        );
        // two disjoint edges
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(tree_count(&g), BigInt::zero());
        assert_eq!(tree_count(&Graph::single()), BigInt::one());
        assert_eq!(tree_count(&Graph::empty()), BigInt::zero());
        // Cayley: tau(K_n) = n^(n-2)
        assert_eq!(tree_count(&families::complete(6).unwrap()), BigInt::from(1296));
    }

    #[test]
    fn cofactor_choice_invariance() {
        // deleting row/col i vs j gives the same count, on random graphs
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let n = rng.gen_range(2..=7u32);
            let g = crate::corpus::random_connected_graph(&mut rng, n, 2, 3);
            let lap = laplacian(&g, None).unwrap();
            let expected = BigRational::from(tree_count(&g));
            for i in 0..g.vertex_count() {
                assert_eq!(lap.minor(i, i).determinant(), expected);
            }
        }
    }

    #[test]
    fn weighted_tree_sums() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p = Point::from_pairs([(v(0), rat(2)), (v(1), rat(3))]);
        assert_eq!(weighted_tree_sum(&k2, &p).unwrap(), rat(6));

        let c4 = families::cycle(4).unwrap();
        let ones = Point::all_ones(c4.vertices());
        assert_eq!(weighted_tree_sum(&c4, &ones).unwrap(), rat(4));

        // K4 at (1,1,1,2): prod x * (sum x)^2 = 2 * 25
        let k4 = families::complete(4).unwrap();
        let p = Point::from_pairs([
            (v(0), rat(1)),
            (v(1), rat(1)),
            (v(2), rat(1)),
            (v(3), rat(2)),
        ]);
        assert_eq!(weighted_tree_sum(&k4, &p).unwrap(), rat(50));
    }

    #[test]
    fn rank_one_identity() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let ones = vec![rat(1), rat(1)];
        let r = det_rank_one_check(&k2, &ones, &ones).unwrap();
        assert_eq!(r.lhs, rat(4));
        assert_eq!(r.rhs, rat(4));
        assert!(r.equal);

        // zero vector: both sides vanish with the singular Laplacian
        let zeros = vec![rat(0), rat(0)];
        let r = det_rank_one_check(&k2, &zeros, &ones).unwrap();
        assert_eq!(r.lhs, rat(0));
        assert!(r.equal);

        assert!(det_rank_one_check(&k2, &ones, &[rat(1)]).is_err());
    }

    #[test]
    fn rank_one_random_sweep() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let c4 = families::cycle(4).unwrap();
        for _ in 0..50 {
            let a: Vec<BigRational> =
                (0..4).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let b: Vec<BigRational> =
                (0..4).map(|_| rat(rng.gen_range(-9..=9))).collect();
            assert!(det_rank_one_check(&c4, &a, &b).unwrap().equal);
        }
    }

    #[test]
    fn bareiss_integer_exactness() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(7), BigInt::from(1)],
            vec![BigInt::from(-3), BigInt::from(4), BigInt::from(5)],
            vec![BigInt::from(6), BigInt::from(0), BigInt::from(-2)],
        ];
        // cross-check against rational elimination
        let rows: Vec<Vec<BigRational>> = m
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect();
        let rational = SquareMatrix::from_rows(rows).unwrap().determinant();
        let integer = bareiss_determinant(m).unwrap();
        assert_eq!(BigRational::from(integer), rational);
    }

    #[test]
    fn brute_force_small() {
        // P3 (path 0-1-2): unique tree, center exponent 1
        let p3 = families::path(3).unwrap();
        let poly = brute_force_enumerator(&p3).unwrap();
        assert_eq!(poly.term_count(), 1);
        assert_eq!(poly.coefficient(&Monomial::var(v(1))), BigInt::one());

        // C4: four trees, each dropping one edge
        let c4 = families::cycle(4).unwrap();
        let poly = brute_force_enumerator(&c4).unwrap();
        assert_eq!(poly.term_count(), 4);
        for (i, j) in [(2u32, 3u32), (0, 3), (0, 1), (1, 2)] {
            let m = Monomial::from_exponents([(v(i), 1), (v(j), 1)]);
            assert_eq!(poly.coefficient(&m), BigInt::one());
        }

        // K4: 16 monomials collecting to (sum x)^2
        let k4 = families::complete(4).unwrap();
        let poly = brute_force_enumerator(&k4).unwrap();
        let sum = LinearForm::sum_of_vars((0..4).map(v));
        let sq = SparsePoly::from_linear(&sum)
            .mul_linear_capped(&sum, 1000)
            .unwrap();
        assert_eq!(poly, sq);
    }

    #[test]
    fn brute_force_matches_tree_count() {
        for g in [
            families::cycle(5).unwrap(),
            families::complete_bipartite(2, 3).unwrap(),
            families::superprism(4).unwrap(),
        ] {
            let poly = brute_force_enumerator(&g).unwrap();
            let ones = Point::all_ones(g.vertices());
            assert_eq!(
                poly.evaluate(&ones).unwrap(),
                BigRational::from(tree_count(&g))
            );
        }
    }

    #[test]
    fn brute_force_envelope() {
        let g = families::complete(8).unwrap();
        let tight = BruteForceLimits { max_vertices: 4, max_trees: 100 };
        assert!(matches!(
            brute_force_enumerator_with(&g, tight),
            Err(Error::EnvelopeExceeded(_))
        ));
    }

    #[test]
    fn brute_force_degenerate() {
        assert_eq!(brute_force_enumerator(&Graph::single()).unwrap(), SparsePoly::one());
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(brute_force_enumerator(&disconnected).unwrap().is_zero());
    }
}
