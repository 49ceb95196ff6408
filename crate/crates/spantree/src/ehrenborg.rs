//! Machine checks for the Ehrenborg conjecture on bipartite graphs, in both
//! its numeric and polynomial forms, the blow-up identity connecting them,
//! and a seeded randomized counterexample search.
//!
//! Numeric form: `tau(G) * |V1| * |V2| <= prod_v deg(v)`.
//! Polynomial form: for nonnegative vertex weights `x`,
//! `P_G(x) * (sum_{V1} x)(sum_{V2} x) <= prod_v (sum_{u in N(v)} x_u)`.
//! Equality holds on Ferrers-Young graphs, which the tests sweep.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::enumerator;
use crate::error::Error;
use crate::graph::{BipartitionCert, Graph, VertexId};
use crate::linalg;
use crate::poly::Point;
use crate::recognition::{self, DhOutcome};
use crate::Result;

/// Exact evaluation of one side-by-side inequality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrenborgReport {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
    /// `lhs / rhs` when the right side is nonzero.
    pub ratio: Option<BigRational>,
}

impl EhrenborgReport {
    fn from_sides(lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs <= rhs;
        let ratio = if rhs.is_zero() { None } else { Some(&lhs / &rhs) };
        EhrenborgReport { lhs, rhs, holds, ratio }
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Numeric form: `tau(G) * |V1| * |V2|` against the degree product.
pub fn check_numeric(g: &Graph, cert: &BipartitionCert) -> Result<EhrenborgReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    cert.validate(g)?;
    let tau = linalg::tree_count(g);
    let lhs = BigRational::from(
        tau * BigInt::from(cert.part1.len()) * BigInt::from(cert.part2.len()),
    );
    let mut rhs = BigRational::one();
    for v in g.vertices() {
        rhs *= BigRational::from(BigInt::from(g.degree(v)?));
    }
    Ok(EhrenborgReport::from_sides(lhs, rhs))
}

/// Polynomial form at a nonnegative point. Coordinates may be zero: the
/// enumerator value is then obtained by brute force (small graphs) or from
/// the linear factorization (distance-hereditary graphs) instead of the
/// weighted-Laplacian route, which needs every coordinate nonzero.
pub fn check_polynomial(
    g: &Graph,
    cert: &BipartitionCert,
    x: &Point,
) -> Result<EhrenborgReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    cert.validate(g)?;
    for (v, r) in x.values() {
        let _ = v;
        if r.is_negative() {
            return Err(Error::invalid("coordinates must be nonnegative"));
        }
    }
    if !x.covers(g.vertices()) {
        let missing = g.vertices().find(|&v| x.get(v).is_err()).unwrap();
        return Err(Error::MissingCoordinate(missing));
    }
    let p_value = enumerator_value_at(g, x)?;
    let sum_part = |part: &std::collections::BTreeSet<VertexId>| -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for &v in part {
            acc += x.get(v)?;
        }
        Ok(acc)
    };
    let lhs = p_value * sum_part(&cert.part1)? * sum_part(&cert.part2)?;
    let mut rhs = BigRational::one();
    for v in g.vertices() {
        let mut nsum = BigRational::zero();
        for &u in g.neighborhood(v)? {
            nsum += x.get(u)?;
        }
        rhs *= nsum;
    }
    Ok(EhrenborgReport::from_sides(lhs, rhs))
}

/// `P_G(x)` exactly, routing around zero coordinates.
fn enumerator_value_at(g: &Graph, x: &Point) -> Result<BigRational> {
    if !x.has_zero() {
        return Ok(linalg::weighted_tree_sum(g, x)? / x.product());
    }
    if let Ok(p) = linalg::brute_force_enumerator(g) {
        return p.evaluate(x);
    }
    match recognition::recognize_dh(g)? {
        DhOutcome::DistanceHereditary(cert) => {
            enumerator::enumerator_from_construction(&cert)?.evaluate(x)
        }
        DhOutcome::NotDistanceHereditary { .. } => Err(Error::Unsupported(
            "zero coordinates on a large non-distance-hereditary graph".into(),
        )),
    }
}

/// Blow-up identity: replacing each vertex `i` by `z_i` independent copies,
/// `tau(blow_up) = P_G(z) * prod_i (sum_{j in N(i)} z_j)^(z_i - 1)`.
/// Both sides are computed exactly; the right side goes through the
/// weighted-Laplacian route.
pub fn blowup_identity_check(g: &Graph, z: &BTreeMap<VertexId, u32>) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let total: u64 = g
        .vertices()
        .map(|v| *z.get(&v).unwrap_or(&0) as u64)
        .sum();
    if total > 64 {
        return Err(Error::envelope(format!(
            "blow-up would have {total} vertices (cap 64)"
        )));
    }
    let (blown, _) = g.blow_up(z)?;
    let lhs = BigRational::from(linalg::tree_count(&blown));

    let zpoint = Point::from_pairs(
        g.vertices().map(|v| (v, BigRational::from(BigInt::from(z[&v])))),
    );
    let p_at_z = if g.vertex_count() == 1 {
        BigRational::one()
    } else {
        linalg::weighted_tree_sum(g, &zpoint)? / zpoint.product()
    };
    let mut rhs = p_at_z;
    for v in g.vertices() {
        let mut nsum = BigRational::zero();
        for &u in g.neighborhood(v)? {
            nsum += zpoint.get(u)?;
        }
        for _ in 1..z[&v] {
            rhs *= &nsum;
        }
    }
    Ok(lhs == rhs)
}

/// Parameters of the randomized conjecture search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub n_min: u32,
    pub n_max: u32,
    /// Cross-edge probability as an exact fraction.
    pub density_num: u32,
    pub density_den: u32,
    pub trials: u32,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            n_min: 4,
            n_max: 10,
            density_num: 1,
            density_den: 2,
            trials: 100,
            seed: 0,
        }
    }
}

/// One searched instance: the graph's identity plus its numeric report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRecord {
    pub graph_hash: u64,
    pub n: usize,
    pub m: usize,
    pub report: EhrenborgReport,
}

/// Randomized numeric-form sweep over connected bipartite graphs, sorted by
/// ratio descending then graph hash (deterministic under a fixed seed). A
/// record with `holds == false` is a conjecture counterexample and sorts
/// first; callers should surface it loudly.
pub fn search_counterexample(params: &SearchParams) -> Result<Vec<SearchRecord>> {
    if params.n_min < 2 || params.n_min > params.n_max {
        return Err(Error::invalid("need 2 <= n_min <= n_max"));
    }
    if params.density_num == 0 || params.density_num > params.density_den {
        return Err(Error::invalid("density must be a fraction in (0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(params.trials as usize);
    for _ in 0..params.trials {
        let n = rng.gen_range(params.n_min..=params.n_max);
        let (g, cert) = corpus::random_connected_bipartite(
            &mut rng,
            n,
            params.density_num,
            params.density_den,
        );
        let report = check_numeric(&g, &cert)?;
        out.push(SearchRecord {
            graph_hash: g.content_hash(),
            n: g.vertex_count(),
            m: g.edge_count(),
            report,
        });
    }
    out.sort_by(|a, b| {
        let ra = a.report.ratio.clone().unwrap_or_else(BigRational::zero);
        let rb = b.report.ratio.clone().unwrap_or_else(BigRational::zero);
        rb.cmp(&ra).then(a.graph_hash.cmp(&b.graph_hash))
    });
    Ok(out)
}
