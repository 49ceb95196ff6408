//! Self-test suite: every headline identity the library implements, run at
//! full scale with exact arithmetic and zero tolerance. The `acceptance`
//! integration test target and the CLI `selftest` subcommand both drive
//! these checks; each produces one pass/fail line.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::ehrenborg;
use crate::enumerator::{self, Enumerator};
use crate::families;
use crate::graph::{Graph, VertexId};
use crate::linalg;
use crate::poly::{LinearForm, Point};
use crate::recognition;

/// Outcome of one check: pass/fail, a human-readable summary, and timing.
/// When the check carries a wall-clock budget, exceeding it fails the check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    pub budget_millis: Option<u128>,
}

impl CheckOutcome {
    fn finish(
        name: &'static str,
        started: Instant,
        budget_millis: Option<u128>,
        result: Result<String, String>,
    ) -> Self {
        let millis = started.elapsed().as_millis();
        let in_budget = budget_millis.is_none_or(|b| millis <= b);
        match result {
            Ok(detail) if in_budget => {
                CheckOutcome { name, passed: true, detail, millis, budget_millis }
            }
            Ok(detail) => CheckOutcome {
                name,
                passed: false,
                detail: format!("{detail}; over budget ({millis} ms)"),
                millis,
                budget_millis,
            },
            Err(detail) => {
                CheckOutcome { name, passed: false, detail, millis, budget_millis }
            }
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "pass" } else { "FAIL" };
        format!("{status}  {name}  ({ms} ms)  {detail}",
            name = self.name,
            ms = self.millis,
            detail = self.detail,
        )
    }
}

/// Names of all checks, in execution order.
pub const CHECK_NAMES: [&str; 10] = [
    "superprism_counts",
    "factorization_matches_bruteforce",
    "recognizer_equivalence",
    "composition_identity",
    "two_c5_join_quartics",
    "rank_one_perturbation",
    "extension_identity",
    "cone_factorization_dichotomy",
    "gao_liu_crosscheck",
    "ehrenborg_support",
];

/// Run every check, in order.
pub fn run_all() -> Vec<CheckOutcome> {
    CHECK_NAMES.iter().map(|n| run_named(n).unwrap()).collect()
}

/// Run a single check by name.
pub fn run_named(name: &str) -> Option<CheckOutcome> {
    match name {
        "superprism_counts" => Some(check_superprism_counts()),
        "factorization_matches_bruteforce" => Some(check_factorization_matches_bruteforce()),
        "recognizer_equivalence" => Some(check_recognizer_equivalence()),
        "composition_identity" => Some(check_composition_identity()),
        "two_c5_join_quartics" => Some(check_two_c5_join_quartics()),
        "rank_one_perturbation" => Some(check_rank_one_perturbation()),
        "extension_identity" => Some(check_extension_identity()),
        "cone_factorization_dichotomy" => Some(check_cone_factorization_dichotomy()),
        "gao_liu_crosscheck" => Some(check_gao_liu_crosscheck()),
        "ehrenborg_support" => Some(check_ehrenborg_support()),
        _ => None,
    }
}

/// Shared sweep corpus: every connected graph on up to 6 vertices,
/// exhaustively, plus 2000 seeded random connected 7-vertex graphs.
pub fn sweep_corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut all = corpus::connected_graphs_up_to(6);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..2000 {
            all.push(corpus::random_connected_graph(&mut rng, 7, 1, 2));
        }
        all
    })
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// tau(superprism(n)) = n * 2^(3n-2) for n = 4..=10, verified through both
/// the closed-form enumerator at all-ones and the matrix-tree count.
pub fn check_superprism_counts() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        for n in 4u32..=10 {
            let expected = BigInt::from(n) * BigInt::from(2).pow(3 * n - 2);
            let graph = families::superprism(n).map_err(|e| e.to_string())?;
            let tau = linalg::tree_count(&graph);
            if tau != expected {
                return Err(format!("matrix-tree count at n={n}: {tau} != {expected}"));
            }
            let e = enumerator::superprism_enumerator(n).map_err(|e| e.to_string())?;
            let ones = Point::all_ones(graph.vertices());
            let value = e.evaluate(&ones).map_err(|e| e.to_string())?;
            if value != BigRational::from(expected.clone()) {
                return Err(format!("enumerator at n={n}: {value} != {expected}"));
            }
        }
        Ok("n = 4..=10, enumerator and matrix-tree agree with n*2^(3n-2)".to_string())
    })();
    CheckOutcome::finish("superprism_counts", started, Some(5_000), result)
}

/// For every connected distance-hereditary graph in the sweep corpus, the
/// expanded linear factorization equals the brute-force enumerator term
/// for term.
pub fn check_factorization_matches_bruteforce() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut dh = 0usize;
        for g in sweep_corpus() {
            let cert = match recognition::recognize_dh(g).map_err(|e| e.to_string())? {
                recognition::DhOutcome::DistanceHereditary(c) => c,
                recognition::DhOutcome::NotDistanceHereditary { .. } => continue,
            };
            dh += 1;
            let factored = enumerator::enumerator_from_construction(&cert)
                .map_err(|e| e.to_string())?;
            let expanded = factored.expand().map_err(|e| e.to_string())?;
            let brute = linalg::brute_force_enumerator(g).map_err(|e| e.to_string())?;
            if expanded != brute {
                return Err(format!(
                    "factorization mismatch on graph {:016x}:\n{}",
                    g.content_hash(),
                    g.to_text()
                ));
            }
            if !factored.is_linear_product() {
                return Err(format!(
                    "non-linear remainder on distance-hereditary graph {:016x}",
                    g.content_hash()
                ));
            }
        }
        Ok(format!(
            "{dh} distance-hereditary graphs of {} in corpus, all factorizations exact",
            sweep_corpus().len()
        ))
    })();
    CheckOutcome::finish("factorization_matches_bruteforce", started, Some(60_000), result)
}

/// The three distance-heredity characterizations agree on the whole sweep
/// corpus: elimination succeeds iff no forbidden induced subgraph exists
/// iff the four-point condition holds.
pub fn check_recognizer_equivalence() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut dh = 0usize;
        for g in sweep_corpus() {
            let by_elimination = recognition::recognize_dh(g)
                .map_err(|e| e.to_string())?
                .is_dh();
            let by_forbidden = recognition::find_forbidden(g)
                .map_err(|e| e.to_string())?
                .is_none();
            let by_four_point = recognition::four_point_check(g).map_err(|e| e.to_string())?;
            if by_elimination != by_forbidden || by_forbidden != by_four_point {
                return Err(format!(
                    "recognizers disagree ({by_elimination}/{by_forbidden}/{by_four_point}) on:\n{}",
                    g.to_text()
                ));
            }
            dh += by_elimination as usize;
        }
        Ok(format!(
            "{} graphs, three recognizers unanimous ({dh} distance-hereditary)",
            sweep_corpus().len()
        ))
    })();
    CheckOutcome::finish("recognizer_equivalence", started, Some(120_000), result)
}

/// Composition: on random pairs of marked graphs, the composed enumerator
/// equals the weighted-Laplacian oracle of the composed graph at random
/// nonzero rational points.
pub fn check_composition_identity() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(271);
        for trial in 0..200 {
            let n1 = rng.gen_range(2..=6);
            let n2 = rng.gen_range(2..=6);
            let g1 = corpus::random_connected_graph(&mut rng, n1, 1, 2);
            let g2 = corpus::random_connected_graph(&mut rng, n2, 1, 2);
            let v1 = VertexId::new(rng.gen_range(0..n1));
            let v2 = VertexId::new(rng.gen_range(0..n2));
            let e1 = Enumerator::from_poly(
                linalg::brute_force_enumerator(&g1).map_err(|e| e.to_string())?,
            );
            let e2 = Enumerator::from_poly(
                linalg::brute_force_enumerator(&g2).map_err(|e| e.to_string())?,
            );
            let (h, _, composed) =
                enumerator::compose_graph_enumerators(&g1, v1, &e1, &g2, v2, &e2)
                    .map_err(|e| e.to_string())?;
            for _ in 0..5 {
                // wide-support rational points: the identity-testing design
                let p = Point::from_pairs(h.vertices().map(|u| {
                    let num = rng.gen_range(1..=1i64 << 31);
                    let den = rng.gen_range(1..=4i64);
                    (u, BigRational::new(BigInt::from(num), BigInt::from(den)))
                }));
                let lhs = composed.evaluate(&p).map_err(|e| e.to_string())?;
                let oracle = linalg::weighted_tree_sum(&h, &p).map_err(|e| e.to_string())?
                    / p.product();
                if lhs != oracle {
                    return Err(format!(
                        "composition mismatch on trial {trial}: {lhs} != {oracle}"
                    ));
                }
            }
        }
        Ok("200 random compositions match the oracle at 5 points each".to_string())
    })();
    CheckOutcome::finish("composition_identity", started, Some(60_000), result)
}

/// Composing two 5-wheels at their apexes (two five-cycles completely
/// joined) splits the enumerator into exactly two homogeneous quartics
/// whose product matches the oracle at 20 random points.
pub fn check_two_c5_join_quartics() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let c5 = families::cycle(5).map_err(|e| e.to_string())?;
        let (wheel, apex) = c5.cone();
        let p_wheel = linalg::brute_force_enumerator(&wheel).map_err(|e| e.to_string())?;

        let (h, relabel) = wheel.compose(apex, &wheel, apex).map_err(|e| e.to_string())?;
        if h.vertex_count() != 10 || h.edge_count() != 35 {
            return Err(format!(
                "composed graph has {} vertices, {} edges; expected 10 and 35",
                h.vertex_count(),
                h.edge_count()
            ));
        }
        let n1: BTreeSet<VertexId> = c5.vertices().collect();
        let n2: BTreeSet<VertexId> = c5.vertices().map(|v| relabel[&v]).collect();

        // first quartic: apex variable of the first wheel replaced by the
        // second wheel's rim sum; second quartic symmetrically
        let q1 = p_wheel
            .substitute(apex, &LinearForm::sum_of_vars(n2.iter().copied()), 1 << 20)
            .map_err(|e| e.to_string())?;
        let relabeled = Enumerator::from_poly(p_wheel.clone())
            .rename(&relabel)
            .map_err(|e| e.to_string())?;
        let q2 = relabeled
            .remainder()
            .substitute(relabel[&apex], &LinearForm::sum_of_vars(n1.iter().copied()), 1 << 20)
            .map_err(|e| e.to_string())?;

        for (label, q) in [("first", &q1), ("second", &q2)] {
            if !q.is_homogeneous_of_degree(4) {
                return Err(format!("{label} factor is not a homogeneous quartic"));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(555);
        for _ in 0..20 {
            let p = Point::from_pairs(h.vertices().map(|u| {
                let num = rng.gen_range(1..=1i64 << 31);
                let den = rng.gen_range(1..=5i64);
                (u, BigRational::new(BigInt::from(num), BigInt::from(den)))
            }));
            let lhs = q1.evaluate(&p).map_err(|e| e.to_string())?
                * q2.evaluate(&p).map_err(|e| e.to_string())?;
            let oracle =
                linalg::weighted_tree_sum(&h, &p).map_err(|e| e.to_string())? / p.product();
            if lhs != oracle {
                return Err(format!("quartic product mismatch: {lhs} != {oracle}"));
            }
        }
        Ok("two homogeneous quartics, product matches the oracle at 20 points".to_string())
    })();
    CheckOutcome::finish("two_c5_join_quartics", started, None, result)
}

/// det(L + a b^T) = (sum a)(sum b) tau(G) over random graphs and integer
/// vectors.
pub fn check_rank_one_perturbation() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..500 {
            let n = rng.gen_range(2..=8u32);
            // any graph qualifies, connected or not
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).map_err(|e| e.to_string())?;
            let a: Vec<BigRational> =
                (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let b: Vec<BigRational> =
                (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let check = linalg::det_rank_one_check(&g, &a, &b).map_err(|e| e.to_string())?;
            if !check.equal {
                return Err(format!(
                    "identity fails on trial {trial}: det = {}, product = {}\n{}",
                    check.lhs,
                    check.rhs,
                    g.to_text()
                ));
            }
        }
        Ok("500 random (graph, a, b) triples, determinant identity exact".to_string())
    })();
    CheckOutcome::finish("rank_one_perturbation", started, Some(30_000), result)
}

/// Extension identity: `P_G(x) * sum(x) = P_cone(G)(0, x)` as polynomials,
/// by exact expansion over every connected graph on 2..=6 vertices.
pub fn check_extension_identity() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut count = 0usize;
        for g in corpus::connected_graphs_up_to(6) {
            if g.vertex_count() < 2 {
                continue; // the 1-vertex case needs negative exponents
            }
            if !enumerator::extension_identity_check(&g).map_err(|e| e.to_string())? {
                return Err(format!(
                    "extension identity fails on graph {:016x}:\n{}",
                    g.content_hash(),
                    g.to_text()
                ));
            }
            count += 1;
        }
        Ok(format!("{count} connected graphs on 2..=6 vertices, zero mismatches"))
    })();
    CheckOutcome::finish("extension_identity", started, None, result)
}

/// The extension enumerator factors into linear forms exactly when the base
/// graph is a cograph: cone elimination succeeds iff the cograph
/// decomposition does, across the whole sweep corpus.
pub fn check_cone_factorization_dichotomy() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut cographs = 0usize;
        for g in sweep_corpus() {
            let (coned, _) = g.cone();
            let cone_dh = recognition::recognize_dh(&coned)
                .map_err(|e| e.to_string())?
                .is_dh();
            let base_cograph = recognition::is_cograph(g).is_cograph();
            if cone_dh != base_cograph {
                return Err(format!(
                    "dichotomy fails (cone dh = {cone_dh}, cograph = {base_cograph}) on:\n{}",
                    g.to_text()
                ));
            }
            if base_cograph {
                cographs += 1;
                let e = enumerator::factor_enumerator(&coned).map_err(|e| e.to_string())?;
                if !e.is_linear_product() {
                    return Err(format!(
                        "cone enumerator of a cograph not a linear product:\n{}",
                        g.to_text()
                    ));
                }
            }
        }
        Ok(format!(
            "{} graphs, dichotomy exact ({cographs} cographs)",
            sweep_corpus().len()
        ))
    })();
    CheckOutcome::finish("cone_factorization_dichotomy", started, None, result)
}

/// The closed-form separable-permutation enumerator agrees with the
/// pendant/twin factorization of the coned inversion graph, as factor
/// multisets and against the oracle at random points.
pub fn check_gao_liu_crosscheck() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let mut total = 0usize;
        for n in 1..=7u32 {
            for w in corpus::separable_permutations(n) {
                total += 1;
                let closed = enumerator::gao_liu_enumerator(&w).map_err(|e| e.to_string())?;
                let g = families::inversion_graph(&w);
                let (coned, _) = g.cone();
                let factored =
                    enumerator::factor_enumerator(&coned).map_err(|e| e.to_string())?;
                if closed.factor_multiset() != factored.factor_multiset()
                    || closed.constant() != factored.constant()
                {
                    return Err(format!(
                        "factor multisets differ for permutation {:?}",
                        w.one_line()
                    ));
                }
                for _ in 0..5 {
                    let p = corpus::random_positive_point(&mut rng, &coned, 1 << 31);
                    let lhs = closed.evaluate(&p).map_err(|e| e.to_string())?;
                    let oracle = linalg::weighted_tree_sum(&coned, &p)
                        .map_err(|e| e.to_string())?
                        / p.product();
                    if lhs != oracle {
                        return Err(format!(
                            "oracle mismatch for permutation {:?}",
                            w.one_line()
                        ));
                    }
                }
            }
        }
        Ok(format!(
            "{total} separable permutations of length <= 7, closed form exact"
        ))
    })();
    CheckOutcome::finish("gao_liu_crosscheck", started, None, result)
}

/// Numeric conjecture on 10000 random connected bipartite graphs (n <= 12),
/// polynomial form at 3 nonnegative rational points each (n <= 9), exact
/// equality on every Ferrers-Young graph with at most 9 vertices, and the
/// blow-up identity on 200 random instances. Any violation is surfaced as a
/// counterexample.
pub fn check_ehrenborg_support() -> CheckOutcome {
    let started = Instant::now();
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut polynomial_checks = 0usize;
        for trial in 0..10_000 {
            let n = rng.gen_range(2..=12u32);
            let (g, cert) = corpus::random_connected_bipartite(&mut rng, n, 1, 2);
            let numeric = ehrenborg::check_numeric(&g, &cert).map_err(|e| e.to_string())?;
            if !numeric.holds {
                return Err(format!(
                    "NUMERIC COUNTEREXAMPLE on trial {trial}: lhs = {}, rhs = {}\n{}",
                    numeric.lhs,
                    numeric.rhs,
                    g.to_text()
                ));
            }
            if n <= 9 {
                for _ in 0..3 {
                    let x = corpus::random_nonnegative_point(&mut rng, &g, 12);
                    let poly =
                        ehrenborg::check_polynomial(&g, &cert, &x).map_err(|e| e.to_string())?;
                    if !poly.holds {
                        return Err(format!(
                            "POLYNOMIAL COUNTEREXAMPLE on trial {trial}: lhs = {}, rhs = {}\n{}",
                            poly.lhs,
                            poly.rhs,
                            g.to_text()
                        ));
                    }
                    polynomial_checks += 1;
                }
            }
        }

        let diagrams = corpus::ferrers_diagrams_up_to(9);
        for d in &diagrams {
            let (g, cert) = families::ferrers_young(d);
            let numeric = ehrenborg::check_numeric(&g, &cert).map_err(|e| e.to_string())?;
            if numeric.ratio != Some(BigRational::one()) {
                return Err(format!(
                    "Ferrers-Young equality fails numerically for {:?}",
                    d.parts()
                ));
            }
            for _ in 0..10 {
                let x = corpus::random_positive_point(&mut rng, &g, 9);
                let poly =
                    ehrenborg::check_polynomial(&g, &cert, &x).map_err(|e| e.to_string())?;
                if poly.ratio != Some(BigRational::one()) {
                    return Err(format!(
                        "Ferrers-Young polynomial equality fails for {:?} at a positive point",
                        d.parts()
                    ));
                }
            }
        }

        for trial in 0..200 {
            let n = rng.gen_range(2..=5u32);
            let g = corpus::random_connected_graph(&mut rng, n, 2, 3);
            // weights small enough to keep the blow-up within 10 vertices
            let budget = 10 - n;
            let mut spare = budget;
            let z: std::collections::BTreeMap<VertexId, u32> = g
                .vertices()
                .map(|v| {
                    let extra = if spare > 0 { rng.gen_range(0..=spare.min(3)) } else { 0 };
                    spare -= extra;
                    (v, 1 + extra)
                })
                .collect();
            if !ehrenborg::blowup_identity_check(&g, &z).map_err(|e| e.to_string())? {
                return Err(format!("blow-up identity fails on trial {trial}"));
            }
        }

        Ok(format!(
            "10000 numeric, {polynomial_checks} polynomial, {} Ferrers-Young equalities, 200 blow-ups",
            diagrams.len()
        ))
    })();
    CheckOutcome::finish("ehrenborg_support", started, None, result)
}
