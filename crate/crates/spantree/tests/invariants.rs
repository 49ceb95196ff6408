//! Cross-module property tests: the structural invariants that tie the
//! recognizers, the factorization, and the exact-linear-algebra oracles
//! together on randomized and small exhaustive corpora.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spantree::corpus;
use spantree::ehrenborg;
use spantree::enumerator::{self, Enumerator};
use spantree::families;
use spantree::graph::{Graph, VertexId};
use spantree::linalg;
use spantree::poly::Point;
use spantree::recognition::{self, CographOutcome, DhOutcome};

fn seeded_graph(n: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    corpus::random_connected_graph(&mut rng, n, 1, 2)
}

proptest! {
    /// The enumerator of a connected graph on n vertices is homogeneous of
    /// degree n - 2 with positive coefficients, and its all-ones value is
    /// the spanning-tree count.
    #[test]
    fn bruteforce_shape(n in 2u32..=7, seed: u64) {
        let g = seeded_graph(n, seed);
        let p = linalg::brute_force_enumerator(&g).unwrap();
        prop_assert!(p.is_homogeneous_of_degree(n - 2));
        for (_, c) in p.terms() {
            prop_assert!(*c > BigInt::from(0));
        }
        let ones = Point::all_ones(g.vertices());
        prop_assert_eq!(
            p.evaluate(&ones).unwrap(),
            BigRational::from(linalg::tree_count(&g))
        );
    }

    /// A successful elimination certificate replays to the exact input.
    #[test]
    fn certificates_replay_exactly(n in 2u32..=8, seed: u64) {
        let g = seeded_graph(n, seed);
        if let DhOutcome::DistanceHereditary(cert) = recognition::recognize_dh(&g).unwrap() {
            prop_assert_eq!(cert.replay().unwrap(), g.clone());
            let reparsed =
                recognition::ConstructionSequence::parse_text(&cert.to_text()).unwrap();
            prop_assert_eq!(reparsed.replay().unwrap(), g);
        }
    }

    /// The weighted-Laplacian cofactor equals the product of coordinates
    /// times the enumerator value, at nonzero rational points.
    #[test]
    fn weighted_laplacian_is_an_enumerator_oracle(n in 2u32..=6, seed: u64) {
        let g = seeded_graph(n, seed);
        let p = linalg::brute_force_enumerator(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
        let point = Point::from_pairs(g.vertices().map(|v| {
            let num = rng.gen_range(1..=25i64);
            let den = rng.gen_range(1..=6i64);
            (v, BigRational::new(BigInt::from(num), BigInt::from(den)))
        }));
        let lhs = linalg::weighted_tree_sum(&g, &point).unwrap();
        let rhs = point.product() * p.evaluate(&point).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Enumerator serialization round-trips byte for byte.
    #[test]
    fn enumerator_text_roundtrip(n in 2u32..=7, seed: u64) {
        let g = seeded_graph(n, seed);
        let (e, _) = enumerator::graph_enumerator(&g).unwrap();
        let text = e.to_text();
        let parsed = Enumerator::parse_text(&text).unwrap();
        prop_assert_eq!(&parsed, &e);
        prop_assert_eq!(parsed.to_text(), text);
    }

    /// Composing with a triangle is true-twin duplication; with a 3-path
    /// marked at the center, false-twin duplication (adjacency equality
    /// after renaming the fresh ids).
    #[test]
    fn composition_realizes_duplication(n in 2u32..=6, seed: u64, with_edge: bool) {
        let g = seeded_graph(n, seed);
        let mark = VertexId::new(seed as u32 % n);
        let (expected, copy) = g.duplicate(mark, with_edge).unwrap();
        let (gadget, gadget_mark) = if with_edge {
            (families::complete(3).unwrap(), VertexId::new(2))
        } else {
            (Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap(), VertexId::new(0))
        };
        let (composed, relabel) = g.compose(mark, &gadget, gadget_mark).unwrap();
        // the two survivors of the gadget play {mark, copy}
        let survivors: Vec<VertexId> = gadget
            .vertices()
            .filter(|&w| w != gadget_mark)
            .map(|w| relabel[&w])
            .collect();
        let data = composed.to_structured();
        let rename = |x: u32| {
            if x == survivors[0].index() {
                mark.index()
            } else if x == survivors[1].index() {
                copy.index()
            } else {
                x
            }
        };
        let vertices: Vec<u32> = data.vertices.iter().map(|&x| rename(x)).collect();
        let edges: Vec<(u32, u32)> =
            data.edges.iter().map(|&(a, b)| (rename(a), rename(b))).collect();
        let renamed = Graph::from_vertices_and_edges(&vertices, &edges).unwrap();
        prop_assert_eq!(renamed, expected);
    }

    /// Blow-up by all-ones is the identity; vertex and edge counts follow
    /// the multiplicities.
    #[test]
    fn blow_up_counts(n in 2u32..=6, seed: u64) {
        let g = seeded_graph(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef);
        let z: BTreeMap<VertexId, u32> =
            g.vertices().map(|v| (v, rng.gen_range(1..=3))).collect();
        let (h, _) = g.blow_up(&z).unwrap();
        let vertices: u32 = z.values().sum();
        let edges: u32 = g.edges().iter().map(|(u, v)| z[u] * z[v]).sum();
        prop_assert_eq!(h.vertex_count() as u32, vertices);
        prop_assert_eq!(h.edge_count() as u32, edges);

        let ones: BTreeMap<VertexId, u32> = g.vertices().map(|v| (v, 1)).collect();
        let (same, _) = g.blow_up(&ones).unwrap();
        prop_assert_eq!(same, g);
    }

    /// Threshold graphs from random creation sequences are cographs and
    /// distance-hereditary, and pass the forbidden-subgraph recognizer.
    #[test]
    fn threshold_chain_of_inclusions(steps in proptest::collection::vec(any::<bool>(), 1..8)) {
        let creation: Vec<families::ThresholdStep> = steps
            .iter()
            .map(|&d| if d { families::ThresholdStep::Dominating } else { families::ThresholdStep::Isolated })
            .collect();
        let g = families::threshold_graph(&creation).unwrap();
        prop_assert!(recognition::is_threshold(&g));
        prop_assert!(recognition::is_cograph(&g).is_cograph());
        if g.is_connected() {
            prop_assert!(recognition::recognize_dh(&g).unwrap().is_dh());
        }
    }

    /// The blow-up identity ties the blown-up count to the weighted
    /// enumerator value.
    #[test]
    fn blowup_identity_random(n in 2u32..=5, seed: u64) {
        let g = seeded_graph(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut budget = 10 - n;
        let z: BTreeMap<VertexId, u32> = g
            .vertices()
            .map(|v| {
                let extra = if budget > 0 { rng.gen_range(0..=budget.min(2)) } else { 0 };
                budget -= extra;
                (v, 1 + extra)
            })
            .collect();
        prop_assert!(ehrenborg::blowup_identity_check(&g, &z).unwrap());
    }
}

#[test]
fn threshold_graphs_avoid_p4_c4_2k2() {
    // exhaustive creation sequences up to 10 vertices would be 2^10; a
    // representative slice plus exhaustive induced-subgraph search
    let c4 = families::cycle(4).unwrap();
    let p4 = families::path(4).unwrap();
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    for mask in 0u32..(1 << 7) {
        let creation: Vec<families::ThresholdStep> = (0..7)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    families::ThresholdStep::Dominating
                } else {
                    families::ThresholdStep::Isolated
                }
            })
            .collect();
        let g = families::threshold_graph(&creation).unwrap();
        assert!(recognition::is_threshold(&g));
        for bad in [&c4, &p4, &two_k2] {
            assert!(
                !has_induced_copy(&g, bad),
                "forbidden induced subgraph in threshold graph, mask {mask:#b}"
            );
        }
    }
}

/// Brute-force induced-subgraph containment for 4-vertex patterns.
fn has_induced_copy(g: &Graph, pattern: &Graph) -> bool {
    let vs: Vec<VertexId> = g.vertices().collect();
    let ps: Vec<VertexId> = pattern.vertices().collect();
    let k = ps.len();
    let mut chosen = vec![0usize; k];
    fn rec(
        g: &Graph,
        pattern: &Graph,
        vs: &[VertexId],
        ps: &[VertexId],
        chosen: &mut Vec<usize>,
        depth: usize,
    ) -> bool {
        if depth == ps.len() {
            return true;
        }
        'outer: for (i, &v) in vs.iter().enumerate() {
            if chosen[..depth].contains(&i) {
                continue;
            }
            for d in 0..depth {
                let expect = pattern.has_edge(ps[d], ps[depth]);
                if g.has_edge(vs[chosen[d]], v) != expect {
                    continue 'outer;
                }
            }
            chosen[depth] = i;
            if rec(g, pattern, vs, ps, chosen, depth + 1) {
                return true;
            }
        }
        false
    }
    rec(g, pattern, &vs, &ps, &mut chosen, 0)
}

#[test]
fn inversion_graph_cograph_iff_separable_exhaustive() {
    // every permutation of length <= 6
    for n in 1u32..=6 {
        let mut values: Vec<u32> = (1..=n).collect();
        permute(&mut values, 0, &mut |vals| {
            let w = families::Permutation::from_one_line(vals).unwrap();
            let cograph = recognition::is_cograph(&families::inversion_graph(&w)).is_cograph();
            assert_eq!(
                cograph,
                families::is_separable(&w),
                "separability/cograph mismatch for {vals:?}"
            );
        });
    }
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

#[test]
fn cographs_are_distance_hereditary_small() {
    for g in corpus::connected_graphs_up_to(5) {
        if recognition::is_cograph(&g).is_cograph() {
            assert!(recognition::recognize_dh(&g).unwrap().is_dh());
        }
    }
}

#[test]
fn cone_dichotomy_includes_disconnected_bases() {
    // 2K2 is a disconnected cograph: its cone must be distance-hereditary
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(recognition::is_cograph(&two_k2).is_cograph());
    let (coned, _) = two_k2.cone();
    assert!(recognition::recognize_dh(&coned).unwrap().is_dh());

    // a disconnected base containing P4: cone is not distance-hereditary
    let p4_plus_k1 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert!(!recognition::is_cograph(&p4_plus_k1).is_cograph());
    let (coned, _) = p4_plus_k1.cone();
    assert!(!recognition::recognize_dh(&coned).unwrap().is_dh());
}

#[test]
fn cograph_witnesses_are_sound() {
    for g in corpus::connected_graphs_exact(5) {
        match recognition::is_cograph(&g) {
            CographOutcome::Cograph(tree) => tree.validate(&g).unwrap(),
            CographOutcome::NotCograph { p4 } => {
                assert!(g.has_edge(p4[0], p4[1]));
                assert!(g.has_edge(p4[1], p4[2]));
                assert!(g.has_edge(p4[2], p4[3]));
                assert!(!g.has_edge(p4[0], p4[2]));
                assert!(!g.has_edge(p4[0], p4[3]));
                assert!(!g.has_edge(p4[1], p4[3]));
            }
        }
    }
}

#[test]
fn forbidden_witnesses_are_sound_small() {
    for g in corpus::connected_graphs_exact(5) {
        if let Some(w) = recognition::find_forbidden(&g).unwrap() {
            assert!(recognition::verify_witness(&g, &w));
        }
    }
}

#[test]
fn ferrers_equality_with_small_cells() {
    // every diagram with at most 8 cells gives ratio exactly 1
    for d in corpus::ferrers_diagrams_up_to(9) {
        let cells: u32 = d.parts().iter().sum();
        if cells > 8 {
            continue;
        }
        let (g, cert) = families::ferrers_young(&d);
        let r = ehrenborg::check_numeric(&g, &cert).unwrap();
        assert_eq!(r.ratio, Some(BigRational::one()), "diagram {:?}", d.parts());
    }
}

#[test]
fn extension_identity_small() {
    for g in corpus::connected_graphs_up_to(4) {
        if g.vertex_count() < 2 {
            continue;
        }
        assert!(
            enumerator::extension_identity_check(&g).unwrap(),
            "graph:\n{}",
            g.to_text()
        );
    }
    assert!(enumerator::extension_identity_check(&Graph::single()).is_err());
}

#[test]
fn recognizers_agree_on_larger_random_graphs() {
    // the acceptance sweep is exhaustive through 6 vertices plus random
    // 7-vertex graphs; here the three recognizers face 7..=10 vertices
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..1500 {
        let n = rng.gen_range(7..=10u32);
        let g = corpus::random_connected_graph(&mut rng, n, 1, 2);
        let a = recognition::recognize_dh(&g).unwrap().is_dh();
        let b = recognition::find_forbidden(&g).unwrap().is_none();
        let c = recognition::four_point_check(&g).unwrap();
        assert!(a == b && b == c, "disagreement ({a}/{b}/{c}) on:\n{}", g.to_text());
    }
}
