use std::collections::BTreeSet;

use bpr_formula::{Entity, Mode};
use bpr_generators::{fixtures, naive_triangulated_1planar, three_connected_catalog};
use bpr_graph::{canonical_form, induced_subgraph, Edge, Graph};
use bpr_oracle::*;

#[test]
fn k5_census_unconstrained() {
    let r = census(&Graph::complete(5), Mode::OneP, &Constraints::none()).unwrap();
    assert_eq!((r.raw, r.classes), (15, 1));
}

#[test]
fn k5_census_with_fixed_outer_triangle() {
    let r = census(&Graph::complete(5), Mode::OneP, &Constraints::outer_face(&[0, 1, 2])).unwrap();
    assert_eq!((r.raw, r.classes), (6, 3));
}

#[test]
fn k4_and_k7() {
    assert_eq!(enumerate_embeddings(&Graph::complete(4), Mode::OneP, &Constraints::none()), vec![Vec::<(Edge, Edge)>::new()]);
    assert!(!is_recognized(&Graph::complete(7), Mode::OneP));
    assert!(!is_recognized(&Graph::complete(6), Mode::Ic));
    assert!(!is_recognized(&Graph::complete(6), Mode::Nic));
    assert!(is_recognized(&Graph::complete(6), Mode::OneP));
}

#[test]
fn census_refuses_large_graphs() {
    assert_eq!(census(&Graph::complete(9), Mode::OneP, &Constraints::none()).unwrap_err(), EmbedError::TooLarge(9));
}

#[test]
fn validation_errors() {
    let k5 = Graph::complete(5);
    assert!(validate_embedding(&k5, &[(Edge(0, 1), Edge(2, 3))], Mode::OneP, &Constraints::none()).is_ok());
    assert!(matches!(validate_embedding(&k5, &[], Mode::OneP, &Constraints::none()), Err(EmbedError::WrongCount { .. })));
    assert!(matches!(
        validate_embedding(&k5, &[(Edge(0, 1), Edge(1, 3))], Mode::OneP, &Constraints::none()),
        Err(EmbedError::Adjacent(..))
    ));
    let cons = Constraints { forbidden_vertices: [0].into(), ..Constraints::none() };
    assert!(matches!(
        validate_embedding(&k5, &[(Edge(0, 1), Edge(2, 3))], Mode::Ic, &cons),
        Err(EmbedError::Constraint(_))
    ));
    let mut k5e = k5.clone();
    k5e.remove_edge(Edge(3, 4));
    assert!(matches!(
        validate_embedding(&k5e, &[(Edge(0, 3), Edge(1, 4))], Mode::OneP, &Constraints::none()),
        Err(EmbedError::WrongCount { .. })
    ));
}

#[test]
fn fixture_modes() {
    let cases = [
        (fixtures::octahedron_kite(), [true, true, true]),
        (fixtures::nic_not_ic(), [true, false, true]),
        (fixtures::one_planar_only(), [true, false, false]),
        (fixtures::crossed_cube(), [true, false, false]),
        (fixtures::k5_minus_edge(), [true, true, true]),
    ];
    for (g, expect) in cases {
        for (mode, e) in Mode::ALL.into_iter().zip(expect) {
            assert_eq!(is_recognized(&g, mode), e, "{mode}");
        }
    }
}

#[test]
fn embeddings_have_triangular_faces_and_respect_modes() {
    for n in 5..=7 {
        for g in three_connected_catalog(n) {
            let one = enumerate_embeddings(&g, Mode::OneP, &Constraints::none());
            let ic = enumerate_embeddings(&g, Mode::Ic, &Constraints::none());
            let nic = enumerate_embeddings(&g, Mode::Nic, &Constraints::none());
            assert!(ic.iter().all(|e| nic.contains(e)));
            assert!(nic.iter().all(|e| one.contains(e)));
            for pairs in &one {
                assert!(pairs.len() <= n - 2);
                let emb = validate_embedding(&g, pairs, Mode::OneP, &Constraints::none()).unwrap();
                let order: Vec<Vec<usize>> = emb.rotations.values().cloned().collect();
                let rot = bpr_graph::Rotation::from_orders(order);
                assert!(rot.faces().iter().all(|f| f.len() == 3));
            }
        }
    }
}

#[test]
fn oracle_matches_naive_generator() {
    for n in 4..=7 {
        let cat = bpr_generators::all_graphs(n);
        let tris: Vec<Graph> = cat.iter().filter(|g| g.m() == 3 * n - 6).cloned().collect();
        for (mode, shared) in [(Mode::OneP, None), (Mode::Ic, Some(0)), (Mode::Nic, Some(1))] {
            let naive = naive_triangulated_1planar(&tris, shared);
            let oracle: BTreeSet<_> = cat
                .iter()
                .filter(|g| g.m() >= 3 * n - 6 && is_recognized(g, mode))
                .map(|g| canonical_form(g).0)
                .collect();
            assert_eq!(naive, oracle, "n = {n}, {mode}");
        }
    }
}

#[test]
fn small_block_k5_ic_and_nic() {
    let k5 = Graph::complete(5);
    let sub = induced_subgraph(&k5, &[0, 1, 2, 3, 4]).unwrap();
    let cons = Constraints::outer_face(&[0, 1, 2]);
    let mut next = 0;
    let ic = small_graph_block(&sub, Mode::Ic, &cons, &[0, 1, 2], &outer_entities(&[0, 1, 2], Mode::Ic), &mut next, "t");
    let mut terms = ic.term_entities();
    terms.sort();
    let v = Entity::Vertex;
    assert_eq!(terms, vec![[v(0), v(1)].into(), [v(0), v(2)].into(), [v(1), v(2)].into()]);
    let nic = small_graph_block(&sub, Mode::Nic, &cons, &[0, 1, 2], &outer_entities(&[0, 1, 2], Mode::Nic), &mut next, "t");
    let mut terms = nic.term_entities();
    terms.sort();
    let e = |a, b| Entity::Edge(Edge(a, b));
    assert_eq!(terms, vec![[e(0, 1)].into(), [e(0, 2)].into(), [e(1, 2)].into()]);
}

#[test]
fn small_block_two_k5_in_a_four_cycle() {
    // outer 4-cycle 0-1-3-2, inner diagonal 1-2 shared by K5 {0,1,2,4,5} and K5 {1,2,3,6,7}
    let mut g = Graph::empty(8);
    for k in [[0, 1, 2, 4, 5], [1, 2, 3, 6, 7]] {
        for i in 0..5 {
            for j in i + 1..5 {
                g.add_edge(Edge::new(k[i], k[j]));
            }
        }
    }
    // the outer region is closed by the chord 0-3
    g.add_edge(Edge(0, 3));
    let sub = induced_subgraph(&g, &(0..8).collect::<Vec<_>>()).unwrap();
    let mut cons = Constraints::none();
    cons.add_face(&[0, 1, 3]);
    cons.add_face(&[0, 3, 2]);
    let outer = [0, 1, 3, 2];
    let mut next = 0;
    let ic = small_graph_block(&sub, Mode::Ic, &cons, &outer, &outer_entities(&outer, Mode::Ic), &mut next, "t");
    let mut terms = ic.term_entities();
    terms.sort();
    let v = Entity::Vertex;
    // both embeddings use all four outer vertices, split differently between the kites
    assert_eq!(terms, vec![[v(0), v(1), v(2), v(3)].into()]);
    let raw = enumerate_embeddings(&sub.graph, Mode::Ic, &cons);
    // two ways to split the outer vertices, times the inner swap in each K5
    assert_eq!(raw.len(), 8);
    let nic = small_graph_block(&sub, Mode::Nic, &cons, &outer, &outer_entities(&outer, Mode::Nic), &mut next, "t");
    assert!(nic.term_entities().iter().all(|t| t.len() == 1));
}

mod relabeling {
    use super::*;
    use bpr_generators::random_triangulated_1planar;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn embedding_count_is_label_invariant(seed in any::<u64>(), n in 5usize..=7, perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, pairs) = random_triangulated_1planar(n, 0.5, None, &mut rng);
            let perm: Vec<usize> = perm.into_iter().filter(|&v| v < n).collect();
            let h = g.relabel(&perm);
            for mode in [Mode::OneP, Mode::Ic, Mode::Nic] {
                let a = enumerate_embeddings(&g, mode, &Constraints::none()).len();
                let b = enumerate_embeddings(&h, mode, &Constraints::none()).len();
                prop_assert_eq!(a, b, "{} {:?}", mode, g.edges());
            }
            prop_assert!(validate_embedding(&g, &pairs, Mode::OneP, &Constraints::none()).is_ok());
        }
    }
}
