use bpr_generators::*;
use bpr_graph::{is_k_connected, is_planar, is_triangulated_planar, Edge};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn optimal_q3_has_24_edges() {
    let g = optimal_q3();
    assert_eq!((g.n(), g.m()), (8, 24));
}

#[test]
fn optimal_families_meet_4n_minus_8() {
    for k in 3..9 {
        let g = gen_optimal_1planar(&pseudo_double_wheel(k).unwrap()).unwrap();
        assert_eq!(g.m(), 4 * g.n() - 8, "pdw {k}");
    }
    for l in 2..12 {
        let g = gen_optimal_1planar(&stacked_cubes(l).unwrap()).unwrap();
        assert_eq!(g.m(), 4 * g.n() - 8, "cubes {l}");
    }
    assert_eq!(gen_optimal_1planar(&pseudo_double_wheel(4).unwrap()).unwrap().m(), 32);
}

#[test]
fn non_quadrangulation_is_refused() {
    assert!(matches!(gen_optimal_1planar(&fixtures::octahedron().graph), Err(GenError::NotQuadrangulation(_))));
    assert!(gen_optimal_1planar(&bpr_graph::Graph::complete(5)).is_err());
}

#[test]
fn k5_star_counts() {
    for k in 2..7 {
        let g = gen_k5_star(k).unwrap();
        assert_eq!((g.n(), g.m()), (4 * k + 2, 13 * k));
        assert!(is_k_connected(&g, 3));
    }
}

#[test]
fn random_triangulations_are_triangulations() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 4..30 {
        let t = random_triangulation(n, &mut rng);
        assert!(is_triangulated_planar(&t.graph), "n = {n}");
        assert_eq!(t.faces.len(), 2 * n - 4);
    }
}

#[test]
fn augmentation_adds_one_edge_per_slot() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 5..25 {
        let (g, pairs) = random_triangulated_1planar(n, 0.5, None, &mut rng);
        assert_eq!(g.m(), 3 * n - 6 + pairs.len());
        let (_, ic) = random_triangulated_1planar(n, 0.5, Some(0), &mut rng);
        assert!(pairs_respect(&ic, 0));
    }
}

#[test]
fn bad_slots_are_reported() {
    let t = fixtures::octahedron();
    // 0-1 and 1-2 share the face 1,2,4? no: 0-1 faces (0,1,4),(0,1,5); 1-4 shares (0,1,4)
    assert!(augment_kites(&t, &[Edge(0, 1), Edge(1, 4)]).is_err());
    assert!(augment_kites(&t, &[Edge(0, 2)]).is_err());
    assert!(augment_kites(&t, &[Edge(0, 1)]).is_ok());
}

#[test]
fn catalog_counts() {
    assert_eq!(all_graphs(4).len(), 11);
    assert_eq!(all_graphs(5).len(), 34);
    assert_eq!(three_connected_catalog(5).len(), 3);
    assert_eq!(three_connected_catalog(6).len(), 17);
    assert_eq!(three_connected_catalog(7).len(), 136);
}

#[test]
fn fixtures_shapes() {
    let k = fixtures::kite_covered_tetrahedron();
    assert_eq!((k.n(), k.m()), (11, 36));
    let s = fixtures::sc_graph();
    assert_eq!((s.n(), s.m()), (13, 44));
    assert!(!is_planar(&fixtures::octahedron_kite()));
    assert_eq!(fixtures::nic_not_ic().m(), 20);
    for name in FAMILIES {
        let spec = name.replace(":K", ":4").replace(":L", ":3").replace(":N", ":5");
        family(&spec).unwrap();
    }
    assert!(matches!(family("nope"), Err(GenError::UnknownFamily(_))));
}
