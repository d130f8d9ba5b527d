use bpr_graph::io::{parse_edgelist, parse_graph6, to_edgelist, to_graph6};
use bpr_graph::*;
use proptest::prelude::*;

fn cube() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    build_graph(8, &edges).unwrap()
}

fn cube_optimal() -> Graph {
    // Q3 with both diagonals in each of its six faces
    let mut g = cube();
    for fixed in [1, 2, 4] {
        for val in [0, fixed] {
            let face: Vec<usize> = (0..8).filter(|v| v & fixed == val).collect();
            // face vertices a,b,c,d with diagonals between those differing in both free bits
            for i in 0..4 {
                for j in i + 1..4 {
                    if (face[i] ^ face[j]).count_ones() == 2 {
                        g.add_edge(Edge::new(face[i], face[j]));
                    }
                }
            }
        }
    }
    g
}

fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build_graph(n, &edges).unwrap()
}

fn random_graph(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits[k % bits.len()] {
                g.add_edge(Edge(a, b));
            }
            k += 1;
        }
    }
    g
}

fn brute_k4(g: &Graph) -> Vec<[usize; 4]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if g.is_clique(&[a, b, c, d]) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn brute_connectivity(g: &Graph) -> usize {
    // smallest vertex set whose removal disconnects; complete graphs give n-1
    let n = g.n();
    for size in 0..n.saturating_sub(1) {
        let mut found = false;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let removed: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if connected_components(g, &removed, &[]).len() >= 2 {
                found = true;
                break;
            }
        }
        if found {
            return size;
        }
    }
    n.saturating_sub(1)
}

#[test]
fn build_graph_examples() {
    let k4 = build_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(k4.m(), 6);
    assert_eq!(build_graph(3, &[(0, 0)]), Err(GraphError::Loop(0)));
    assert_eq!(build_graph(3, &[(0, 1), (1, 0)]), Err(GraphError::Duplicate(Edge(0, 1))));
    assert_eq!(build_graph(3, &[(0, 3)]), Err(GraphError::OutOfRange(3, 3)));
    assert_eq!(Graph::complete(5).m(), 10);
}

#[test]
fn induced_subgraph_examples() {
    let k5 = Graph::complete(5);
    let s = induced_subgraph(&k5, &[4, 1, 2, 0]).unwrap();
    assert_eq!(s.graph, Graph::complete(4));
    assert_eq!(s.to_parent, vec![0, 1, 2, 4]);
    let mut g = Graph::complete(5);
    g.remove_edge(Edge(3, 4));
    assert!(induced_subgraph(&g, &[0, 1, 2, 3]).unwrap().graph.is_clique(&[0, 1, 2, 3]));
    let mut h = g.clone();
    h.remove_edge(Edge(0, 3));
    assert!(!induced_subgraph(&h, &[0, 1, 2, 3]).unwrap().graph.is_clique(&[0, 1, 2, 3]));
    assert_eq!(induced_subgraph(&g, &[]).unwrap().graph.n(), 0);
    assert!(induced_subgraph(&g, &[7]).is_err());
}

#[test]
fn component_examples() {
    assert_eq!(connected_components(&Graph::complete(4), &[], &[]).len(), 1);
    let mut g = Graph::complete(5);
    g.remove_edge(Edge(3, 4));
    assert_eq!(connected_components(&g, &[0, 1, 2], &[]), vec![vec![3], vec![4]]);
    assert_eq!(connected_components(&path(3), &[1], &[]), vec![vec![0], vec![2]]);
    assert_eq!(connected_components(&path(3), &[], &[Edge(0, 1)]), vec![vec![0], vec![1, 2]]);
}

#[test]
fn connectivity_examples() {
    assert!(is_k_connected(&Graph::complete(4), 3));
    assert!(!is_k_connected(&path(3), 2));
    assert!(is_k_connected(&cube(), 3));
    assert!(!is_k_connected(&cube(), 4));
    assert!(is_k_connected(&Graph::complete(6), 5));
    assert!(!is_k_connected(&Graph::complete(5), 5));
}

#[test]
fn k4_examples() {
    assert_eq!(enumerate_k4(&Graph::complete(5)).len(), 5);
    let c5 = build_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    assert!(enumerate_k4(&c5).is_empty());
    let opt = cube_optimal();
    assert_eq!(opt.m(), 24);
    let got: Vec<[usize; 4]> = enumerate_k4(&opt).iter().map(|k| k.vertices).collect();
    assert_eq!(got, brute_k4(&opt));
    assert_eq!(find_k5(&Graph::complete(5)), Some([0, 1, 2, 3, 4]));
    assert_eq!(find_k5(&opt), None);
}

#[test]
fn crossable_examples() {
    let k5 = Graph::complete(5);
    let all = crossable_edges_by(&k5, Edge(0, 1), |_| true);
    assert_eq!(all, vec![Edge(2, 3), Edge(2, 4), Edge(3, 4)]);
    let k4 = Graph::complete(4);
    assert_eq!(crossable_edges_by(&k4, Edge(0, 2), |_| true), vec![Edge(1, 3)]);
    let some = crossable_edges_by(&k5, Edge(0, 1), |f| f != Edge(2, 3));
    assert_eq!(some, vec![Edge(2, 4), Edge(3, 4)]);
}

#[test]
fn planarity_examples() {
    assert!(is_triangulated_planar(&Graph::complete(4)));
    assert!(!is_triangulated_planar(&Graph::complete(5)));
    assert!(!is_planar(&Graph::complete(5)));
    assert!(!is_triangulated_planar(&cube()));
    let k33 = build_graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
    assert!(!is_planar(&k33));

    let rot = planar_rotation(&Graph::complete(4)).unwrap();
    assert_eq!(rot.faces().len(), 4);
    assert!(rot.faces().iter().all(|f| f.len() == 3));

    let rot = planar_rotation(&cube()).unwrap();
    let faces = rot.faces();
    assert_eq!(faces.len(), 6);
    assert!(faces.iter().all(|f| f.len() == 4));
    assert!(rotation_is_planar(&cube(), &rot));

    assert_eq!(planar_rotation(&Graph::complete(5)), Err(GraphError::NotPlanar));
    assert_eq!(planar_rotation(&path(4)), Err(GraphError::NotThreeConnected));
}

#[test]
fn planarity_matches_reference_verdicts() {
    let data = include_str!("data/planarity_cases.txt");
    let mut checked = 0;
    for line in data.lines().filter(|l| !l.starts_with('#')) {
        let (g6, verdict) = line.rsplit_once(' ').unwrap();
        let g = parse_graph6(g6).unwrap();
        let expect = verdict == "1";
        let emb = planar_embedding(&g);
        assert_eq!(emb.is_some(), expect, "{g6}");
        if let Some(rot) = emb {
            assert!(rotation_is_planar(&g, &rot), "embedding fails Euler check for {g6}");
        }
        checked += 1;
    }
    assert_eq!(checked, 400);
}

#[test]
fn long_paths_and_large_cycles_do_not_overflow() {
    let n = 200_000;
    let mut g = path(n);
    g.add_edge(Edge(0, n - 1));
    let rot = planar_embedding(&g).unwrap();
    assert_eq!(rot.faces().len(), 2);
    assert!(articulation_points(&g).is_empty());
}

#[test]
fn graph6_examples() {
    let k5 = Graph::complete(5);
    assert_eq!(to_graph6(&k5), "D~{");
    assert_eq!(parse_graph6("D~{").unwrap(), k5);
    assert_eq!(parse_graph6(">>graph6<<D~{").unwrap(), k5);
    assert!(parse_graph6("D~").is_err());
    assert!(parse_graph6("").is_err());
    let big = path(100);
    assert_eq!(parse_graph6(&to_graph6(&big)).unwrap(), big);
}

#[test]
fn edgelist_examples() {
    let g = parse_edgelist("3 2\n0 1\n1 2\n").unwrap();
    assert_eq!(g, path(3));
    assert_eq!(parse_edgelist(&to_edgelist(&cube())).unwrap(), cube());
    assert!(parse_edgelist("3 2\n0 1\n").is_err());
    assert!(parse_edgelist("3 1\n0 0\n").is_err());
    assert!(parse_edgelist("3 2\n0 1\n0 1\n").is_err());
    assert!(parse_edgelist("").is_err());
    assert!(parse_edgelist("3 1\n0 x\n").is_err());
}

#[test]
fn blocks_and_separation_pairs() {
    // two triangles sharing vertex 2
    let bowtie = build_graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
    assert_eq!(articulation_points(&bowtie), vec![2]);
    assert_eq!(biconnected_components(&bowtie).len(), 2);
    let c6 = build_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let pairs = separation_pairs(&c6);
    assert!(pairs.contains(&(0, 2)) && pairs.contains(&(0, 3)) && !pairs.contains(&(0, 1)));
    assert!(separation_pairs(&Graph::complete(5)).is_empty());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (4..=max_n).prop_flat_map(|n| {
        (Just(n), proptest::collection::vec(proptest::bool::weighted(0.55), n * (n - 1) / 2))
            .prop_map(|(n, bits)| random_graph(n, &bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn k4_enumeration_matches_brute_force(g in arb_graph(10)) {
        let got: Vec<[usize; 4]> = enumerate_k4(&g).iter().map(|k| k.vertices).collect();
        prop_assert_eq!(got, brute_k4(&g));
    }

    #[test]
    fn crossable_members_avoid_endpoints(g in arb_graph(9)) {
        for e in g.edges() {
            for f in crossable_edges_by(&g, e, |_| true) {
                prop_assert!(g.contains(f));
                prop_assert!(!e.shares_endpoint(&f));
                prop_assert!(g.is_clique(&[e.0, e.1, f.0, f.1]));
            }
        }
    }

    #[test]
    fn k_connectivity_matches_brute_force(g in arb_graph(8)) {
        let kappa = brute_connectivity(&g);
        for k in 1..=5 {
            prop_assert_eq!(is_k_connected(&g, k), kappa >= k && g.n() > k, "k={}", k);
        }
    }

    #[test]
    fn four_cycle_sets_match_brute_force(g in arb_graph(8)) {
        let n = g.n();
        let mut expect = Vec::new();
        for a in 0..n { for b in a+1..n { for c in b+1..n { for d in c+1..n {
            if !four_cycles_on(&g, [a, b, c, d]).is_empty() { expect.push([a, b, c, d]); }
        }}}}
        prop_assert_eq!(four_cycle_sets(&g), expect);
    }

    #[test]
    fn triangulated_planar_faces_are_triangles(g in arb_graph(9)) {
        if is_triangulated_planar(&g) {
            let rot = planar_rotation(&g).unwrap();
            prop_assert!(rot.faces().iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }
}
