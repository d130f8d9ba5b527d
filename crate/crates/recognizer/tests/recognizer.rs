use bpr_formula::Mode;
use bpr_generators::{
    fixtures, optimal_q3, random_three_connected, random_triangulated_1planar,
    three_connected_catalog,
};
use bpr_graph::{Edge, Graph};
use bpr_oracle::{is_recognized, validate_embedding, Constraints};
use bpr_recognizer::{recognize, FailureReason};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [Mode; 3] = [Mode::OneP, Mode::Ic, Mode::Nic];

fn check_against_oracle(g: &Graph, mode: Mode) -> Result<(), String> {
    let r = recognize(g, mode);
    let want = is_recognized(g, mode);
    if r.accepted != want {
        return Err(format!(
            "{mode}: recognizer {} ({:?} {:?}), oracle {want}, graph {:?}",
            r.accepted,
            r.failure,
            r.detail,
            g.edges()
        ));
    }
    if r.accepted {
        let w = r.witness.as_ref().ok_or("accepted without witness")?;
        validate_embedding(g, &w.crossings, mode, &Constraints::none())
            .map_err(|e| format!("{mode}: witness invalid: {e}"))?;
    }
    Ok(())
}

#[test]
fn complete_graphs() {
    assert!(recognize(&Graph::complete(5), Mode::Ic).accepted);
    assert!(recognize(&Graph::complete(6), Mode::OneP).accepted);
    let k7 = recognize(&Graph::complete(7), Mode::OneP);
    assert_eq!(k7.failure, Some(FailureReason::EdgeBound));
    assert_eq!(
        recognize(&Graph::complete(6), Mode::Ic).failure,
        Some(FailureReason::EdgeBound)
    );
    assert_eq!(
        recognize(&Graph::complete(6), Mode::Nic).failure,
        Some(FailureReason::EdgeBound)
    );
}

#[test]
fn fixtures_by_mode() {
    let cases: Vec<(&str, Graph, [bool; 3])> = vec![
        (
            "octahedron-kite",
            fixtures::octahedron_kite(),
            [true, true, true],
        ),
        ("nic-not-ic", fixtures::nic_not_ic(), [true, false, true]),
        (
            "one-planar-only",
            fixtures::one_planar_only(),
            [true, false, false],
        ),
        (
            "crossed-cube",
            fixtures::crossed_cube(),
            [true, false, false],
        ),
        (
            "k5-minus-edge",
            fixtures::k5_minus_edge(),
            [true, true, true],
        ),
    ];
    for (name, g, want) in cases {
        for (mode, w) in MODES.into_iter().zip(want) {
            let r = recognize(&g, mode);
            assert_eq!(
                r.accepted, w,
                "{name} {mode}: {:?} {:?}",
                r.failure, r.detail
            );
        }
    }
}

#[test]
fn catalog_matches_oracle() {
    let mut errors = vec![];
    for n in 5..=7 {
        for g in three_connected_catalog(n) {
            for mode in MODES {
                if let Err(e) = check_against_oracle(&g, mode) {
                    errors.push(e);
                }
            }
        }
    }
    assert!(
        errors.is_empty(),
        "{} mismatches:\n{}",
        errors.len(),
        errors.join("\n")
    );
}

#[test]
fn random_eight_vertex_graphs_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut errors = vec![];
    for i in 0..120 {
        let m = 12 + i % 13;
        let g = random_three_connected(8, m, &mut rng);
        for mode in MODES {
            if let Err(e) = check_against_oracle(&g, mode) {
                errors.push(e);
            }
        }
    }
    assert!(
        errors.is_empty(),
        "{} mismatches:\n{}",
        errors.len(),
        errors.join("\n")
    );
}

#[test]
fn generated_members_are_accepted() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut errors = vec![];
    for i in 0..150 {
        let n = 9 + i % 12;
        for (mode, shared) in [
            (Mode::OneP, None),
            (Mode::Ic, Some(0)),
            (Mode::Nic, Some(1)),
        ] {
            let (g, _) = random_triangulated_1planar(n, 0.5, shared, &mut rng);
            let r = recognize(&g, mode);
            if !r.accepted {
                errors.push(format!(
                    "n={n} {mode}: {:?} {:?} {:?}",
                    r.failure,
                    r.detail,
                    g.edges()
                ));
            }
        }
    }
    assert!(
        errors.is_empty(),
        "{} rejected:\n{}",
        errors.len(),
        errors.join("\n")
    );
}

#[test]
fn optimal_q3_is_accepted_with_six_crossings() {
    let r = recognize(&optimal_q3(), Mode::OneP);
    assert!(r.accepted, "{:?}", r.detail);
    assert_eq!(r.crossings().len(), 6);
}

#[test]
fn planar_triangulation_is_all_black() {
    let t = fixtures::octahedron();
    let r = recognize(&t.graph, Mode::Ic);
    assert!(r.accepted);
    assert!(r.crossings().is_empty());
    assert_eq!(r.coloring.edges_with(bpr_coloring::Color::Black).len(), 12);
    let _ = Edge(0, 1);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generated_members_survive_relabeling(seed in any::<u64>(), n in 9usize..=16, mode_ix in 0usize..3, shift in 1usize..16) {
            let mode = MODES[mode_ix];
            let shared = [None, Some(0), Some(1)][mode_ix];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, _) = random_triangulated_1planar(n, 0.5, shared, &mut rng);
            let perm: Vec<usize> = (0..n).map(|v| (v * (2 * shift + 1) + shift) % n).collect();
            prop_assume!(perm.iter().collect::<std::collections::BTreeSet<_>>().len() == n);
            for h in [g.clone(), g.relabel(&perm)] {
                let r = recognize(&h, mode);
                prop_assert!(r.accepted, "{} {:?}: {:?} {:?}", mode, h.edges(), r.failure, r.detail);
                let w = r.witness.unwrap();
                prop_assert!(validate_embedding(&h, &w.crossings, mode, &Constraints::none()).is_ok());
            }
        }
    }
}
