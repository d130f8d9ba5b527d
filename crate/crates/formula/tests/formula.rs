use std::collections::BTreeSet;

use bpr_formula::{
    brute_force_satisfiable, choices_consistent, exact_block_choice, ic_satisfiable, make_alpha, make_sigma,
    minimal_transversals, nic_satisfiable, solve_2sat, Block, BlockKind, Entity, Eta, Formula, FormulaError, Lit,
    Mode, Var,
};
use bpr_graph::{Edge, Kite};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vv(v: usize, k: usize) -> Var {
    Var { entity: Entity::Vertex(v), kite: k }
}

fn ev(a: usize, b: usize, k: usize) -> Var {
    Var { entity: Entity::Edge(Edge::new(a, b)), kite: k }
}

#[test]
fn alpha_uses_vertices_or_boundary_edges() {
    let k = Kite::new(7, Edge(0, 2), Edge(1, 3));
    let ic = make_alpha(&k, Mode::Ic);
    assert_eq!(ic.vars(), [vv(0, 7), vv(1, 7), vv(2, 7), vv(3, 7)].into_iter().collect());
    let nic = make_alpha(&k, Mode::Nic);
    assert_eq!(nic.vars(), [ev(0, 1, 7), ev(1, 2, 7), ev(2, 3, 7), ev(0, 3, 7)].into_iter().collect());
}

#[test]
fn sigma_is_disjunction_of_alphas() {
    let ks = [Kite::new(1, Edge(0, 1), Edge(2, 3)), Kite::new(2, Edge(0, 1), Edge(4, 5))];
    let f = make_sigma(&ks, Mode::Ic).unwrap();
    match &f {
        Formula::Or(xs) => assert_eq!(xs.len(), 2),
        other => panic!("{other}"),
    }
    assert_eq!(make_sigma(&[], Mode::Ic), Err(FormulaError::EmptySigma));
    assert_eq!(make_sigma(&ks[..1], Mode::Ic).unwrap(), make_alpha(&ks[0], Mode::Ic));
}

#[test]
fn extension_adds_exclusions_for_shared_vertices() {
    let mut eta = Eta::new();
    eta.push(Block::alpha(Kite::new(1, Edge(0, 1), Edge(2, 3)), Mode::Ic, "t"));
    eta.push(Block::alpha(Kite::new(2, Edge(3, 4), Edge(5, 6)), Mode::Ic, "t"));
    assert_eq!(eta.extension_clauses(), vec![(vv(3, 1), vv(3, 2))]);
    assert!(brute_force_satisfiable(&eta.formula()).is_some());
    assert!(brute_force_satisfiable(&eta.extended_formula()).is_none());
    assert!(!ic_satisfiable(&eta).unwrap().satisfiable);
}

#[test]
fn sexpr_and_json_forms() {
    let f = Formula::And(vec![
        Formula::Lit(Lit::pos(vv(1, 0))),
        Formula::Or(vec![Formula::Lit(Lit::neg(vv(2, 0))), Formula::Lit(Lit::pos(ev(0, 3, 4)))]),
    ]);
    assert_eq!(f.to_sexpr(), "(and v1@k0 (or (not v2@k0) e0-3@k4))");
    let js = serde_json::to_string(&f).unwrap();
    let back: Formula = serde_json::from_str(&js).unwrap();
    assert_eq!(back, f);
}

#[test]
fn two_cnf_detection() {
    let a = Formula::Lit(Lit::pos(vv(0, 0)));
    let b = Formula::Lit(Lit::neg(vv(1, 0)));
    let c = Formula::Lit(Lit::pos(vv(2, 0)));
    assert_eq!(Formula::And(vec![a.clone(), Formula::Or(vec![a.clone(), b.clone()])]).as_2cnf().unwrap().len(), 2);
    assert!(Formula::Or(vec![a, b, c]).as_2cnf().is_none());
}

#[test]
fn transversals_of_k5_style_terms() {
    let v = |x| Entity::Vertex(x);
    let fam: Vec<BTreeSet<Entity>> =
        vec![[v(0), v(1)].into(), [v(0), v(2)].into(), [v(1), v(2)].into()];
    let mut t = minimal_transversals(&fam);
    t.sort();
    assert_eq!(t, vec![vec![v(0), v(1)], vec![v(0), v(2)], vec![v(1), v(2)]]);
    let fam: Vec<BTreeSet<Entity>> = vec![[v(0), v(1), v(2), v(3)].into(); 2];
    assert_eq!(minimal_transversals(&fam).len(), 4);
}

#[test]
fn two_sat_basic() {
    // x0 ∨ x1, ¬x0 ∨ x1, x0 ∨ ¬x1, ¬x0 ∨ ¬x1 is unsatisfiable
    let all = [[(0, true), (1, true)], [(0, false), (1, true)], [(0, true), (1, false)], [(0, false), (1, false)]];
    assert!(solve_2sat(2, &all).is_none());
    let s = solve_2sat(2, &all[..3]).unwrap();
    assert_eq!(s, vec![true, true]);
}

fn brute_2sat(n: usize, cl: &[[(usize, bool); 2]]) -> bool {
    (0u32..1 << n).any(|m| cl.iter().all(|c| c.iter().any(|&(v, s)| (m >> v & 1 == 1) == s)))
}

proptest! {
    #[test]
    fn two_sat_matches_brute_force(n in 1usize..9, raw in prop::collection::vec((0usize..9, any::<bool>(), 0usize..9, any::<bool>()), 0..24)) {
        let cl: Vec<[(usize, bool); 2]> = raw.into_iter().map(|(a, s, b, t)| [(a % n, s), (b % n, t)]).collect();
        let got = solve_2sat(n, &cl);
        prop_assert_eq!(got.is_some(), brute_2sat(n, &cl));
        if let Some(a) = got {
            prop_assert!(cl.iter().all(|c| c.iter().any(|&(v, s)| a[v] == s)));
        }
    }
}

/// Random traced η over a small entity pool. Term entity sets have 1 to 3 members.
fn random_eta(rng: &mut ChaCha8Rng, mode: Mode, pool: usize, blocks: usize) -> Eta {
    let mut next_kite = 0;
    let mut eta = Eta::new();
    let entity = |rng: &mut ChaCha8Rng| match mode {
        Mode::Nic => {
            let a = rng.gen_range(0..pool);
            let mut b = rng.gen_range(0..pool);
            while b == a {
                b = rng.gen_range(0..pool);
            }
            Entity::Edge(Edge::new(a, b))
        }
        _ => Entity::Vertex(rng.gen_range(0..pool)),
    };
    for _ in 0..blocks {
        let kind = match rng.gen_range(0..3) {
            0 => BlockKind::Alpha,
            1 => BlockKind::Sigma { a: 0, b: 1 },
            _ => BlockKind::Small { outer: vec![0, 1, 2] },
        };
        let nterms = match kind {
            BlockKind::Alpha => 1,
            _ => rng.gen_range(1..4),
        };
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let k = next_kite;
            next_kite += 1;
            let size = rng.gen_range(1..4);
            let ents: BTreeSet<Entity> = (0..size).map(|_| entity(rng)).collect();
            terms.push(ents.into_iter().map(|e| Var { entity: e, kite: k }).collect::<Vec<_>>());
        }
        let kites = vec![vec![]; terms.len()];
        eta.push(Block { kind, terms, kites, origin: "random".into() });
    }
    eta
}

#[test]
fn block_choice_matches_truth_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 400 {
        let nb = rng.gen_range(1..5);
        let eta = random_eta(&mut rng, Mode::Ic, 6, nb);
        if eta.vars().len() > 18 {
            continue;
        }
        checked += 1;
        let brute = brute_force_satisfiable(&eta.extended_formula()).is_some();
        let exact = exact_block_choice(&eta);
        assert_eq!(exact.is_some(), brute, "{}", eta.formula());
        if let Some(c) = exact {
            assert!(choices_consistent(&eta, &c));
        }
    }
}

#[test]
fn block_choice_rejects_terms_in_conflict_with_themselves() {
    let b = Block {
        kind: BlockKind::Small { outer: vec![] },
        terms: vec![vec![vv(0, 1), vv(0, 2)], vec![vv(1, 3), vv(2, 4)]],
        kites: vec![vec![], vec![]],
        origin: "test".into(),
    };
    let eta = Eta { blocks: vec![b] };
    assert_eq!(exact_block_choice(&eta), Some(vec![1]));
    assert!(!choices_consistent(&eta, &[0]));
}

#[test]
fn ic_solver_matches_exact_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut sat, mut unsat) = (0, 0);
    for _ in 0..3000 {
        let nb = rng.gen_range(1..7);
        let eta = random_eta(&mut rng, Mode::Ic, 9, nb);
        let got = ic_satisfiable(&eta).unwrap();
        let expect = exact_block_choice(&eta).is_some();
        assert_eq!(got.satisfiable, expect, "{}", eta.formula());
        if got.satisfiable {
            sat += 1;
            assert!(choices_consistent(&eta, &got.choices));
            assert!(eta.extended_formula().eval(&|v| got.true_vars.contains(v)));
        } else {
            unsat += 1;
        }
    }
    assert!(sat > 100 && unsat > 100, "{sat} {unsat}");
}

#[test]
fn nic_solver_matches_exact_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut sat, mut unsat, mut rejected) = (0, 0, 0);
    for _ in 0..6000 {
        let nb = rng.gen_range(1..7);
        let eta = random_eta(&mut rng, Mode::Nic, 6, nb);
        match nic_satisfiable(&eta) {
            Err(FormulaError::TooManyOccurrences(..)) => {
                rejected += 1;
                assert!(eta.occurrences().values().any(|s| s.len() > 2) || eta.blocks.iter().any(|b| matches!(b.kind, BlockKind::Small { .. })));
            }
            Err(e) => panic!("{e}"),
            Ok(got) => {
                let expect = exact_block_choice(&eta).is_some();
                assert_eq!(got.satisfiable, expect, "{}", eta.formula());
                if got.satisfiable {
                    sat += 1;
                    assert!(choices_consistent(&eta, &got.choices));
                    assert!(eta.extended_formula().eval(&|v| got.true_vars.contains(v)));
                } else {
                    unsat += 1;
                }
            }
        }
    }
    assert!(sat > 100 && unsat > 50, "{sat} {unsat} {rejected}");
}

#[test]
fn mode_mismatch_is_an_error() {
    let mut eta = Eta::new();
    eta.push(Block::alpha(Kite::new(0, Edge(0, 1), Edge(2, 3)), Mode::Nic, "t"));
    assert_eq!(ic_satisfiable(&eta), Err(FormulaError::TraceMismatch));
}
