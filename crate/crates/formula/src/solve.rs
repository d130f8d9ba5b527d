//! Satisfiability of η⁺ for IC and NIC traces.
//!
//! Every block of η is a monotone DNF, so η⁺ is satisfiable exactly when one
//! term per block can be chosen with no entity claimed by two different kites.
//! The result reports that choice; `true_vars` is the minimal assignment it
//! induces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::twosat::TwoSat;
use crate::{minimal_transversals, Block, BlockKind, Entity, Eta, Formula, FormulaError, Var};

/// Kite ids at or above this value name the per-block virtual kites used to
/// rewrite small-graph blocks.
pub const VIRTUAL_KITE_BASE: usize = 1 << 40;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SatOutcome {
    pub satisfiable: bool,
    /// Chosen term per block (empty when unsatisfiable).
    pub choices: Vec<usize>,
    pub true_vars: BTreeSet<Var>,
    /// Set when the structured procedure handed over to exhaustive search.
    pub fallback: Option<String>,
    /// Branch points explored by residual search.
    pub branches: usize,
    pub trace: Vec<String>,
}

impl SatOutcome {
    fn unsat(trace: Vec<String>) -> SatOutcome {
        SatOutcome { satisfiable: false, trace, ..SatOutcome::default() }
    }
}

/// True if the chosen terms pairwise respect the exclusion clauses.
pub fn choices_consistent(eta: &Eta, choices: &[usize]) -> bool {
    if choices.len() != eta.blocks.len() {
        return false;
    }
    let mut owner: HashMap<Entity, usize> = HashMap::new();
    for (b, &c) in eta.blocks.iter().zip(choices) {
        let Some(t) = b.terms.get(c) else { return false };
        for v in t {
            if let Some(&k) = owner.get(&v.entity) {
                if k != v.kite {
                    return false;
                }
            }
            owner.insert(v.entity, v.kite);
        }
    }
    true
}

fn outcome_from_choices(eta: &Eta, choices: Vec<usize>, trace: Vec<String>) -> SatOutcome {
    debug_assert!(choices_consistent(eta, &choices));
    let true_vars = eta.blocks.iter().zip(&choices).flat_map(|(b, &c)| b.terms[c].iter().copied()).collect();
    SatOutcome { satisfiable: true, choices, true_vars, trace, ..SatOutcome::default() }
}

/// Exhaustive term choice with forward checking. Exponential in the worst case.
pub fn exact_block_choice(eta: &Eta) -> Option<Vec<usize>> {
    let nb = eta.blocks.len();
    if eta.blocks.iter().any(|b| b.terms.is_empty()) {
        return None;
    }
    let mut order: Vec<usize> = (0..nb).collect();
    order.sort_by_key(|&i| (eta.blocks[i].terms.len(), i));
    let mut owner: HashMap<Entity, (usize, usize)> = HashMap::new();
    let mut choice = vec![usize::MAX; nb];

    /// Compatible with the owners so far and with itself.
    fn fits(t: &[Var], owner: &HashMap<Entity, (usize, usize)>) -> bool {
        t.iter().enumerate().all(|(i, v)| {
            owner.get(&v.entity).map_or(true, |&(k, _)| k == v.kite)
                && t[..i].iter().all(|w| w.entity != v.entity || w.kite == v.kite)
        })
    }

    fn rec(
        eta: &Eta,
        order: &[usize],
        depth: usize,
        owner: &mut HashMap<Entity, (usize, usize)>,
        choice: &mut Vec<usize>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        // forward check: every remaining block keeps a compatible term
        for &bi in &order[depth..] {
            if !eta.blocks[bi].terms.iter().any(|t| fits(t, owner)) {
                return false;
            }
        }
        let bi = order[depth];
        for (ti, t) in eta.blocks[bi].terms.iter().enumerate() {
            if !fits(t, owner) {
                continue;
            }
            for v in t {
                owner.entry(v.entity).or_insert((v.kite, 0)).1 += 1;
            }
            choice[bi] = ti;
            if rec(eta, order, depth + 1, owner, choice) {
                return true;
            }
            for v in t {
                let slot = owner.get_mut(&v.entity).unwrap();
                slot.1 -= 1;
                if slot.1 == 0 {
                    owner.remove(&v.entity);
                }
            }
        }
        false
    }

    if rec(eta, &order, 0, &mut owner, &mut choice) {
        Some(choice)
    } else {
        None
    }
}

/// Truth-table satisfiability for small formulas (at most 24 variables).
pub fn brute_force_satisfiable(f: &Formula) -> Option<BTreeSet<Var>> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    assert!(vars.len() <= 24, "too many variables for brute force");
    for mask in 0u32..(1u32 << vars.len()) {
        let truth = |v: &Var| {
            let i = vars.iter().position(|x| x == v).unwrap();
            mask >> i & 1 == 1
        };
        if f.eval(&truth) {
            return Some((0..vars.len()).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect());
        }
    }
    None
}

struct Interner {
    vars: Vec<Var>,
    index: HashMap<Var, usize>,
}

impl Interner {
    fn new() -> Interner {
        Interner { vars: Vec::new(), index: HashMap::new() }
    }

    fn id(&mut self, v: Var) -> usize {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        self.vars.push(v);
        self.index.insert(v, self.vars.len() - 1);
        self.vars.len() - 1
    }
}

fn virtual_var(entity: Entity, block: usize) -> Var {
    Var { entity, kite: VIRTUAL_KITE_BASE + block }
}

/// Positive CNF of a small-graph block over its virtual kite.
fn small_block_cnf(b: &Block, bi: usize) -> Vec<Vec<Var>> {
    minimal_transversals(&b.term_entities())
        .into_iter()
        .map(|cl| cl.into_iter().map(|e| virtual_var(e, bi)).collect())
        .collect()
}

/// Term choices once every block's variables have a value.
fn read_choices(eta: &Eta, value: &dyn Fn(&Var, usize) -> bool) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(eta.blocks.len());
    for (bi, b) in eta.blocks.iter().enumerate() {
        let c = match b.kind {
            BlockKind::Small { .. } => b.terms.iter().position(|t| t.iter().all(|v| value(&virtual_var(v.entity, bi), bi))),
            _ => b.terms.iter().position(|t| t.iter().all(|v| value(v, bi))),
        }?;
        out.push(c);
    }
    Some(out)
}

fn check_mode(eta: &Eta, vertex: bool) -> Result<(), FormulaError> {
    let ok = eta.vars().iter().all(|v| matches!(v.entity, Entity::Vertex(_)) == vertex);
    if ok {
        Ok(())
    } else {
        Err(FormulaError::TraceMismatch)
    }
}

fn fallback(eta: &Eta, reason: &str, mut trace: Vec<String>) -> SatOutcome {
    trace.push(format!("fallback: {reason}"));
    let mut out = match exact_block_choice(eta) {
        Some(c) => outcome_from_choices(eta, c, trace),
        None => SatOutcome::unsat(trace),
    };
    out.fallback = Some(reason.to_string());
    out
}

/// IC satisfiability. Small-graph blocks are rewritten to monotone 2-CNF over
/// a virtual kite; σ blocks are resolved one at a time by testing each
/// candidate against the 2-CNF built so far.
pub fn ic_satisfiable(eta: &Eta) -> Result<SatOutcome, FormulaError> {
    check_mode(eta, true)?;
    let mut trace = Vec::new();
    if let Some(bi) = eta.blocks.iter().position(|b| b.terms.is_empty()) {
        trace.push(format!("block {bi} has no terms"));
        return Ok(SatOutcome::unsat(trace));
    }
    let mut int = Interner::new();
    let mut ts = TwoSat::new(0);
    let mut block_of: HashMap<usize, usize> = HashMap::new();
    let mut lit = |int: &mut Interner, ts: &mut TwoSat, v: Var, bi: usize| {
        let i = int.id(v);
        while ts.num_vars() <= i {
            ts.add_var();
        }
        block_of.insert(i, bi);
        i
    };

    let mut sigmas = Vec::new();
    for (bi, b) in eta.blocks.iter().enumerate() {
        match b.kind {
            BlockKind::Alpha => {
                for &v in &b.terms[0] {
                    let i = lit(&mut int, &mut ts, v, bi);
                    ts.add_unit((i, true));
                }
            }
            BlockKind::Small { .. } => {
                for e in b.term_entities().into_iter().flatten() {
                    lit(&mut int, &mut ts, virtual_var(e, bi), bi);
                }
                for cl in small_block_cnf(b, bi) {
                    match cl.as_slice() {
                        [x] => {
                            let i = int.id(*x);
                            ts.add_unit((i, true));
                        }
                        [x, y] => {
                            let (i, j) = (int.id(*x), int.id(*y));
                            ts.add_clause((i, true), (j, true));
                        }
                        _ => {
                            return Ok(fallback(eta, "small-graph block is not 2-CNF", trace));
                        }
                    }
                }
                trace.push(format!("block {bi}: small graph as 2-CNF"));
            }
            BlockKind::Sigma { .. } => {
                for t in &b.terms {
                    for &v in t {
                        lit(&mut int, &mut ts, v, bi);
                    }
                }
                sigmas.push(bi);
            }
        }
    }

    let mut groups: BTreeMap<Entity, Vec<usize>> = BTreeMap::new();
    for (i, v) in int.vars.iter().enumerate() {
        groups.entry(v.entity).or_default().push(i);
    }
    for g in groups.values() {
        for x in 0..g.len() {
            for y in x + 1..g.len() {
                if int.vars[g[x]].kite != int.vars[g[y]].kite {
                    ts.add_clause((g[x], false), (g[y], false));
                }
            }
        }
    }

    for &bi in &sigmas {
        let b = &eta.blocks[bi];
        let ids: Vec<Vec<usize>> = b.terms.iter().map(|t| t.iter().map(|v| int.index[v]).collect()).collect();
        let feasible: Vec<usize> = (0..ids.len())
            .filter(|&c| ts.solve_with(&ids[c].iter().map(|&i| (i, true)).collect::<Vec<_>>()).is_some())
            .collect();
        match feasible.as_slice() {
            [] => {
                trace.push(format!("block {bi}: no feasible candidate"));
                return Ok(SatOutcome::unsat(trace));
            }
            [c] => {
                trace.push(format!("block {bi}: single feasible candidate {c}"));
                for &i in &ids[*c] {
                    ts.add_unit((i, true));
                }
            }
            [c, d] => {
                trace.push(format!("block {bi}: candidates {c} or {d} as 2-CNF"));
                for &i in &ids[*c] {
                    for &j in &ids[*d] {
                        ts.add_clause((i, true), (j, true));
                    }
                }
            }
            many => {
                let private = many.iter().copied().find(|&c| {
                    ids[c].iter().all(|&i| groups[&int.vars[i].entity].iter().all(|j| block_of[j] == bi))
                });
                match private {
                    Some(c) => {
                        trace.push(format!("block {bi}: candidate {c} is private"));
                        for &i in &ids[c] {
                            ts.add_unit((i, true));
                        }
                    }
                    None => {
                        return Ok(fallback(eta, "sigma block with three or more shared feasible candidates", trace));
                    }
                }
            }
        }
    }

    let Some(assign) = ts.solve() else {
        trace.push("2-CNF unsatisfiable".into());
        return Ok(SatOutcome::unsat(trace));
    };
    let value = |v: &Var, _: usize| int.index.get(v).is_some_and(|&i| assign[i]);
    match read_choices(eta, &value) {
        Some(c) if choices_consistent(eta, &c) => Ok(outcome_from_choices(eta, c, trace)),
        _ => Ok(fallback(eta, "assignment did not map back to term choices", trace)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum L {
    Const(bool),
    Var(usize, bool),
}

#[derive(Clone, Debug)]
enum NBlock {
    Dnf(Vec<Vec<L>>),
    Cnf(Vec<Vec<L>>),
}

fn lit_value(l: L, a: &[Option<bool>]) -> Option<bool> {
    match l {
        L::Const(b) => Some(b),
        L::Var(x, s) => a[x].map(|v| v == s),
    }
}

/// Unit propagation to a fixpoint. `None` on conflict.
fn propagate(blocks: &[NBlock], a: &mut [Option<bool>]) -> Option<()> {
    loop {
        let mut changed = false;
        let mut force = |l: L, a: &mut [Option<bool>]| -> Option<()> {
            match l {
                L::Const(true) => Some(()),
                L::Const(false) => None,
                L::Var(x, s) => match a[x] {
                    Some(v) if v == s => Some(()),
                    Some(_) => None,
                    None => {
                        a[x] = Some(s);
                        changed = true;
                        Some(())
                    }
                },
            }
        };
        for b in blocks {
            match b {
                NBlock::Dnf(terms) => {
                    let live: Vec<&Vec<L>> =
                        terms.iter().filter(|t| t.iter().all(|&l| lit_value(l, a) != Some(false))).collect();
                    match live.len() {
                        0 => return None,
                        1 => {
                            for &l in live[0] {
                                force(l, a)?;
                            }
                        }
                        _ => {}
                    }
                }
                NBlock::Cnf(clauses) => {
                    for cl in clauses {
                        if cl.iter().any(|&l| lit_value(l, a) == Some(true)) {
                            continue;
                        }
                        let open: Vec<L> = cl.iter().copied().filter(|&l| lit_value(l, a).is_none()).collect();
                        match open.len() {
                            0 => return None,
                            1 => force(open[0], a)?,
                            _ => {}
                        }
                    }
                }
            }
        }
        if !changed {
            return Some(());
        }
    }
}

/// First undecided block as a list of alternative literal sets to try.
fn branch_point(blocks: &[NBlock], a: &[Option<bool>]) -> Option<Vec<Vec<L>>> {
    for b in blocks {
        match b {
            NBlock::Dnf(terms) => {
                if terms.iter().any(|t| t.iter().all(|&l| lit_value(l, a) == Some(true))) {
                    continue;
                }
                return Some(terms.iter().filter(|t| t.iter().all(|&l| lit_value(l, a) != Some(false))).cloned().collect());
            }
            NBlock::Cnf(clauses) => {
                for cl in clauses {
                    if cl.iter().any(|&l| lit_value(l, a) == Some(true)) {
                        continue;
                    }
                    return Some(cl.iter().filter(|&&l| lit_value(l, a).is_none()).map(|&l| vec![l]).collect());
                }
            }
        }
    }
    None
}

fn search(blocks: &[NBlock], a: &mut Vec<Option<bool>>, branches: &mut usize) -> bool {
    if propagate(blocks, a).is_none() {
        return false;
    }
    let Some(alts) = branch_point(blocks, a) else { return true };
    *branches += 1;
    for alt in alts {
        let mut next = a.clone();
        let ok = alt.iter().all(|&l| match l {
            L::Const(b) => b,
            L::Var(x, s) => match next[x] {
                Some(v) => v == s,
                None => {
                    next[x] = Some(s);
                    true
                }
            },
        });
        if ok && search(blocks, &mut next, branches) {
            *a = next;
            return true;
        }
    }
    false
}

/// NIC satisfiability. Each entity may occur in at most two kite variables;
/// single occurrences become true, the second of a pair becomes the negation
/// of the first, and the rewritten blocks are decided by propagation, with a
/// small search over whatever disjunctions remain open.
pub fn nic_satisfiable(eta: &Eta) -> Result<SatOutcome, FormulaError> {
    check_mode(eta, false)?;
    let mut trace = Vec::new();
    if let Some(bi) = eta.blocks.iter().position(|b| b.terms.is_empty()) {
        trace.push(format!("block {bi} has no terms"));
        return Ok(SatOutcome::unsat(trace));
    }
    let cnfs: Vec<Option<Vec<Vec<Var>>>> = eta
        .blocks
        .iter()
        .enumerate()
        .map(|(bi, b)| matches!(b.kind, BlockKind::Small { .. }).then(|| small_block_cnf(b, bi)))
        .collect();

    let mut occ: BTreeMap<Entity, BTreeSet<Var>> = BTreeMap::new();
    for (bi, b) in eta.blocks.iter().enumerate() {
        match &cnfs[bi] {
            Some(_) => {
                for e in b.term_entities().into_iter().flatten() {
                    occ.entry(e).or_default().insert(virtual_var(e, bi));
                }
            }
            None => {
                for &v in b.terms.iter().flatten() {
                    occ.entry(v.entity).or_default().insert(v);
                }
            }
        }
    }
    for (e, vs) in &occ {
        if vs.len() > 2 {
            return Err(FormulaError::TooManyOccurrences(*e, vs.len()));
        }
    }

    // single occurrence: constant true; pair: second = ¬first
    let mut lits: HashMap<Var, L> = HashMap::new();
    let mut nvars = 0;
    let (mut singles, mut pairs) = (0, 0);
    for vs in occ.values() {
        let vs: Vec<Var> = vs.iter().copied().collect();
        if vs.len() == 1 {
            lits.insert(vs[0], L::Const(true));
            singles += 1;
        } else {
            lits.insert(vs[0], L::Var(nvars, true));
            lits.insert(vs[1], L::Var(nvars, false));
            nvars += 1;
            pairs += 1;
        }
    }
    trace.push(format!("{singles} single occurrences set true, {pairs} pairs rewritten"));

    let blocks: Vec<NBlock> = eta
        .blocks
        .iter()
        .enumerate()
        .map(|(bi, b)| match &cnfs[bi] {
            Some(cnf) => NBlock::Cnf(cnf.iter().map(|cl| cl.iter().map(|v| lits[v]).collect()).collect()),
            None => NBlock::Dnf(b.terms.iter().map(|t| t.iter().map(|v| lits[v]).collect()).collect()),
        })
        .collect();

    let mut a = vec![None; nvars];
    if propagate(&blocks, &mut a).is_none() {
        trace.push("complementary pair after propagation".into());
        return Ok(SatOutcome::unsat(trace));
    }
    let mut branches = 0;
    if branch_point(&blocks, &a).is_some() {
        trace.push("residual disjunctions: backtracking".into());
        if !search(&blocks, &mut a, &mut branches) {
            let mut out = SatOutcome::unsat(trace);
            out.branches = branches;
            return Ok(out);
        }
    }
    let value = |v: &Var, _: usize| match lits.get(v) {
        Some(L::Const(b)) => *b,
        Some(L::Var(x, s)) => a[*x].unwrap_or(false) == *s,
        None => false,
    };
    let mut out = match read_choices(eta, &value) {
        Some(c) if choices_consistent(eta, &c) => outcome_from_choices(eta, c, trace),
        _ => fallback(eta, "assignment did not map back to term choices", trace),
    };
    out.branches = branches;
    Ok(out)
}
